#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace ragc {

struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

enum class Variant { full, no_dynamic_tau, no_hca, no_csada };

std::string variant_name(Variant v);
Variant variant_from_name(const std::string& name);

/// Every knob of a training run; serializable as flat key=value text.
struct RunConfig {
  std::size_t k = 0;            // 0 = take from dataset labels
  std::size_t epochs = 400;
  double lr = 1e-3;
  double beta = 0.5;
  double gamma = 2.0;
  double sigma_n = 0.001;
  double mask_ratio = 0.005;
  std::size_t t_n = 2;
  std::size_t t_m = 2;
  std::size_t embed_dim = 64;
  double tau_start = 0.8;
  double tau_end = 0.2;
  std::uint64_t seed = 0;
  Variant variant = Variant::full;
  std::size_t kmeans_restarts_loop = 1;
  std::size_t kmeans_restarts_final = 10;
  std::size_t workers = 1;
  bool nmi_arithmetic = false;  // geometric-mean normalization by default

  void validate() const;
  std::string serialize() const;
  /// key=value lines, # comments; unknown keys are an error with line number.
  static RunConfig parse(const std::string& text, const std::string& origin = "<config>");
  static RunConfig load_file(const std::string& path);
  void apply_override(const std::string& key, const std::string& value,
                      const std::string& origin = "<override>");
};

}  // namespace ragc
