#include "ragc/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace ragc {

std::string variant_name(Variant v) {
  switch (v) {
    case Variant::full: return "full";
    case Variant::no_dynamic_tau: return "no_dynamic_tau";
    case Variant::no_hca: return "no_hca";
    case Variant::no_csada: return "no_csada";
  }
  return "full";
}

Variant variant_from_name(const std::string& name) {
  if (name == "full") return Variant::full;
  if (name == "no_dynamic_tau") return Variant::no_dynamic_tau;
  if (name == "no_hca") return Variant::no_hca;
  if (name == "no_csada") return Variant::no_csada;
  throw ConfigError("unknown variant '" + name +
                    "' (expected full|no_dynamic_tau|no_hca|no_csada)");
}

void RunConfig::validate() const {
  if (epochs == 0) throw ConfigError("epochs must be positive");
  if (lr <= 0.0) throw ConfigError("lr must be positive");
  if (beta <= 0.0 || beta >= 1.0) throw ConfigError("beta must be in (0,1)");
  if (gamma < 1.0 || gamma > 5.0) throw ConfigError("gamma must be in [1,5]");
  if (sigma_n < 0.0) throw ConfigError("sigma_n must be non-negative");
  if (mask_ratio < 0.0 || mask_ratio > 1.0) throw ConfigError("mask_ratio must be in [0,1]");
  if (embed_dim == 0) throw ConfigError("embed_dim must be positive");
  if (!(tau_start < 1.0 && tau_start >= tau_end && tau_end >= 0.0))
    throw ConfigError("require 1 > tau_start >= tau_end >= 0");
}

std::string RunConfig::serialize() const {
  std::ostringstream os;
  os.precision(17);
  os << "k=" << k << '\n'
     << "epochs=" << epochs << '\n'
     << "lr=" << lr << '\n'
     << "beta=" << beta << '\n'
     << "gamma=" << gamma << '\n'
     << "sigma_n=" << sigma_n << '\n'
     << "mask_ratio=" << mask_ratio << '\n'
     << "t_n=" << t_n << '\n'
     << "t_m=" << t_m << '\n'
     << "embed_dim=" << embed_dim << '\n'
     << "tau_start=" << tau_start << '\n'
     << "tau_end=" << tau_end << '\n'
     << "seed=" << seed << '\n'
     << "variant=" << variant_name(variant) << '\n'
     << "kmeans_restarts_loop=" << kmeans_restarts_loop << '\n'
     << "kmeans_restarts_final=" << kmeans_restarts_final << '\n'
     << "workers=" << workers << '\n'
     << "nmi_arithmetic=" << (nmi_arithmetic ? 1 : 0) << '\n';
  return os.str();
}

namespace {

double to_double(const std::string& v, const std::string& where) {
  double out = 0.0;
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || ptr != v.data() + v.size())
    throw ConfigError(where + ": invalid number '" + v + "'");
  return out;
}

std::uint64_t to_uint(const std::string& v, const std::string& where) {
  std::uint64_t out = 0;
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || ptr != v.data() + v.size())
    throw ConfigError(where + ": invalid integer '" + v + "'");
  return out;
}

}  // namespace

void RunConfig::apply_override(const std::string& key, const std::string& value,
                               const std::string& origin) {
  const std::string where = origin + " (" + key + ")";
  if (key == "k") k = to_uint(value, where);
  else if (key == "epochs") epochs = to_uint(value, where);
  else if (key == "lr") lr = to_double(value, where);
  else if (key == "beta") beta = to_double(value, where);
  else if (key == "gamma") gamma = to_double(value, where);
  else if (key == "sigma_n") sigma_n = to_double(value, where);
  else if (key == "mask_ratio") mask_ratio = to_double(value, where);
  else if (key == "t_n") t_n = to_uint(value, where);
  else if (key == "t_m") t_m = to_uint(value, where);
  else if (key == "embed_dim") embed_dim = to_uint(value, where);
  else if (key == "tau_start") tau_start = to_double(value, where);
  else if (key == "tau_end") tau_end = to_double(value, where);
  else if (key == "seed") seed = to_uint(value, where);
  else if (key == "variant") variant = variant_from_name(value);
  else if (key == "kmeans_restarts_loop") kmeans_restarts_loop = to_uint(value, where);
  else if (key == "kmeans_restarts_final") kmeans_restarts_final = to_uint(value, where);
  else if (key == "workers") workers = to_uint(value, where);
  else if (key == "nmi_arithmetic") nmi_arithmetic = to_uint(value, where) != 0;
  else throw ConfigError(where + ": unknown configuration key");
}

RunConfig RunConfig::parse(const std::string& text, const std::string& origin) {
  RunConfig cfg;
  std::istringstream is(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos) continue;
    const auto last = line.find_last_not_of(" \t");
    line = line.substr(first, last - first + 1);
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(origin + ":" + std::to_string(lineno) + ": expected key=value");
    std::string key = line.substr(0, eq);
    std::string value = line.substr(eq + 1);
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t");
      if (b == std::string::npos) return std::string();
      const auto e = s.find_last_not_of(" \t");
      return s.substr(b, e - b + 1);
    };
    cfg.apply_override(trim(key), trim(value), origin + ":" + std::to_string(lineno));
  }
  cfg.validate();
  return cfg;
}

RunConfig RunConfig::load_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot open config file: " + path);
  std::ostringstream os;
  os << f.rdbuf();
  return parse(os.str(), path);
}

}  // namespace ragc
