#pragma once

#include <string>
#include <vector>

#include "ragc/config.hpp"
#include "ragc/graphio.hpp"
#include "ragc/metrics.hpp"
#include "ragc/objective.hpp"

namespace ragc::experiments {

struct ExperimentResult {
  RunConfig cfg;
  metrics::MetricReport report;
  double wall_seconds = 0.0;
  std::vector<std::vector<double>> loss_histories;  // one per seed
  std::vector<std::string> output_files;
};

/// Seeds may run in parallel worker slots; RAGC_THREADS caps the count.
std::size_t effective_workers(std::size_t requested);

/// Trains one run per seed and writes metrics.json, metrics.txt,
/// loss_history.csv, embeddings.csv and config_snapshot.txt under out_dir.
ExperimentResult cmd_train(const RunConfig& cfg, const std::string& dataset_dir,
                           const std::string& out_dir, const std::vector<std::uint64_t>& seeds);

/// Runs {full, no_dynamic_tau, no_hca, no_csada} with shared seeds and emits a
/// comparison table with per-metric best-to-full ratios.
std::vector<ExperimentResult> cmd_ablate(const RunConfig& cfg, const std::string& dataset_dir,
                                         const std::string& out_dir,
                                         const std::vector<std::uint64_t>& seeds);

struct NoiseSweepRow {
  double sigma = 0.0;
  metrics::MetricReport report;
  metrics::SeedMetrics degradation_pct;  // vs the sigma=0 baseline
};

/// Adds evaluation-time Gaussian noise to X per sigma, trains, and reports
/// metrics plus percentage degradation against the sigma=0 baseline.
std::vector<NoiseSweepRow> cmd_noise_sweep(const RunConfig& cfg, const std::string& dataset_dir,
                                           const std::string& out_dir,
                                           const std::vector<std::uint64_t>& seeds,
                                           const std::vector<double>& sigmas);

void cmd_gen_sbm(const SbmParams& params, const std::string& out_dir);

/// 100 * (value - baseline) / baseline; negative when worse.
double degradation_percent(double value, double baseline);

/// In-memory variants of the commands, shared with tests.
ExperimentResult run_experiment(const Graph& g, const RunConfig& cfg,
                                const std::vector<std::uint64_t>& seeds);

}  // namespace ragc::experiments
