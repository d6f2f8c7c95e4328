#include "ragc/experiments.hpp"

#include <atomic>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <random>
#include <sstream>
#include <thread>

#include "json.hpp"

namespace ragc::experiments {

using nlohmann::json;

std::size_t effective_workers(std::size_t requested) {
  std::size_t workers = requested == 0 ? 1 : requested;
  if (const char* cap = std::getenv("RAGC_THREADS")) {
    const auto parsed = std::strtoull(cap, nullptr, 10);
    if (parsed > 0) workers = std::min<std::size_t>(workers, parsed);
  }
  return workers;
}

double degradation_percent(double value, double baseline) {
  if (baseline == 0.0) return 0.0;
  return 100.0 * (value - baseline) / baseline;
}

namespace {

struct SeedRun {
  metrics::SeedMetrics metrics;
  std::vector<double> loss_history;
  DenseMatrix embedding;
};

SeedRun run_one_seed(const Graph& g, RunConfig cfg, std::uint64_t seed) {
  cfg.seed = seed;
  auto result = objective::train(g, cfg);
  SeedRun run;
  run.loss_history = std::move(result.loss_history);
  run.embedding = std::move(result.z);
  if (g.labels)
    run.metrics = metrics::evaluate(result.labels, *g.labels, cfg.nmi_arithmetic);
  return run;
}

std::vector<SeedRun> run_seeds(const Graph& g, const RunConfig& cfg,
                               const std::vector<std::uint64_t>& seeds) {
  std::vector<SeedRun> runs(seeds.size());
  const std::size_t workers = std::min(effective_workers(cfg.workers), seeds.size());
  if (workers <= 1) {
    for (std::size_t i = 0; i < seeds.size(); ++i) runs[i] = run_one_seed(g, cfg, seeds[i]);
    return runs;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= seeds.size()) return;
      try {
        runs[i] = run_one_seed(g, cfg, seeds[i]);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
  return runs;
}

json metric_block(const std::vector<metrics::SeedMetrics>& per_seed, double mean, double std,
                  double metrics::SeedMetrics::* field) {
  json values = json::array();
  for (const auto& s : per_seed) values.push_back(s.*field);
  return json{{"per_seed", values}, {"mean", mean}, {"std", std}};
}

json report_json(const metrics::MetricReport& rep) {
  return json{
      {"acc", metric_block(rep.per_seed, rep.mean.acc, rep.stddev.acc, &metrics::SeedMetrics::acc)},
      {"nmi", metric_block(rep.per_seed, rep.mean.nmi, rep.stddev.nmi, &metrics::SeedMetrics::nmi)},
      {"ari", metric_block(rep.per_seed, rep.mean.ari, rep.stddev.ari, &metrics::SeedMetrics::ari)},
      {"f1", metric_block(rep.per_seed, rep.mean.f1, rep.stddev.f1, &metrics::SeedMetrics::f1)}};
}

void write_text(const std::string& path, const std::string& content,
                std::vector<std::string>& outputs) {
  std::ofstream f(path);
  if (!f) throw IoError("cannot write " + path);
  f << content;
  outputs.push_back(path);
}

std::string report_table(const metrics::MetricReport& rep, const std::string& label) {
  std::ostringstream os;
  char buf[256];
  std::snprintf(buf, sizeof(buf), "%-16s %-14s %-14s %-14s %-14s\n", "run", "ACC", "NMI", "ARI",
                "F1");
  os << buf;
  std::snprintf(buf, sizeof(buf), "%-16s %-14s %-14s %-14s %-14s\n", label.c_str(),
                metrics::format_mean_std(rep.mean.acc, rep.stddev.acc).c_str(),
                metrics::format_mean_std(rep.mean.nmi, rep.stddev.nmi).c_str(),
                metrics::format_mean_std(rep.mean.ari, rep.stddev.ari).c_str(),
                metrics::format_mean_std(rep.mean.f1, rep.stddev.f1).c_str());
  os << buf;
  return os.str();
}

void write_loss_history_csv(const std::string& path,
                            const std::vector<std::vector<double>>& histories,
                            std::vector<std::string>& outputs) {
  std::ofstream f(path);
  if (!f) throw IoError("cannot write " + path);
  std::size_t epochs = 0;
  for (const auto& h : histories) epochs = std::max(epochs, h.size());
  f << "epoch";
  for (std::size_t s = 0; s < histories.size(); ++s) f << ",seed" << s;
  f << '\n';
  f.precision(17);
  for (std::size_t e = 0; e < epochs; ++e) {
    f << e;
    for (const auto& h : histories) {
      f << ',';
      if (e < h.size()) f << h[e];
    }
    f << '\n';
  }
  outputs.push_back(path);
}

void write_embedding_csv(const std::string& path, const DenseMatrix& z,
                         std::vector<std::string>& outputs) {
  std::ofstream f(path);
  if (!f) throw IoError("cannot write " + path);
  f.precision(17);
  for (std::size_t i = 0; i < z.rows(); ++i) {
    for (std::size_t j = 0; j < z.cols(); ++j) f << (j ? "," : "") << z(i, j);
    f << '\n';
  }
  outputs.push_back(path);
}

json seeds_json(const std::vector<std::uint64_t>& seeds) {
  json out = json::array();
  for (auto s : seeds) out.push_back(s);
  return out;
}

}  // namespace

ExperimentResult run_experiment(const Graph& g, const RunConfig& cfg,
                                const std::vector<std::uint64_t>& seeds) {
  if (seeds.empty()) throw ConfigError("no seeds given");
  const auto start = std::chrono::steady_clock::now();
  auto runs = run_seeds(g, cfg, seeds);
  ExperimentResult result;
  result.cfg = cfg;
  std::vector<metrics::SeedMetrics> per_seed;
  for (auto& run : runs) {
    per_seed.push_back(run.metrics);
    result.loss_histories.push_back(std::move(run.loss_history));
  }
  result.report = metrics::aggregate(per_seed);
  result.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

ExperimentResult cmd_train(const RunConfig& cfg, const std::string& dataset_dir,
                           const std::string& out_dir, const std::vector<std::uint64_t>& seeds) {
  Graph g = load_dataset(dataset_dir);
  std::filesystem::create_directories(out_dir);

  const auto start = std::chrono::steady_clock::now();
  auto runs = run_seeds(g, cfg, seeds);
  ExperimentResult result;
  result.cfg = cfg;
  std::vector<metrics::SeedMetrics> per_seed;
  for (auto& run : runs) {
    per_seed.push_back(run.metrics);
    result.loss_histories.push_back(std::move(run.loss_history));
  }
  result.report = metrics::aggregate(per_seed);
  result.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  json config_obj = json::object();
  {
    std::istringstream is(cfg.serialize());
    std::string line;
    while (std::getline(is, line)) {
      const auto eq = line.find('=');
      if (eq != std::string::npos) config_obj[line.substr(0, eq)] = line.substr(eq + 1);
    }
  }
  json doc{{"command", "train"},
           {"dataset", dataset_dir},
           {"config", config_obj},
           {"seeds", seeds_json(seeds)},
           {"wall_seconds", result.wall_seconds},
           {"metrics", report_json(result.report)}};
  write_text(out_dir + "/metrics.json", doc.dump(2) + "\n", result.output_files);
  write_text(out_dir + "/metrics.txt", report_table(result.report, "train"),
             result.output_files);
  write_loss_history_csv(out_dir + "/loss_history.csv", result.loss_histories,
                         result.output_files);
  write_embedding_csv(out_dir + "/embeddings.csv", runs.front().embedding,
                      result.output_files);
  std::ostringstream snap;
  snap << cfg.serialize() << "# seeds:";
  for (auto s : seeds) snap << ' ' << s;
  snap << '\n';
  write_text(out_dir + "/config_snapshot.txt", snap.str(), result.output_files);
  return result;
}

std::vector<ExperimentResult> cmd_ablate(const RunConfig& cfg, const std::string& dataset_dir,
                                         const std::string& out_dir,
                                         const std::vector<std::uint64_t>& seeds) {
  Graph g = load_dataset(dataset_dir);
  std::filesystem::create_directories(out_dir);

  const Variant variants[4] = {Variant::full, Variant::no_dynamic_tau, Variant::no_hca,
                               Variant::no_csada};
  std::vector<ExperimentResult> results;
  for (Variant v : variants) {
    RunConfig vc = cfg;
    vc.variant = v;
    results.push_back(run_experiment(g, vc, seeds));
  }

  const auto& full = results.front().report.mean;
  json rows = json::array();
  std::ostringstream table;
  char buf[256];
  std::snprintf(buf, sizeof(buf), "%-16s %-14s %-14s %-14s %-14s %s\n", "variant", "ACC", "NMI",
                "ARI", "F1", "ratio_to_full(acc,nmi,ari,f1)");
  table << buf;
  for (std::size_t i = 0; i < results.size(); ++i) {
    const auto& r = results[i];
    auto ratio = [](double v, double f) { return f != 0.0 ? v / f : 0.0; };
    const auto& m = r.report.mean;
    json row{{"variant", variant_name(r.cfg.variant)},
             {"metrics", report_json(r.report)},
             {"ratio_to_full",
              {{"acc", ratio(m.acc, full.acc)},
               {"nmi", ratio(m.nmi, full.nmi)},
               {"ari", ratio(m.ari, full.ari)},
               {"f1", ratio(m.f1, full.f1)}}}};
    rows.push_back(row);
    std::snprintf(buf, sizeof(buf), "%-16s %-14s %-14s %-14s %-14s %.3f,%.3f,%.3f,%.3f\n",
                  variant_name(r.cfg.variant).c_str(),
                  metrics::format_mean_std(m.acc, r.report.stddev.acc).c_str(),
                  metrics::format_mean_std(m.nmi, r.report.stddev.nmi).c_str(),
                  metrics::format_mean_std(m.ari, r.report.stddev.ari).c_str(),
                  metrics::format_mean_std(m.f1, r.report.stddev.f1).c_str(),
                  ratio(m.acc, full.acc), ratio(m.nmi, full.nmi), ratio(m.ari, full.ari),
                  ratio(m.f1, full.f1));
    table << buf;
  }

  json doc{{"command", "ablate"},
           {"dataset", dataset_dir},
           {"seeds", seeds_json(seeds)},
           {"variants", rows}};
  std::vector<std::string> outputs;
  write_text(out_dir + "/ablation.json", doc.dump(2) + "\n", outputs);
  write_text(out_dir + "/ablation.txt", table.str(), outputs);
  for (auto& r : results) r.output_files = outputs;
  return results;
}

std::vector<NoiseSweepRow> cmd_noise_sweep(const RunConfig& cfg, const std::string& dataset_dir,
                                           const std::string& out_dir,
                                           const std::vector<std::uint64_t>& seeds,
                                           const std::vector<double>& sigmas) {
  Graph g = load_dataset(dataset_dir);
  std::filesystem::create_directories(out_dir);

  std::vector<double> all_sigmas{0.0};
  for (double s : sigmas)
    if (s != 0.0) all_sigmas.push_back(s);

  std::vector<NoiseSweepRow> rows;
  for (std::size_t si = 0; si < all_sigmas.size(); ++si) {
    const double sigma = all_sigmas[si];
    Graph noisy = g;
    if (sigma > 0.0) {
      std::mt19937_64 rng(cfg.seed ^ (0x5DEECE66DULL + si));
      std::normal_distribution<double> noise(0.0, sigma);
      for (std::size_t i = 0; i < noisy.x.size(); ++i) noisy.x.data()[i] += noise(rng);
    }
    NoiseSweepRow row;
    row.sigma = sigma;
    row.report = run_experiment(noisy, cfg, seeds).report;
    rows.push_back(std::move(row));
  }

  const auto& base = rows.front().report.mean;
  for (auto& row : rows) {
    const auto& m = row.report.mean;
    row.degradation_pct = {degradation_percent(m.acc, base.acc),
                           degradation_percent(m.nmi, base.nmi),
                           degradation_percent(m.ari, base.ari),
                           degradation_percent(m.f1, base.f1)};
  }

  json jrows = json::array();
  std::ostringstream table;
  char buf[256];
  std::snprintf(buf, sizeof(buf), "%-8s %-14s %-14s %-14s %-14s %s\n", "sigma", "ACC", "NMI",
                "ARI", "F1", "degradation%(acc,nmi,ari,f1)");
  table << buf;
  for (const auto& row : rows) {
    const auto& m = row.report.mean;
    jrows.push_back(json{{"sigma", row.sigma},
                         {"metrics", report_json(row.report)},
                         {"degradation_pct",
                          {{"acc", row.degradation_pct.acc},
                           {"nmi", row.degradation_pct.nmi},
                           {"ari", row.degradation_pct.ari},
                           {"f1", row.degradation_pct.f1}}}});
    std::snprintf(buf, sizeof(buf), "%-8.3f %-14s %-14s %-14s %-14s %.1f,%.1f,%.1f,%.1f\n",
                  row.sigma,
                  metrics::format_mean_std(m.acc, row.report.stddev.acc).c_str(),
                  metrics::format_mean_std(m.nmi, row.report.stddev.nmi).c_str(),
                  metrics::format_mean_std(m.ari, row.report.stddev.ari).c_str(),
                  metrics::format_mean_std(m.f1, row.report.stddev.f1).c_str(),
                  row.degradation_pct.acc, row.degradation_pct.nmi, row.degradation_pct.ari,
                  row.degradation_pct.f1);
    table << buf;
  }
  json doc{{"command", "noise-sweep"},
           {"dataset", dataset_dir},
           {"seeds", seeds_json(seeds)},
           {"rows", jrows}};
  std::vector<std::string> outputs;
  write_text(out_dir + "/noise_sweep.json", doc.dump(2) + "\n", outputs);
  write_text(out_dir + "/noise_sweep.txt", table.str(), outputs);
  return rows;
}

void cmd_gen_sbm(const SbmParams& params, const std::string& out_dir) {
  Graph g = generate_sbm(params);
  save_dataset(g, out_dir);
}

}  // namespace ragc::experiments
