#include <cstdio>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ragc/experiments.hpp"

namespace {

// Accepts "0,1,2" and range forms "0..9".
std::vector<std::uint64_t> parse_seeds(const std::string& spec) {
  std::vector<std::uint64_t> seeds;
  std::size_t pos = 0;
  while (pos <= spec.size()) {
    const auto comma = spec.find(',', pos);
    const std::string token =
        spec.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    if (!token.empty()) {
      const auto dots = token.find("..");
      if (dots != std::string::npos) {
        const auto lo = std::stoull(token.substr(0, dots));
        const auto hi = std::stoull(token.substr(dots + 2));
        if (hi < lo) throw ragc::ConfigError("seed range '" + token + "' is empty");
        for (auto s = lo; s <= hi; ++s) seeds.push_back(s);
      } else {
        seeds.push_back(std::stoull(token));
      }
    }
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  if (seeds.empty()) throw ragc::ConfigError("no seeds in '" + spec + "'");
  return seeds;
}

ragc::RunConfig build_config(const std::string& config_path,
                             const std::vector<std::string>& overrides) {
  ragc::RunConfig cfg;
  if (!config_path.empty()) cfg = ragc::RunConfig::load_file(config_path);
  for (const auto& kv : overrides) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos)
      throw ragc::ConfigError("override '" + kv + "' is not key=value");
    cfg.apply_override(kv.substr(0, eq), kv.substr(eq + 1), "--set");
  }
  cfg.validate();
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"RAGC contrastive attributed-graph clustering"};
  app.require_subcommand(1);

  std::string config_path, data_dir, out_dir = "out", seeds_spec = "0";
  std::vector<std::string> overrides;
  std::vector<double> sigmas{0.1, 0.2, 0.3};

  auto add_common = [&](CLI::App* cmd, bool needs_data) {
    cmd->add_option("--config", config_path, "config file (key=value lines)");
    auto* data = cmd->add_option("--data", data_dir, "dataset directory");
    if (needs_data) data->required();
    cmd->add_option("--out", out_dir, "output directory");
    cmd->add_option("--seeds", seeds_spec, "seed list, e.g. 0,1,2 or 0..9");
    cmd->add_option("--set", overrides, "config override key=value")->take_all();
  };

  auto* train = app.add_subcommand("train", "train and evaluate over seeds");
  add_common(train, true);
  auto* ablate = app.add_subcommand("ablate", "run the four ablation variants");
  add_common(ablate, true);
  auto* sweep = app.add_subcommand("noise-sweep", "train under added feature noise");
  add_common(sweep, true);
  sweep->add_option("--sigmas", sigmas, "noise standard deviations")->delimiter(',');

  ragc::SbmParams sbm;
  auto* gen = app.add_subcommand("gen-sbm", "generate a synthetic block-model dataset");
  gen->add_option("--blocks", sbm.blocks, "number of planted blocks");
  gen->add_option("--per-block", sbm.per_block, "nodes per block");
  gen->add_option("--p-in", sbm.p_in, "within-block edge probability");
  gen->add_option("--p-out", sbm.p_out, "cross-block edge probability");
  gen->add_option("--feature-dim", sbm.feature_dim, "feature dimension");
  gen->add_option("--feature-shift", sbm.feature_shift, "per-block mean offset");
  gen->add_option("--seed", sbm.seed, "generator seed");
  gen->add_option("--out", out_dir, "output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (gen->parsed()) {
      ragc::experiments::cmd_gen_sbm(sbm, out_dir);
      std::printf("wrote SBM dataset to %s\n", out_dir.c_str());
      return 0;
    }
    const auto cfg = build_config(config_path, overrides);
    const auto seeds = parse_seeds(seeds_spec);
    if (train->parsed()) {
      auto result = ragc::experiments::cmd_train(cfg, data_dir, out_dir, seeds);
      std::printf("ACC %s  NMI %s  ARI %s  F1 %s  (%.1fs, %zu seeds)\n",
                  ragc::metrics::format_mean_std(result.report.mean.acc,
                                                 result.report.stddev.acc).c_str(),
                  ragc::metrics::format_mean_std(result.report.mean.nmi,
                                                 result.report.stddev.nmi).c_str(),
                  ragc::metrics::format_mean_std(result.report.mean.ari,
                                                 result.report.stddev.ari).c_str(),
                  ragc::metrics::format_mean_std(result.report.mean.f1,
                                                 result.report.stddev.f1).c_str(),
                  result.wall_seconds, seeds.size());
    } else if (ablate->parsed()) {
      auto results = ragc::experiments::cmd_ablate(cfg, data_dir, out_dir, seeds);
      for (const auto& r : results)
        std::printf("%-16s ACC %s\n", ragc::variant_name(r.cfg.variant).c_str(),
                    ragc::metrics::format_mean_std(r.report.mean.acc,
                                                   r.report.stddev.acc).c_str());
    } else if (sweep->parsed()) {
      auto rows = ragc::experiments::cmd_noise_sweep(cfg, data_dir, out_dir, seeds, sigmas);
      for (const auto& row : rows)
        std::printf("sigma=%.3f ACC %s (%.1f%%)\n", row.sigma,
                    ragc::metrics::format_mean_std(row.report.mean.acc,
                                                   row.report.stddev.acc).c_str(),
                    row.degradation_pct.acc);
    }
    return 0;
  } catch (const ragc::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const ragc::IoError& e) {
    std::fprintf(stderr, "input error: %s\n", e.what());
    return 2;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "input error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
