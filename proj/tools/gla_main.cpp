#include "gla/experiment.hpp"

#include <CLI11.hpp>

#include <cstdio>

int main(int argc, char** argv) {
  CLI::App app{"Ginzburg-Landau annulus laboratory"};
  app.require_subcommand(1);

  std::string config_path, out_override, run_dir;
  int workers_override = 0;
  long long seed_override = -1;

  auto* run = app.add_subcommand("run", "execute the runs declared in a config");
  run->add_option("config", config_path, "experiment config file")
      ->required()
      ->check(CLI::ExistingFile);
  run->add_option("--out", out_override, "output directory (overrides config)")
      ->envname("GLA_OUT");
  run->add_option("--workers", workers_override, "worker threads (overrides config)")
      ->envname("GLA_WORKERS");
  run->add_option("--seed", seed_override, "seed (overrides config)")
      ->envname("GLA_SEED");

  auto* verify = app.add_subcommand("verify", "re-check invariants of a run directory");
  verify->add_option("dir", run_dir, "directory produced by run")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      gla::ExperimentConfig cfg = gla::load_config(config_path);
      if (!out_override.empty()) cfg.out_dir = out_override;
      if (workers_override > 0) cfg.workers = workers_override;
      if (seed_override >= 0) cfg.seed = static_cast<std::uint64_t>(seed_override);
      const auto outcomes = gla::run_experiment(cfg);
      int failed = 0;
      for (const auto& ro : outcomes) {
        if (ro.failed) {
          ++failed;
          std::printf("run %d (p=%d q=%d d=%d eps=%g) failed: %s\n", ro.index,
                      ro.sector.p, ro.sector.q, ro.sector.d, ro.epsilon,
                      ro.error.c_str());
        }
      }
      std::printf("%zu run(s) finished, %d failed; artifacts in %s\n",
                  outcomes.size(), failed, cfg.out_dir.c_str());
      return 0;
    }
    const auto checks = gla::verify_run_dir(run_dir);
    return gla::all_passed(checks) ? 0 : 1;
  } catch (const gla::ConfigError& ex) {
    std::fprintf(stderr, "config error: %s\n", ex.what());
    return 2;
  } catch (const std::exception& ex) {
    std::fprintf(stderr, "error: %s\n", ex.what());
    return 1;
  }
}
