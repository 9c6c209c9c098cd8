#ifndef GLA_EXPERIMENT_HPP
#define GLA_EXPERIMENT_HPP

#include "gla/minimize.hpp"
#include "gla/testmaps.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace gla {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SectorSpec {
  int p = 0;
  int q = 0;
  int d = 0;
};

/// Declarative description of a batch of runs, parsed from the flat
/// `key = value` config format (sections in brackets, '#' comments).
struct ExperimentConfig {
  // [domain]
  double r_inner = 1.0;
  double r_outer = std::exp(1.0);
  int n_radial = 257;
  int n_angular = 512;

  // [run]
  enum class Mode { Sectors, AppendixA } mode = Mode::Sectors;
  std::vector<double> epsilons;
  std::vector<SectorSpec> sectors;
  std::uint64_t seed = 0;
  std::string out_dir = "out";
  int workers = 1;

  // [minimize]
  int max_iters = 50000;
  int record_every = 25;
  double grad_tol = 0.0;  // 0 = auto
  double step = 0.0;      // 0 = auto
  MinimizeConfig::Scheme scheme = MinimizeConfig::Scheme::Adi;
  double insertion_offset_factor = 0.5;  // offset = factor * eps

  // [testmaps]
  MoebiusParams moebius;
  double zeta_dist_factor = 0.1;  // appendix-a vortex depth = factor * eps

  std::string canonical_text;  // normalized form used for hashing

  Annulus annulus() const { return Annulus(r_inner, r_outer); }
  Grid grid() const { return Grid(n_radial, n_angular); }
};

/// Parses and validates a config file. Throws ConfigError with a
/// `file:line: field` diagnostic on malformed or inconsistent input.
ExperimentConfig load_config(const std::filesystem::path& path);
ExperimentConfig parse_config_text(const std::string& text,
                                   const std::string& origin);

/// FNV-1a hash of the canonical config text and the seed; stamped on every
/// run record so verify can refuse mixed directories.
std::uint64_t config_hash(const ExperimentConfig& cfg);

struct RunOutcome {
  int index = 0;
  SectorSpec sector;
  double epsilon = 0.0;
  bool failed = false;
  std::string error;
  std::string record_json;       // one runs.jsonl line
  std::string summary_row;       // one summary.csv row
};

/// Executes all declared runs and writes runs.jsonl, summary.csv and the
/// per-run SVG plots into cfg.out_dir. Returns the per-run outcomes in
/// declared order.
std::vector<RunOutcome> run_experiment(const ExperimentConfig& cfg);

struct VerifyCheck {
  std::string name;
  bool pass = false;
  std::string detail;
};

/// Re-checks the assertable invariants of a run directory (traces monotone,
/// abdeg windows, degree identities, hash uniformity). Prints one pass/fail
/// line per check to stdout and returns them.
std::vector<VerifyCheck> verify_run_dir(const std::filesystem::path& dir);

inline bool all_passed(const std::vector<VerifyCheck>& checks) {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

}  // namespace gla

#endif
