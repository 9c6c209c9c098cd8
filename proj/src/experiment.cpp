#include "gla/experiment.hpp"

#include "gla/harmonic.hpp"
#include "gla/io.hpp"

#include <nlohmann/json.hpp>

#include <chrono>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

namespace gla {

namespace {

using nlohmann::json;

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split_ws(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream is(s);
  for (std::string tok; is >> tok;) out.push_back(tok);
  return out;
}

struct KeyValue {
  std::string section, key, value;
  int line = 0;
};

[[noreturn]] void fail_at(const std::string& origin, int line,
                          const std::string& msg) {
  throw ConfigError(origin + ":" + std::to_string(line) + ": " + msg);
}

double to_double(const KeyValue& kv, const std::string& origin) {
  try {
    size_t pos = 0;
    const double v = std::stod(kv.value, &pos);
    if (pos != kv.value.size()) throw std::invalid_argument("trailing text");
    return v;
  } catch (const std::exception&) {
    fail_at(origin, kv.line, "field '" + kv.key + "': not a number: '" + kv.value + "'");
  }
}

long to_int(const KeyValue& kv, const std::string& origin) {
  try {
    size_t pos = 0;
    const long v = std::stol(kv.value, &pos);
    if (pos != kv.value.size()) throw std::invalid_argument("trailing text");
    return v;
  } catch (const std::exception&) {
    fail_at(origin, kv.line, "field '" + kv.key + "': not an integer: '" + kv.value + "'");
  }
}

}  // namespace

ExperimentConfig parse_config_text(const std::string& text,
                                   const std::string& origin) {
  ExperimentConfig cfg;
  std::vector<KeyValue> kvs;
  {
    std::istringstream is(text);
    std::string line, section;
    int lineno = 0;
    while (std::getline(is, line)) {
      ++lineno;
      if (const auto hash = line.find('#'); hash != std::string::npos)
        line = line.substr(0, hash);
      line = trim(line);
      if (line.empty()) continue;
      if (line.front() == '[') {
        if (line.back() != ']') fail_at(origin, lineno, "unterminated section header");
        section = trim(line.substr(1, line.size() - 2));
        continue;
      }
      const auto eq = line.find('=');
      if (eq == std::string::npos) fail_at(origin, lineno, "expected 'key = value'");
      KeyValue kv{section, trim(line.substr(0, eq)), trim(line.substr(eq + 1)),
                  lineno};
      if (kv.key.empty()) fail_at(origin, lineno, "empty key");
      kvs.push_back(std::move(kv));
    }
  }

  for (const auto& kv : kvs) {
    const std::string id = kv.section + "." + kv.key;
    if (id == "domain.r_inner") cfg.r_inner = to_double(kv, origin);
    else if (id == "domain.r_outer") cfg.r_outer = to_double(kv, origin);
    else if (id == "domain.n_radial") cfg.n_radial = static_cast<int>(to_int(kv, origin));
    else if (id == "domain.n_angular") cfg.n_angular = static_cast<int>(to_int(kv, origin));
    else if (id == "run.mode") {
      if (kv.value == "sectors") cfg.mode = ExperimentConfig::Mode::Sectors;
      else if (kv.value == "appendix_a") cfg.mode = ExperimentConfig::Mode::AppendixA;
      else fail_at(origin, kv.line, "field 'mode': expected sectors|appendix_a");
    } else if (id == "run.epsilons") {
      for (const auto& tok : split_ws(kv.value)) {
        KeyValue sub{kv.section, kv.key, tok, kv.line};
        cfg.epsilons.push_back(to_double(sub, origin));
      }
    } else if (id == "run.sectors") {
      for (const auto& tok : split_ws(kv.value)) {
        SectorSpec s;
        if (std::sscanf(tok.c_str(), "%d,%d,%d", &s.p, &s.q, &s.d) != 3)
          fail_at(origin, kv.line, "field 'sectors': expected p,q,d triples, got '" + tok + "'");
        cfg.sectors.push_back(s);
      }
    } else if (id == "run.seed") cfg.seed = static_cast<std::uint64_t>(to_int(kv, origin));
    else if (id == "run.out") cfg.out_dir = kv.value;
    else if (id == "run.workers") cfg.workers = static_cast<int>(to_int(kv, origin));
    else if (id == "minimize.max_iters") cfg.max_iters = static_cast<int>(to_int(kv, origin));
    else if (id == "minimize.record_every") cfg.record_every = static_cast<int>(to_int(kv, origin));
    else if (id == "minimize.grad_tol") cfg.grad_tol = to_double(kv, origin);
    else if (id == "minimize.step") cfg.step = to_double(kv, origin);
    else if (id == "minimize.scheme") {
      if (kv.value == "adi") cfg.scheme = MinimizeConfig::Scheme::Adi;
      else if (kv.value == "explicit") cfg.scheme = MinimizeConfig::Scheme::Explicit;
      else fail_at(origin, kv.line, "field 'scheme': expected adi|explicit");
    } else if (id == "minimize.insertion_offset_factor")
      cfg.insertion_offset_factor = to_double(kv, origin);
    else if (id == "testmaps.t") cfg.moebius.t = to_double(kv, origin);
    else if (id == "testmaps.delta") cfg.moebius.delta = to_double(kv, origin);
    else if (id == "testmaps.lambda") cfg.moebius.lambda = to_double(kv, origin);
    else if (id == "testmaps.K") cfg.moebius.K = static_cast<int>(to_int(kv, origin));
    else if (id == "testmaps.zeta_dist_factor") cfg.zeta_dist_factor = to_double(kv, origin);
    else fail_at(origin, kv.line, "unknown key '" + kv.key + "' in section [" + kv.section + "]");
  }

  // schema validation with field diagnostics
  auto fail_field = [&](const std::string& f, const std::string& why) {
    throw ConfigError(origin + ": field '" + f + "': " + why);
  };
  if (!(cfg.r_inner > 0 && cfg.r_outer > cfg.r_inner))
    fail_field("r_inner/r_outer", "need 0 < r_inner < r_outer");
  if (cfg.n_radial < 16) fail_field("n_radial", "must be >= 16");
  if (cfg.n_angular < 32) fail_field("n_angular", "must be >= 32");
  if (cfg.workers < 1) fail_field("workers", "must be >= 1");
  if (cfg.epsilons.empty()) fail_field("epsilons", "at least one epsilon required");
  for (double e : cfg.epsilons) {
    if (!(e > 0)) fail_field("epsilons", "epsilon must be positive");
    if (cfg.mode == ExperimentConfig::Mode::Sectors) {
      try {
        validate_spacing_rule(cfg.annulus(), cfg.grid(), e);
      } catch (const std::exception& ex) {
        fail_field("epsilons", std::string("epsilon ") + std::to_string(e) +
                                   " violates the spacing rule: " + ex.what());
      }
    }
  }
  for (const auto& s : cfg.sectors) {
    if (s.d <= 0) fail_field("sectors", "d must be positive");
    if (s.p > s.d || s.q > s.d)
      fail_field("sectors", "targets must satisfy p <= d and q <= d");
  }

  // canonical text for hashing
  std::ostringstream canon;
  canon << "r_inner=" << cfg.r_inner << ";r_outer=" << cfg.r_outer
        << ";n_radial=" << cfg.n_radial << ";n_angular=" << cfg.n_angular
        << ";mode=" << (cfg.mode == ExperimentConfig::Mode::Sectors ? "sectors" : "appendix_a")
        << ";epsilons=";
  for (double e : cfg.epsilons) canon << e << ",";
  canon << ";sectors=";
  for (const auto& s : cfg.sectors) canon << s.p << "," << s.q << "," << s.d << ";";
  canon << ";seed=" << cfg.seed << ";max_iters=" << cfg.max_iters
        << ";record_every=" << cfg.record_every << ";grad_tol=" << cfg.grad_tol
        << ";step=" << cfg.step
        << ";scheme=" << (cfg.scheme == MinimizeConfig::Scheme::Adi ? "adi" : "explicit")
        << ";offset_factor=" << cfg.insertion_offset_factor
        << ";t=" << cfg.moebius.t << ";delta=" << cfg.moebius.delta
        << ";lambda=" << cfg.moebius.lambda << ";K=" << cfg.moebius.K
        << ";zeta=" << cfg.zeta_dist_factor;
  cfg.canonical_text = canon.str();
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str(), path.string());
}

std::uint64_t config_hash(const ExperimentConfig& cfg) {
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&h](const void* data, size_t n) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (size_t i = 0; i < n; ++i) {
      h ^= p[i];
      h *= 1099511628211ull;
    }
  };
  mix(cfg.canonical_text.data(), cfg.canonical_text.size());
  mix(&cfg.seed, sizeof cfg.seed);
  return h;
}

namespace {

std::string csv_num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

json energy_json(const EnergyReport& e) {
  return json{{"dirichlet", e.dirichlet},
              {"potential", e.potential},
              {"total", e.total},
              {"epsilon", e.epsilon}};
}

std::string summary_row(const SectorSpec& s, double eps, const EnergyReport& e,
                        double ab, size_t n_vortices, double min_dist) {
  std::ostringstream os;
  os << s.p << ',' << s.q << ',' << s.d << ',' << csv_num(eps) << ','
     << csv_num(e.total) << ',' << csv_num(e.dirichlet) << ','
     << csv_num(e.potential) << ',' << csv_num(ab) << ',' << n_vortices << ','
     << csv_num(min_dist);
  return os.str();
}

// One epsilon of the sector ladder; sequential by construction (seeding).
std::vector<RunOutcome> run_ladder(const ExperimentConfig& cfg, double eps,
                                   int base_index) {
  const Annulus a = cfg.annulus();
  const Grid g = cfg.grid();
  std::vector<RunOutcome> out;

  MinimizeConfig mc;
  mc.epsilon = eps;
  mc.max_iters = cfg.max_iters;
  mc.record_every = cfg.record_every;
  mc.grad_tol = cfg.grad_tol;
  mc.step = cfg.step;
  mc.scheme = cfg.scheme;

  std::vector<std::pair<int, int>> targets;
  int d = cfg.sectors.empty() ? 1 : cfg.sectors.front().d;
  for (const auto& s : cfg.sectors) targets.emplace_back(s.p, s.q);

  std::vector<MinimizeResult> results;
  std::string ladder_error;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    results = sector_protocol(d, targets, mc, a, g,
                              cfg.insertion_offset_factor * eps);
  } catch (const std::exception& ex) {
    ladder_error = ex.what();
  }
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();

  for (size_t k = 0; k < targets.size(); ++k) {
    RunOutcome ro;
    ro.index = base_index + static_cast<int>(k);
    ro.sector = cfg.sectors[k];
    ro.epsilon = eps;
    if (k >= results.size()) {
      ro.failed = true;
      ro.error = ladder_error.empty() ? "ladder aborted" : ladder_error;
      json line{{"run", ro.index},
                {"config_hash", std::to_string(config_hash(cfg))},
                {"mode", "sectors"},
                {"p", ro.sector.p},
                {"q", ro.sector.q},
                {"d", ro.sector.d},
                {"epsilon", eps},
                {"error", ro.error}};
      ro.record_json = line.dump();
      out.push_back(ro);
      continue;
    }
    const MinimizeResult& r = results[k];
    const EnergyReport e = r.energy_trace.back();
    const double ab = r.abdeg_trace.back();
    json line{{"run", ro.index},
              {"config_hash", std::to_string(config_hash(cfg))},
              {"mode", "sectors"},
              {"p", ro.sector.p},
              {"q", ro.sector.q},
              {"d", ro.sector.d},
              {"epsilon", eps},
              {"seed", cfg.seed},
              {"converged", r.converged},
              {"sector_escape", r.sector_escape},
              {"stagnated", r.stagnated},
              {"iterations", r.iterations},
              {"final_residual", r.final_residual},
              {"energy", energy_json(e)},
              {"abdeg", ab},
              {"final_p", r.final_p},
              {"final_q", r.final_q},
              {"n_vortices", r.vortices.entries.size()},
              {"vortices", json::parse(vortices_json(r.vortices))},
              {"timing_sec", elapsed / targets.size()}};
    json etrace = json::array(), atrace = json::array();
    for (const auto& er : r.energy_trace) etrace.push_back(er.total);
    for (double v : r.abdeg_trace) atrace.push_back(v);
    line["energy_trace"] = etrace;
    line["abdeg_trace"] = atrace;
    ro.record_json = line.dump();
    const double min_dist = r.vortices.entries.empty()
                                ? -1.0
                                : r.vortices.min_boundary_distance();
    ro.summary_row =
        summary_row(ro.sector, eps, e, ab, r.vortices.entries.size(), min_dist);

    const std::filesystem::path dir(cfg.out_dir);
    const std::string stem = "run_" + std::to_string(ro.index);
    write_modulus_svg(r.field, dir / (stem + "_modulus.svg"));
    write_phase_svg(r.field, dir / (stem + "_phase.svg"));
    std::vector<double> totals;
    for (const auto& er : r.energy_trace) totals.push_back(er.total);
    write_trace_svg(totals, dir / (stem + "_trace.svg"), "energy");
    out.push_back(ro);
  }
  return out;
}

RunOutcome run_appendix_a(const ExperimentConfig& cfg, double eps, int index) {
  RunOutcome ro;
  ro.index = index;
  ro.epsilon = eps;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    const Annulus chart = cfg.annulus();
    if (std::abs(chart.r_outer - 1.0) > 1e-12)
      throw ConfigError("appendix_a mode expects r_outer = 1 (unit-disk chart)");
    const Grid g = cfg.grid();
    const double dist = cfg.zeta_dist_factor * eps;
    const Complex zeta = std::polar(1.0 - dist, 0.0);
    const ComplexField v = appendix_a_field(zeta, chart, g);
    const EnergyReport e = energy(v, eps);
    const AppendixADiagnostics diag = appendix_a_diagnostics(v, zeta);
    const VortexSet vs = find_vortices(v);
    const double ab = abdeg_radial_average(v);
    const double rigid = pinned_vortex_dirichlet(eps);

    const int q = boundary_degree(v, outer_boundary_contour(g));
    const int p = boundary_degree(v, inner_boundary_contour(g));
    ro.sector = SectorSpec{p, q, 0};
    json line{{"run", index},
              {"config_hash", std::to_string(config_hash(cfg))},
              {"mode", "appendix_a"},
              {"p", p},
              {"q", q},
              {"d", 0},
              {"epsilon", eps},
              {"seed", cfg.seed},
              {"zeta", {zeta.real(), zeta.imag()}},
              {"ghost", {diag.ghost.real(), diag.ghost.imag()}},
              {"boundary_defect", diag.boundary_defect},
              {"factorization_defect", diag.factorization_defect},
              {"energy", energy_json(e)},
              {"abdeg", ab},
              {"n_vortices", vs.entries.size()},
              {"vortices", json::parse(vortices_json(vs))},
              {"rigid_vortex_dirichlet", rigid},
              {"timing_sec",
               std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                   .count()}};
    ro.record_json = line.dump();
    const double min_dist =
        vs.entries.empty() ? -1.0 : vs.min_boundary_distance();
    ro.summary_row =
        summary_row(ro.sector, eps, e, ab, vs.entries.size(), min_dist);

    const std::filesystem::path dir(cfg.out_dir);
    const std::string stem = "run_" + std::to_string(index);
    write_modulus_svg(v, dir / (stem + "_modulus.svg"));
    write_phase_svg(v, dir / (stem + "_phase.svg"));
  } catch (const std::exception& ex) {
    ro.failed = true;
    ro.error = ex.what();
    json line{{"run", index},
              {"config_hash", std::to_string(config_hash(cfg))},
              {"mode", "appendix_a"},
              {"epsilon", eps},
              {"error", ro.error}};
    ro.record_json = line.dump();
  }
  return ro;
}

}  // namespace

std::vector<RunOutcome> run_experiment(const ExperimentConfig& cfg) {
  std::filesystem::create_directories(cfg.out_dir);

  // independent units: one per epsilon (a whole ladder is one unit since the
  // sectors seed each other)
  std::vector<std::vector<RunOutcome>> per_unit(cfg.epsilons.size());
  const int runs_per_unit = cfg.mode == ExperimentConfig::Mode::Sectors
                                ? std::max<size_t>(cfg.sectors.size(), 0)
                                : 1;

  std::mutex next_mutex;
  size_t next_unit = 0;
  auto worker = [&]() {
    for (;;) {
      size_t unit;
      {
        std::lock_guard<std::mutex> lock(next_mutex);
        if (next_unit >= cfg.epsilons.size()) return;
        unit = next_unit++;
      }
      const double eps = cfg.epsilons[unit];
      const int base = static_cast<int>(unit) * runs_per_unit;
      if (cfg.mode == ExperimentConfig::Mode::Sectors) {
        if (!cfg.sectors.empty()) per_unit[unit] = run_ladder(cfg, eps, base);
      } else {
        per_unit[unit] = {run_appendix_a(cfg, eps, base)};
      }
    }
  };

  const int n_workers =
      std::max(1, std::min<int>(cfg.workers, static_cast<int>(cfg.epsilons.size())));
  std::vector<std::thread> pool;
  for (int w = 0; w < n_workers; ++w) pool.emplace_back(worker);
  for (auto& th : pool) th.join();

  // single-threaded merge in declared order
  std::vector<RunOutcome> all;
  for (auto& unit : per_unit)
    for (auto& ro : unit) all.push_back(std::move(ro));

  std::ofstream runs(std::filesystem::path(cfg.out_dir) / "runs.jsonl");
  if (!runs) throw std::runtime_error("cannot write runs.jsonl");
  for (const auto& ro : all) runs << ro.record_json << '\n';

  std::ofstream csv(std::filesystem::path(cfg.out_dir) / "summary.csv");
  if (!csv) throw std::runtime_error("cannot write summary.csv");
  csv << "p,q,d,epsilon,energy,dirichlet,potential,abdeg,n_vortices,min_vortex_dist\n";
  for (const auto& ro : all)
    if (!ro.failed) csv << ro.summary_row << '\n';

  return all;
}

std::vector<VerifyCheck> verify_run_dir(const std::filesystem::path& dir) {
  std::vector<VerifyCheck> checks;
  auto add = [&](const std::string& name, bool pass, const std::string& detail) {
    checks.push_back({name, pass, detail});
    std::printf("[%s] %s%s%s\n", pass ? "PASS" : "FAIL", name.c_str(),
                detail.empty() ? "" : ": ", detail.c_str());
  };

  std::ifstream in(dir / "runs.jsonl");
  if (!in) {
    add("runs present", false, "no runs found in " + dir.string());
    return checks;
  }
  std::vector<json> lines;
  for (std::string line; std::getline(in, line);) {
    if (trim(line).empty()) continue;
    try {
      lines.push_back(json::parse(line));
    } catch (const std::exception& ex) {
      add("runs parse", false, std::string("corrupt line: ") + ex.what());
      return checks;
    }
  }
  if (lines.empty()) {
    add("runs present", false, "no runs found");
    return checks;
  }
  add("runs present", true, std::to_string(lines.size()) + " run(s)");

  // hash uniformity
  {
    bool uniform = true;
    const std::string h0 = lines.front().value("config_hash", "");
    for (const auto& l : lines)
      if (l.value("config_hash", "") != h0) uniform = false;
    add("config hash uniform", uniform,
        uniform ? h0 : "mixed config hashes, refusing directory");
    if (!uniform) return checks;
  }

  bool traces_ok = true, windows_ok = true, degrees_ok = true;
  std::string trace_detail, window_detail, degree_detail;
  for (const auto& l : lines) {
    if (l.contains("error")) continue;
    const int run = l.value("run", -1);
    if (l.contains("energy_trace")) {
      const auto& tr = l["energy_trace"];
      for (size_t k = 1; k < tr.size(); ++k) {
        const double prev = tr[k - 1].get<double>(), cur = tr[k].get<double>();
        if (cur > prev + 1e-12 * std::max(1.0, std::abs(prev))) {
          traces_ok = false;
          trace_detail = "run " + std::to_string(run) + " energy increases at record " +
                         std::to_string(k);
        }
      }
    }
    if (l.contains("abdeg_trace") && !l.value("sector_escape", false)) {
      const double d = l.value("d", 0);
      for (const auto& v : l["abdeg_trace"]) {
        const double ab = v.get<double>();
        if (!(ab >= d - 0.5 - 1e-9 && ab <= d + 0.5 + 1e-9)) {
          windows_ok = false;
          window_detail = "run " + std::to_string(run) + " abdeg " +
                          std::to_string(ab) + " outside the d-window";
        }
      }
    }
    if (l.contains("vortices") && l.contains("final_p") && l.contains("final_q")) {
      int wsum = 0;
      for (const auto& v : l["vortices"]) wsum += v.value("winding", 0);
      if (l["final_q"].get<int>() - l["final_p"].get<int>() != wsum) {
        degrees_ok = false;
        degree_detail = "run " + std::to_string(run) + ": q - p != winding sum";
      }
    }
  }
  add("energy traces monotone", traces_ok, trace_detail);
  add("abdeg windows", windows_ok, window_detail);
  add("degree identity", degrees_ok, degree_detail);

  // summary consistency
  {
    std::ifstream csv(dir / "summary.csv");
    bool ok = bool(csv);
    std::string detail = ok ? "" : "summary.csv missing";
    if (ok) {
      std::string header;
      std::getline(csv, header);
      ok = header ==
           "p,q,d,epsilon,energy,dirichlet,potential,abdeg,n_vortices,min_vortex_dist";
      if (!ok) detail = "unexpected header";
      size_t rows = 0;
      for (std::string line; std::getline(csv, line);)
        if (!trim(line).empty()) ++rows;
      size_t expected = 0;
      for (const auto& l : lines)
        if (!l.contains("error")) ++expected;
      if (ok && rows != expected) {
        ok = false;
        detail = "row count " + std::to_string(rows) + " != " +
                 std::to_string(expected) + " successful runs";
      }
    }
    add("summary consistent", ok, detail);
  }
  return checks;
}

}  // namespace gla
