#include "gla/minimize.hpp"

#include "gla/harmonic.hpp"
#include "gla/solvers.hpp"
#include "gla/testmaps.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>

namespace gla {

double MinimizeConfig::auto_grad_tol(const Annulus& a) const {
  return 1e-6 * std::sqrt(area(a));
}

double MinimizeConfig::auto_step(const Annulus& a, const Grid& g) const {
  if (scheme == Scheme::Adi) return 0.45 * epsilon * epsilon;
  const double h = a.r_inner * std::min(log_spacing(a, g), angular_spacing(g));
  return 0.2 * h * h;
}

void validate_spacing_rule(const Annulus& a, const Grid& g, double epsilon) {
  const double hs = log_spacing(a, g);
  const double h_r_outer = a.r_outer * (1.0 - std::exp(-hs));
  if (h_r_outer > epsilon / 4.0)
    throw std::invalid_argument(
        "spacing rule violated: radial spacing at the outer circle is " +
        std::to_string(h_r_outer) + " but eps/4 = " +
        std::to_string(epsilon / 4.0) + "; refine n_radial or raise epsilon");
}

namespace {

// Minimization workspace with reusable buffers; all steps keep iterates in J
// by renormalizing the boundary rows after each move.
class DescentEngine {
 public:
  DescentEngine(const ComplexField& init, const MinimizeConfig& cfg)
      : cfg_(cfg), u_(init), grad_(init.annulus, init.grid),
        trial_(init.annulus, init.grid),
        mass_(mass_column_weights(init.annulus, init.grid)) {
    if (cfg_.step == 0.0) step_ = cfg_.auto_step(init.annulus, init.grid);
    else step_ = cfg_.step;
    step_cap_ = (cfg_.scheme == MinimizeConfig::Scheme::Adi)
                    ? 0.9 * cfg_.epsilon * cfg_.epsilon
                    : step_;
    energy_ = energy(u_, cfg_.epsilon).total;
    rebuild_preconditioner();
  }

  const ComplexField& field() const { return u_; }
  double current_energy() const { return energy_; }
  double step() const { return step_; }

  // gradient of the current iterate; also refreshes the residual norm
  void compute_gradient() {
    grad_ = gl_gradient(u_, cfg_.epsilon);
    double acc = 0.0;
    for (int i = 0; i < u_.n_radial(); ++i)
      acc += mass_(i) * grad_.values.col(i).abs2().sum();
    residual_ = std::sqrt(acc);
  }
  double residual_norm() const { return residual_; }

  // one backtracking move along the (preconditioned) gradient;
  // returns false when 30 halvings fail to decrease the energy
  bool advance() {
    ArrayXXcd dir = grad_.values;
    if (cfg_.scheme == MinimizeConfig::Scheme::Adi) {
      precond_->apply_inplace(dir);
      // keep the move tangential at the boundary rows; otherwise the
      // renormalization cancels part of the step and the iteration can
      // stall at points that are not critical
      for (int i : {0, u_.n_radial() - 1}) {
        ArrayXcd ub = u_.values.col(i);
        ArrayXd t = (ub.conjugate() * dir.col(i)).imag() / ub.abs2();
        dir.col(i) = Complex(0, 1) * ub * t.cast<Complex>();
      }
    }

    for (int halving = 0; halving <= 30; ++halving) {
      trial_.values = u_.values - step_ * dir;
      project_boundary(trial_);
      const double e_new = energy(trial_, cfg_.epsilon).total;
      if (e_new <= energy_) {
        std::swap(u_.values, trial_.values);
        energy_ = e_new;
        const double grown = step_ * 1.2;
        if (grown <= step_cap_ && halving == 0) {
          step_ = grown;
          rebuild_preconditioner();
        }
        return true;
      }
      step_ *= 0.5;
      rebuild_preconditioner();
    }
    return false;
  }

 private:
  void project_boundary(ComplexField& v) const {
    for (int i : {0, v.n_radial() - 1}) {
      ArrayXd mod = v.values.col(i).abs();
      if ((mod <= 0.0).any())
        throw std::domain_error("flow: zero boundary value during projection");
      v.values.col(i) /= mod.cast<Complex>();
    }
  }

  void rebuild_preconditioner() {
    if (cfg_.scheme == MinimizeConfig::Scheme::Adi)
      precond_.emplace(u_.annulus, u_.grid, step_, step_);
  }

  const MinimizeConfig cfg_;
  ComplexField u_;
  ComplexField grad_;
  ComplexField trial_;
  ArrayXd mass_;
  std::optional<AdiPreconditioner> precond_;
  double step_ = 0.0;
  double step_cap_ = 0.0;
  double energy_ = 0.0;
  double residual_ = 0.0;
};

}  // namespace

ComplexField flow_step(const ComplexField& u, const MinimizeConfig& cfg) {
  DescentEngine engine(u, cfg);
  engine.compute_gradient();
  if (!engine.advance())
    throw std::runtime_error("flow_step: stagnation, 30 halvings exhausted");
  return engine.field();
}

double residual(const ComplexField& u, double epsilon) {
  const ComplexField g = gl_gradient(u, epsilon);
  const ArrayXd m = mass_column_weights(u.annulus, u.grid);
  double acc = 0.0;
  for (int i = 0; i < u.n_radial(); ++i)
    acc += m(i) * g.values.col(i).abs2().sum();
  return std::sqrt(acc);
}

MinimizeResult minimize(const ComplexField& init, const MinimizeConfig& cfg) {
  if (!admissible(init))
    throw std::invalid_argument("minimize: initial field not admissible");
  if (cfg.enforce_spacing_rule)
    validate_spacing_rule(init.annulus, init.grid, cfg.epsilon);
  const double ab0 = abdeg_radial_average(init);
  if (!(ab0 > cfg.d - 0.5 && ab0 < cfg.d + 0.5))
    throw std::invalid_argument(
        "minimize: abdeg of the initial field is outside the open d-window");

  const double tol =
      cfg.grad_tol > 0.0 ? cfg.grad_tol : cfg.auto_grad_tol(init.annulus);

  MinimizeResult res(ComplexField(init.annulus, init.grid));
  res.d = cfg.d;

  DescentEngine engine(init, cfg);
  res.energy_trace.push_back(energy(engine.field(), cfg.epsilon));
  res.abdeg_trace.push_back(ab0);

  int it = 0;
  for (; it < cfg.max_iters; ++it) {
    engine.compute_gradient();
    if (engine.residual_norm() <= tol) {
      res.converged = true;
      break;
    }
    if (!engine.advance()) {
      res.stagnated = true;
      break;
    }
    if ((it + 1) % cfg.record_every == 0) {
      res.energy_trace.push_back(energy(engine.field(), cfg.epsilon));
      const double ab = abdeg_radial_average(engine.field());
      res.abdeg_trace.push_back(ab);
      if (!(ab >= cfg.d - 0.5 && ab <= cfg.d + 0.5)) {
        res.sector_escape = true;
        ++it;
        break;
      }
    }
  }

  res.iterations = it;
  res.field = engine.field();
  res.final_residual = residual(res.field, cfg.epsilon);
  if (res.energy_trace.empty() ||
      res.energy_trace.back().total != engine.current_energy())
    res.energy_trace.push_back(energy(res.field, cfg.epsilon));
  res.abdeg_trace.push_back(abdeg_radial_average(res.field));

  res.final_q = boundary_degree(res.field, outer_boundary_contour(res.field.grid));
  res.final_p = boundary_degree(res.field, inner_boundary_contour(res.field.grid));
  res.vortices = find_vortices(res.field, 0.5);
  return res;
}

std::vector<MinimizeResult> sector_protocol(
    int d, const std::vector<std::pair<int, int>>& targets,
    const MinimizeConfig& cfg, const Annulus& a, const Grid& g,
    double insertion_offset) {
  auto ae = [d](int p, int q) { return std::abs(d - p) + std::abs(d - q); };
  for (size_t k = 0; k < targets.size(); ++k) {
    const auto [p, q] = targets[k];
    if (p > d || q > d)
      throw std::invalid_argument("sector_protocol: targets must satisfy p <= d, q <= d");
    if (k > 0 && ae(p, q) < ae(targets[k - 1].first, targets[k - 1].second))
      throw std::invalid_argument("sector_protocol: targets must be sorted by ae(p,q)");
  }
  const double offset =
      insertion_offset > 0.0 ? insertion_offset : cfg.epsilon / 2.0;

  std::map<std::pair<int, int>, ComplexField> minimizers;
  std::vector<MinimizeResult> out;
  out.reserve(targets.size());

  for (const auto& [p, q] : targets) {
    ComplexField seed(a, g);
    if (ae(p, q) == 0) {
      seed = harmonic_minimizer(d, a, g);
    } else if (auto up = minimizers.find({p, q + 1}); up != minimizers.end()) {
      seed = with_boundary_insertion(up->second, BoundarySide::Outer, -1,
                                     offset, 0.0);
    } else if (auto lp = minimizers.find({p + 1, q}); lp != minimizers.end()) {
      seed = with_boundary_insertion(lp->second, BoundarySide::Inner, 1,
                                     offset, pi);
    } else {
      // no minimized neighbor: fall back to the direct admissible map
      seed = admissible_map(p, q, d, offset, a, g);
    }

    MinimizeConfig run_cfg = cfg;
    run_cfg.d = d;
    MinimizeResult r = minimize(seed, run_cfg);
    r.target_p = p;
    r.target_q = q;
    minimizers.emplace(std::make_pair(p, q), r.field);
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace gla
