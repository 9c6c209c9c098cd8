#ifndef GLA_MINIMIZE_HPP
#define GLA_MINIMIZE_HPP

#include "gla/field.hpp"
#include "gla/topology.hpp"

#include <vector>

namespace gla {

/// Settings of the projected gradient flow over the sector J_pq^(d).
struct MinimizeConfig {
  double epsilon = 0.05;
  double step = 0.0;      // 0 selects the scheme default
  int max_iters = 50000;
  double grad_tol = 0.0;  // 0 selects 1e-6 * sqrt(|A|)
  int d = 0;              // target abdeg window [d-1/2, d+1/2]
  int record_every = 25;

  /// Explicit is the plain flow u - step * grad with the diffusion-limited
  /// step; Adi preconditions the gradient with the tensor Helmholtz inverse,
  /// lifting the grid CFL limit (the potential term still caps the step at
  /// ~eps^2).
  enum class Scheme { Explicit, Adi } scheme = Scheme::Adi;

  bool enforce_spacing_rule = true;

  double auto_grad_tol(const Annulus& a) const;
  double auto_step(const Annulus& a, const Grid& g) const;
};

/// Radial spacing at the boundary circles must satisfy h_r <= eps/4 so the
/// near-boundary vortex cores stay resolved. Throws when violated.
void validate_spacing_rule(const Annulus& a, const Grid& g, double epsilon);

struct MinimizeResult {
  explicit MinimizeResult(ComplexField f) : field(std::move(f)) {}

  ComplexField field;
  std::vector<EnergyReport> energy_trace;
  std::vector<double> abdeg_trace;
  int final_p = 0;
  int final_q = 0;
  VortexSet vortices;
  bool converged = false;
  bool sector_escape = false;
  bool stagnated = false;
  int iterations = 0;
  double final_residual = 0.0;
  int target_p = 0;
  int target_q = 0;
  int d = 0;
};

/// One flow step u -> renormalize_boundary(u - step * grad); if the energy
/// increases the step is halved and retried, up to 30 times.
ComplexField flow_step(const ComplexField& u, const MinimizeConfig& cfg);

/// Discrete L2 norm of gl_gradient(u, eps).
double residual(const ComplexField& u, double epsilon);

/// Projected gradient flow from an admissible initial field whose abdeg lies
/// strictly inside the d-window. Stops at grad_tol or max_iters; halts with
/// the sector_escape flag if abdeg leaves [d-1/2, d+1/2].
MinimizeResult minimize(const ComplexField& init, const MinimizeConfig& cfg);

/// Sequentially seeded sector ladder: the (d,d) run starts from the harmonic
/// minimizer; each further (p,q) is seeded from an already-minimized
/// neighbor sector through one Blaschke boundary insertion at distance
/// `insertion_offset` (0 selects eps/2). Targets must be sorted by
/// nondecreasing ae(p,q) = |d-p| + |d-q| with p <= d, q <= d.
std::vector<MinimizeResult> sector_protocol(
    int d, const std::vector<std::pair<int, int>>& targets,
    const MinimizeConfig& cfg, const Annulus& a, const Grid& g,
    double insertion_offset = 0.0);

}  // namespace gla

#endif
