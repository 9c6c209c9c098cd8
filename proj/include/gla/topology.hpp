#ifndef GLA_TOPOLOGY_HPP
#define GLA_TOPOLOGY_HPP

#include "gla/domain.hpp"
#include "gla/field.hpp"

#include <vector>

namespace gla {

/// One detected vortex cluster: physical position, total plaquette winding,
/// distance to the nearest boundary circle, and the smallest corner modulus.
struct Vortex {
  double x = 0.0;
  double y = 0.0;
  int winding = 0;
  double boundary_distance = 0.0;
  double min_modulus = 0.0;
};

struct VortexSet {
  std::vector<Vortex> entries;

  int total_winding() const {
    int acc = 0;
    for (const auto& v : entries) acc += v.winding;
    return acc;
  }
  double min_boundary_distance() const {
    double d = std::numeric_limits<double>::infinity();
    for (const auto& v : entries) d = std::min(d, v.boundary_distance);
    return d;
  }
};

/// Winding number of u/|u| along the contour: sum of principal-branch phase
/// increments over the closed chain, divided by 2*pi and rounded. The
/// pre-round distance to the nearest integer is reported through `deviation`
/// when non-null. Throws if |u| < 1e-6 at a contour node.
int boundary_degree(const ComplexField& u, const Contour& contour,
                    double* deviation = nullptr);

/// Approximate bulk degree, (1/2pi) int u x (d1V d2u - d2V d1u) dx, by
/// node quadrature with centered differences.
double abdeg(const ComplexField& u, const ScalarField& V);

/// Radial-average form of abdeg for circular annuli: the mean over log r of
/// the circlewise winding integrals.
double abdeg_radial_average(const ComplexField& u);

/// Right side of the abdeg continuity estimate,
/// (1/pi) |V|_C1 (sqrt(E_eps(u)) + sqrt(E_eps(v))) |u-v|_L2.
double abdeg_lipschitz_bound(const ComplexField& u, const ComplexField& v,
                             double epsilon, const ScalarField& V);

/// Plaquette vortex detector: phase winding around every grid cell, nonzero
/// cells clustered by 8-neighbor connectivity (theta wraps); clusters are kept
/// when their smallest corner modulus is below modulus_threshold.
VortexSet find_vortices(const ComplexField& u, double modulus_threshold = 0.5);

struct CurrentPotential {
  ScalarField h;
  double inner_trace_mean = 0.0;       // emergent trace on the inner circle
  double inner_trace_deviation = 0.0;  // max deviation from constancy
};

/// Current potential of u: least-squares solution of grad^perp h = u x grad u
/// with h = 1 on the outer circle (normal equations are the Poisson problem
/// lap h = 2 d1 u x d2 u with a natural condition on the inner circle).
CurrentPotential current_potential(const ComplexField& u);

/// Edge-quadrature pairing (1/2pi) int grad h . grad V dx; equals abdeg for
/// the least-squares current potential.
double h_v_pairing(const ScalarField& h, const ScalarField& V);

}  // namespace gla

#endif
