#ifndef GLA_DOMAIN_HPP
#define GLA_DOMAIN_HPP

#include "gla/grid.hpp"

#include <utility>
#include <vector>

namespace gla {

/// Closed grid-aligned contour: a cyclic chain of (i, j) node indices,
/// oriented counterclockwise. Enclosing contours on the annulus are full
/// radial rows; the chain omits the repeated closing node.
struct Contour {
  std::vector<std::pair<int, int>> nodes;  // (radial index, angular index)
};

/// The circle r = radius_node(i) as a counterclockwise contour.
Contour circle_contour(const Grid& g, int radial_index);

inline Contour inner_boundary_contour(const Grid& g) {
  return circle_contour(g, 0);
}
inline Contour outer_boundary_contour(const Grid& g) {
  return circle_contour(g, g.n_radial - 1);
}

/// Signed area of the physical polygon traced by the contour (positive for
/// counterclockwise orientation).
double contour_signed_area(const Annulus& a, const Grid& g, const Contour& c);

/// Solves Laplace V = 0 with V = 0 on the inner circle and V = 1 on the outer
/// circle (5-point stencil in (s,theta), conjugate gradients to 1e-12).
ScalarField solve_V(const Annulus& a, const Grid& g);

/// Dirichlet energy (1/2)int |grad V|^2 by edge-midpoint quadrature in
/// (s,theta); conformally invariant, so no area weight appears.
double dirichlet_energy(const ScalarField& V);

/// Capacity oracle: twice the Dirichlet energy of the discrete V.
inline double capacity_from_field(const ScalarField& V) {
  return 2.0 * dirichlet_energy(V);
}

/// The closed grid contour nearest the V = 1/2 level, counterclockwise.
Contour half_level_contour(const ScalarField& V);

}  // namespace gla

#endif
