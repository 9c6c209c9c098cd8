#ifndef GLA_FIELD_HPP
#define GLA_FIELD_HPP

#include "gla/grid.hpp"

namespace gla {

/// Ginzburg-Landau energy split into its two terms,
/// E = (1/2)int |grad u|^2 + (1/4 eps^2)int (|u|^2-1)^2.
struct EnergyReport {
  double dirichlet = 0.0;
  double potential = 0.0;
  double total = 0.0;
  double epsilon = 0.0;
};

/// Boundary admissibility for the class J: | |u|-1 | <= tol on both circles.
bool admissible(const ComplexField& u, double tol = 1e-9);

/// Largest deviation of |u| from 1 over the boundary nodes.
double boundary_modulus_defect(const ComplexField& u);

/// Projects the boundary rows onto the unit circle, u -> u/|u|; interior
/// nodes are untouched. Throws if a boundary value vanishes.
ComplexField renormalize_boundary(const ComplexField& u);

/// GL energy by trapezoid quadrature in (s,theta). The Dirichlet term uses
/// edge midpoints, the potential term the conformal area weight e^{2s}.
EnergyReport energy(const ComplexField& u, double epsilon);

/// Discrete L2 gradient of the energy under the semi-stiff conditions:
/// interior nodes carry -lap u + eps^-2 u(|u|^2-1); boundary nodes keep only
/// the component along iu, so a vanishing gradient encodes |u| = 1 together
/// with u x du/dnu = 0. Rejects non-admissible input.
ComplexField gl_gradient(const ComplexField& u, double epsilon);

}  // namespace gla

#endif
