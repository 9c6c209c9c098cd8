#include "gla/field.hpp"

#include <cmath>

namespace gla {

double boundary_modulus_defect(const ComplexField& u) {
  const int nr = u.n_radial();
  const double inner =
      (u.values.col(0).abs() - 1.0).abs().maxCoeff();
  const double outer =
      (u.values.col(nr - 1).abs() - 1.0).abs().maxCoeff();
  return std::max(inner, outer);
}

bool admissible(const ComplexField& u, double tol) {
  return u.values.allFinite() && boundary_modulus_defect(u) <= tol;
}

ComplexField renormalize_boundary(const ComplexField& u) {
  ComplexField v = u;
  for (int i : {0, u.n_radial() - 1}) {
    ArrayXd mod = v.values.col(i).abs();
    if ((mod <= 0.0).any())
      throw std::domain_error(
          "renormalize_boundary: zero boundary value, projection undefined");
    v.values.col(i) /= mod.cast<Complex>();
  }
  return v;
}

EnergyReport energy(const ComplexField& u, double epsilon) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("energy: epsilon must be > 0");
  const int nr = u.n_radial(), nt = u.n_angular();
  const double hs = u.h_s(), ht = u.h_theta();
  const ArrayXd w = radial_weights(u.grid);

  double dir = 0.0;
  for (int i = 0; i + 1 < nr; ++i)
    dir += (u.values.col(i + 1) - u.values.col(i)).abs2().sum() * ht / hs;
  for (int i = 0; i < nr; ++i) {
    auto c = u.values.col(i);
    double dsum = (c.tail(nt - 1) - c.head(nt - 1)).abs2().sum();
    dsum += std::norm(c(0) - c(nt - 1));
    dir += w(i) * dsum * hs / ht;
  }
  dir *= 0.5;

  double pot = 0.0;
  for (int i = 0; i < nr; ++i) {
    const double r = u.radius(i);
    pot += w(i) * r * r * (u.values.col(i).abs2() - 1.0).square().sum();
  }
  pot *= hs * ht / (4.0 * epsilon * epsilon);

  EnergyReport rep;
  rep.dirichlet = dir;
  rep.potential = pot;
  rep.total = dir + pot;
  rep.epsilon = epsilon;
  return rep;
}

namespace {

// Partial derivatives of the discrete energy with respect to the node values,
// divided by the L2 mass weights; boundary rows are not yet projected.
ArrayXXcd raw_l2_gradient(const ComplexField& u, double epsilon) {
  const int nr = u.n_radial(), nt = u.n_angular();
  const double hs = u.h_s(), ht = u.h_theta();
  const ArrayXd w = radial_weights(u.grid);

  ArrayXXcd p = ArrayXXcd::Zero(nt, nr);

  const double cs = ht / hs;
  for (int i = 0; i + 1 < nr; ++i) {
    ArrayXcd d = u.values.col(i + 1) - u.values.col(i);
    p.col(i) -= cs * d;
    p.col(i + 1) += cs * d;
  }
  for (int i = 0; i < nr; ++i) {
    const double c = w(i) * hs / ht;
    auto col = u.values.col(i);
    ArrayXcd lap(nt);
    lap.head(nt - 1) = col.tail(nt - 1);
    lap(nt - 1) = col(0);
    lap.tail(nt - 1) += col.head(nt - 1);
    lap(0) += col(nt - 1);
    p.col(i) += c * (2.0 * col - lap);
  }
  const double inv_eps2 = 1.0 / (epsilon * epsilon);
  const ArrayXd m = mass_column_weights(u.annulus, u.grid);
  for (int i = 0; i < nr; ++i)
    p.col(i) += (m(i) * inv_eps2) *
                ((u.values.col(i).abs2() - 1.0) * u.values.col(i));

  for (int i = 0; i < nr; ++i) p.col(i) /= m(i);
  return p;
}

}  // namespace

ComplexField gl_gradient(const ComplexField& u, double epsilon) {
  if (!(epsilon > 0.0))
    throw std::invalid_argument("gl_gradient: epsilon must be > 0");
  if (!admissible(u))
    throw std::invalid_argument("gl_gradient: field is not admissible for J");

  ComplexField g(u.annulus, u.grid);
  g.values = raw_l2_gradient(u, epsilon);

  // keep only the phase component i*u at the boundary rows
  for (int i : {0, u.n_radial() - 1}) {
    ArrayXcd ub = u.values.col(i);
    ArrayXd t = (ub.conjugate() * g.values.col(i)).imag() / ub.abs2();
    g.values.col(i) = Complex(0.0, 1.0) * ub * t.cast<Complex>();
  }
  return g;
}

}  // namespace gla
