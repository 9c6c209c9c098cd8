#include "gla/harmonic.hpp"

#include <cmath>

namespace gla {

ComplexField harmonic_minimizer(int d, const Annulus& a, const Grid& g) {
  ComplexField u(a, g);
  for (int j = 0; j < g.n_angular; ++j) {
    const double t = theta_node(g, j);
    const Complex v = std::polar(1.0, d * t);
    u.values.row(j) = v;
  }
  return u;
}

ScalarField h0_field(int d, const Annulus& a, const Grid& g) {
  ScalarField h(a, g);
  const double s_out = std::log(a.r_outer);
  for (int i = 0; i < g.n_radial; ++i)
    h.values.col(i) = 1.0 + d * (s_node(a, g, i) - s_out);
  return h;
}

HarmonicBaseline harmonic_baseline(int d, const Annulus& a, const Grid& g) {
  return HarmonicBaseline{d, i0(d, a), h0_field(d, a, g),
                          harmonic_minimizer(d, a, g)};
}

}  // namespace gla
