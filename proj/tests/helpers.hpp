#ifndef GLA_TEST_HELPERS_HPP
#define GLA_TEST_HELPERS_HPP

#include "gla/field.hpp"

#include <random>

namespace gla::testing {

/// Smooth admissible field with boundary degree `d` on both circles: a random
/// low-mode phase on top of e^{i d theta}, and a modulus dip supported away
/// from the boundary rows.
inline ComplexField make_smooth_field(unsigned seed, int d, const Annulus& a,
                                      const Grid& g, double amplitude = 0.3) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const int kmax = 4;

  // phase modes c_{k,m} sin/cos combinations, smooth and 2pi-periodic
  std::vector<double> cs, cc, ss, sc;
  for (int k = 1; k <= kmax; ++k) {
    cs.push_back(amplitude * gauss(rng) / (k * k));
    cc.push_back(amplitude * gauss(rng) / (k * k));
    ss.push_back(amplitude * gauss(rng) / (k * k));
    sc.push_back(amplitude * gauss(rng) / (k * k));
  }
  const double dip = 0.3 + 0.4 * std::uniform_real_distribution<>(0, 1)(rng);
  const double dip_phase = std::uniform_real_distribution<>(0, 2 * pi)(rng);

  ComplexField u(a, g);
  const double L = a.log_width(), s0 = std::log(a.r_inner);
  for (int i = 0; i < g.n_radial; ++i) {
    const double x = (s_node(a, g, i) - s0) / L;  // in [0,1]
    const double env = std::sin(pi * x);          // vanishes at both circles
    for (int j = 0; j < g.n_angular; ++j) {
      const double t = theta_node(g, j);
      double phase = d * t;
      for (int k = 1; k <= kmax; ++k) {
        phase += env * (cs[k - 1] * std::sin(k * t) + cc[k - 1] * std::cos(k * t));
        phase += std::sin(pi * k * x) * (ss[k - 1] * std::sin(k * t) +
                                         sc[k - 1] * std::cos(k * t)) / k;
      }
      const double rho =
          1.0 - dip * env * env * (0.5 + 0.5 * std::cos(t - dip_phase));
      u.values(j, i) = std::polar(rho, phase);
    }
  }
  return u;
}

/// Random perturbation field, tangential (along i*u) at the boundary rows.
inline ComplexField make_tangential_perturbation(unsigned seed,
                                                 const ComplexField& u) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  ComplexField w(u.annulus, u.grid);
  for (int i = 0; i < u.n_radial(); ++i)
    for (int j = 0; j < u.n_angular(); ++j)
      w.values(j, i) = Complex(gauss(rng), gauss(rng));

  // keep only a handful of smooth modes: smooth by heavy local averaging
  for (int pass = 0; pass < 8; ++pass) {
    ArrayXXcd v = w.values;
    const int nt = u.n_angular(), nr = u.n_radial();
    for (int i = 0; i < nr; ++i) {
      const int il = std::max(0, i - 1), ir = std::min(nr - 1, i + 1);
      for (int j = 0; j < nt; ++j) {
        const int jp = (j + 1) % nt, jm = (j + nt - 1) % nt;
        w.values(j, i) = 0.2 * (v(j, i) + v(jp, i) + v(jm, i) + v(j, il) +
                                v(j, ir));
      }
    }
  }
  for (int i : {0, u.n_radial() - 1}) {
    ArrayXcd ub = u.values.col(i);
    ArrayXd t = (ub.conjugate() * w.values.col(i)).imag() / ub.abs2();
    w.values.col(i) = Complex(0, 1) * ub * t.cast<Complex>();
  }
  return w;
}

/// Phase vortex (z - z0)/|z - z0| with a modulus dip of the given core size;
/// admissible, degree 1 on the outer circle and 0 on the inner one when z0
/// lies inside the annulus.
inline ComplexField vortex_probe_field(Complex z0, double core,
                                       const Annulus& a, const Grid& g) {
  ComplexField u(a, g);
  for (int i = 0; i < g.n_radial; ++i) {
    const double r = radius_node(a, g, i);
    for (int j = 0; j < g.n_angular; ++j) {
      const double t = theta_node(g, j);
      const Complex z = std::polar(r, t);
      const Complex dz = z - z0;
      const double m = std::abs(dz);
      const double rho = std::min(1.0, m / core);
      u.values(j, i) = (m == 0.0) ? Complex(0, 0) : rho * dz / m;
    }
  }
  return renormalize_boundary(u);
}

}  // namespace gla::testing

#endif
