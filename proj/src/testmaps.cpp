#include "gla/testmaps.hpp"

#include "gla/harmonic.hpp"
#include "gla/topology.hpp"

#include <cmath>

namespace gla {

Complex blaschke(Complex z, double t) {
  if (!(t > 0.0 && t < 1.0))
    throw std::invalid_argument("blaschke: t must lie in (0,1)");
  const double a = 1.0 - t;
  const Complex den = z * a - 1.0;
  if (std::abs(den) == 0.0)
    throw std::domain_error("blaschke: pole hit (|z| must stay <= 1)");
  return (z - a) / den;
}

Complex moebius_boundary_datum(double theta, double t, int d) {
  return std::polar(1.0, d * theta) * moebius_f(std::polar(1.0, theta), t);
}

void MoebiusParams::validate(int d) const {
  if (!(t > 0.0 && t < 1.0))
    throw std::invalid_argument("MoebiusParams: t must lie in (0,1)");
  if (!(delta > 0.0 && delta < 0.5))
    throw std::invalid_argument("MoebiusParams: delta must lie in (0,1/2)");
  if (K < 50) throw std::invalid_argument("MoebiusParams: K must be >= 50");
  if (lambda > 0.0 && lambda < 2.0 * d * d)
    throw std::invalid_argument("MoebiusParams: lambda must be >= 2 d^2");
}

namespace {

double mode_mu(int k, int d, double lambda) {
  const double m = static_cast<double>(k - d + 1);
  const double rad = m * m + lambda - double(d) * d;
  if (!(rad > 0.0))
    throw std::invalid_argument("profile_fk: nonpositive radicand, need lambda >= 2 d^2");
  return std::sqrt(rad) / d;
}

// sinh(mu x) / sinh(mu delta), stable for large mu
double sinh_ratio(double mu, double x, double delta) {
  const double a = mu * x, b = mu * delta;
  if (b < 30.0) return std::sinh(a) / std::sinh(b);
  return std::exp(a - b) * (1.0 - std::exp(-2.0 * a)) /
         (1.0 - std::exp(-2.0 * b));
}

}  // namespace

double profile_fk(int k, int d, double delta, double lambda, double h) {
  const double mu = mode_mu(k, d, lambda);
  return sinh_ratio(mu, h - (1.0 - delta), delta);
}

double profile_fk_slope_at_one(int k, int d, double delta, double lambda) {
  const double mu = mode_mu(k, d, lambda);
  const double b = mu * delta;
  const double coth = (b < 30.0) ? (std::cosh(b) / std::sinh(b)) : 1.0;
  return mu * coth;
}

double phi_k_quadrature(int k, int d, double delta, double lambda,
                        int n_points) {
  const double mu = mode_mu(k, d, lambda);
  const double c2 = mu * mu * d * d;  // (k-d+1)^2 + lambda - d^2
  const double hstep = delta / (n_points - 1);
  double acc = 0.0;
  for (int i = 0; i < n_points; ++i) {
    const double h = 1.0 - delta + i * hstep;
    const double f = profile_fk(k, d, delta, lambda, h);
    const double x = h - (1.0 - delta);
    // derivative of the stable sinh ratio
    const double fp =
        mu * ((mu * delta < 30.0)
                  ? std::cosh(mu * x) / std::sinh(mu * delta)
                  : std::exp(mu * (x - delta)) * (1.0 + std::exp(-2 * mu * x)) /
                        (1.0 - std::exp(-2 * mu * delta)));
    const double w = (i == 0 || i == n_points - 1) ? 0.5 : 1.0;
    acc += w * (double(d) * d * fp * fp + c2 * f * f) * hstep;
  }
  return acc;
}

ProfileTable make_profile_table(int d, const MoebiusParams& p,
                                const ArrayXd& h_values) {
  p.validate(d);
  const double lambda = p.lambda_for(d);
  ProfileTable tab;
  tab.d = d;
  tab.K = p.K;
  tab.h_values = h_values;
  tab.values = ArrayXXd::Zero(2 * p.K + 1, h_values.size());
  for (int k = -p.K; k <= p.K; ++k)
    for (int idx = 0; idx < h_values.size(); ++idx)
      tab.values(k + p.K, idx) =
          profile_fk(k, d, p.delta, lambda, h_values(idx));
  return tab;
}

namespace {

double series_tail_bound(const MoebiusParams& p) {
  // coefficients decay like t(2-t)(1-t)^k; geometric tail beyond K
  return (2.0 - p.t) * std::pow(1.0 - p.t, p.K + 1);
}

// truncated layer series at one (h, theta) node, reusing tabulated profiles
Complex wt_series_at(const ProfileTable& tab, const MoebiusParams& p, int d,
                     int h_index, double theta) {
  const double t = p.t;
  const Complex base = std::polar(1.0, d * theta);
  Complex acc = (1.0 - t * tab.f(-1, h_index)) * base;
  const Complex rot = std::polar(1.0, -theta);
  // e^{-i (k - d + 1) theta}, starting at k = 0
  Complex mode = std::polar(1.0, -(0 - d + 1) * theta);
  double coef = t * (t - 2.0);
  for (int k = 0; k <= p.K; ++k) {
    acc += coef * tab.f(k, h_index) * mode;
    mode *= rot;
    coef *= (1.0 - t);
  }
  return acc;
}

}  // namespace

ComplexField build_wt(int d, const MoebiusParams& p, const Annulus& a,
                      const Grid& g) {
  if (d == 0) throw std::invalid_argument("build_wt: d must be nonzero");
  p.validate(d);
  if (series_tail_bound(p) > 1e-3)
    throw std::runtime_error("build_wt: truncation tail above 1e-3, increase K");

  // layer in the current potential h = 1 + d log(r/R2)
  const double s_out = std::log(a.r_outer);
  const double hs = log_spacing(a, g);
  std::vector<int> layer_rows;
  ArrayXd h_of_row(g.n_radial);
  for (int i = 0; i < g.n_radial; ++i) {
    h_of_row(i) = 1.0 + d * (s_node(a, g, i) - s_out);
    if (h_of_row(i) >= 1.0 - p.delta) layer_rows.push_back(i);
  }
  if (static_cast<int>(layer_rows.size()) < 8)
    throw std::runtime_error("build_wt: boundary layer holds fewer than 8 radial lines");
  (void)hs;

  ArrayXd h_values(layer_rows.size());
  for (size_t m = 0; m < layer_rows.size(); ++m)
    h_values(m) = h_of_row(layer_rows[m]);
  const ProfileTable tab = make_profile_table(d, p, h_values);

  ComplexField w = harmonic_minimizer(d, a, g);
  for (size_t m = 0; m < layer_rows.size(); ++m) {
    const int i = layer_rows[m];
    for (int j = 0; j < g.n_angular; ++j)
      w.values(j, i) =
          wt_series_at(tab, p, d, static_cast<int>(m), theta_node(g, j));
  }
  return renormalize_boundary(w);
}

double m_lambda_quadrature(int d, const MoebiusParams& p, int n_h,
                           int n_theta) {
  p.validate(d);
  const double lambda = p.lambda_for(d);
  const double dh = p.delta / (n_h - 1);
  const double dt = 2.0 * pi / n_theta;

  ArrayXd h_values(n_h);
  for (int i = 0; i < n_h; ++i) h_values(i) = 1.0 - p.delta + i * dh;
  const ProfileTable tab = make_profile_table(d, p, h_values);

  // sample the truncated series on the strip
  ArrayXXcd w(n_theta, n_h);
  for (int i = 0; i < n_h; ++i)
    for (int j = 0; j < n_theta; ++j)
      w(j, i) = wt_series_at(tab, p, d, i, j * dt);

  double grad_term = 0.0, penalty_term = 0.0;
  const double dd = static_cast<double>(d) * d;
  for (int i = 0; i + 1 < n_h; ++i)
    grad_term += dd * (w.col(i + 1) - w.col(i)).abs2().sum() / (dh * dh) * dh * dt;
  for (int i = 0; i < n_h; ++i) {
    const double wi = (i == 0 || i == n_h - 1) ? 0.5 : 1.0;
    auto c = w.col(i);
    double dsum = (c.tail(n_theta - 1) - c.head(n_theta - 1)).abs2().sum();
    dsum += std::norm(c(0) - c(n_theta - 1));
    grad_term += wi * dsum / (dt * dt) * dh * dt;
    ArrayXcd anchor(n_theta);
    for (int j = 0; j < n_theta; ++j) anchor(j) = std::polar(1.0, d * j * dt);
    penalty_term += wi *
                    (lambda * (c - anchor).abs2().sum() - dd * c.abs2().sum()) *
                    dh * dt;
  }
  return (grad_term + penalty_term) / (2.0 * d);
}

double m_lambda_series(int d, const MoebiusParams& p) {
  p.validate(d);
  const double lambda = p.lambda_for(d);
  const double t = p.t;
  double acc = profile_fk_slope_at_one(-1, d, p.delta, lambda) * d * d;
  double coef = (2.0 - t) * (2.0 - t);
  for (int k = 0; k <= p.K; ++k) {
    acc += coef * profile_fk_slope_at_one(k, d, p.delta, lambda) * d * d;
    coef *= (1.0 - t) * (1.0 - t);
  }
  return acc * t * t * pi / d;
}

ComplexField appendix_a_field(Complex zeta, const Annulus& chart,
                              const Grid& g) {
  if (!(std::abs(zeta) < 1.0))
    throw std::invalid_argument("appendix_a_field: zeta must lie inside the unit disk");
  ComplexField v(chart, g);
  const Complex front = std::conj(zeta) / std::abs(zeta);
  for (int i = 0; i < g.n_radial; ++i) {
    const double r = radius_node(chart, g, i);
    for (int j = 0; j < g.n_angular; ++j) {
      const Complex z = std::polar(r, theta_node(g, j));
      v.values(j, i) = front * (z - zeta) / (std::conj(zeta) * z - 1.0);
    }
  }
  return v;
}

AppendixADiagnostics appendix_a_diagnostics(const ComplexField& v,
                                            Complex zeta) {
  AppendixADiagnostics diag;
  diag.vortex = zeta;
  diag.ghost = 1.0 / std::conj(zeta);

  const Grid& g = v.grid;
  const int nr = g.n_radial;
  diag.boundary_defect =
      (v.values.col(nr - 1).abs() - 1.0).abs().maxCoeff();

  double defect = 0.0;
  for (int i = 0; i < nr; ++i) {
    const double r = radius_node(v.annulus, g, i);
    for (int j = 0; j < g.n_angular; ++j) {
      const Complex z = std::polar(r, theta_node(g, j));
      const Complex pv = z - zeta, pg = z - diag.ghost;
      const double mv = std::abs(pv), mg = std::abs(pg);
      if (mv < 1e-12 || mg < 1e-12) continue;
      const Complex omega =
          v.values(j, i) * std::conj(pv / mv) * (pg / mg);
      defect = std::max(defect, std::abs(omega.imag()));
    }
  }
  diag.factorization_defect = defect;
  return diag;
}

double pinned_vortex_dirichlet(double core_cutoff, int n_radial,
                               int n_angular) {
  if (!(core_cutoff > 0.0 && core_cutoff < 1.0))
    throw std::invalid_argument("pinned_vortex_dirichlet: cutoff must lie in (0,1)");
  const Annulus window(core_cutoff, 1.0);
  const Grid g(n_radial, n_angular);
  return energy(harmonic_minimizer(1, window, g), 1.0).dirichlet;
}

namespace {

Complex unit_blaschke(Complex w, Complex w0) {
  return (w - w0) / (std::conj(w0) * w - 1.0);
}

}  // namespace

ComplexField with_boundary_insertion(const ComplexField& u, BoundarySide side,
                                     int winding, double offset,
                                     double anchor_angle) {
  if (winding != 1 && winding != -1)
    throw std::invalid_argument("with_boundary_insertion: winding must be +-1");
  const Annulus& a = u.annulus;
  const Grid& g = u.grid;
  const double hs = log_spacing(a, g);
  const double local_spacing = (side == BoundarySide::Outer)
                                   ? a.r_outer * (1.0 - std::exp(-hs))
                                   : a.r_inner * (std::exp(hs) - 1.0);
  if (!(offset > local_spacing))
    throw std::invalid_argument(
        "with_boundary_insertion: offset must exceed the grid spacing near the boundary");
  if (!(offset < a.r_outer - a.r_inner))
    throw std::invalid_argument("with_boundary_insertion: offset too large");

  ComplexField v = u;
  if (side == BoundarySide::Outer) {
    // chart w = z/R2; a zero at radius R2 - offset. The plain factor carries
    // winding +1 and raises deg on the outer circle; the conjugate lowers it.
    const Complex w0 =
        std::polar(1.0 - offset / a.r_outer, anchor_angle);
    for (int i = 0; i < g.n_radial; ++i) {
      const double r = radius_node(a, g, i) / a.r_outer;
      for (int j = 0; j < g.n_angular; ++j) {
        const Complex w = std::polar(r, theta_node(g, j));
        const Complex b = unit_blaschke(w, w0);
        v.values(j, i) *= (winding > 0) ? b : std::conj(b);
      }
    }
  } else {
    // inverted chart w = R1/z; the plain factor lowers deg on the inner
    // circle (clockwise image orientation), the conjugate raises it.
    const Complex w0 =
        std::polar(a.r_inner / (a.r_inner + offset), -anchor_angle);
    for (int i = 0; i < g.n_radial; ++i) {
      const double r = a.r_inner / radius_node(a, g, i);
      for (int j = 0; j < g.n_angular; ++j) {
        const Complex w = std::polar(r, -theta_node(g, j));
        const Complex b = unit_blaschke(w, w0);
        v.values(j, i) *= (winding > 0) ? b : std::conj(b);
      }
    }
  }
  return renormalize_boundary(v);
}

ComplexField admissible_map(int p, int q, int d, double offset,
                            const Annulus& a, const Grid& g,
                            double anchor_out, double anchor_in) {
  ComplexField u = harmonic_minimizer(d, a, g);
  const int n_out = std::abs(q - d), n_in = std::abs(p - d);
  for (int m = 0; m < n_out; ++m)
    u = with_boundary_insertion(u, BoundarySide::Outer, q > d ? 1 : -1, offset,
                                anchor_out + 2.0 * pi * m / n_out);
  for (int m = 0; m < n_in; ++m)
    u = with_boundary_insertion(u, BoundarySide::Inner, p > d ? -1 : 1, offset,
                                anchor_in + 2.0 * pi * m / n_in);

  // verification: measured degrees and the abdeg window
  double dev = 0.0;
  const int q_meas = boundary_degree(u, outer_boundary_contour(g), &dev);
  const int p_meas = boundary_degree(u, inner_boundary_contour(g), &dev);
  if (q_meas != q || p_meas != p)
    throw std::runtime_error(
        "admissible_map: winding collision, requested degrees unreachable at "
        "this resolution");
  const double ab = abdeg_radial_average(u);
  if (!(ab >= d - 0.5 && ab <= d + 0.5))
    throw std::runtime_error("admissible_map: abdeg left the d-window");
  return u;
}

}  // namespace gla
