#ifndef GLA_TESTMAPS_HPP
#define GLA_TESTMAPS_HPP

#include "gla/field.hpp"

namespace gla {

/// Moebius disk automorphism C_t(z) = (z - (1-t)) / (z(1-t) - 1); maps the
/// closed unit disk onto itself, unimodular on |z| = 1, zero at 1-t.
Complex blaschke(Complex z, double t);

/// Conjugated Moebius boundary map F_t(z) = C_t(conj z); deg(F_t, S1) = -1.
inline Complex moebius_f(Complex z, double t) {
  return blaschke(std::conj(z), t);
}

/// Boundary datum of the one-vortex test map, e^{i d theta} F_t(e^{i theta}).
Complex moebius_boundary_datum(double theta, double t, int d);

/// Parameters of the boundary-layer test map construction.
struct MoebiusParams {
  double t = 0.05;     // vortex-depth parameter, in (0,1)
  double delta = 0.45; // boundary-layer width in the current potential h
  double lambda = 0.0; // penalty weight; 0 selects max(2 d^2, ...) default
  int K = 400;         // series truncation

  void validate(int d) const;
  double lambda_for(int d) const {
    return lambda > 0.0 ? lambda : 2.0 * double(d) * double(d);
  }
};

/// Exponential layer profile f_k on [1-delta, 1]: the minimizer of
/// int d^2 |f'|^2 + ((k-d+1)^2 + lambda - d^2) |f|^2 with f(1-delta) = 0,
/// f(1) = 1. Written as sinh(mu (h-1+delta)) / sinh(mu delta).
double profile_fk(int k, int d, double delta, double lambda, double h);

/// d/dh of profile_fk at h = 1; the one-dimensional mode energy is
/// Phi_k(f_k) = d^2 f_k'(1).
double profile_fk_slope_at_one(int k, int d, double delta, double lambda);

/// Quadrature of the mode functional Phi_k over [1-delta, 1] (independent
/// oracle for the closed form).
double phi_k_quadrature(int k, int d, double delta, double lambda,
                        int n_points = 4096);

/// Tabulated profiles for k = -K..K on a given set of layer levels.
struct ProfileTable {
  int d = 0;
  int K = 0;
  ArrayXd h_values;
  ArrayXXd values;  // (2K+1) rows, one per k; columns follow h_values

  double f(int k, int h_index) const { return values(k + K, h_index); }
};

ProfileTable make_profile_table(int d, const MoebiusParams& p,
                                const ArrayXd& h_values);

/// The truncated boundary-layer map w_t: equal to e^{i d theta} outside the
/// layer {1 - delta < h < 1} near the outer circle (h = 1 + d log(r/R2)),
/// and to the truncated series inside. Carries degrees (d, d-1) on
/// (inner, outer). Throws if the truncation tail exceeds 1e-3 or the layer
/// holds fewer than 8 radial grid lines.
ComplexField build_wt(int d, const MoebiusParams& p, const Annulus& a,
                      const Grid& g);

/// Penalized layer functional M_lambda(w) of the test-map construction,
/// evaluated by trapezoid quadrature of the truncated series over the strip
/// [1-delta, 1] x [0, 2 pi).
double m_lambda_quadrature(int d, const MoebiusParams& p, int n_h = 257,
                           int n_theta = 1024);

/// Mode-sum form of M_lambda (separated variables): independent route used
/// to cross-check the quadrature.
double m_lambda_series(int d, const MoebiusParams& p);

/// Near-boundary vortex example on the unit-disk chart: the Blaschke factor
/// v(z) = (conj zeta/|zeta|)(z - zeta)/(conj(zeta) z - 1) sampled on an
/// annular window of the disk (the grid's outer radius should be 1).
ComplexField appendix_a_field(Complex zeta, const Annulus& chart,
                              const Grid& g);

struct AppendixADiagnostics {
  Complex vortex;                 // prescribed zero
  Complex ghost;                  // 1 / conj(zeta), outside the disk
  double boundary_defect = 0.0;   // max | |v|-1 | on |z| = 1
  double factorization_defect = 0.0;  // residual of the pair factorization
};

/// Verifies the vortex/ghost-antivortex factorization of appendix_a_field:
/// v * conj(phase(z - zeta)) * phase(z - ghost) must be real on the grid.
AppendixADiagnostics appendix_a_diagnostics(const ComplexField& v,
                                            Complex zeta);

/// Dirichlet energy of the rigid vortex z/|z| on {core < |z| < 1}; grows like
/// pi log(1/core) as the cutoff shrinks.
double pinned_vortex_dirichlet(double core_cutoff, int n_radial = 257,
                               int n_angular = 256);

enum class BoundarySide { Inner, Outer };

/// Multiplies u by one transplanted Blaschke factor producing a single
/// near-boundary zero of the given winding at distance `offset` from the
/// chosen circle, then renormalizes the boundary rows.
ComplexField with_boundary_insertion(const ComplexField& u, BoundarySide side,
                                     int winding, double offset,
                                     double anchor_angle);

/// Admissible map in J_pq with abdeg in the d-window: the harmonic minimizer
/// of degree d times |q-d| outer and |p-d| inner Blaschke-type factors at
/// distance `offset` from the respective circles. Verifies the boundary
/// degrees and the abdeg window; throws on winding collision.
ComplexField admissible_map(int p, int q, int d, double offset,
                            const Annulus& a, const Grid& g,
                            double anchor_out = 0.0, double anchor_in = pi);

}  // namespace gla

#endif
