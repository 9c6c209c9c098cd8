#ifndef GLA_HARMONIC_HPP
#define GLA_HARMONIC_HPP

#include "gla/field.hpp"

namespace gla {

/// Minimal Dirichlet energy among S1-valued maps with degree d on both
/// boundary circles: 2 (pi d)^2 / cap(A).
inline double i0(int d, const Annulus& a) {
  const double pd = pi * d;
  return 2.0 * pd * pd / capacity(a);
}

/// The S1-valued minimizer e^{i d theta}, phase fixed to 1 at (r_outer, 0).
ComplexField harmonic_minimizer(int d, const Annulus& a, const Grid& g);

/// h0(r) = 1 + d log(r / r_outer): harmonic, 1 on the outer circle, constant
/// on the inner one, with outward flux 2 pi d.
ScalarField h0_field(int d, const Annulus& a, const Grid& g);

struct HarmonicBaseline {
  int d = 0;
  double i0 = 0.0;
  ScalarField h0;
  ComplexField minimizer;
};

HarmonicBaseline harmonic_baseline(int d, const Annulus& a, const Grid& g);

}  // namespace gla

#endif
