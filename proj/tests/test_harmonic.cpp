#include "gla/harmonic.hpp"

#include "gla/domain.hpp"
#include "gla/topology.hpp"

#include <doctest.h>

using namespace gla;

namespace {
const Annulus ref(1.0, std::exp(1.0));
}

TEST_CASE("i0 closed form") {
  CHECK(i0(0, ref) == 0.0);
  CHECK(i0(1, ref) == doctest::Approx(pi).epsilon(1e-14));
  CHECK(i0(2, ref) == doctest::Approx(4.0 * i0(1, ref)).epsilon(1e-14));
}

TEST_CASE("i0 is continuous in the capacity") {
  double prev_gap = 1e9;
  for (int k = 1; k <= 6; ++k) {
    const Annulus a(1.0, std::exp(1.0 + std::pow(2.0, -k)));
    const double gap = std::abs(i0(1, a) - i0(1, ref));
    CHECK(gap < prev_gap);
    prev_gap = gap;
  }
  CHECK(prev_gap < 0.1);
}

TEST_CASE("harmonic minimizer energy, degree and zeros") {
  const Grid g(129, 256);
  for (int d : {1, 2}) {
    const ComplexField u = harmonic_minimizer(d, ref, g);
    CHECK(energy(u, 0.05).dirichlet == doctest::Approx(i0(d, ref)).epsilon(0.01));
    const ScalarField V = solve_V(ref, g);
    CHECK(abdeg(u, V) == doctest::Approx(d).epsilon(1e-3));
    CHECK(find_vortices(u).entries.empty());
  }
  // deterministic global phase: equal to 1 at (r_outer, theta = 0)
  const ComplexField u1 = harmonic_minimizer(1, ref, g);
  CHECK(u1.values(0, g.n_radial - 1) == Complex(1, 0));
}

TEST_CASE("h0 profile") {
  const Grid g(129, 256);
  const int d = 2;
  const ScalarField h0 = h0_field(d, ref, g);

  CHECK((h0.values.col(g.n_radial - 1) - 1.0).abs().maxCoeff() < 1e-14);
  CHECK(h0.values(0, 0) ==
        doctest::Approx(1.0 - d * ref.log_width()).epsilon(1e-12));

  // (1/2) int |grad h0|^2 = I0(d)
  CHECK(dirichlet_energy(h0) == doctest::Approx(i0(d, ref)).epsilon(0.01));

  // h0 = 1 + 2 pi d (V - 1)/cap(A)
  const ScalarField V = solve_V(ref, g);
  double max_err = 0.0;
  for (int i = 0; i < g.n_radial; ++i) {
    const ArrayXd expected =
        1.0 + 2.0 * pi * d * (V.values.col(i) - 1.0) / capacity(ref);
    max_err = std::max(max_err, (h0.values.col(i) - expected).abs().maxCoeff());
  }
  CHECK(max_err < 1e-6);
}

TEST_CASE("current potential of the harmonic minimizer is h0") {
  const Grid g(257, 512);
  const int d = 1;
  const CurrentPotential cp = current_potential(harmonic_minimizer(d, ref, g));
  const ScalarField h0 = h0_field(d, ref, g);
  double max_err = 0.0;
  for (int i = 0; i < g.n_radial; ++i)
    max_err = std::max(
        max_err, (cp.h.values.col(i) - h0.values.col(i)).abs().maxCoeff());
  CHECK(max_err < 1e-4);
}

TEST_CASE("harmonic baseline bundle") {
  const Grid g(65, 64);
  const HarmonicBaseline hb = harmonic_baseline(2, ref, g);
  CHECK(hb.d == 2);
  CHECK(hb.i0 == doctest::Approx(4.0 * pi));
  CHECK(hb.minimizer.values.abs().maxCoeff() == doctest::Approx(1.0));
}
