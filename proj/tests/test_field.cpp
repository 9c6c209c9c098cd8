#include "gla/field.hpp"

#include "gla/harmonic.hpp"
#include "helpers.hpp"

#include <doctest.h>

using namespace gla;
using gla::testing::make_smooth_field;
using gla::testing::make_tangential_perturbation;
using gla::testing::vortex_probe_field;

namespace {
const Annulus ref(1.0, std::exp(1.0));

ComplexField constant_field(Complex c, const Annulus& a, const Grid& g) {
  ComplexField u(a, g);
  u.values = c;
  return u;
}
}  // namespace

TEST_CASE("energy of reference maps") {
  const Grid g(129, 256);

  SUBCASE("constant unimodular map has zero energy") {
    const EnergyReport e = energy(constant_field(Complex(1, 0), ref, g), 0.1);
    CHECK(e.total == 0.0);
    CHECK(e.dirichlet == 0.0);
    CHECK(e.potential == 0.0);
  }

  SUBCASE("pure phase winding: dirichlet = pi d^2 log(R2/R1)") {
    const ComplexField u = harmonic_minimizer(1, ref, g);
    const EnergyReport e = energy(u, 0.1);
    CHECK(e.dirichlet == doctest::Approx(pi).epsilon(1e-3));
    CHECK(e.potential < 1e-20);
  }

  SUBCASE("zero map: potential = |A| / (4 eps^2)") {
    const double eps = 0.2;
    const EnergyReport e = energy(constant_field(Complex(0, 0), ref, g), eps);
    CHECK(e.dirichlet == 0.0);
    CHECK(e.potential ==
          doctest::Approx(area(ref) / (4 * eps * eps)).epsilon(1e-4));
  }

  SUBCASE("decomposition is exact") {
    const ComplexField u = make_smooth_field(7, 1, ref, g);
    const EnergyReport e = energy(u, 0.05);
    CHECK(e.total == e.dirichlet + e.potential);
    CHECK(e.dirichlet >= 0.0);
    CHECK(e.potential >= 0.0);
  }
}

TEST_CASE("renormalize_boundary") {
  const Grid g(33, 64);
  ComplexField u = constant_field(Complex(1, 0), ref, g);

  SUBCASE("admissible fields unchanged") {
    const ComplexField v = renormalize_boundary(u);
    CHECK((v.values - u.values).abs().maxCoeff() == 0.0);
  }
  SUBCASE("off-circle boundary values are projected") {
    u.values(3, 0) = Complex(2, 0);
    const ComplexField v = renormalize_boundary(u);
    CHECK(v.values(3, 0) == Complex(1, 0));
    CHECK(admissible(v));
  }
  SUBCASE("zero boundary value is an error") {
    u.values(5, 0) = Complex(0, 0);
    CHECK_THROWS_AS(renormalize_boundary(u), std::domain_error);
  }
}

TEST_CASE("gl_gradient on closed forms") {
  const Grid g(129, 256);

  SUBCASE("constant map is stationary") {
    const ComplexField u = constant_field(Complex(1, 0), ref, g);
    const ComplexField grad = gl_gradient(u, 0.1);
    CHECK(grad.values.abs().maxCoeff() < 1e-13);
  }

  SUBCASE("interior residual of e^{i theta} has magnitude 1/r^2") {
    const ComplexField u = harmonic_minimizer(1, ref, g);
    const ComplexField grad = gl_gradient(u, 0.1);
    for (int i : {g.n_radial / 4, g.n_radial / 2, 3 * g.n_radial / 4}) {
      const double r = u.radius(i);
      const double mag = grad.values.col(i).abs().maxCoeff();
      CHECK(mag == doctest::Approx(1.0 / (r * r)).epsilon(1e-3));
    }
  }

  SUBCASE("rejects non-admissible fields") {
    ComplexField u = constant_field(Complex(1, 0), ref, g);
    u.values(0, 0) = Complex(0.5, 0);
    CHECK_THROWS_AS(gl_gradient(u, 0.1), std::invalid_argument);
  }
}

TEST_CASE("boundary gradient is orthogonal to u") {
  const Grid g(65, 128);
  const ComplexField u = make_smooth_field(11, 1, ref, g);
  const ComplexField ua = renormalize_boundary(u);
  const ComplexField grad = gl_gradient(ua, 0.1);
  for (int i : {0, g.n_radial - 1}) {
    const double dot =
        (grad.values.col(i).conjugate() * ua.values.col(i)).real().abs().maxCoeff();
    CHECK(dot < 1e-12);
  }
}

TEST_CASE("gradient matches central finite differences") {
  const Grid g(65, 128);
  const double eps = 0.15;
  const double t = 1e-5;
  int worst_seed = -1;
  double worst = 0.0;
  for (unsigned seed = 0; seed < 50; ++seed) {
    const ComplexField u =
        renormalize_boundary(make_smooth_field(100 + seed, 1, ref, g));
    const ComplexField w = make_tangential_perturbation(200 + seed, u);
    const ComplexField grad = gl_gradient(u, eps);
    const double lhs = l2_inner(grad, w);

    ComplexField up = u, um = u;
    up.values += t * w.values;
    um.values -= t * w.values;
    const double rhs =
        (energy(up, eps).total - energy(um, eps).total) / (2.0 * t);
    const double rel = std::abs(lhs - rhs) / std::max(1e-14, std::abs(rhs));
    if (rel > worst) {
      worst = rel;
      worst_seed = static_cast<int>(seed);
    }
  }
  INFO("worst seed ", worst_seed);
  CHECK(worst < 1e-4);
}

TEST_CASE("energy lower bound by boundary-degree mismatch") {
  // degree 1 outside vs 0 inside forces total >= pi |q - p| - c(grid)
  const Complex z0 = std::polar(std::sqrt(std::exp(1.0)), 0.7);
  double prev_margin = -1e9;
  for (int nr : {65, 129}) {
    const Grid g(nr, 2 * (nr - 1));
    const ComplexField u = vortex_probe_field(z0, 0.15, ref, g);
    const double total = energy(u, 0.1).total;
    const double margin = total - pi;
    CHECK(margin > -0.05);
    CHECK(margin > prev_margin - 1e-9);
    prev_margin = margin;
  }
}
