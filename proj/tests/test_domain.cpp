#include "gla/domain.hpp"

#include <doctest.h>

#include <cmath>

using namespace gla;

namespace {
const Annulus ref(1.0, std::exp(1.0));
}

TEST_CASE("capacity closed form") {
  CHECK(capacity(ref) == doctest::Approx(2.0 * pi).epsilon(1e-14));
  CHECK(capacity(Annulus(1.0, std::exp(2.0))) == doctest::Approx(pi).epsilon(1e-14));
  CHECK(capacity(Annulus(1.0, 1.1)) > capacity(Annulus(1.0, 2.0)));
}

TEST_CASE("annulus invariants") {
  CHECK_THROWS_AS(Annulus(0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(Annulus(2.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(Grid(8, 64), std::invalid_argument);
  CHECK_THROWS_AS(Grid(64, 16), std::invalid_argument);
}

TEST_CASE("discrete V matches the analytic solution") {
  const Grid g(129, 256);
  const ScalarField V = solve_V(ref, g);

  double max_err = 0.0;
  const double L = ref.log_width();
  for (int i = 0; i < g.n_radial; ++i) {
    const double exact = (s_node(ref, g, i) - std::log(ref.r_inner)) / L;
    max_err = std::max(max_err,
                       (V.values.col(i) - exact).abs().maxCoeff());
  }
  CHECK(max_err < 1e-6);

  CHECK(V.values.col(0).abs().maxCoeff() == 0.0);
  CHECK((V.values.col(g.n_radial - 1) - 1.0).abs().maxCoeff() == 0.0);

  // half level sits at r = sqrt(R1 R2)
  const double r_half = std::sqrt(ref.r_inner * ref.r_outer);
  int i_half = -1;
  for (int i = 0; i + 1 < g.n_radial; ++i)
    if (V.values(0, i) <= 0.5 && V.values(0, i + 1) > 0.5) i_half = i;
  REQUIRE(i_half >= 0);
  CHECK(radius_node(ref, g, i_half) <= r_half * 1.0001);
  CHECK(radius_node(ref, g, i_half + 1) >= r_half * 0.9999);
}

TEST_CASE("V is monotone in r") {
  const Grid g(65, 64);
  const ScalarField V = solve_V(ref, g);
  for (int i = 0; i + 1 < g.n_radial; ++i)
    CHECK((V.values.col(i + 1) - V.values.col(i)).minCoeff() > 0.0);
}

TEST_CASE("capacity from the discrete Dirichlet energy of V") {
  const Grid g(129, 256);
  const ScalarField V = solve_V(ref, g);
  const double cap = capacity_from_field(V);
  CHECK(std::abs(cap - 2.0 * pi) / (2.0 * pi) < 1e-3);

  // at least second-order under refinement (the log-polar grid is exact on
  // radial data, so the error here is solver tolerance, not truncation)
  for (int nr : {33, 65, 129}) {
    const Grid gr(nr, 64);
    const double err =
        std::abs(capacity_from_field(solve_V(ref, gr)) - 2.0 * pi);
    const double h = log_spacing(ref, gr);
    CHECK(err <= 10.0 * h * h);
  }
}

TEST_CASE("half-level contour") {
  const Grid g(129, 256);
  const ScalarField V = solve_V(ref, g);
  const Contour c = half_level_contour(V);

  REQUIRE(c.nodes.size() == static_cast<size_t>(g.n_angular));
  const int i_star = c.nodes.front().first;
  CHECK(i_star > 0);
  CHECK(i_star < g.n_radial - 1);

  const double r_star = radius_node(ref, g, i_star);
  const double r_half = std::sqrt(ref.r_inner * ref.r_outer);
  CHECK(std::abs(r_star - r_half) <= log_spacing(ref, g) * r_half * 1.01);

  CHECK(contour_signed_area(ref, g, c) > 0.0);
}
