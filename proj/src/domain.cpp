#include "gla/domain.hpp"

#include "gla/solvers.hpp"

#include <cmath>

namespace gla {

Contour circle_contour(const Grid& g, int radial_index) {
  if (radial_index < 0 || radial_index >= g.n_radial)
    throw std::invalid_argument("circle_contour: radial index out of range");
  Contour c;
  c.nodes.reserve(g.n_angular);
  for (int j = 0; j < g.n_angular; ++j) c.nodes.emplace_back(radial_index, j);
  return c;
}

double contour_signed_area(const Annulus& a, const Grid& g, const Contour& c) {
  double acc = 0.0;
  const int n = static_cast<int>(c.nodes.size());
  for (int k = 0; k < n; ++k) {
    auto [i1, j1] = c.nodes[k];
    auto [i2, j2] = c.nodes[(k + 1) % n];
    const double r1 = radius_node(a, g, i1), t1 = theta_node(g, j1);
    const double r2 = radius_node(a, g, i2), t2 = theta_node(g, j2);
    const double x1 = r1 * std::cos(t1), y1 = r1 * std::sin(t1);
    const double x2 = r2 * std::cos(t2), y2 = r2 * std::sin(t2);
    acc += x1 * y2 - x2 * y1;
  }
  return 0.5 * acc;
}

ScalarField solve_V(const Annulus& a, const Grid& g) {
  return solve_laplace_dirichlet(a, g, 0.0, 1.0);
}

double dirichlet_energy(const ScalarField& V) {
  const int nr = V.n_radial(), nt = V.n_angular();
  const double hs = V.h_s(), ht = V.h_theta();
  const ArrayXd w = radial_weights(V.grid);
  double acc = 0.0;
  for (int i = 0; i + 1 < nr; ++i)
    acc += ((V.values.col(i + 1) - V.values.col(i)).square().sum()) * ht / hs;
  for (int i = 0; i < nr; ++i) {
    auto c = V.values.col(i);
    double dsum = (c.tail(nt - 1) - c.head(nt - 1)).square().sum();
    double wrap = c(0) - c(nt - 1);
    dsum += wrap * wrap;
    acc += w(i) * dsum * hs / ht;
  }
  return 0.5 * acc;
}

Contour half_level_contour(const ScalarField& V) {
  // V is monotone in r; pick the radial row whose mean is nearest 1/2.
  int best = 0;
  double best_gap = std::abs(V.values.col(0).mean() - 0.5);
  for (int i = 1; i < V.n_radial(); ++i) {
    const double gap = std::abs(V.values.col(i).mean() - 0.5);
    if (gap < best_gap) {
      best_gap = gap;
      best = i;
    }
  }
  if (best == 0 || best == V.n_radial() - 1)
    throw std::runtime_error("half_level_contour: level curve touches the boundary");
  return circle_contour(V.grid, best);
}

}  // namespace gla
