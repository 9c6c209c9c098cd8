#include "gla/topology.hpp"

#include "gla/solvers.hpp"

#include <cmath>
#include <functional>
#include <map>
#include <numeric>

namespace gla {

namespace {

// Centered difference along theta (periodic).
ArrayXXcd dtheta(const ComplexField& u) {
  const int nt = u.n_angular(), nr = u.n_radial();
  const double c = 1.0 / (2.0 * u.h_theta());
  ArrayXXcd d(nt, nr);
  for (int i = 0; i < nr; ++i) {
    auto col = u.values.col(i);
    for (int j = 0; j < nt; ++j) {
      const int jp = (j + 1) % nt, jm = (j + nt - 1) % nt;
      d(j, i) = c * (col(jp) - col(jm));
    }
  }
  return d;
}

// Centered difference along s, one-sided at the boundary rows.
template <typename Scalar>
Eigen::Array<Scalar, Eigen::Dynamic, Eigen::Dynamic> ds(
    const Field<Scalar>& u) {
  const int nt = u.n_angular(), nr = u.n_radial();
  const double hs = u.h_s();
  Eigen::Array<Scalar, Eigen::Dynamic, Eigen::Dynamic> d(nt, nr);
  d.col(0) = (u.values.col(1) - u.values.col(0)) / hs;
  for (int i = 1; i + 1 < nr; ++i)
    d.col(i) = (u.values.col(i + 1) - u.values.col(i - 1)) / (2.0 * hs);
  d.col(nr - 1) = (u.values.col(nr - 1) - u.values.col(nr - 2)) / hs;
  return d;
}

ArrayXXd dtheta_scalar(const ScalarField& V) {
  const int nt = V.n_angular(), nr = V.n_radial();
  const double c = 1.0 / (2.0 * V.h_theta());
  ArrayXXd d(nt, nr);
  for (int i = 0; i < nr; ++i) {
    auto col = V.values.col(i);
    for (int j = 0; j < nt; ++j) {
      const int jp = (j + 1) % nt, jm = (j + nt - 1) % nt;
      d(j, i) = c * (col(jp) - col(jm));
    }
  }
  return d;
}

}  // namespace

int boundary_degree(const ComplexField& u, const Contour& contour,
                    double* deviation) {
  double sum = 0.0;
  const int n = static_cast<int>(contour.nodes.size());
  for (int k = 0; k < n; ++k) {
    auto [i1, j1] = contour.nodes[k];
    auto [i2, j2] = contour.nodes[(k + 1) % n];
    const Complex a = u.values(j1, i1), b = u.values(j2, i2);
    if (std::abs(a) < 1e-6 || std::abs(b) < 1e-6)
      throw std::domain_error(
          "boundary_degree: near-zero modulus on contour, degree undefined");
    sum += std::arg(b * std::conj(a));
  }
  const double turns = sum / (2.0 * pi);
  const double nearest = std::round(turns);
  if (deviation) *deviation = std::abs(turns - nearest);
  return static_cast<int>(nearest);
}

double abdeg(const ComplexField& u, const ScalarField& V) {
  require_same_layout(u, V, "abdeg");
  const int nr = u.n_radial(), nt = u.n_angular();
  const double hs = u.h_s(), ht = u.h_theta();
  const ArrayXd w = radial_weights(u.grid);

  const ArrayXXcd ut = dtheta(u);
  const ArrayXXcd us = ds(u);
  const ArrayXXd vs = ds(V);
  const ArrayXXd vt = dtheta_scalar(V);

  double acc = 0.0;
  for (int i = 0; i < nr; ++i) {
    ArrayXd cross =
        vs.col(i) * (u.values.col(i).conjugate() * ut.col(i)).imag() -
        vt.col(i) * (u.values.col(i).conjugate() * us.col(i)).imag();
    acc += w(i) * cross.sum();
  }
  return acc * hs * ht / (2.0 * pi);
}

double abdeg_radial_average(const ComplexField& u) {
  const int nr = u.n_radial();
  const double hs = u.h_s(), ht = u.h_theta();
  const double L = u.annulus.log_width();
  const ArrayXd w = radial_weights(u.grid);
  const ArrayXXcd ut = dtheta(u);

  double acc = 0.0;
  for (int i = 0; i < nr; ++i) {
    const double circle =
        (u.values.col(i).conjugate() * ut.col(i)).imag().sum() * ht /
        (2.0 * pi);
    acc += w(i) * circle * hs;
  }
  return acc / L;
}

double abdeg_lipschitz_bound(const ComplexField& u, const ComplexField& v,
                             double epsilon, const ScalarField& V) {
  require_same_layout(u, v, "abdeg_lipschitz_bound");
  const ArrayXXd vs = ds(V);
  const ArrayXXd vt = dtheta_scalar(V);
  double c1 = V.values.abs().maxCoeff();
  for (int i = 0; i < V.n_radial(); ++i) {
    const double inv_r = 1.0 / V.radius(i);
    const double g =
        (inv_r * (vs.col(i).square() + vt.col(i).square()).sqrt()).maxCoeff();
    c1 = std::max(c1, g);
  }
  const double eu = energy(u, epsilon).total, ev = energy(v, epsilon).total;
  return (c1 / pi) * (std::sqrt(eu) + std::sqrt(ev)) * l2_distance(u, v);
}

VortexSet find_vortices(const ComplexField& u, double modulus_threshold) {
  if (!(modulus_threshold > 0.0 && modulus_threshold < 1.0))
    throw std::invalid_argument("find_vortices: threshold must be in (0,1)");
  const int nr = u.n_radial(), nt = u.n_angular();
  const int np_r = nr - 1;

  auto val = [&](int i, int j) { return u.values(((j % nt) + nt) % nt, i); };

  // plaquette windings, counterclockwise in (s,theta)
  Eigen::ArrayXXi wind = Eigen::ArrayXXi::Zero(nt, np_r);
  std::vector<std::pair<int, int>> flagged;
  for (int i = 0; i < np_r; ++i) {
    for (int j = 0; j < nt; ++j) {
      const Complex c0 = val(i, j), c1 = val(i + 1, j), c2 = val(i + 1, j + 1),
                    c3 = val(i, j + 1);
      if (c0 == Complex(0) || c1 == Complex(0) || c2 == Complex(0) ||
          c3 == Complex(0)) {
        // zero exactly on a node: count it through the neighbors
        continue;
      }
      double s = std::arg(c1 * std::conj(c0)) + std::arg(c2 * std::conj(c1)) +
                 std::arg(c3 * std::conj(c2)) + std::arg(c0 * std::conj(c3));
      const int wn = static_cast<int>(std::lround(s / (2.0 * pi)));
      if (wn != 0) {
        wind(j, i) = wn;
        flagged.emplace_back(i, j);
      }
    }
  }

  // 8-neighbor clustering with theta wraparound
  const int m = static_cast<int>(flagged.size());
  std::vector<int> parent(m);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };
  Eigen::ArrayXXi id = Eigen::ArrayXXi::Constant(nt, np_r, -1);
  for (int k = 0; k < m; ++k) id(flagged[k].second, flagged[k].first) = k;
  for (int k = 0; k < m; ++k) {
    auto [i, j] = flagged[k];
    for (int di = -1; di <= 1; ++di) {
      for (int dj = -1; dj <= 1; ++dj) {
        const int ii = i + di;
        if (ii < 0 || ii >= np_r) continue;
        const int jj = ((j + dj) % nt + nt) % nt;
        const int other = id(jj, ii);
        if (other >= 0 && other != k) parent[find(k)] = find(other);
      }
    }
  }

  struct Acc {
    double wx = 0, wy = 0, wsum = 0;
    int winding = 0;
    double min_mod = std::numeric_limits<double>::infinity();
  };
  std::map<int, Acc> clusters;
  for (int k = 0; k < m; ++k) {
    auto [i, j] = flagged[k];
    Acc& a = clusters[find(k)];
    const int wn = wind(j, i);
    const double sc = s_node(u.annulus, u.grid, i) + 0.5 * u.h_s();
    const double tc = theta_node(u.grid, j) + 0.5 * u.h_theta();
    const double rc = std::exp(sc);
    const double weight = std::abs(wn);
    a.wx += weight * rc * std::cos(tc);
    a.wy += weight * rc * std::sin(tc);
    a.wsum += weight;
    a.winding += wn;
    for (int ci : {i, i + 1})
      for (int cj : {j, j + 1})
        a.min_mod = std::min(a.min_mod, std::abs(val(ci, cj)));
  }

  VortexSet vs;
  for (auto& [key, a] : clusters) {
    if (a.winding == 0) continue;       // balanced dipole cell noise
    if (a.min_mod >= modulus_threshold) continue;
    Vortex v;
    v.x = a.wx / a.wsum;
    v.y = a.wy / a.wsum;
    v.winding = a.winding;
    const double r = std::hypot(v.x, v.y);
    v.boundary_distance =
        std::min(r - u.annulus.r_inner, u.annulus.r_outer - r);
    v.min_modulus = a.min_mod;
    vs.entries.push_back(v);
  }
  return vs;
}

CurrentPotential current_potential(const ComplexField& u) {
  if (!admissible(u))
    throw std::invalid_argument("current_potential: field not admissible");
  const int nr = u.n_radial(), nt = u.n_angular();
  const double hs = u.h_s(), ht = u.h_theta();
  const ArrayXd w = radial_weights(u.grid);

  // covariant current components in (s,theta): g_s = u x d_theta u,
  // g_theta = -(u x d_s u), sampled at nodes then averaged onto edges
  const ArrayXXcd ut = dtheta(u);
  const ArrayXXcd us = ds(u);
  ArrayXXd gs(nt, nr), gt(nt, nr);
  for (int i = 0; i < nr; ++i) {
    gs.col(i) = (u.values.col(i).conjugate() * ut.col(i)).imag();
    gt.col(i) = -(u.values.col(i).conjugate() * us.col(i)).imag();
  }

  // least-squares normal equations; unknown columns 0..nr-2, h = 1 on outer
  const double cs = 1.0 / (hs * hs), ct = 1.0 / (ht * ht);
  auto apply = [&](const ArrayXXd& v, ArrayXXd& out) {
    out.setZero();
    for (int i = 0; i < nr - 1; ++i) {
      auto c = v.col(i);
      double diag = 2.0 * w(i) * ct;
      if (i > 0) diag += cs;
      if (i < nr - 1) diag += cs;  // edge to i+1 (outer column is data)
      out.col(i) = diag * c;
      if (i > 0) out.col(i) -= cs * v.col(i - 1);
      if (i < nr - 2) out.col(i) -= cs * v.col(i + 1);
      const double cw = w(i) * ct;
      out.col(i).head(nt - 1) -= cw * c.tail(nt - 1);
      out(nt - 1, i) -= cw * c(0);
      out.col(i).tail(nt - 1) -= cw * c.head(nt - 1);
      out(0, i) -= cw * c(nt - 1);
    }
  };

  ArrayXXd rhs = ArrayXXd::Zero(nt, nr);
  for (int i = 0; i < nr - 1; ++i) {
    ArrayXd a_edge_up = 0.5 * (gs.col(i) + gs.col(i + 1));  // edge (i, i+1)
    rhs.col(i) -= a_edge_up / hs;
    if (i > 0) {
      ArrayXd a_edge_dn = 0.5 * (gs.col(i - 1) + gs.col(i));
      rhs.col(i) += a_edge_dn / hs;
    }
    ArrayXd b(nt), b_prev(nt);
    for (int j = 0; j < nt; ++j) {
      const int jp = (j + 1) % nt, jm = (j + nt - 1) % nt;
      b(j) = 0.5 * (gt(j, i) + gt(jp, i));
      b_prev(j) = 0.5 * (gt(jm, i) + gt(j, i));
    }
    rhs.col(i) += w(i) * (b_prev - b) / ht;
  }
  rhs.col(nr - 2) += cs * 1.0;  // outer Dirichlet value folded in

  ArrayXXd inv_diag = ArrayXXd::Zero(nt, nr);
  for (int i = 0; i < nr - 1; ++i) {
    double diag = 2.0 * w(i) * ct + cs;
    if (i > 0) diag += cs;
    inv_diag.col(i) = 1.0 / diag;
  }

  // initial guess: radial profile integrated from the mean of g_s
  ArrayXXd x = ArrayXXd::Zero(nt, nr);
  ArrayXd profile(nr);
  profile(nr - 1) = 1.0;
  for (int i = nr - 2; i >= 0; --i)
    profile(i) =
        profile(i + 1) - hs * 0.5 * (gs.col(i).mean() + gs.col(i + 1).mean());
  for (int i = 0; i < nr - 1; ++i) x.col(i) = profile(i);

  pcg(apply, rhs, inv_diag, x, 1e-12, 200000);

  CurrentPotential cp{ScalarField(u.annulus, u.grid), 0.0, 0.0};
  cp.h.values = x;
  cp.h.values.col(nr - 1) = 1.0;
  cp.inner_trace_mean = cp.h.values.col(0).mean();
  cp.inner_trace_deviation =
      (cp.h.values.col(0) - cp.inner_trace_mean).abs().maxCoeff();
  return cp;
}

double h_v_pairing(const ScalarField& h, const ScalarField& V) {
  require_same_layout(h, V, "h_v_pairing");
  const int nr = h.n_radial(), nt = h.n_angular();
  const double hs = h.h_s(), ht = h.h_theta();
  const ArrayXd w = radial_weights(h.grid);
  double acc = 0.0;
  for (int i = 0; i + 1 < nr; ++i)
    acc += ((h.values.col(i + 1) - h.values.col(i)) *
            (V.values.col(i + 1) - V.values.col(i)))
               .sum() *
           ht / hs;
  for (int i = 0; i < nr; ++i) {
    auto hc = h.values.col(i);
    auto vc = V.values.col(i);
    double dsum = ((hc.tail(nt - 1) - hc.head(nt - 1)) *
                   (vc.tail(nt - 1) - vc.head(nt - 1)))
                      .sum();
    dsum += (hc(0) - hc(nt - 1)) * (vc(0) - vc(nt - 1));
    acc += w(i) * dsum * hs / ht;
  }
  return acc / (2.0 * pi);
}

}  // namespace gla
