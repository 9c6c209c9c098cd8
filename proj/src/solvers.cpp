#include "gla/solvers.hpp"

namespace gla {

int pcg(const std::function<void(const ArrayXXd&, ArrayXXd&)>& apply,
        const ArrayXXd& rhs, const ArrayXXd& inv_diag, ArrayXXd& x,
        double rel_tol, int max_iters) {
  ArrayXXd r(rhs.rows(), rhs.cols()), z(rhs.rows(), rhs.cols()),
      p(rhs.rows(), rhs.cols()), ap(rhs.rows(), rhs.cols());
  apply(x, ap);
  r = rhs - ap;
  const double rhs_norm = std::sqrt((rhs * rhs).sum());
  const double stop = rel_tol * (rhs_norm > 0 ? rhs_norm : 1.0);
  z = inv_diag * r;
  p = z;
  double rz = (r * z).sum();
  for (int it = 0; it < max_iters; ++it) {
    if (std::sqrt((r * r).sum()) <= stop) return it;
    apply(p, ap);
    const double pap = (p * ap).sum();
    if (pap <= 0.0) throw SolverError("pcg: operator lost positive definiteness");
    const double alpha = rz / pap;
    x += alpha * p;
    r -= alpha * ap;
    z = inv_diag * r;
    const double rz_new = (r * z).sum();
    p = z + (rz_new / rz) * p;
    rz = rz_new;
  }
  if (std::sqrt((r * r).sum()) <= stop) return max_iters;
  throw SolverError("pcg: no convergence within iteration cap");
}

ScalarField solve_laplace_dirichlet(const Annulus& a, const Grid& g,
                                    double inner_value, double outer_value,
                                    double rel_tol, int max_iters) {
  const int nr = g.n_radial, nt = g.n_angular;
  const double hs = log_spacing(a, g), ht = angular_spacing(g);
  const double cs = 1.0 / (hs * hs), ct = 1.0 / (ht * ht);

  // unknowns are columns 1..nr-2; boundary columns enter through the rhs
  auto apply = [&](const ArrayXXd& v, ArrayXXd& out) {
    out.setZero();
    for (int i = 1; i < nr - 1; ++i) {
      auto c = v.col(i);
      out.col(i) = (2.0 * cs + 2.0 * ct) * c;
      if (i > 1) out.col(i) -= cs * v.col(i - 1);
      if (i < nr - 2) out.col(i) -= cs * v.col(i + 1);
      out.col(i).head(nt - 1) -= ct * c.tail(nt - 1);
      out(nt - 1, i) -= ct * c(0);
      out.col(i).tail(nt - 1) -= ct * c.head(nt - 1);
      out(0, i) -= ct * c(nt - 1);
    }
  };

  ArrayXXd rhs = ArrayXXd::Zero(nt, nr);
  rhs.col(1) = cs * inner_value;
  rhs.col(nr - 2) += cs * outer_value;

  ArrayXXd inv_diag = ArrayXXd::Zero(nt, nr);
  for (int i = 1; i < nr - 1; ++i)
    inv_diag.col(i) = 1.0 / (2.0 * cs + 2.0 * ct);

  ArrayXXd x = ArrayXXd::Zero(nt, nr);
  pcg(apply, rhs, inv_diag, x, rel_tol, max_iters);

  ScalarField V(a, g);
  V.values = x;
  V.values.col(0) = inner_value;
  V.values.col(nr - 1) = outer_value;
  return V;
}

Tridiag::Tridiag(int n, double diag_first, double diag_mid, double diag_last,
                 double off)
    : n_(n), off_(off), l_(ArrayXd::Zero(n)), inv_d_(ArrayXd::Zero(n)) {
  ArrayXd d(n);
  d(0) = diag_first;
  for (int i = 1; i < n - 1; ++i) d(i) = diag_mid;
  d(n - 1) = diag_last;
  for (int i = 1; i < n; ++i) {
    l_(i) = off / d(i - 1);
    d(i) -= l_(i) * off;
  }
  inv_d_ = 1.0 / d;
}

CyclicTridiag::CyclicTridiag(int n, double diag, double off)
    : n_(n), off_(off), l_(ArrayXd::Zero(n)), inv_d_(ArrayXd::Zero(n)),
      q_(ArrayXd::Zero(n - 1)) {
  // Bordered elimination: rows 0..n-2 form a plain tridiagonal system with
  // the wrap coupling to unknown n-1 shifted into a border column.
  ArrayXd d(n - 1);
  for (int i = 0; i < n - 1; ++i) d(i) = diag;
  for (int i = 1; i < n - 1; ++i) {
    l_(i) = off / d(i - 1);
    d(i) -= l_(i) * off;
  }
  for (int i = 0; i < n - 1; ++i) inv_d_(i) = 1.0 / d(i);

  // q = T^{-1} b where b is the coupling column of unknown n-1
  q_.setZero();
  q_(0) = off;
  q_(n - 2) += off;
  for (int i = 1; i < n - 1; ++i) q_(i) -= l_(i) * q_(i - 1);
  q_(n - 2) *= inv_d_(n - 2);
  for (int i = n - 3; i >= 0; --i)
    q_(i) = (q_(i) - off * q_(i + 1)) * inv_d_(i);

  inv_last_ = 1.0 / (diag - off * (q_(0) + q_(n - 2)));
}

AdiPreconditioner::AdiPreconditioner(const Annulus& a, const Grid& g,
                                     double tau_s, double tau_theta) {
  const double hs = log_spacing(a, g), ht = angular_spacing(g);
  const double cs = tau_s / (hs * hs), ct = tau_theta / (ht * ht);
  radial_ = Tridiag(g.n_radial, 1.0 + cs, 1.0 + 2.0 * cs, 1.0 + cs, -cs);
  angular_ = CyclicTridiag(g.n_angular, 1.0 + 2.0 * ct, -ct);
}

void AdiPreconditioner::apply_inplace(ArrayXXcd& g) const {
  angular_.solve_cols_inplace(g);
  radial_.solve_rows_inplace(g);
}

void AdiPreconditioner::apply_inplace(ArrayXXd& g) const {
  angular_.solve_cols_inplace(g);
  radial_.solve_rows_inplace(g);
}

}  // namespace gla
