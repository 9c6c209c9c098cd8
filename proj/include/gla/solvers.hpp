#ifndef GLA_SOLVERS_HPP
#define GLA_SOLVERS_HPP

#include "gla/grid.hpp"

#include <functional>
#include <stdexcept>
#include <string>

namespace gla {

struct SolverError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Preconditioned conjugate gradient on grid arrays. The operator, the
/// diagonal and the right-hand side must agree on which entries are unknowns;
/// constrained entries are kept at zero throughout.
int pcg(const std::function<void(const ArrayXXd&, ArrayXXd&)>& apply,
        const ArrayXXd& rhs, const ArrayXXd& inv_diag, ArrayXXd& x,
        double rel_tol, int max_iters);

/// Solves the flat 5-point Laplace problem in (s,theta) with Dirichlet values
/// on both boundary circles (theta-independent data), to algebraic residual
/// rel_tol * |rhs|. Throws SolverError past the iteration cap.
ScalarField solve_laplace_dirichlet(const Annulus& a, const Grid& g,
                                    double inner_value, double outer_value,
                                    double rel_tol = 1e-12,
                                    int max_iters = 200000);

/// Constant-coefficient symmetric tridiagonal solver for (diag, off) systems,
/// factored once and applied to many right-hand sides.
class Tridiag {
 public:
  Tridiag() = default;
  Tridiag(int n, double diag_first, double diag_mid, double diag_last,
          double off);

  /// In-place solve along the column direction of a (m x n) array block
  /// (each row of `rhs` is an independent system).
  template <typename Derived>
  void solve_rows_inplace(Eigen::ArrayBase<Derived>& rhs) const {
    const int n = n_;
    for (int i = 1; i < n; ++i)
      rhs.col(i) -= typename Derived::Scalar(l_(i)) * rhs.col(i - 1);
    rhs.col(n - 1) *= typename Derived::Scalar(inv_d_(n - 1));
    for (int i = n - 2; i >= 0; --i)
      rhs.col(i) =
          (rhs.col(i) - typename Derived::Scalar(off_) * rhs.col(i + 1)) *
          typename Derived::Scalar(inv_d_(i));
  }

 private:
  int n_ = 0;
  double off_ = 0.0;
  ArrayXd l_;      // elimination multipliers
  ArrayXd inv_d_;  // inverse pivots
};

/// Constant-coefficient symmetric cyclic tridiagonal solver (Sherman-Morrison
/// on top of Tridiag), factored once.
class CyclicTridiag {
 public:
  CyclicTridiag() = default;
  CyclicTridiag(int n, double diag, double off);

  /// In-place solve of each column of a (n x m) array block.
  template <typename Derived>
  void solve_cols_inplace(Eigen::ArrayBase<Derived>& rhs) const {
    using S = typename Derived::Scalar;
    const int n = n_;
    for (int c = 0; c < rhs.cols(); ++c) {
      auto col = rhs.col(c);
      // Thomas on the modified system
      for (int i = 1; i < n - 1; ++i) col(i) -= S(l_(i)) * col(i - 1);
      col(n - 2) *= S(inv_d_(n - 2));
      for (int i = n - 3; i >= 0; --i)
        col(i) = (col(i) - S(off_) * col(i + 1)) * S(inv_d_(i));
      // last unknown via the bordered row, then correction
      S num = col(n - 1) - S(off_) * (col(0) + col(n - 2));
      S xl = num * S(inv_last_);
      for (int i = 0; i < n - 1; ++i) col(i) -= S(q_(i)) * xl;
      col(n - 1) = xl;
    }
  }

 private:
  int n_ = 0;
  double off_ = 0.0;
  double inv_last_ = 0.0;
  ArrayXd l_, inv_d_;
  ArrayXd q_;  // solve of the border column
};

/// Tensor-product smoothing operator (I + tau*A_s)^-1 (I + tau*A_theta)^-1
/// where A_s, A_theta are the flat 1D second-difference quadratic-form
/// operators (natural closure in s, periodic in theta). Symmetric positive
/// definite; used as the descent metric in the minimizer.
class AdiPreconditioner {
 public:
  AdiPreconditioner(const Annulus& a, const Grid& g, double tau_s,
                    double tau_theta);

  void apply_inplace(ArrayXXcd& g) const;
  void apply_inplace(ArrayXXd& g) const;

 private:
  Tridiag radial_;
  CyclicTridiag angular_;
};

}  // namespace gla

#endif
