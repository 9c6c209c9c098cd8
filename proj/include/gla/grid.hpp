#ifndef GLA_GRID_HPP
#define GLA_GRID_HPP

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

namespace gla {

using Complex = std::complex<double>;
using ArrayXXd = Eigen::ArrayXXd;
using ArrayXXcd = Eigen::ArrayXXcd;
using ArrayXd = Eigen::ArrayXd;
using ArrayXcd = Eigen::ArrayXcd;

inline constexpr double pi = std::numbers::pi;

/// Circular annulus A = { x : r_inner < |x| < r_outer }.
struct Annulus {
  double r_inner;
  double r_outer;

  Annulus(double r1, double r2) : r_inner(r1), r_outer(r2) {
    if (!(r1 > 0.0) || !(r2 > r1))
      throw std::invalid_argument("Annulus: need 0 < r_inner < r_outer");
  }

  /// log(r_outer / r_inner), the conformal width of the annulus.
  double log_width() const { return std::log(r_outer / r_inner); }
};

/// H^1-capacity, 2*pi / log(R2/R1).
inline double capacity(const Annulus& a) { return 2.0 * pi / a.log_width(); }

/// Uniform tensor grid in (s, theta) = (log r, theta). Radial samples include
/// both boundary circles; angular samples are periodic (node n_angular == node 0).
struct Grid {
  int n_radial;
  int n_angular;

  Grid(int nr, int nt) : n_radial(nr), n_angular(nt) {
    if (nr < 16) throw std::invalid_argument("Grid: n_radial must be >= 16");
    if (nt < 32) throw std::invalid_argument("Grid: n_angular must be >= 32");
  }
};

inline double log_spacing(const Annulus& a, const Grid& g) {
  return a.log_width() / (g.n_radial - 1);
}

inline double angular_spacing(const Grid& g) { return 2.0 * pi / g.n_angular; }

inline double s_node(const Annulus& a, const Grid& g, int i) {
  return std::log(a.r_inner) + i * log_spacing(a, g);
}

inline double radius_node(const Annulus& a, const Grid& g, int i) {
  return std::exp(s_node(a, g, i));
}

inline double theta_node(const Grid& g, int j) { return j * angular_spacing(g); }

/// Radial trapezoid weights (1/2 at both boundary rows, 1 inside).
inline ArrayXd radial_weights(const Grid& g) {
  ArrayXd w = ArrayXd::Ones(g.n_radial);
  w(0) = 0.5;
  w(g.n_radial - 1) = 0.5;
  return w;
}

/// Field sampled on the (s, theta) grid. values(j, i) is the sample at
/// theta_j = j*h_theta, s_i = log(r_inner) + i*h_s; columns are radial lines.
template <typename Scalar>
struct Field {
  Annulus annulus;
  Grid grid;
  Eigen::Array<Scalar, Eigen::Dynamic, Eigen::Dynamic> values;

  Field(const Annulus& a, const Grid& g)
      : annulus(a), grid(g),
        values(Eigen::Array<Scalar, Eigen::Dynamic, Eigen::Dynamic>::Zero(
            g.n_angular, g.n_radial)) {}

  int n_radial() const { return grid.n_radial; }
  int n_angular() const { return grid.n_angular; }
  double h_s() const { return log_spacing(annulus, grid); }
  double h_theta() const { return angular_spacing(grid); }
  double s(int i) const { return s_node(annulus, grid, i); }
  double radius(int i) const { return radius_node(annulus, grid, i); }
  double theta(int j) const { return theta_node(grid, j); }
};

using ScalarField = Field<double>;
using ComplexField = Field<Complex>;

inline bool same_layout(const Annulus& a, const Grid& ga, const Annulus& b,
                        const Grid& gb) {
  return a.r_inner == b.r_inner && a.r_outer == b.r_outer &&
         ga.n_radial == gb.n_radial && ga.n_angular == gb.n_angular;
}

template <typename S, typename T>
void require_same_layout(const Field<S>& u, const Field<T>& v,
                         const char* what) {
  if (!same_layout(u.annulus, u.grid, v.annulus, v.grid))
    throw std::invalid_argument(std::string(what) +
                                ": fields live on different grids");
}

/// L2 quadrature weight of node (j, i): trapezoid in s, uniform in theta,
/// conformal area factor e^{2s}.
inline ArrayXd mass_column_weights(const Annulus& a, const Grid& g) {
  const double hs = log_spacing(a, g), ht = angular_spacing(g);
  ArrayXd w = radial_weights(g);
  ArrayXd m(g.n_radial);
  for (int i = 0; i < g.n_radial; ++i) {
    const double r = radius_node(a, g, i);
    m(i) = w(i) * r * r * hs * ht;
  }
  return m;
}

/// Discrete L2 inner product (real part for complex fields).
template <typename Scalar>
double l2_inner(const Field<Scalar>& u, const Field<Scalar>& v) {
  require_same_layout(u, v, "l2_inner");
  const ArrayXd m = mass_column_weights(u.annulus, u.grid);
  double acc = 0.0;
  for (int i = 0; i < u.n_radial(); ++i) {
    if constexpr (std::is_same_v<Scalar, Complex>)
      acc += m(i) * (u.values.col(i).conjugate() * v.values.col(i)).real().sum();
    else
      acc += m(i) * (u.values.col(i) * v.values.col(i)).sum();
  }
  return acc;
}

template <typename Scalar>
double l2_norm(const Field<Scalar>& u) {
  return std::sqrt(l2_inner(u, u));
}

template <typename Scalar>
double l2_distance(const Field<Scalar>& u, const Field<Scalar>& v) {
  require_same_layout(u, v, "l2_distance");
  const ArrayXd m = mass_column_weights(u.annulus, u.grid);
  double acc = 0.0;
  for (int i = 0; i < u.n_radial(); ++i)
    acc += m(i) * (u.values.col(i) - v.values.col(i)).abs2().sum();
  return std::sqrt(acc);
}

/// Area of the annulus, pi (R2^2 - R1^2).
inline double area(const Annulus& a) {
  return pi * (a.r_outer * a.r_outer - a.r_inner * a.r_inner);
}

}  // namespace gla

#endif
