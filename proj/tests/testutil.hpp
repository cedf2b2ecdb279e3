#pragma once

#include <functional>

#include <Eigen/Dense>

#include "spdkit/random.hpp"
#include "spdkit/spd.hpp"

namespace spdkit::test {

inline Eigen::MatrixXd mat2(double a, double b, double c, double d) {
  Eigen::MatrixXd m(2, 2);
  m << a, b, c, d;
  return m;
}

inline Eigen::MatrixXd diag(std::initializer_list<double> values) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (double x : values) v(i++) = x;
  return v.asDiagonal();
}

inline SpdMatrix spd1(double x) {
  return make_spd(Eigen::MatrixXd::Constant(1, 1, x));
}

inline SpdMatrix spd_diag(std::initializer_list<double> values) {
  return make_spd(diag(values));
}

// Entrywise central-difference gradient of f over symmetric perturbations;
// the off-diagonal derivative pairs (i,j) and (j,i), so the matching analytic
// gradient entry is half the paired directional derivative.
inline Eigen::MatrixXd fd_gradient(
    const std::function<double(const Eigen::MatrixXd&)>& f,
    const Eigen::MatrixXd& x, double step) {
  const Eigen::Index n = x.rows();
  Eigen::MatrixXd g(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i; j < n; ++j) {
      Eigen::MatrixXd direction = Eigen::MatrixXd::Zero(n, n);
      direction(i, j) = 1.0;
      direction(j, i) = 1.0;
      const double d =
          (f(x + step * direction) - f(x - step * direction)) / (2.0 * step);
      // <G, E_ij + E_ji> is 2 G_ij off the diagonal but G_ii on it.
      g(i, j) = (i == j) ? d : 0.5 * d;
      g(j, i) = g(i, j);
    }
  }
  return g;
}

// Second-order central difference of the quadratic form d^2/de^2 f(x + e*d).
inline double fd_quadratic_form(
    const std::function<double(const Eigen::MatrixXd&)>& f,
    const Eigen::MatrixXd& x, const Eigen::MatrixXd& direction, double step) {
  return (f(x + step * direction) + f(x - step * direction) - 2.0 * f(x)) /
         (step * step);
}

// vec(D)^T H vec(D) for a column-major vec.
inline double quad_form(const Eigen::MatrixXd& h, const Eigen::MatrixXd& d) {
  Eigen::VectorXd v = Eigen::Map<const Eigen::VectorXd>(d.data(), d.size());
  return v.dot(h * v);
}

}  // namespace spdkit::test
