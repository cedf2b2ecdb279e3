#pragma once

#include <string>

#include "spdkit/spd.hpp"

namespace spdkit {

// Scalar seed functions for the Bregman / Jensen constructions.
enum class BregmanFn {
  kHalfSquare,    // f(x) = x^2/2      -> squared Frobenius / 2
  kXLogXMinusX,   // f(x) = x log x - x -> von Neumann divergence
  kNegLog,        // f(x) = -log x      -> LogDet divergence (Stein's loss)
};

enum class DivergenceKind {
  kSDiv,
  kSDelta,
  kRiemannian,
  kLogEuclid,
  kThompson,
  kFrobeniusSq,
  kVonNeumann,
  kLogDetStein,
  kJensenF,
};

// S(X,Y) = log det((X+Y)/2) - 1/2 log det(XY), from three Cholesky
// factorizations. Nonnegative; tiny negative roundoff (>= -1e-12) clamps to 0.
double s_div(const SpdMatrix& x, const SpdMatrix& y);

// delta_S = sqrt(S); a metric on the SPD cone.
double delta_s_metric(const SpdMatrix& x, const SpdMatrix& y);

// Scalar metric delta_s(x,y) = sqrt(log[(x+y)/(2 sqrt(xy))]), x, y > 0.
double scalar_delta_s(double x, double y);

// Affine-invariant Riemannian distance ||log(Y^{-1/2} X Y^{-1/2})||_F,
// evaluated as the 2-norm of the log relative spectrum.
double riemannian(const SpdMatrix& x, const SpdMatrix& y);

// ||log X - log Y||_F.
double log_euclidean(const SpdMatrix& x, const SpdMatrix& y);

// Thompson metric: infinity norm of the log relative spectrum.
double thompson(const SpdMatrix& x, const SpdMatrix& y);

// Matrix Bregman divergence D_f(X,Y) = tr f(X) - tr f(Y) - tr(f'(Y)(X-Y)).
// Log-based seed functions require positive definite inputs
// (NonPositiveInputError otherwise); kHalfSquare accepts any symmetric pair.
double bregman(BregmanFn f, const Eigen::MatrixXd& x, const Eigen::MatrixXd& y);
double bregman(BregmanFn f, const SpdMatrix& x, const SpdMatrix& y);

// Jensen symmetrization S_f(X,Y) = (tr f(X) + tr f(Y))/2 - tr f((X+Y)/2).
// For f = -log x this equals s_div.
double jensen_div(BregmanFn f, const Eigen::MatrixXd& x,
                  const Eigen::MatrixXd& y);
double jensen_div(BregmanFn f, const SpdMatrix& x, const SpdMatrix& y);

// Gradient of S(X,Y) in X: (X+Y)^-1 - X^-1/2.
Eigen::MatrixXd s_div_grad(const SpdMatrix& x, const SpdMatrix& y);

// Hessian of S(A,B) in A as an n^2 x n^2 matrix:
//   H = (A^-1 (x) A^-1)/2 - (A+B)^-1 (x) (A+B)^-1.
// Positive semidefinite for A <= (1+sqrt(2))B, negative semidefinite for
// A >= (1+sqrt(2))B.
Eigen::MatrixXd s_div_hessian(const SpdMatrix& a, const SpdMatrix& b,
                              int dim_cap = kKronDimCap);

// Tag-dispatched evaluation; `f` is read only for kJensenF.
double divergence(DivergenceKind kind, const SpdMatrix& x, const SpdMatrix& y,
                  BregmanFn f = BregmanFn::kNegLog);

DivergenceKind divergence_kind_from_string(const std::string& name);
std::string to_string(DivergenceKind kind);

}  // namespace spdkit
