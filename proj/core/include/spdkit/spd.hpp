#pragma once

#include <Eigen/Cholesky>
#include <Eigen/Dense>

#include "spdkit/error.hpp"

namespace spdkit {

// Relative asymmetry admitted by make_spd: max|a_ij - a_ji| <= tol * max|a_ij|.
inline constexpr double kSymmetryTol = 1e-12;

// Kronecker products refuse to build results with more than this many rows or
// columns; keeps Hessian assembly (n^2 x n^2) from exploding silently.
inline constexpr int kKronDimCap = 4096;

// Validated real symmetric positive definite matrix. make_spd symmetrizes the
// input exactly by averaging and requires a successful Cholesky factorization
// (all pivots > 0); instances are immutable and safe to share across threads.
// The Cholesky factor computed during validation is cached, so log-dets and
// divergence evaluations reuse it instead of refactoring.
class SpdMatrix {
 public:
  int dim() const { return static_cast<int>(mat_.rows()); }
  const Eigen::MatrixXd& matrix() const { return mat_; }
  double operator()(int i, int j) const { return mat_(i, j); }

  // Lower-triangular Cholesky factor L with A = L L^T, diag(L) > 0.
  const Eigen::LLT<Eigen::MatrixXd>& llt() const { return llt_; }

  static SpdMatrix identity(int n);

  friend SpdMatrix make_spd(const Eigen::MatrixXd& raw);

 private:
  explicit SpdMatrix(Eigen::MatrixXd m);

  Eigen::MatrixXd mat_;
  Eigen::LLT<Eigen::MatrixXd> llt_;
};

// Validates and wraps a raw square array as an SpdMatrix.
// Throws NotSquareError, NotSymmetricError, or NotPositiveDefiniteError.
SpdMatrix make_spd(const Eigen::MatrixXd& raw);

// Eigendecomposition of a symmetric matrix with eigenvalues sorted in
// descending order; eigenvector columns are paired with the eigenvalues.
struct EigenDecomposition {
  Eigen::VectorXd eigenvalues;
  Eigen::MatrixXd eigenvectors;
};

// Congruence transform P with P^T A P = I and P^T B P = diag(diagonal).
struct CongruencePair {
  Eigen::MatrixXd transform;
  Eigen::VectorXd diagonal;
};

// Lower Cholesky factor of a validated matrix (cached; never fails).
Eigen::MatrixXd cholesky(const SpdMatrix& a);

// log det(A) accumulated from the Cholesky diagonal; immune to det overflow.
double log_det(const SpdMatrix& a);

// Symmetric eigensolve; eigenvalues of an SpdMatrix are checked to be > 0.
// Throws ConvergenceError if the iteration budget is exceeded.
EigenDecomposition sym_eig(const SpdMatrix& a);
EigenDecomposition sym_eig(const Eigen::MatrixXd& symmetric);

// Matrix functions evaluated through the spectral decomposition U f(L) U^T.
Eigen::MatrixXd mat_log(const SpdMatrix& a);
SpdMatrix mat_exp_sym(const Eigen::MatrixXd& symmetric);
SpdMatrix mat_pow(const SpdMatrix& a, double exponent);
SpdMatrix mat_sqrt(const SpdMatrix& a);
SpdMatrix mat_inv(const SpdMatrix& a);

enum class MatrixFn { kLog, kExp, kPower, kSqrt, kInverse };

// Enum-dispatched front end over the named matrix functions above.
// `exponent` is read only for MatrixFn::kPower.
Eigen::MatrixXd mat_fn(const SpdMatrix& a, MatrixFn fn, double exponent = 1.0);

// Simultaneous diagonalization by congruence: whitens by A, then rotates to
// diagonalize the whitened B. B only needs to be symmetric.
CongruencePair simultaneous_diagonalize(const SpdMatrix& a,
                                        const Eigen::MatrixXd& b_symmetric);

// u_i = log of the generalized eigenvalues of (A, B), sorted descending.
// Computed by Cholesky whitening of B, never by explicit inversion.
Eigen::VectorXd log_relative_spectrum(const SpdMatrix& a, const SpdMatrix& b);

// Kronecker product; throws DimensionOverflowError above the cap.
Eigen::MatrixXd kron(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b,
                     int dim_cap = kKronDimCap);

// Loewner order test: a <= b iff lambda_min(b - a) >= -tol * max(1, ||b-a||_F).
bool loewner_leq(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b,
                 double tol = 1e-10);

}  // namespace spdkit
