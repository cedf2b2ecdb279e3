#include "spdkit/spd.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <string>

namespace spdkit {

namespace {

Eigen::MatrixXd symmetrized(const Eigen::MatrixXd& m) {
  return 0.5 * (m + m.transpose());
}

EigenDecomposition descending_eig(const Eigen::MatrixXd& symmetric) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(symmetric);
  if (solver.info() != Eigen::Success) {
    throw ConvergenceError("symmetric eigensolver exceeded its iteration budget");
  }
  const int n = static_cast<int>(symmetric.rows());
  EigenDecomposition d;
  d.eigenvalues = solver.eigenvalues().reverse();
  d.eigenvectors.resize(n, n);
  for (int j = 0; j < n; ++j) {
    d.eigenvectors.col(j) = solver.eigenvectors().col(n - 1 - j);
  }
  return d;
}

// U f(Lambda) U^T for an already-computed decomposition.
Eigen::MatrixXd spectral_map(const EigenDecomposition& d,
                             const Eigen::VectorXd& mapped) {
  return symmetrized(d.eigenvectors * mapped.asDiagonal() *
                     d.eigenvectors.transpose());
}

}  // namespace

SpdMatrix::SpdMatrix(Eigen::MatrixXd m) : mat_(std::move(m)), llt_(mat_) {}

SpdMatrix SpdMatrix::identity(int n) {
  return make_spd(Eigen::MatrixXd::Identity(n, n));
}

SpdMatrix make_spd(const Eigen::MatrixXd& raw) {
  if (raw.rows() == 0 || raw.rows() != raw.cols()) {
    throw NotSquareError("make_spd: expected a nonempty square matrix, got " +
                         std::to_string(raw.rows()) + "x" +
                         std::to_string(raw.cols()));
  }
  if (!raw.allFinite()) {
    throw NotPositiveDefiniteError("make_spd: matrix has non-finite entries");
  }
  const double scale = raw.cwiseAbs().maxCoeff();
  const double asym = (raw - raw.transpose()).cwiseAbs().maxCoeff();
  if (asym > kSymmetryTol * scale) {
    throw NotSymmetricError("make_spd: asymmetry " + std::to_string(asym) +
                            " exceeds " + std::to_string(kSymmetryTol * scale));
  }
  SpdMatrix result(symmetrized(raw));
  if (result.llt_.info() != Eigen::Success) {
    throw NotPositiveDefiniteError(
        "make_spd: Cholesky factorization failed (matrix is not positive "
        "definite)");
  }
  return result;
}

Eigen::MatrixXd cholesky(const SpdMatrix& a) {
  return a.llt().matrixL();
}

double log_det(const SpdMatrix& a) {
  return 2.0 * Eigen::MatrixXd(a.llt().matrixL()).diagonal().array().log().sum();
}

EigenDecomposition sym_eig(const SpdMatrix& a) {
  EigenDecomposition d = descending_eig(a.matrix());
  if (d.eigenvalues(a.dim() - 1) <= 0.0) {
    throw ConvergenceError(
        "sym_eig: nonpositive eigenvalue for a validated SPD matrix");
  }
  return d;
}

EigenDecomposition sym_eig(const Eigen::MatrixXd& symmetric) {
  if (symmetric.rows() != symmetric.cols()) {
    throw NotSquareError("sym_eig: matrix is not square");
  }
  return descending_eig(symmetric);
}

Eigen::MatrixXd mat_log(const SpdMatrix& a) {
  EigenDecomposition d = sym_eig(a);
  return spectral_map(d, d.eigenvalues.array().log().matrix());
}

SpdMatrix mat_exp_sym(const Eigen::MatrixXd& symmetric) {
  EigenDecomposition d = sym_eig(symmetric);
  return make_spd(spectral_map(d, d.eigenvalues.array().exp().matrix()));
}

SpdMatrix mat_pow(const SpdMatrix& a, double exponent) {
  if (exponent == 1.0) return a;
  if (exponent == 0.0) return SpdMatrix::identity(a.dim());
  EigenDecomposition d = sym_eig(a);
  return make_spd(
      spectral_map(d, d.eigenvalues.array().pow(exponent).matrix()));
}

SpdMatrix mat_sqrt(const SpdMatrix& a) { return mat_pow(a, 0.5); }

SpdMatrix mat_inv(const SpdMatrix& a) {
  EigenDecomposition d = sym_eig(a);
  return make_spd(spectral_map(d, d.eigenvalues.cwiseInverse()));
}

Eigen::MatrixXd mat_fn(const SpdMatrix& a, MatrixFn fn, double exponent) {
  switch (fn) {
    case MatrixFn::kLog:
      return mat_log(a);
    case MatrixFn::kExp:
      return mat_exp_sym(a.matrix()).matrix();
    case MatrixFn::kPower:
      return mat_pow(a, exponent).matrix();
    case MatrixFn::kSqrt:
      return mat_sqrt(a).matrix();
    case MatrixFn::kInverse:
      return mat_inv(a).matrix();
  }
  throw InvalidParameterError("mat_fn: unknown function tag");
}

CongruencePair simultaneous_diagonalize(const SpdMatrix& a,
                                        const Eigen::MatrixXd& b_symmetric) {
  if (b_symmetric.rows() != a.dim() || b_symmetric.cols() != a.dim()) {
    throw DimensionMismatchError(
        "simultaneous_diagonalize: dimension mismatch");
  }
  // Whiten by A, then rotate to diagonalize the whitened B.
  EigenDecomposition da = sym_eig(a);
  Eigen::MatrixXd whitener =
      da.eigenvectors * da.eigenvalues.array().rsqrt().matrix().asDiagonal();
  Eigen::MatrixXd m =
      symmetrized(whitener.transpose() * b_symmetric * whitener);
  EigenDecomposition dm = sym_eig(m);
  CongruencePair pair;
  pair.transform = whitener * dm.eigenvectors;
  pair.diagonal = dm.eigenvalues;
  return pair;
}

Eigen::VectorXd log_relative_spectrum(const SpdMatrix& a, const SpdMatrix& b) {
  if (a.dim() != b.dim()) {
    throw DimensionMismatchError("log_relative_spectrum: dimension mismatch");
  }
  // lambda(A B^-1) = lambda(L^-1 A L^-T) with B = L L^T; no explicit inverse.
  const auto& lb = b.llt().matrixL();
  Eigen::MatrixXd t = lb.solve(a.matrix());
  Eigen::MatrixXd whitened = symmetrized(lb.solve(t.transpose()));
  EigenDecomposition d = sym_eig(whitened);
  if (d.eigenvalues(a.dim() - 1) <= 0.0) {
    throw ConvergenceError(
        "log_relative_spectrum: nonpositive generalized eigenvalue");
  }
  return d.eigenvalues.array().log();
}

Eigen::MatrixXd kron(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b,
                     int dim_cap) {
  const Eigen::Index rows = a.rows() * b.rows();
  const Eigen::Index cols = a.cols() * b.cols();
  if (rows > dim_cap || cols > dim_cap) {
    throw DimensionOverflowError(
        "kron: result dimension " + std::to_string(rows) + "x" +
        std::to_string(cols) + " exceeds cap " + std::to_string(dim_cap));
  }
  Eigen::MatrixXd out(rows, cols);
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

bool loewner_leq(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b,
                 double tol) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionMismatchError("loewner_leq: dimension mismatch");
  }
  Eigen::MatrixXd diff = symmetrized(b - a);
  EigenDecomposition d = sym_eig(diff);
  const double lambda_min = d.eigenvalues(diff.rows() - 1);
  return lambda_min >= -tol * std::max(1.0, diff.norm());
}

}  // namespace spdkit
