#include "spdkit/divergence.hpp"

#include <cmath>

namespace spdkit {

namespace {

constexpr double kNegClamp = 1e-12;

// Divergences are nonnegative in exact arithmetic; cancellation near X = Y
// can leave a tiny negative residue, which we clamp to zero.
double clamp_nonneg(double v) {
  if (v < 0.0 && v >= -kNegClamp) return 0.0;
  return v;
}

void require_same_dim(const SpdMatrix& x, const SpdMatrix& y,
                      const char* who) {
  if (x.dim() != y.dim()) {
    throw DimensionMismatchError(std::string(who) + ": dimension mismatch");
  }
}

void require_same_dim(const Eigen::MatrixXd& x, const Eigen::MatrixXd& y,
                      const char* who) {
  if (x.rows() != y.rows() || x.cols() != y.cols() || x.rows() != x.cols()) {
    throw DimensionMismatchError(std::string(who) +
                                 ": expected square matrices of equal size");
  }
}

// Eigendecomposition requiring a strictly positive spectrum.
EigenDecomposition positive_eig(const Eigen::MatrixXd& m, const char* who) {
  EigenDecomposition d = sym_eig(m);
  if (d.eigenvalues(m.rows() - 1) <= 0.0) {
    throw NonPositiveInputError(std::string(who) +
                                ": input is not positive definite");
  }
  return d;
}

double trace_f(BregmanFn f, const EigenDecomposition& d, const char* who) {
  switch (f) {
    case BregmanFn::kHalfSquare:
      return 0.5 * d.eigenvalues.squaredNorm();
    case BregmanFn::kXLogXMinusX:
      return (d.eigenvalues.array() * (d.eigenvalues.array().log() - 1.0))
          .sum();
    case BregmanFn::kNegLog:
      return -d.eigenvalues.array().log().sum();
  }
  throw InvalidParameterError(std::string(who) + ": unknown Bregman tag");
}

}  // namespace

double s_div(const SpdMatrix& x, const SpdMatrix& y) {
  require_same_dim(x, y, "s_div");
  SpdMatrix mid = make_spd(0.5 * (x.matrix() + y.matrix()));
  return clamp_nonneg(log_det(mid) - 0.5 * (log_det(x) + log_det(y)));
}

double delta_s_metric(const SpdMatrix& x, const SpdMatrix& y) {
  return std::sqrt(std::max(0.0, s_div(x, y)));
}

double scalar_delta_s(double x, double y) {
  if (!(x > 0.0) || !(y > 0.0)) {
    throw NonPositiveInputError("scalar_delta_s: inputs must be positive");
  }
  const double v = std::log(0.5 * (x + y)) - 0.5 * (std::log(x) + std::log(y));
  return std::sqrt(std::max(0.0, v));
}

double riemannian(const SpdMatrix& x, const SpdMatrix& y) {
  return log_relative_spectrum(x, y).norm();
}

double log_euclidean(const SpdMatrix& x, const SpdMatrix& y) {
  require_same_dim(x, y, "log_euclidean");
  return (mat_log(x) - mat_log(y)).norm();
}

double thompson(const SpdMatrix& x, const SpdMatrix& y) {
  return log_relative_spectrum(x, y).cwiseAbs().maxCoeff();
}

double bregman(BregmanFn f, const Eigen::MatrixXd& x, const Eigen::MatrixXd& y) {
  require_same_dim(x, y, "bregman");
  switch (f) {
    case BregmanFn::kHalfSquare:
      return clamp_nonneg(0.5 * (x - y).squaredNorm());
    case BregmanFn::kXLogXMinusX: {
      // von Neumann: tr(X log X - X log Y - X + Y)
      EigenDecomposition dx = positive_eig(x, "bregman(von Neumann)");
      EigenDecomposition dy = positive_eig(y, "bregman(von Neumann)");
      const double tr_xlogx =
          (dx.eigenvalues.array() * dx.eigenvalues.array().log()).sum();
      Eigen::MatrixXd log_y = dy.eigenvectors *
                              dy.eigenvalues.array().log().matrix().asDiagonal() *
                              dy.eigenvectors.transpose();
      const double tr_xlogy = (x.cwiseProduct(log_y)).sum();
      return clamp_nonneg(tr_xlogx - tr_xlogy - x.trace() + y.trace());
    }
    case BregmanFn::kNegLog: {
      // LogDet / Stein's loss: tr(Y^-1 X) - n - log det(X Y^-1)
      EigenDecomposition dx = positive_eig(x, "bregman(LogDet)");
      EigenDecomposition dy = positive_eig(y, "bregman(LogDet)");
      Eigen::MatrixXd y_inv =
          dy.eigenvectors * dy.eigenvalues.cwiseInverse().asDiagonal() *
          dy.eigenvectors.transpose();
      const double tr_yinv_x = (y_inv.cwiseProduct(x)).sum();
      const double log_det_x = dx.eigenvalues.array().log().sum();
      const double log_det_y = dy.eigenvalues.array().log().sum();
      return clamp_nonneg(tr_yinv_x - static_cast<double>(x.rows()) -
                          log_det_x + log_det_y);
    }
  }
  throw InvalidParameterError("bregman: unknown Bregman tag");
}

double bregman(BregmanFn f, const SpdMatrix& x, const SpdMatrix& y) {
  return bregman(f, x.matrix(), y.matrix());
}

double jensen_div(BregmanFn f, const Eigen::MatrixXd& x,
                  const Eigen::MatrixXd& y) {
  require_same_dim(x, y, "jensen_div");
  Eigen::MatrixXd mid = 0.5 * (x + y);
  if (f == BregmanFn::kHalfSquare) {
    EigenDecomposition dx = sym_eig(Eigen::MatrixXd(0.5 * (x + x.transpose())));
    EigenDecomposition dy = sym_eig(Eigen::MatrixXd(0.5 * (y + y.transpose())));
    EigenDecomposition dm = sym_eig(mid);
    return clamp_nonneg(0.5 * (trace_f(f, dx, "jensen_div") +
                               trace_f(f, dy, "jensen_div")) -
                        trace_f(f, dm, "jensen_div"));
  }
  EigenDecomposition dx = positive_eig(x, "jensen_div");
  EigenDecomposition dy = positive_eig(y, "jensen_div");
  EigenDecomposition dm = positive_eig(mid, "jensen_div");
  return clamp_nonneg(
      0.5 * (trace_f(f, dx, "jensen_div") + trace_f(f, dy, "jensen_div")) -
      trace_f(f, dm, "jensen_div"));
}

double jensen_div(BregmanFn f, const SpdMatrix& x, const SpdMatrix& y) {
  return jensen_div(f, x.matrix(), y.matrix());
}

Eigen::MatrixXd s_div_grad(const SpdMatrix& x, const SpdMatrix& y) {
  require_same_dim(x, y, "s_div_grad");
  const int n = x.dim();
  Eigen::MatrixXd sum = x.matrix() + y.matrix();
  Eigen::MatrixXd sum_inv =
      Eigen::LLT<Eigen::MatrixXd>(sum).solve(Eigen::MatrixXd::Identity(n, n));
  Eigen::MatrixXd x_inv = x.llt().solve(Eigen::MatrixXd::Identity(n, n));
  Eigen::MatrixXd g = sum_inv - 0.5 * x_inv;
  return 0.5 * (g + g.transpose());
}

Eigen::MatrixXd s_div_hessian(const SpdMatrix& a, const SpdMatrix& b,
                              int dim_cap) {
  require_same_dim(a, b, "s_div_hessian");
  const int n = a.dim();
  Eigen::MatrixXd a_inv = a.llt().solve(Eigen::MatrixXd::Identity(n, n));
  a_inv = 0.5 * (a_inv + a_inv.transpose());
  Eigen::MatrixXd sum = a.matrix() + b.matrix();
  Eigen::MatrixXd sum_inv =
      Eigen::LLT<Eigen::MatrixXd>(sum).solve(Eigen::MatrixXd::Identity(n, n));
  sum_inv = 0.5 * (sum_inv + sum_inv.transpose());
  Eigen::MatrixXd h =
      0.5 * kron(a_inv, a_inv, dim_cap) - kron(sum_inv, sum_inv, dim_cap);
  return 0.5 * (h + h.transpose());
}

double divergence(DivergenceKind kind, const SpdMatrix& x, const SpdMatrix& y,
                  BregmanFn f) {
  switch (kind) {
    case DivergenceKind::kSDiv:
      return s_div(x, y);
    case DivergenceKind::kSDelta:
      return delta_s_metric(x, y);
    case DivergenceKind::kRiemannian:
      return riemannian(x, y);
    case DivergenceKind::kLogEuclid:
      return log_euclidean(x, y);
    case DivergenceKind::kThompson:
      return thompson(x, y);
    case DivergenceKind::kFrobeniusSq:
      return bregman(BregmanFn::kHalfSquare, x, y);
    case DivergenceKind::kVonNeumann:
      return bregman(BregmanFn::kXLogXMinusX, x, y);
    case DivergenceKind::kLogDetStein:
      return bregman(BregmanFn::kNegLog, x, y);
    case DivergenceKind::kJensenF:
      return jensen_div(f, x, y);
  }
  throw InvalidParameterError("divergence: unknown kind");
}

DivergenceKind divergence_kind_from_string(const std::string& name) {
  if (name == "sdiv") return DivergenceKind::kSDiv;
  if (name == "sdelta") return DivergenceKind::kSDelta;
  if (name == "riemannian") return DivergenceKind::kRiemannian;
  if (name == "logeuclid") return DivergenceKind::kLogEuclid;
  if (name == "thompson") return DivergenceKind::kThompson;
  if (name == "frobenius_sq") return DivergenceKind::kFrobeniusSq;
  if (name == "von_neumann") return DivergenceKind::kVonNeumann;
  if (name == "logdet_stein") return DivergenceKind::kLogDetStein;
  if (name == "jensen_f") return DivergenceKind::kJensenF;
  throw InvalidParameterError("unknown divergence kind: " + name);
}

std::string to_string(DivergenceKind kind) {
  switch (kind) {
    case DivergenceKind::kSDiv: return "sdiv";
    case DivergenceKind::kSDelta: return "sdelta";
    case DivergenceKind::kRiemannian: return "riemannian";
    case DivergenceKind::kLogEuclid: return "logeuclid";
    case DivergenceKind::kThompson: return "thompson";
    case DivergenceKind::kFrobeniusSq: return "frobenius_sq";
    case DivergenceKind::kVonNeumann: return "von_neumann";
    case DivergenceKind::kLogDetStein: return "logdet_stein";
    case DivergenceKind::kJensenF: return "jensen_f";
  }
  return "unknown";
}

}  // namespace spdkit
