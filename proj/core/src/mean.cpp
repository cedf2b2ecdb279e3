#include "spdkit/mean.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "spdkit/divergence.hpp"

namespace spdkit {

namespace {

Eigen::MatrixXd symmetrized(const Eigen::MatrixXd& m) {
  return 0.5 * (m + m.transpose());
}

// L f(L^-1 B L^-T) L^T with A = L L^T equals A^{1/2} f(A^{-1/2} B A^{-1/2}) A^{1/2}
// for any spectral f; the Cholesky route needs one factorization instead of
// an extra eigendecomposition.
Eigen::MatrixXd whitened_power(const SpdMatrix& a, const SpdMatrix& b,
                               double t) {
  const auto& l = a.llt().matrixL();
  Eigen::MatrixXd tmp = l.solve(b.matrix());
  Eigen::MatrixXd m = symmetrized(l.solve(tmp.transpose()));
  SpdMatrix mid = make_spd(m);
  Eigen::MatrixXd powered = mat_pow(mid, t).matrix();
  Eigen::MatrixXd lm = Eigen::MatrixXd(l) * powered;
  return symmetrized(lm * Eigen::MatrixXd(l).transpose());
}

SpdMatrix initial_iterate(const MeanProblem& problem,
                          const std::vector<double>& weights,
                          const SolverConfig& config) {
  const int n = problem.matrices.front().dim();
  switch (config.init) {
    case MeanInit::kIdentity:
      return SpdMatrix::identity(n);
    case MeanInit::kSupplied: {
      if (!config.init_matrix) {
        throw InvalidParameterError(
            "solver: init=kSupplied but no init_matrix given");
      }
      SpdMatrix x = make_spd(*config.init_matrix);
      if (x.dim() != n) {
        throw DimensionMismatchError("solver: init_matrix dimension mismatch");
      }
      return x;
    }
    case MeanInit::kArithmeticMean:
    default: {
      Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(n, n);
      for (std::size_t i = 0; i < problem.matrices.size(); ++i) {
        sum += weights[i] * problem.matrices[i].matrix();
      }
      return make_spd(sum);
    }
  }
}

}  // namespace

std::vector<double> validate_problem(const MeanProblem& problem) {
  if (problem.matrices.empty()) {
    throw InvalidParameterError("mean problem: needs at least one matrix");
  }
  const int n = problem.matrices.front().dim();
  for (const auto& m : problem.matrices) {
    if (m.dim() != n) {
      throw DimensionMismatchError("mean problem: mixed matrix dimensions");
    }
  }
  const std::size_t m = problem.matrices.size();
  if (problem.weights.empty()) {
    return std::vector<double>(m, 1.0 / static_cast<double>(m));
  }
  if (problem.weights.size() != m) {
    throw InvalidParameterError("mean problem: weights/matrices size mismatch");
  }
  double sum = 0.0;
  for (double w : problem.weights) {
    if (w < 0.0) {
      throw InvalidParameterError("mean problem: negative weight");
    }
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-12) {
    throw InvalidParameterError("mean problem: weights sum to " +
                                std::to_string(sum) + ", expected 1");
  }
  return problem.weights;
}

SpdMatrix geometric_mean(const SpdMatrix& a, const SpdMatrix& b) {
  if (a.dim() != b.dim()) {
    throw DimensionMismatchError("geometric_mean: dimension mismatch");
  }
  return make_spd(whitened_power(a, b, 0.5));
}

SpdMatrix geodesic_point(const SpdMatrix& a, const SpdMatrix& b, double t) {
  if (a.dim() != b.dim()) {
    throw DimensionMismatchError("geodesic_point: dimension mismatch");
  }
  if (!(t >= 0.0 && t <= 1.0)) {
    throw InvalidParameterError("geodesic_point: t must lie in [0, 1]");
  }
  if (t == 0.0) return a;
  if (t == 1.0) return b;
  return make_spd(whitened_power(a, b, t));
}

double s_mean_objective(const MeanProblem& problem, const SpdMatrix& x) {
  const std::vector<double> weights = validate_problem(problem);
  double h = 0.0;
  for (std::size_t i = 0; i < problem.matrices.size(); ++i) {
    h += weights[i] * s_div(x, problem.matrices[i]);
  }
  return h;
}

MeanReport s_mean(const MeanProblem& problem, const SolverConfig& config) {
  const std::vector<double> weights = validate_problem(problem);
  if (config.max_iters < 1 || !(config.tol > 0.0)) {
    throw InvalidParameterError("s_mean: need tol > 0 and max_iters >= 1");
  }
  const int n = problem.matrices.front().dim();
  const Eigen::MatrixXd eye = Eigen::MatrixXd::Identity(n, n);
  SpdMatrix x = initial_iterate(problem, weights, config);

  MeanReport report{x};
  if (config.track_objective) {
    report.objective_history.push_back(s_mean_objective(problem, x));
  }

  // Dual exit criterion: the last relative step must be below tol AND the
  // gradient residual ||sum_i w_i (X+A_i)^-1 - X^-1/2||_F must be small at
  // the reported point; iteration continues until both hold.
  double last_step = std::numeric_limits<double>::infinity();
  double residual = 0.0;
  int iter = 0;
  while (true) {
    Eigen::MatrixXd sum_inv = Eigen::MatrixXd::Zero(n, n);
    for (std::size_t i = 0; i < problem.matrices.size(); ++i) {
      Eigen::MatrixXd half_sum =
          0.5 * (x.matrix() + problem.matrices[i].matrix());
      sum_inv += weights[i] * Eigen::LLT<Eigen::MatrixXd>(half_sum).solve(eye);
    }
    sum_inv = symmetrized(sum_inv);
    // sum_inv = 2 sum_i w_i (X+A_i)^-1, so grad h(X) = (sum_inv - X^-1)/2.
    residual = 0.5 * (sum_inv - x.llt().solve(eye)).norm();
    if (last_step <= config.tol &&
        residual <= 1e-8 * std::max(1.0, x.matrix().norm())) {
      report.converged = true;
      break;
    }
    if (iter >= config.max_iters) break;
    SpdMatrix next = make_spd(Eigen::LLT<Eigen::MatrixXd>(sum_inv).solve(eye));
    last_step = (next.matrix() - x.matrix()).norm() /
                std::max(x.matrix().norm(), 1e-300);
    report.step_history.push_back(last_step);
    x = next;
    ++iter;
    if (config.track_objective) {
      report.objective_history.push_back(s_mean_objective(problem, x));
    }
  }

  report.mean = x;
  report.iterations = iter;
  report.residual = residual;
  return report;
}

Eigen::MatrixXd s_mean_hessian(const MeanProblem& problem, const SpdMatrix& x,
                               int dim_cap) {
  const std::vector<double> weights = validate_problem(problem);
  const int n = x.dim();
  if (problem.matrices.front().dim() != n) {
    throw DimensionMismatchError("s_mean_hessian: dimension mismatch");
  }
  const Eigen::MatrixXd eye = Eigen::MatrixXd::Identity(n, n);
  Eigen::MatrixXd x_inv = symmetrized(x.llt().solve(eye));
  Eigen::MatrixXd h = kron(x_inv, x_inv, dim_cap);
  for (std::size_t i = 0; i < problem.matrices.size(); ++i) {
    Eigen::MatrixXd half_sum = 0.5 * (x.matrix() + problem.matrices[i].matrix());
    Eigen::MatrixXd m =
        symmetrized(Eigen::LLT<Eigen::MatrixXd>(half_sum).solve(eye));
    h -= 0.5 * weights[i] * kron(m, m, dim_cap);
  }
  return symmetrized(h);
}

HessianPsdReport s_mean_hessian_psd(const MeanProblem& problem,
                                    const SpdMatrix& x, int dim_cap) {
  Eigen::MatrixXd h = s_mean_hessian(problem, x, dim_cap);
  EigenDecomposition d = sym_eig(h);
  HessianPsdReport report;
  report.min_eigenvalue = d.eigenvalues(h.rows() - 1);
  report.max_eigenvalue = d.eigenvalues(0);
  report.positive_definite = report.min_eigenvalue > 0.0;
  return report;
}

SpdMatrix le_mean(const MeanProblem& problem) {
  const std::vector<double> weights = validate_problem(problem);
  const int n = problem.matrices.front().dim();
  Eigen::MatrixXd log_sum = Eigen::MatrixXd::Zero(n, n);
  for (std::size_t i = 0; i < problem.matrices.size(); ++i) {
    log_sum += weights[i] * mat_log(problem.matrices[i]);
  }
  return mat_exp_sym(log_sum);
}

double karcher_objective(const MeanProblem& problem, const SpdMatrix& x) {
  const std::vector<double> weights = validate_problem(problem);
  double f = 0.0;
  for (std::size_t i = 0; i < problem.matrices.size(); ++i) {
    const double d = riemannian(x, problem.matrices[i]);
    f += weights[i] * d * d;
  }
  return f;
}

MeanReport karcher_mean(const MeanProblem& problem, const SolverConfig& config) {
  const std::vector<double> weights = validate_problem(problem);
  if (config.max_iters < 1 || !(config.tol > 0.0)) {
    throw InvalidParameterError("karcher_mean: need tol > 0 and max_iters >= 1");
  }
  const int n = problem.matrices.front().dim();
  SpdMatrix x = initial_iterate(problem, weights, config);

  MeanReport report{x};
  double objective = karcher_objective(problem, x);
  if (config.track_objective) report.objective_history.push_back(objective);

  // Same dual exit criterion as s_mean; the residual here is the norm of the
  // Karcher tangent sum_i w_i log(X^{-1/2} A_i X^{-1/2}).
  double last_step = std::numeric_limits<double>::infinity();
  double residual = 0.0;
  int iter = 0;
  while (true) {
    EigenDecomposition dx = sym_eig(x);
    Eigen::MatrixXd root = dx.eigenvectors *
                           dx.eigenvalues.array().sqrt().matrix().asDiagonal() *
                           dx.eigenvectors.transpose();
    Eigen::MatrixXd inv_root =
        dx.eigenvectors * dx.eigenvalues.array().rsqrt().matrix().asDiagonal() *
        dx.eigenvectors.transpose();
    Eigen::MatrixXd tangent = Eigen::MatrixXd::Zero(n, n);
    for (std::size_t i = 0; i < problem.matrices.size(); ++i) {
      Eigen::MatrixXd whitened =
          symmetrized(inv_root * problem.matrices[i].matrix() * inv_root);
      tangent += weights[i] * mat_log(make_spd(whitened));
    }
    tangent = symmetrized(tangent);
    residual = tangent.norm();
    if (last_step <= config.tol &&
        residual <= 1e-8 * std::max(1.0, x.matrix().norm())) {
      report.converged = true;
      break;
    }
    if (iter >= config.max_iters) break;

    // Fixed step 1, halved until the objective stops increasing.
    double eta = 1.0;
    SpdMatrix next = x;
    double next_objective = objective;
    for (int halving = 0; halving < 30; ++halving) {
      Eigen::MatrixXd stepped =
          mat_exp_sym(Eigen::MatrixXd(eta * tangent)).matrix();
      SpdMatrix candidate = make_spd(symmetrized(root * stepped * root));
      const double candidate_objective = karcher_objective(problem, candidate);
      if (candidate_objective <= objective + 1e-14 * std::max(1.0, objective)) {
        next = candidate;
        next_objective = candidate_objective;
        break;
      }
      eta *= 0.5;
    }

    last_step = (next.matrix() - x.matrix()).norm() /
                std::max(x.matrix().norm(), 1e-300);
    report.step_history.push_back(last_step);
    x = next;
    objective = next_objective;
    ++iter;
    if (config.track_objective) report.objective_history.push_back(objective);
  }

  report.mean = x;
  report.iterations = iter;
  report.residual = residual;
  return report;
}

}  // namespace spdkit
