#pragma once

#include <optional>
#include <vector>

#include "spdkit/spd.hpp"

namespace spdkit {

// A weighted collection of same-dimension SPD matrices to average.
// Empty weights mean uniform 1/m; explicit weights must be nonnegative and
// sum to 1 within 1e-12.
struct MeanProblem {
  std::vector<SpdMatrix> matrices;
  std::vector<double> weights;
};

// Throws DimensionMismatchError / InvalidParameterError on a bad problem and
// returns the effective (possibly uniform) weight vector.
std::vector<double> validate_problem(const MeanProblem& problem);

enum class MeanInit { kArithmeticMean, kIdentity, kSupplied };

struct SolverConfig {
  double tol = 1e-12;  // relative Frobenius step tolerance
  int max_iters = 1000;
  MeanInit init = MeanInit::kArithmeticMean;
  std::optional<Eigen::MatrixXd> init_matrix;  // used with kSupplied
  bool track_objective = false;  // record the objective along the iterates
};

struct MeanReport {
  SpdMatrix mean;
  int iterations = 0;
  double residual = 0.0;  // gradient norm at exit
  std::vector<double> step_history;       // relative step per iteration
  std::vector<double> objective_history;  // filled when track_objective
  bool converged = false;
};

// Two-matrix geometric mean A # B = A^{1/2}(A^{-1/2} B A^{-1/2})^{1/2} A^{1/2};
// the unique SPD solution of X A^-1 X = B.
SpdMatrix geometric_mean(const SpdMatrix& a, const SpdMatrix& b);

// Point A #_t B on the geodesic from A (t=0) to B (t=1).
// Throws InvalidParameterError for t outside [0, 1].
SpdMatrix geodesic_point(const SpdMatrix& a, const SpdMatrix& b, double t);

// Weighted S-Divergence mean by Picard iteration of the stationarity map
//   X <- [sum_i w_i ((X + A_i)/2)^-1]^-1.
// Convergence requires both the relative step below config.tol and the
// gradient residual ||X^-1/2 - sum_i w_i (X+A_i)^-1||_F below
// 1e-8 * max(1, ||X||_F). Exhausting max_iters returns converged=false
// rather than throwing.
MeanReport s_mean(const MeanProblem& problem, const SolverConfig& config = {});

// h(X) = sum_i w_i S(X, A_i), the objective minimized by s_mean.
double s_mean_objective(const MeanProblem& problem, const SpdMatrix& x);

// The n^2 x n^2 matrix
//   X^-1 (x) X^-1 - sum_i (w_i/2) ((X+A_i)/2)^-1 (x) ((X+A_i)/2)^-1,
// i.e. twice the Hessian of h at X; positive definite at the converged mean.
Eigen::MatrixXd s_mean_hessian(const MeanProblem& problem, const SpdMatrix& x,
                               int dim_cap = kKronDimCap);

struct HessianPsdReport {
  bool positive_definite = false;
  double min_eigenvalue = 0.0;
  double max_eigenvalue = 0.0;
};

HessianPsdReport s_mean_hessian_psd(const MeanProblem& problem,
                                    const SpdMatrix& x,
                                    int dim_cap = kKronDimCap);

// Closed-form log-Euclidean mean exp(sum_i w_i log A_i).
SpdMatrix le_mean(const MeanProblem& problem);

// Karcher (Riemannian) mean baseline: fixed-point gradient iteration
//   X <- X^{1/2} exp(eta * sum_i w_i log(X^{-1/2} A_i X^{-1/2})) X^{1/2}
// with eta = 1 and halving on objective increase. Residual is the Frobenius
// norm of the weighted log-sum (Karcher stationarity condition).
MeanReport karcher_mean(const MeanProblem& problem,
                        const SolverConfig& config = {});

// f(X) = sum_i w_i delta_R^2(X, A_i), the Karcher objective.
double karcher_objective(const MeanProblem& problem, const SpdMatrix& x);

}  // namespace spdkit
