#include "spdkit/law.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

#include <nlohmann/json.hpp>

#include "spdkit/divergence.hpp"
#include "spdkit/mean.hpp"
#include "spdkit/random.hpp"
#include "spdkit/spd.hpp"

namespace spdkit {

namespace {

using nlohmann::json;

constexpr double kIneqSlack = 1e-10;
constexpr double kEqSlack = 1e-8;
constexpr double kPerturbEps = 1e-3;

// Inputs of one law trial; what gets serialized into a witness.
struct LawInputs {
  int n = 0;
  std::vector<Eigen::MatrixXd> mats;
  std::vector<double> scalars;
};

enum class SlackClass { kInequality, kEquality };

struct LawDef {
  const char* id;
  SlackClass slack_class;
  LawInputs (*sample)(Rng&, int, double);
  double (*eval)(const LawInputs&);
};

double ineq_margin(double lhs, double rhs) {
  return (lhs - rhs) / std::max(1.0, std::abs(rhs));
}

double eq_margin(double lhs, double rhs) {
  return std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs));
}

Eigen::MatrixXd sample_spd(Rng& rng, int n, double cond) {
  return random_spd(n, rng.next_u64(), cond).matrix();
}

// Well-conditioned invertible, generically non-symmetric.
Eigen::MatrixXd sample_invertible(Rng& rng, int n) {
  Eigen::MatrixXd q1 = random_orthogonal(n, rng);
  Eigen::MatrixXd q2 = random_orthogonal(n, rng);
  Eigen::VectorXd d(n);
  for (int i = 0; i < n; ++i) d(i) = rng.log_uniform(0.5, 2.0);
  return q1 * d.asDiagonal() * q2.transpose();
}

// t in [0,1]: endpoint grid one third of the time, uniform otherwise.
double sample_t01(Rng& rng) {
  static constexpr double kGrid[5] = {0.0, 0.25, 0.5, 0.75, 1.0};
  if (rng.uniform() < 1.0 / 3.0) return kGrid[rng.uniform_int(0, 4)];
  return rng.uniform();
}

SpdMatrix diag_spd(const Eigen::VectorXd& d) {
  return make_spd(Eigen::MatrixXd(d.asDiagonal()));
}

Eigen::MatrixXd symmetrized(const Eigen::MatrixXd& m) {
  return 0.5 * (m + m.transpose());
}

// Congruence-scaled perturbation X^{1/2} W X^{1/2}: keeps X + eps*D positive
// definite for any conditioning as long as eps * ||W|| < 1.
Eigen::MatrixXd scaled_direction(const SpdMatrix& x, const Eigen::MatrixXd& w) {
  Eigen::MatrixXd root = mat_sqrt(x).matrix();
  return symmetrized(root * w * root);
}

// Sorted-descending log eigenvalues of P^t Q^t (via the similar SPD matrix
// Q^{t/2} P^t Q^{t/2}), divided by t.
Eigen::VectorXd scaled_log_spectrum(const SpdMatrix& p, const SpdMatrix& q,
                                    double t) {
  SpdMatrix pt = mat_pow(p, t);
  Eigen::MatrixXd qroot = mat_pow(q, 0.5 * t).matrix();
  SpdMatrix m = make_spd(symmetrized(qroot * pt.matrix() * qroot));
  EigenDecomposition d = sym_eig(m);
  return d.eigenvalues.array().log() / t;
}

// Max normalized prefix-sum excess of x over y (vectors already descending).
double prefix_sum_margin(const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
  double margin = -std::numeric_limits<double>::infinity();
  double px = 0.0;
  double py = 0.0;
  for (Eigen::Index k = 0; k < x.size(); ++k) {
    px += x(k);
    py += y(k);
    margin = std::max(margin, ineq_margin(px, py));
  }
  return margin;
}

Eigen::VectorXd sorted_descending(const Eigen::VectorXd& v) {
  Eigen::VectorXd out = v;
  std::sort(out.data(), out.data() + out.size(), std::greater<double>());
  return out;
}

// ---- samplers / evaluators -------------------------------------------------

LawInputs sample_three_spd(Rng& rng, int n, double cond) {
  LawInputs in;
  in.mats = {sample_spd(rng, n, cond), sample_spd(rng, n, cond),
             sample_spd(rng, n, cond)};
  return in;
}

LawInputs sample_two_spd(Rng& rng, int n, double cond) {
  LawInputs in;
  in.mats = {sample_spd(rng, n, cond), sample_spd(rng, n, cond)};
  return in;
}

double eval_triangle_sdelta(const LawInputs& in) {
  SpdMatrix x = make_spd(in.mats[0]);
  SpdMatrix y = make_spd(in.mats[1]);
  SpdMatrix z = make_spd(in.mats[2]);
  return ineq_margin(delta_s_metric(x, y),
                     delta_s_metric(x, z) + delta_s_metric(y, z));
}

LawInputs sample_triangle_scalar_p(Rng& rng, int n, double cond) {
  LawInputs in;
  const double hi = std::sqrt(std::max(cond, 1.0));
  in.scalars.reserve(3 * n);
  for (int i = 0; i < 3 * n; ++i) {
    in.scalars.push_back(rng.log_uniform(1.0 / hi, hi));
  }
  return in;
}

double eval_triangle_scalar_p(const LawInputs& in) {
  const int n = in.n;
  auto lp = [&](int off_a, int off_b, double p) {
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
      sum += std::pow(scalar_delta_s(in.scalars[off_a + i],
                                     in.scalars[off_b + i]),
                      p);
    }
    return std::pow(sum, 1.0 / p);
  };
  double margin = -std::numeric_limits<double>::infinity();
  for (double p : {1.0, 2.0, 3.0}) {
    margin = std::max(
        margin, ineq_margin(lp(0, n, p), lp(0, 2 * n, p) + lp(n, 2 * n, p)));
  }
  return margin;
}

double eval_det_bounds(const LawInputs& in) {
  SpdMatrix a = make_spd(in.mats[0]);
  SpdMatrix b = make_spd(in.mats[1]);
  Eigen::VectorXd la = sym_eig(a).eigenvalues;  // descending
  Eigen::VectorXd lb = sym_eig(b).eigenvalues;
  const int n = a.dim();
  double lower = 0.0;
  double upper = 0.0;
  for (int i = 0; i < n; ++i) {
    lower += std::log(la(i) + lb(i));
    upper += std::log(la(i) + lb(n - 1 - i));
  }
  const double mid = log_det(make_spd(a.matrix() + b.matrix()));
  return std::max(ineq_margin(lower, mid), ineq_margin(mid, upper));
}

double eval_eig_sandwich_sdelta(const LawInputs& in) {
  SpdMatrix a = make_spd(in.mats[0]);
  SpdMatrix b = make_spd(in.mats[1]);
  Eigen::VectorXd la = sym_eig(a).eigenvalues;
  Eigen::VectorXd lb = sym_eig(b).eigenvalues;
  SpdMatrix ea = diag_spd(la);
  SpdMatrix eb_down = diag_spd(lb);
  SpdMatrix eb_up = diag_spd(lb.reverse());
  const double d_mid = delta_s_metric(a, b);
  return std::max(ineq_margin(delta_s_metric(ea, eb_down), d_mid),
                  ineq_margin(d_mid, delta_s_metric(ea, eb_up)));
}

LawInputs sample_power_contraction(Rng& rng, int n, double cond) {
  LawInputs in = sample_two_spd(rng, n, cond);
  in.scalars = {sample_t01(rng), 1.0 + sample_t01(rng)};
  return in;
}

double eval_power_contraction(const LawInputs& in) {
  SpdMatrix a = make_spd(in.mats[0]);
  SpdMatrix b = make_spd(in.mats[1]);
  const double t = in.scalars[0];
  const double s = in.scalars[1];
  const double base = s_div(a, b);
  const double contracted = s_div(mat_pow(a, t), mat_pow(b, t));
  const double expanded = s_div(mat_pow(a, s), mat_pow(b, s));
  return std::max(ineq_margin(contracted, t * base),
                  ineq_margin(s * base, expanded));
}

LawInputs sample_two_spd_t(Rng& rng, int n, double cond) {
  LawInputs in = sample_two_spd(rng, n, cond);
  in.scalars = {sample_t01(rng)};
  return in;
}

LawInputs sample_three_spd_t(Rng& rng, int n, double cond) {
  LawInputs in = sample_three_spd(rng, n, cond);
  in.scalars = {sample_t01(rng)};
  return in;
}

double eval_geodesic_contraction(const LawInputs& in) {
  SpdMatrix a = make_spd(in.mats[0]);
  SpdMatrix b = make_spd(in.mats[1]);
  const double t = in.scalars[0];
  SpdMatrix gamma = geodesic_point(a, b, t);
  return ineq_margin(s_div(a, gamma), t * s_div(a, b));
}

double eval_cancellation(const LawInputs& in) {
  SpdMatrix a = make_spd(in.mats[0]);
  SpdMatrix b = make_spd(in.mats[1]);
  SpdMatrix c = make_spd(in.mats[2]);
  const double t = in.scalars[0];
  return ineq_margin(
      s_div(geodesic_point(a, b, t), geodesic_point(a, c, t)),
      t * s_div(b, c));
}

LawInputs sample_four_spd(Rng& rng, int n, double cond) {
  LawInputs in;
  in.mats = {sample_spd(rng, n, cond), sample_spd(rng, n, cond),
             sample_spd(rng, n, cond), sample_spd(rng, n, cond)};
  return in;
}

double eval_translation_monotone_convex(const LawInputs& in) {
  SpdMatrix x = make_spd(in.mats[0]);
  SpdMatrix y = make_spd(in.mats[1]);
  const Eigen::MatrixXd& a = in.mats[2];
  Eigen::MatrixXd b = in.mats[2] + in.mats[3];  // A <= B by construction
  auto g = [&](const Eigen::MatrixXd& shift) {
    return s_div(make_spd(shift + x.matrix()), make_spd(shift + y.matrix()));
  };
  const double ga = g(a);
  const double gb = g(b);
  return std::max(ineq_margin(gb, ga),
                  ineq_margin(g(0.5 * (a + b)), 0.5 * (ga + gb)));
}

double eval_translation_corollary(const LawInputs& in) {
  SpdMatrix x = make_spd(in.mats[0]);
  SpdMatrix y = make_spd(in.mats[1]);
  SpdMatrix a = make_spd(in.mats[2]);
  const int n = a.dim();
  const double beta = sym_eig(a).eigenvalues(n - 1);
  Eigen::MatrixXd beta_eye = beta * Eigen::MatrixXd::Identity(n, n);
  const double v1 = s_div(make_spd(a.matrix() + x.matrix()),
                          make_spd(a.matrix() + y.matrix()));
  const double v2 = s_div(make_spd(beta_eye + x.matrix()),
                          make_spd(beta_eye + y.matrix()));
  const double v3 = s_div(x, y);
  return std::max(ineq_margin(v1, v2), ineq_margin(v2, v3));
}

// Shared sampler for the power laws (1 <= t <= u). Powering squares and cubes
// conditioning, so the pair is drawn with an effective condition number that
// puts the most-powered object at the requested target instead of past what
// double-precision factorizations can resolve. The u = t edge stays exactly
// representable (identical code paths make its margin bitwise zero); nonzero
// gaps are floored at 0.05 so strict margins dominate spectral roundoff.
LawInputs sample_power_pair(Rng& rng, int n, double cond, double kappa_cap) {
  const double t = 1.0 + sample_t01(rng);
  double gap = sample_t01(rng);
  if (gap != 0.0) gap = 0.05 + 0.95 * gap;
  const double u = t + gap;
  const double cond_eff =
      std::min(cond, std::pow(kappa_cap, 1.0 / (2.0 * u)));
  LawInputs in = sample_two_spd(rng, n, cond_eff);
  in.scalars = {t, u};
  return in;
}

LawInputs sample_power_monotone(Rng& rng, int n, double cond) {
  return sample_power_pair(rng, n, cond, 1e8);
}

LawInputs sample_log_majorization(Rng& rng, int n, double cond) {
  return sample_power_pair(rng, n, cond, 1e5);
}

double eval_power_monotone_riem(const LawInputs& in) {
  SpdMatrix a = make_spd(in.mats[0]);
  SpdMatrix b = make_spd(in.mats[1]);
  const double t = in.scalars[0];
  const double u = in.scalars[1];
  return ineq_margin(riemannian(mat_pow(a, t), mat_pow(b, t)) / t,
                     riemannian(mat_pow(a, u), mat_pow(b, u)) / u);
}

double eval_power_monotone_sdiv(const LawInputs& in) {
  SpdMatrix a = make_spd(in.mats[0]);
  SpdMatrix b = make_spd(in.mats[1]);
  const double t = in.scalars[0];
  const double u = in.scalars[1];
  return ineq_margin(s_div(mat_pow(a, t), mat_pow(b, t)) / t,
                     s_div(mat_pow(a, u), mat_pow(b, u)) / u);
}

double eval_det_power_means(const LawInputs& in) {
  SpdMatrix a = make_spd(in.mats[0]);
  SpdMatrix b = make_spd(in.mats[1]);
  const double t = in.scalars[0];
  const double u = in.scalars[1];
  auto half_power_logdet = [&](double e) {
    return log_det(make_spd(
               0.5 * (mat_pow(a, e).matrix() + mat_pow(b, e).matrix()))) /
           e;
  };
  return ineq_margin(half_power_logdet(t), half_power_logdet(u));
}

double eval_log_majorization(const LawInputs& in) {
  SpdMatrix p = make_spd(in.mats[0]);
  SpdMatrix q = make_spd(in.mats[1]);
  const double t = in.scalars[0];
  const double u = in.scalars[1];
  const int n = in.n;
  Eigen::VectorXd v = scaled_log_spectrum(p, q, t);  // descending
  Eigen::VectorXd w = scaled_log_spectrum(p, q, u);
  // Weak log-majorization prefixes for k < n; the k = n equality (equal total
  // products) is checked against the independent Cholesky log-det identity
  // sum log lambda(P^t Q^t) = t (logdet P + logdet Q). Also checks the derived
  // weak majorization of |.| used by the power-monotonicity proofs.
  double margin = -std::numeric_limits<double>::infinity();
  double pv = 0.0;
  double pw = 0.0;
  for (int k = 0; k + 1 < n; ++k) {
    pv += v(k);
    pw += w(k);
    margin = std::max(margin, ineq_margin(pv, pw));
  }
  const double log_det_pq = log_det(p) + log_det(q);
  margin = std::max(margin, eq_margin(v.sum(), log_det_pq));
  margin = std::max(margin, eq_margin(w.sum(), log_det_pq));
  margin = std::max(margin, prefix_sum_margin(sorted_descending(v.cwiseAbs()),
                                              sorted_descending(w.cwiseAbs())));
  return margin;
}

double eval_sandwich(const LawInputs& in) {
  SpdMatrix a = make_spd(in.mats[0]);
  SpdMatrix b = make_spd(in.mats[1]);
  const int n = a.dim();
  const double s = s_div(a, b);
  Eigen::VectorXd u = log_relative_spectrum(a, b);
  const double r2 = u.squaredNorm();
  const double dt = u.cwiseAbs().maxCoeff();
  return std::max(
      ineq_margin(8.0 * s, r2),
      ineq_margin(r2, 2.0 * dt * (s + n * std::log(2.0))));
}

double eval_riem_geodesic_exact(const LawInputs& in) {
  SpdMatrix a = make_spd(in.mats[0]);
  SpdMatrix b = make_spd(in.mats[1]);
  const double t = in.scalars[0];
  return eq_margin(riemannian(a, geodesic_point(a, b, t)),
                   t * riemannian(a, b));
}

double eval_riem_cancellation(const LawInputs& in) {
  SpdMatrix a = make_spd(in.mats[0]);
  SpdMatrix b = make_spd(in.mats[1]);
  SpdMatrix c = make_spd(in.mats[2]);
  const double t = in.scalars[0];
  return ineq_margin(
      riemannian(geodesic_point(a, b, t), geodesic_point(a, c, t)),
      t * riemannian(b, c));
}

LawInputs sample_basic_invariances(Rng& rng, int n, double cond) {
  LawInputs in = sample_three_spd(rng, n, cond);
  in.mats.push_back(sample_invertible(rng, n));
  return in;
}

double eval_basic_invariances(const LawInputs& in) {
  SpdMatrix a = make_spd(in.mats[0]);
  SpdMatrix b = make_spd(in.mats[1]);
  SpdMatrix c = make_spd(in.mats[2]);
  const Eigen::MatrixXd& x = in.mats[3];
  const int n = a.dim();
  SpdMatrix eye = SpdMatrix::identity(n);
  const double s_ab = s_div(a, b);

  double margin = eq_margin(s_div(eye, a),
                            s_div(eye, diag_spd(sym_eig(a).eigenvalues)));
  margin = std::max(
      margin,
      eq_margin(s_div(make_spd(symmetrized(x.transpose() * a.matrix() * x)),
                      make_spd(symmetrized(x.transpose() * b.matrix() * x))),
                s_ab));
  margin = std::max(margin, eq_margin(s_div(mat_inv(a), mat_inv(b)), s_ab));
  margin = std::max(
      margin, eq_margin(s_div(make_spd(kron(a.matrix(), b.matrix())),
                              make_spd(kron(a.matrix(), c.matrix()))),
                        static_cast<double>(n) * s_div(b, c)));
  return margin;
}

LawInputs sample_convexity_region(Rng& rng, int n, double cond) {
  LawInputs in;
  in.mats = {sample_spd(rng, n, cond), sample_spd(rng, n, cond),
             sample_spd(rng, n, cond)};
  in.scalars = {rng.uniform(0.05, 0.95), rng.uniform(1.05, 3.0)};
  return in;
}

double eval_convexity_region(const LawInputs& in) {
  constexpr double kEdge = 1.0 + 1.4142135623730951;  // 1 + sqrt(2)
  SpdMatrix b = make_spd(in.mats[0]);
  Eigen::MatrixXd root = mat_sqrt(b).matrix();
  auto congruent = [&](const Eigen::MatrixXd& w, double top_eigenvalue) {
    EigenDecomposition d = sym_eig(w);
    Eigen::MatrixXd scaled = w * (top_eigenvalue / d.eigenvalues(0));
    return make_spd(symmetrized(root * scaled * root));
  };
  auto spectrum_margin = [](const Eigen::MatrixXd& h) {
    EigenDecomposition d = sym_eig(h);
    const double lo = d.eigenvalues(h.rows() - 1);
    const double hi = d.eigenvalues(0);
    const double scale = std::max(std::abs(lo), std::abs(hi));
    return std::pair<double, double>{lo / std::max(1.0, scale),
                                     hi / std::max(1.0, scale)};
  };

  // A strictly inside the convex region: A <= rho1 * (1+sqrt(2)) B.
  SpdMatrix a_low = congruent(in.mats[1], in.scalars[0] * kEdge);
  const auto low = spectrum_margin(s_div_hessian(a_low, b));
  double margin = -low.first;  // PSD: lambda_min must not dip below -slack

  // A above the region: A >= rho2 * (1+sqrt(2)) B (scaled by lambda_min).
  EigenDecomposition d2 = sym_eig(Eigen::MatrixXd(in.mats[2]));
  Eigen::MatrixXd w2 =
      in.mats[2] * (in.scalars[1] * kEdge / d2.eigenvalues(in.n - 1));
  SpdMatrix a_high = make_spd(symmetrized(root * w2 * root));
  const auto high = spectrum_margin(s_div_hessian(a_high, b));
  return std::max(margin, high.second);  // NSD: lambda_max stays below slack
}

double eval_kron_order(const LawInputs& in) {
  const Eigen::MatrixXd& b = in.mats[0];
  const Eigen::MatrixXd& d = in.mats[1];
  Eigen::MatrixXd a = b + in.mats[2];
  Eigen::MatrixXd c = d + in.mats[3];
  Eigen::MatrixXd diff = kron(a, c) - kron(b, d);
  EigenDecomposition e = sym_eig(symmetrized(diff));
  const double lo = e.eigenvalues(diff.rows() - 1);
  const double scale =
      std::max(std::abs(lo), std::abs(e.eigenvalues(0)));
  return -lo / std::max(1.0, scale);
}

LawInputs sample_gm_variational(Rng& rng, int n, double cond) {
  LawInputs in = sample_two_spd(rng, n, cond);
  for (int k = 0; k < 5; ++k) in.mats.push_back(random_symmetric(n, rng));
  return in;
}

double eval_gm_variational(const LawInputs& in) {
  SpdMatrix a = make_spd(in.mats[0]);
  SpdMatrix b = make_spd(in.mats[1]);
  SpdMatrix g = geometric_mean(a, b);
  double margin = eq_margin(delta_s_metric(a, g), delta_s_metric(b, g));
  margin = std::max(margin, eq_margin(riemannian(a, g), riemannian(b, g)));
  const double h0 = s_div(g, a) + s_div(g, b);
  for (std::size_t k = 2; k < in.mats.size(); ++k) {
    Eigen::MatrixXd delta = scaled_direction(g, in.mats[k]);
    SpdMatrix perturbed = make_spd(g.matrix() + kPerturbEps * delta);
    const double hp = s_div(perturbed, a) + s_div(perturbed, b);
    margin = std::max(margin, ineq_margin(h0, hp));
  }
  return margin;
}

LawInputs sample_smean_global(Rng& rng, int n, double cond) {
  LawInputs in;
  const int m = rng.uniform_int(2, 4);
  for (int i = 0; i < m; ++i) in.mats.push_back(sample_spd(rng, n, cond));
  for (int k = 0; k < 3; ++k) in.mats.push_back(random_symmetric(n, rng));
  for (int i = 0; i < m; ++i) in.scalars.push_back(rng.uniform(0.2, 1.0));
  return in;
}

double eval_smean_global(const LawInputs& in) {
  const std::size_t m = in.scalars.size();
  MeanProblem problem;
  double weight_sum = 0.0;
  for (double w : in.scalars) weight_sum += w;
  for (std::size_t i = 0; i < m; ++i) {
    problem.matrices.push_back(make_spd(in.mats[i]));
    problem.weights.push_back(in.scalars[i] / weight_sum);
  }

  // The perturbation and Hessian checks only need ~1e-7 accuracy in the
  // solution; 1e-9 keeps the step criterion clear of the roundoff floor at
  // high condition numbers.
  SolverConfig config;
  config.tol = 1e-9;
  config.max_iters = 1000;
  MeanReport report = s_mean(problem, config);
  if (!report.converged) {
    throw ConvergenceError("smean_global: Picard iteration did not converge");
  }
  const SpdMatrix& x = report.mean;

  EigenDecomposition d = sym_eig(s_mean_hessian(problem, x));
  const double lo = d.eigenvalues(d.eigenvalues.size() - 1);
  const double scale = std::max(std::abs(lo), std::abs(d.eigenvalues(0)));
  double margin = -lo / std::max(1.0, scale);

  const double h0 = s_mean_objective(problem, x);
  for (std::size_t k = m; k < in.mats.size(); ++k) {
    Eigen::MatrixXd delta = scaled_direction(x, in.mats[k]);
    SpdMatrix perturbed = make_spd(x.matrix() + kPerturbEps * delta);
    margin = std::max(margin,
                      ineq_margin(h0, s_mean_objective(problem, perturbed)));
  }
  return margin;
}

// ---- registry ---------------------------------------------------------------

constexpr LawDef kRegistry[] = {
    {"triangle_sdelta", SlackClass::kInequality, sample_three_spd,
     eval_triangle_sdelta},
    {"triangle_scalar_p", SlackClass::kInequality, sample_triangle_scalar_p,
     eval_triangle_scalar_p},
    {"det_bounds", SlackClass::kInequality, sample_two_spd, eval_det_bounds},
    {"eig_sandwich_sdelta", SlackClass::kInequality, sample_two_spd,
     eval_eig_sandwich_sdelta},
    {"power_contraction", SlackClass::kInequality, sample_power_contraction,
     eval_power_contraction},
    {"geodesic_contraction", SlackClass::kInequality, sample_two_spd_t,
     eval_geodesic_contraction},
    {"cancellation", SlackClass::kInequality, sample_three_spd_t,
     eval_cancellation},
    {"translation_monotone_convex", SlackClass::kInequality, sample_four_spd,
     eval_translation_monotone_convex},
    {"translation_corollary", SlackClass::kInequality, sample_three_spd,
     eval_translation_corollary},
    {"power_monotone_riem", SlackClass::kInequality, sample_power_monotone,
     eval_power_monotone_riem},
    {"power_monotone_sdiv", SlackClass::kInequality, sample_power_monotone,
     eval_power_monotone_sdiv},
    {"det_power_means", SlackClass::kInequality, sample_power_monotone,
     eval_det_power_means},
    // Carries the total-product identity of log-majorization, so it belongs
    // to the equality tolerance class.
    {"log_majorization", SlackClass::kEquality, sample_log_majorization,
     eval_log_majorization},
    {"sandwich", SlackClass::kInequality, sample_two_spd, eval_sandwich},
    {"riem_geodesic_exact", SlackClass::kEquality, sample_two_spd_t,
     eval_riem_geodesic_exact},
    {"riem_cancellation", SlackClass::kInequality, sample_three_spd_t,
     eval_riem_cancellation},
    {"basic_invariances", SlackClass::kEquality, sample_basic_invariances,
     eval_basic_invariances},
    {"convexity_region", SlackClass::kInequality, sample_convexity_region,
     eval_convexity_region},
    {"kron_order", SlackClass::kInequality, sample_four_spd, eval_kron_order},
    {"gm_variational", SlackClass::kEquality, sample_gm_variational,
     eval_gm_variational},
    {"smean_global", SlackClass::kInequality, sample_smean_global,
     eval_smean_global},
};

const LawDef& find_law(const std::string& id) {
  for (const LawDef& def : kRegistry) {
    if (id == def.id) return def;
  }
  throw UnknownLawError("unknown law id: " + id);
}

LawInputs sample_trial(const LawDef& def, const LawSpec& spec,
                       std::uint64_t trial) {
  Rng rng(derive_seed(spec.seed, trial));
  const int n =
      spec.dims[rng.uniform_int(0, static_cast<int>(spec.dims.size()) - 1)];
  LawInputs inputs = def.sample(rng, n, spec.cond_target);
  inputs.n = n;
  return inputs;
}

json inputs_to_json(const char* law_id, const LawInputs& inputs,
                    double margin) {
  json mats = json::array();
  for (const auto& m : inputs.mats) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      json row = json::array();
      for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
      rows.push_back(std::move(row));
    }
    mats.push_back(std::move(rows));
  }
  return json{{"law_id", law_id},
              {"n", inputs.n},
              {"mats", std::move(mats)},
              {"scalars", inputs.scalars},
              {"margin", margin}};
}

LawInputs inputs_from_json(const json& j) {
  LawInputs inputs;
  inputs.n = j.at("n").get<int>();
  for (const auto& mj : j.at("mats")) {
    const auto rows = mj.size();
    const auto cols = rows == 0 ? 0 : mj[0].size();
    Eigen::MatrixXd m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
      for (std::size_t k = 0; k < cols; ++k) {
        m(i, k) = mj[i][k].get<double>();
      }
    }
    inputs.mats.push_back(std::move(m));
  }
  inputs.scalars = j.at("scalars").get<std::vector<double>>();
  return inputs;
}

}  // namespace

std::vector<std::string> law_ids() {
  std::vector<std::string> ids;
  for (const LawDef& def : kRegistry) ids.emplace_back(def.id);
  return ids;
}

LawReport run_law(const LawSpec& spec) {
  const LawDef& def = find_law(spec.law_id);
  if (spec.trials < 1) {
    throw InvalidParameterError("run_law: trials must be >= 1");
  }
  if (spec.dims.empty()) {
    throw InvalidParameterError("run_law: dims must be nonempty");
  }
  for (int n : spec.dims) {
    if (n < 1) throw InvalidParameterError("run_law: dims must be positive");
  }
  const double slack =
      spec.slack >= 0.0
          ? spec.slack
          : (def.slack_class == SlackClass::kEquality ? kEqSlack : kIneqSlack);

  struct TrialResult {
    double margin = 0.0;
    bool ok = false;
  };
  std::vector<TrialResult> results(spec.trials);
  auto run_range = [&](int begin, int end) {
    for (int trial = begin; trial < end; ++trial) {
      try {
        LawInputs inputs =
            sample_trial(def, spec, static_cast<std::uint64_t>(trial));
        results[trial] = {def.eval(inputs), true};
      } catch (const Error&) {
        results[trial] = {0.0, false};
      }
    }
  };

  const int threads = std::clamp(spec.threads, 1, spec.trials);
  if (threads == 1) {
    run_range(0, spec.trials);
  } else {
    std::vector<std::thread> pool;
    const int chunk = (spec.trials + threads - 1) / threads;
    for (int t = 0; t < threads; ++t) {
      const int begin = t * chunk;
      const int end = std::min(spec.trials, begin + chunk);
      if (begin < end) pool.emplace_back(run_range, begin, end);
    }
    for (auto& th : pool) th.join();
  }

  LawReport report;
  report.law_id = spec.law_id;
  report.trials_run = spec.trials;
  report.slack = slack;
  double worst = -std::numeric_limits<double>::infinity();
  int worst_trial = -1;
  for (int trial = 0; trial < spec.trials; ++trial) {
    if (!results[trial].ok) {
      ++report.errored;
      continue;
    }
    if (results[trial].margin > slack) ++report.violations;
    if (results[trial].margin > worst) {
      worst = results[trial].margin;
      worst_trial = trial;
    }
  }
  report.passed = report.violations == 0;
  if (worst_trial >= 0) {
    report.worst_margin = worst;
    LawInputs inputs =
        sample_trial(def, spec, static_cast<std::uint64_t>(worst_trial));
    report.witness = inputs_to_json(def.id, inputs, worst).dump();
  }
  return report;
}

std::vector<LawReport> run_all(const LawSpec& spec_template) {
  std::vector<LawReport> reports;
  reports.reserve(std::size(kRegistry));
  for (const LawDef& def : kRegistry) {
    LawSpec spec = spec_template;
    spec.law_id = def.id;
    reports.push_back(run_law(spec));
  }
  return reports;
}

double evaluate_witness(const std::string& witness_json) {
  json j;
  try {
    j = json::parse(witness_json);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("witness: ") + e.what());
  }
  const LawDef& def = find_law(j.at("law_id").get<std::string>());
  return def.eval(inputs_from_json(j));
}

std::string law_reports_to_json(const std::vector<LawReport>& reports) {
  json out = json::array();
  for (const LawReport& r : reports) {
    json entry{{"law_id", r.law_id},   {"trials_run", r.trials_run},
               {"violations", r.violations}, {"errored", r.errored},
               {"worst_margin", r.worst_margin}, {"passed", r.passed},
               {"slack", r.slack}};
    entry["witness"] = r.witness.empty() ? json() : json::parse(r.witness);
    out.push_back(std::move(entry));
  }
  return out.dump(2);
}

bool weakly_majorizes(const Eigen::VectorXd& x, const Eigen::VectorXd& y,
                      double tol) {
  if (x.size() != y.size()) {
    throw DimensionMismatchError("weakly_majorizes: length mismatch");
  }
  return prefix_sum_margin(sorted_descending(x), sorted_descending(y)) <= tol;
}

bool weakly_log_majorizes(const Eigen::VectorXd& x, const Eigen::VectorXd& y,
                          double tol) {
  if (x.size() != y.size()) {
    throw DimensionMismatchError("weakly_log_majorizes: length mismatch");
  }
  if (x.minCoeff() <= 0.0 || y.minCoeff() <= 0.0) {
    throw NonPositiveInputError(
        "weakly_log_majorizes: entries must be positive");
  }
  return prefix_sum_margin(sorted_descending(x.array().log()),
                           sorted_descending(y.array().log())) <= tol;
}

bool log_majorizes(const Eigen::VectorXd& x, const Eigen::VectorXd& y,
                   double tol) {
  if (!weakly_log_majorizes(x, y, tol)) return false;
  const double tx = x.array().log().sum();
  const double ty = y.array().log().sum();
  return std::abs(tx - ty) <= tol * std::max(1.0, std::abs(ty));
}

}  // namespace spdkit
