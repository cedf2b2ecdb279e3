#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace spdkit {

// One randomized check per theorem/inequality. Each trial samples fresh
// inputs from a seed derived deterministically from (seed, trial index),
// evaluates a normalized violation margin, and a law passes when no trial
// exceeds its slack:
//   inequality components:  margin = (lhs - rhs) / max(1, |rhs|)
//   equality components:    margin = |lhs - rhs| / max(1, |rhs|)
// A trial's margin is the max over the law's components. Trials that die with
// a numerical error are counted separately from violations.
struct LawSpec {
  std::string law_id;
  int trials = 1000;
  std::uint64_t seed = 0;
  std::vector<int> dims = {2, 3, 5};
  double cond_target = 100.0;
  // Negative means "use the law's default": 1e-10 for pure inequality laws,
  // 1e-8 for laws built around exact identities.
  double slack = -1.0;
  // Trials are independent; any thread count reproduces the serial run.
  int threads = 1;
};

struct LawReport {
  std::string law_id;
  int trials_run = 0;
  int violations = 0;
  int errored = 0;
  double worst_margin = 0.0;
  std::string witness;  // JSON inputs of the worst trial (empty if none ran)
  bool passed = false;
  double slack = 0.0;  // the slack actually applied
};

// Registered law identifiers, in registry order (part of the CLI contract).
std::vector<std::string> law_ids();

// Runs one law. Throws UnknownLawError for an unregistered id and
// InvalidParameterError for trials < 1 or empty dims.
LawReport run_law(const LawSpec& spec);

// Runs every registered law with the template's parameters (law_id ignored).
std::vector<LawReport> run_all(const LawSpec& spec_template);

// Re-evaluates a serialized witness; reproduces the reported worst margin.
double evaluate_witness(const std::string& witness_json);

// JSON rendering of reports (array form for run_all output files).
std::string law_reports_to_json(const std::vector<LawReport>& reports);

// Majorization predicates on positive vectors (sorted internally).
// weak majorization: prefix sums of x (descending) bounded by those of y.
bool weakly_majorizes(const Eigen::VectorXd& x, const Eigen::VectorXd& y,
                      double tol = 1e-10);
// weak log-majorization: prefix products bounded, checked in log space.
bool weakly_log_majorizes(const Eigen::VectorXd& x, const Eigen::VectorXd& y,
                          double tol = 1e-10);
// log-majorization: weak log-majorization plus equal total products.
bool log_majorizes(const Eigen::VectorXd& x, const Eigen::VectorXd& y,
                   double tol = 1e-10);

}  // namespace spdkit
