// spdkit command-line interface.
//
// Exit codes are a stable contract:
//   0 ok, 2 input error, 3 numerical failure, 4 non-convergence,
//   5 indefinite kernel, 6 law violation.

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "spdkit/bench.hpp"
#include "spdkit/bundle.hpp"
#include "spdkit/divergence.hpp"
#include "spdkit/error.hpp"
#include "spdkit/kernel.hpp"
#include "spdkit/law.hpp"
#include "spdkit/mean.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitNumeric = 3;
constexpr int kExitNoConvergence = 4;
constexpr int kExitIndefinite = 5;
constexpr int kExitLawViolation = 6;

std::uint64_t default_seed() {
  if (const char* env = std::getenv("SPDKIT_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw spdkit::InvalidParameterError(
          "SPDKIT_SEED must be a nonnegative integer");
    }
  }
  return 0;
}

spdkit::SpdMatrix load_single_matrix(const std::string& path) {
  spdkit::MatrixBundle bundle = spdkit::parse_bundle(path);
  if (bundle.items.size() != 1) {
    throw spdkit::ValidationError("expected a single-matrix bundle in '" +
                                  path + "', found " +
                                  std::to_string(bundle.items.size()));
  }
  return bundle.items.front().matrix;
}

int cmd_dist(const std::string& metric, const std::string& file_a,
             const std::string& file_b) {
  spdkit::SpdMatrix a = load_single_matrix(file_a);
  spdkit::SpdMatrix b = load_single_matrix(file_b);
  double value = 0.0;
  if (metric == "sdiv") {
    value = spdkit::s_div(a, b);
  } else if (metric == "sdelta") {
    value = spdkit::delta_s_metric(a, b);
  } else if (metric == "riem") {
    value = spdkit::riemannian(a, b);
  } else if (metric == "logeuclid") {
    value = spdkit::log_euclidean(a, b);
  } else if (metric == "thompson") {
    value = spdkit::thompson(a, b);
  } else if (metric == "stein_loss") {
    value = spdkit::bregman(spdkit::BregmanFn::kNegLog, a, b);
  } else if (metric == "vonneumann") {
    value = spdkit::bregman(spdkit::BregmanFn::kXLogXMinusX, a, b);
  } else {
    throw spdkit::InvalidParameterError("unknown metric: " + metric);
  }
  std::cout << std::fixed << std::setprecision(15) << value << "\n";
  return kExitOk;
}

int cmd_mean(const std::string& kind, const std::string& bundle_path,
             double tol, int max_iters, const std::string& out_path) {
  spdkit::MatrixBundle bundle = spdkit::parse_bundle(bundle_path);
  spdkit::MeanProblem problem;
  for (const auto& item : bundle.items) problem.matrices.push_back(item.matrix);
  problem.weights = bundle.weights;

  spdkit::SolverConfig config;
  config.tol = tol;
  config.max_iters = max_iters;

  int iterations = 0;
  double residual = 0.0;
  bool converged = true;
  spdkit::SpdMatrix mean = problem.matrices.front();
  if (kind == "sdiv") {
    spdkit::MeanReport report = spdkit::s_mean(problem, config);
    mean = report.mean;
    iterations = report.iterations;
    residual = report.residual;
    converged = report.converged;
  } else if (kind == "karcher") {
    spdkit::MeanReport report = spdkit::karcher_mean(problem, config);
    mean = report.mean;
    iterations = report.iterations;
    residual = report.residual;
    converged = report.converged;
  } else if (kind == "logeuclid") {
    mean = spdkit::le_mean(problem);
  } else if (kind == "gm2") {
    if (problem.matrices.size() != 2) {
      throw spdkit::InvalidParameterError(
          "gm2 requires a bundle of exactly 2 matrices");
    }
    mean = spdkit::geometric_mean(problem.matrices[0], problem.matrices[1]);
  } else {
    throw spdkit::InvalidParameterError("unknown mean kind: " + kind);
  }

  spdkit::MatrixBundle out = spdkit::make_bundle({{"mean", mean}});
  if (out_path.empty()) {
    std::cout << spdkit::bundle_to_text(out);
  } else {
    spdkit::write_bundle(out_path, out);
  }
  std::cout << "iterations=" << iterations << " residual=" << std::scientific
            << std::setprecision(3) << residual << " converged="
            << (converged ? "true" : "false") << "\n";
  return converged ? kExitOk : kExitNoConvergence;
}

int cmd_kernel(const std::string& bundle_path, double beta,
               const std::string& variant) {
  spdkit::GramSpec spec;
  spec.bundle = spdkit::parse_bundle(bundle_path);
  spec.beta = beta;
  if (variant == "det_sum") {
    spec.variant = spdkit::GramVariant::kDetSum;
  } else if (variant == "normalized") {
    spec.variant = spdkit::GramVariant::kNormalized;
  } else {
    throw spdkit::InvalidParameterError("unknown gram variant: " + variant);
  }
  spdkit::GramReport report = spdkit::gram_matrix(spec);
  std::cout << "m=" << report.gram.rows() << " n=" << spec.bundle.n
            << " beta=" << beta << " variant=" << variant << "\n"
            << std::scientific << std::setprecision(6)
            << "min_eig=" << report.min_eig << " max_eig=" << report.max_eig
            << "\n"
            << "psd=" << (report.psd ? "true" : "false")
            << " beta_admissible="
            << (report.beta_admissible ? "true" : "false") << "\n";
  return report.psd ? kExitOk : kExitIndefinite;
}

int cmd_laws(const std::string& law, int trials, std::uint64_t seed,
             const std::vector<int>& dims, double cond, double slack,
             int threads, const std::string& json_path) {
  spdkit::LawSpec spec;
  spec.trials = trials;
  spec.seed = seed;
  spec.dims = dims;
  spec.cond_target = cond;
  spec.slack = slack;
  spec.threads = threads;

  std::vector<spdkit::LawReport> reports;
  if (law == "all") {
    reports = spdkit::run_all(spec);
  } else {
    spec.law_id = law;
    reports.push_back(spdkit::run_law(spec));
  }

  std::cout << std::left << std::setw(30) << "law" << std::right
            << std::setw(8) << "trials" << std::setw(6) << "viol"
            << std::setw(5) << "err" << std::setw(14) << "worst_margin"
            << "  status\n";
  bool all_passed = true;
  for (const auto& r : reports) {
    all_passed = all_passed && r.passed;
    std::cout << std::left << std::setw(30) << r.law_id << std::right
              << std::setw(8) << r.trials_run << std::setw(6) << r.violations
              << std::setw(5) << r.errored << std::setw(14) << std::scientific
              << std::setprecision(3) << r.worst_margin << "  "
              << (r.passed ? "pass" : "FAIL") << "\n";
  }
  if (!json_path.empty()) {
    std::ofstream out(json_path);
    if (!out) {
      throw spdkit::InvalidParameterError("cannot write '" + json_path + "'");
    }
    out << spdkit::law_reports_to_json(reports);
  }
  if (!all_passed) {
    for (const auto& r : reports) {
      if (!r.passed && !r.witness.empty()) {
        std::cerr << "violation witness (" << r.law_id << "): " << r.witness
                  << "\n";
      }
    }
    return kExitLawViolation;
  }
  return kExitOk;
}

int cmd_bench(const std::vector<std::string>& ops, const std::vector<int>& dims,
              const std::vector<int>& bundle_sizes, int reps,
              std::uint64_t seed, const std::string& out_path) {
  spdkit::BenchConfig config;
  if (ops.empty()) {
    config.ops = spdkit::all_bench_ops();
  } else {
    for (const auto& name : ops) {
      config.ops.push_back(spdkit::bench_op_from_string(name));
    }
  }
  config.dims = dims;
  config.bundle_sizes = bundle_sizes;
  config.reps = reps;
  config.seed = seed;
  const std::string csv = spdkit::bench_csv(spdkit::run_bench(config));
  if (out_path.empty()) {
    std::cout << csv;
  } else {
    std::ofstream out(out_path);
    if (!out) {
      throw spdkit::InvalidParameterError("cannot write '" + out_path + "'");
    }
    out << csv;
    std::cout << "wrote " << out_path << "\n";
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"spdkit: S-Divergence geometry of SPD matrices"};
  app.require_subcommand(1);

  std::string metric, file_a, file_b;
  auto* dist = app.add_subcommand(
      "dist", "Distance/divergence between two single-matrix bundles");
  dist->add_option("metric", metric,
                   "one of: sdiv, sdelta, riem, logeuclid, thompson, "
                   "stein_loss, vonneumann")
      ->required();
  dist->add_option("fileA", file_a, "bundle file")->required();
  dist->add_option("fileB", file_b, "bundle file")->required();

  std::string mean_kind, bundle_path, mean_out;
  double mean_tol = 1e-12;
  int mean_max_iters = 1000;
  auto* mean = app.add_subcommand("mean", "Matrix mean of a bundle");
  mean->add_option("kind", mean_kind, "one of: sdiv, karcher, logeuclid, gm2")
      ->required();
  mean->add_option("bundle", bundle_path, "bundle file")->required();
  mean->add_option("--tol", mean_tol, "relative step tolerance");
  mean->add_option("--max-iters", mean_max_iters, "iteration budget");
  mean->add_option("--out", mean_out, "output bundle path (default: stdout)");

  std::string kernel_bundle, kernel_variant = "det_sum";
  double kernel_beta = 0.5;
  auto* kernel =
      app.add_subcommand("kernel", "Determinant-based Gram matrix test");
  kernel->add_option("bundle", kernel_bundle, "bundle file")->required();
  kernel->add_option("--beta", kernel_beta, "exponent beta > 0")->required();
  kernel->add_option("--variant", kernel_variant, "det_sum or normalized");

  std::string law_id = "all", law_json;
  int law_trials = 1000;
  std::uint64_t law_seed = 0;
  std::vector<int> law_dims = {2, 3, 5};
  double law_cond = 100.0;
  double law_slack = -1.0;
  int law_threads = 1;
  auto* laws = app.add_subcommand(
      "laws", "Randomized verification of the registered laws");
  laws->add_option("--law", law_id, "law id or 'all'");
  laws->add_option("--trials", law_trials, "trials per law");
  laws->add_option("--seed", law_seed, "base seed");
  laws->add_option("--dims", law_dims, "matrix dimensions to sample");
  laws->add_option("--cond", law_cond, "condition-number target");
  laws->add_option("--slack", law_slack,
                   "normalized slack (negative = per-law default)");
  laws->add_option("--threads", law_threads, "parallel trial workers");
  laws->add_option("--json", law_json, "write machine-readable reports here");

  std::vector<std::string> bench_ops;
  std::vector<int> bench_dims = {32, 64, 128};
  std::vector<int> bench_m = {10};
  int bench_reps = 10;
  std::uint64_t bench_seed = 0;
  std::string bench_out;
  auto* bench = app.add_subcommand("bench", "Timing harness (CSV output)");
  bench->add_option("--op", bench_ops,
                    "ops to time (default: all); dist_sdiv, dist_riem, "
                    "dist_logeuclid, mean_sdiv, mean_karcher, mean_logeuclid");
  bench->add_option("--dims", bench_dims, "matrix dimensions");
  bench->add_option("--m", bench_m, "bundle sizes (mean ops)");
  bench->add_option("--reps", bench_reps, "repetitions per case");
  bench->add_option("--seed", bench_seed, "input seed");
  bench->add_option("--out", bench_out, "CSV path (default: stdout)");

  try {
    app.parse(argc, argv);
    const std::uint64_t env_seed = default_seed();
    if (laws->parsed() && laws->count("--seed") == 0) law_seed = env_seed;
    if (bench->parsed() && bench->count("--seed") == 0) bench_seed = env_seed;

    if (dist->parsed()) return cmd_dist(metric, file_a, file_b);
    if (mean->parsed()) {
      return cmd_mean(mean_kind, bundle_path, mean_tol, mean_max_iters,
                      mean_out);
    }
    if (kernel->parsed()) {
      return cmd_kernel(kernel_bundle, kernel_beta, kernel_variant);
    }
    if (laws->parsed()) {
      return cmd_laws(law_id, law_trials, law_seed, law_dims, law_cond,
                      law_slack, law_threads, law_json);
    }
    if (bench->parsed()) {
      return cmd_bench(bench_ops, bench_dims, bench_m, bench_reps, bench_seed,
                       bench_out);
    }
    std::cerr << app.help();
    return kExitInput;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {  // --help
      std::cout << app.help();
      return kExitOk;
    }
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const spdkit::InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const spdkit::NumericError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumeric;
  }
}
