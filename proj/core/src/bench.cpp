#include "spdkit/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <sstream>

#include "spdkit/divergence.hpp"
#include "spdkit/error.hpp"
#include "spdkit/mean.hpp"
#include "spdkit/random.hpp"

namespace spdkit {

namespace {

bool is_mean_op(BenchOp op) {
  return op == BenchOp::kMeanSDiv || op == BenchOp::kMeanKarcher ||
         op == BenchOp::kMeanLogEuclid;
}

double quantile(std::vector<double> sorted, double q) {
  const std::size_t n = sorted.size();
  if (n == 1) return sorted[0];
  const double pos = q * static_cast<double>(n - 1);
  const std::size_t lo = static_cast<std::size_t>(pos);
  const std::size_t hi = std::min(lo + 1, n - 1);
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] * (1.0 - frac) + sorted[hi] * frac;
}

double time_once(const std::function<void()>& fn) {
  const auto start = std::chrono::steady_clock::now();
  fn();
  const auto stop = std::chrono::steady_clock::now();
  return std::chrono::duration<double>(stop - start).count();
}

BenchResult summarize(BenchOp op, int n, int m, std::vector<double> times) {
  std::sort(times.begin(), times.end());
  BenchResult r;
  r.op = to_string(op);
  r.n = n;
  r.m = m;
  r.reps = static_cast<int>(times.size());
  r.median_s = quantile(times, 0.5);
  r.p10_s = quantile(times, 0.1);
  r.p90_s = quantile(times, 0.9);
  return r;
}

}  // namespace

BenchOp bench_op_from_string(const std::string& name) {
  if (name == "dist_sdiv") return BenchOp::kDistSDiv;
  if (name == "dist_riem") return BenchOp::kDistRiem;
  if (name == "dist_logeuclid") return BenchOp::kDistLogEuclid;
  if (name == "mean_sdiv") return BenchOp::kMeanSDiv;
  if (name == "mean_karcher") return BenchOp::kMeanKarcher;
  if (name == "mean_logeuclid") return BenchOp::kMeanLogEuclid;
  throw InvalidParameterError("unknown bench op: " + name);
}

std::string to_string(BenchOp op) {
  switch (op) {
    case BenchOp::kDistSDiv: return "dist_sdiv";
    case BenchOp::kDistRiem: return "dist_riem";
    case BenchOp::kDistLogEuclid: return "dist_logeuclid";
    case BenchOp::kMeanSDiv: return "mean_sdiv";
    case BenchOp::kMeanKarcher: return "mean_karcher";
    case BenchOp::kMeanLogEuclid: return "mean_logeuclid";
  }
  return "unknown";
}

std::vector<BenchOp> all_bench_ops() {
  return {BenchOp::kDistSDiv,  BenchOp::kDistRiem,    BenchOp::kDistLogEuclid,
          BenchOp::kMeanSDiv,  BenchOp::kMeanKarcher, BenchOp::kMeanLogEuclid};
}

std::vector<BenchResult> run_bench(const BenchConfig& config) {
  if (config.ops.empty() || config.dims.empty() || config.reps < 1) {
    throw InvalidParameterError(
        "run_bench: need ops, dims, and reps >= 1");
  }
  std::vector<BenchResult> results;
  for (BenchOp op : config.ops) {
    for (int n : config.dims) {
      if (n < 1) throw InvalidParameterError("run_bench: dims must be >= 1");
      if (!is_mean_op(op)) {
        // Distances time a single evaluation on a fixed seeded pair.
        SpdMatrix a = random_spd(n, derive_seed(config.seed, 2 * n), 100.0);
        SpdMatrix b = random_spd(n, derive_seed(config.seed, 2 * n + 1), 100.0);
        volatile double sink = 0.0;
        auto call = [&]() {
          switch (op) {
            case BenchOp::kDistSDiv: sink = s_div(a, b); break;
            case BenchOp::kDistRiem: sink = riemannian(a, b); break;
            default: sink = log_euclidean(a, b); break;
          }
        };
        call();  // warmup
        std::vector<double> times(config.reps);
        for (int rep = 0; rep < config.reps; ++rep) {
          times[rep] = time_once(call);
        }
        (void)sink;
        results.push_back(summarize(op, n, 0, std::move(times)));
        continue;
      }
      for (int m : config.bundle_sizes) {
        if (m < 1) {
          throw InvalidParameterError("run_bench: bundle sizes must be >= 1");
        }
        MeanProblem problem;
        for (int i = 0; i < m; ++i) {
          problem.matrices.push_back(
              random_spd(n, derive_seed(config.seed, 1000 + i), 100.0));
        }
        SolverConfig solver;
        solver.tol = 1e-10;
        solver.max_iters = 500;
        auto call = [&]() {
          switch (op) {
            case BenchOp::kMeanSDiv: s_mean(problem, solver); break;
            case BenchOp::kMeanKarcher: karcher_mean(problem, solver); break;
            default: le_mean(problem); break;
          }
        };
        call();  // warmup
        std::vector<double> times(config.reps);
        for (int rep = 0; rep < config.reps; ++rep) {
          times[rep] = time_once(call);
        }
        results.push_back(summarize(op, n, m, std::move(times)));
      }
    }
  }
  return results;
}

std::string bench_csv(const std::vector<BenchResult>& results) {
  std::ostringstream out;
  out << "op,n,m,median_s,p10_s,p90_s,reps\n";
  out.precision(9);
  for (const auto& r : results) {
    out << r.op << ',' << r.n << ',' << r.m << ',' << r.median_s << ','
        << r.p10_s << ',' << r.p90_s << ',' << r.reps << '\n';
  }
  return out.str();
}

}  // namespace spdkit
