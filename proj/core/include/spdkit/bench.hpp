#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace spdkit {

enum class BenchOp {
  kDistSDiv,
  kDistRiem,
  kDistLogEuclid,
  kMeanSDiv,
  kMeanKarcher,
  kMeanLogEuclid,
};

BenchOp bench_op_from_string(const std::string& name);
std::string to_string(BenchOp op);
std::vector<BenchOp> all_bench_ops();

// Timing summary over `reps` repetitions of one operation on fixed seeded
// inputs. m is the bundle size for mean operations and 0 for distances.
struct BenchResult {
  std::string op;
  int n = 0;
  int m = 0;
  double median_s = 0.0;
  double p10_s = 0.0;
  double p90_s = 0.0;
  int reps = 0;
};

struct BenchConfig {
  std::vector<BenchOp> ops;
  std::vector<int> dims;
  std::vector<int> bundle_sizes = {10};  // mean ops only
  int reps = 10;
  std::uint64_t seed = 0;
};

// Runs the harness single-threaded: one warmup evaluation per case, then
// `reps` timed evaluations on identical inputs.
std::vector<BenchResult> run_bench(const BenchConfig& config);

// CSV with the fixed header: op,n,m,median_s,p10_s,p90_s,reps
std::string bench_csv(const std::vector<BenchResult>& results);

}  // namespace spdkit
