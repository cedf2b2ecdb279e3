#pragma once

#include <cstdint>

#include "spdkit/spd.hpp"

namespace spdkit {

// splitmix64 step; the standard 64-bit finalizer.
std::uint64_t splitmix64(std::uint64_t x);

// Deterministic per-trial seed stream: mixes the base seed with the trial
// index so parallel trials can draw independently and still reproduce the
// serial run bit for bit.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

// Small self-contained generator with fully specified output (the standard
// library distributions are implementation-defined, which would break the
// bit-reproducibility contracts).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(splitmix64(seed)) {}

  std::uint64_t next_u64();
  double uniform();                      // [0, 1)
  double uniform(double lo, double hi);  // [lo, hi)
  double log_uniform(double lo, double hi);
  double normal();  // Box-Muller, one value per call
  int uniform_int(int lo, int hi);  // inclusive bounds

 private:
  std::uint64_t state_;
};

// Deterministic random SPD matrix: Q Lambda Q^T with Q from the QR of a
// seeded Gaussian matrix (column signs fixed) and Lambda log-uniform on
// [1/sqrt(cond_target), sqrt(cond_target)] with the interval endpoints pinned
// for n >= 2, so the realized condition number equals cond_target.
SpdMatrix random_spd(int n, std::uint64_t seed, double cond_target);

// Haar-ish random orthogonal matrix (QR of a Gaussian, signs fixed).
Eigen::MatrixXd random_orthogonal(int n, Rng& rng);

// Random symmetric matrix with unit Frobenius norm; handy perturbation source.
Eigen::MatrixXd random_symmetric(int n, Rng& rng);

}  // namespace spdkit
