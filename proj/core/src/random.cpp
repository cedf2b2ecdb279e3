#include "spdkit/random.hpp"

#include <Eigen/QR>
#include <cmath>
#include <numbers>

namespace spdkit {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  return splitmix64(splitmix64(seed) ^ (index + 0x9E3779B97F4A7C15ULL));
}

std::uint64_t Rng::next_u64() {
  state_ = splitmix64(state_);
  return state_;
}

double Rng::uniform() {
  // 53 high-quality bits -> [0, 1)
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

double Rng::log_uniform(double lo, double hi) {
  return std::exp(uniform(std::log(lo), std::log(hi)));
}

double Rng::normal() {
  // Box-Muller; u1 kept away from 0 so the log is finite.
  const double u1 = (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * std::numbers::pi * u2);
}

int Rng::uniform_int(int lo, int hi) {
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<int>(next_u64() % span);
}

Eigen::MatrixXd random_orthogonal(int n, Rng& rng) {
  Eigen::MatrixXd g(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      g(i, j) = rng.normal();
    }
  }
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
  Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(n, n);
  Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < n; ++j) {
    if (r(j, j) < 0.0) q.col(j) = -q.col(j);
  }
  return q;
}

Eigen::MatrixXd random_symmetric(int n, Rng& rng) {
  Eigen::MatrixXd s(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      const double v = rng.normal();
      s(i, j) = v;
      s(j, i) = v;
    }
  }
  const double norm = s.norm();
  if (norm > 0.0) s /= norm;
  return s;
}

SpdMatrix random_spd(int n, std::uint64_t seed, double cond_target) {
  if (n < 1) {
    throw InvalidParameterError("random_spd: dimension must be >= 1");
  }
  if (!(cond_target >= 1.0)) {
    throw InvalidParameterError("random_spd: cond_target must be >= 1");
  }
  Rng rng(splitmix64(seed) ^ splitmix64(static_cast<std::uint64_t>(n)));
  const double hi = std::sqrt(cond_target);
  const double lo = 1.0 / hi;
  Eigen::VectorXd lambda(n);
  for (int i = 0; i < n; ++i) {
    lambda(i) = rng.log_uniform(lo, hi);
  }
  if (n >= 2) {
    // Pin the extremes so the realized condition number equals the target.
    lambda(0) = hi;
    lambda(1) = lo;
  }
  Eigen::MatrixXd q = random_orthogonal(n, rng);
  Eigen::MatrixXd a = q * lambda.asDiagonal() * q.transpose();
  return make_spd(0.5 * (a + a.transpose()));
}

}  // namespace spdkit
