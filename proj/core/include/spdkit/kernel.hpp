#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "spdkit/bundle.hpp"
#include "spdkit/spd.hpp"

namespace spdkit {

enum class GramVariant {
  kDetSum,      // h_ij = det(X_i + X_j)^{-beta}
  kNormalized,  // h_ij scaled by det(2X_i)^{beta/2} det(2X_j)^{beta/2},
                // i.e. exp(-beta * delta_S^2(X_i, X_j)); unit diagonal
};

struct GramSpec {
  MatrixBundle bundle;
  double beta = 0.5;
  GramVariant variant = GramVariant::kDetSum;
};

struct GramReport {
  Eigen::MatrixXd gram;  // m x m, exactly symmetric by construction
  double min_eig = 0.0;
  double max_eig = 0.0;
  bool psd = false;             // min_eig >= -1e-10 * max(1, max_eig)
  bool beta_admissible = false;  // per the half-integer/threshold rule below
};

// Exact characterization of the exponents for which the det-sum Gram matrix
// of real SPD matrices is guaranteed positive semidefinite:
//   beta in {j/2 : j = 1..n-1} (within 1e-12)  or  beta > (n-1)/2.
// Throws InvalidParameterError for beta <= 0 or n < 1.
bool beta_admissible(double beta, int n);

// Gram matrix of a bundle; entries are assembled in log space and
// exponentiated, throwing OverflowError when beta * logdet leaves the
// representable range. Both variants always share the same PSD verdict.
GramReport gram_matrix(const GramSpec& spec);

// The five 2x2 matrices whose beta = 0.1 det-sum Gram is indefinite
// (lambda_min ~= -0.0017); entries exact to the four printed decimals.
MatrixBundle counterexample_bundle();

// Scalar Gram [ (x_i + x_j)^{-beta} ]; positive semidefinite for every
// beta > 0. Throws NonPositiveInputError on nonpositive entries.
GramReport scalar_gram(const std::vector<double>& xs, double beta);

// Randomized falsifier for inadmissible beta: samples bundles of m = n+3
// matrices until one has an indefinite Gram (min_eig < -1e-8 * max_eig) or
// the budget runs out. Deterministic: trial seeds derive from `seed` and the
// first hit in trial order wins.
std::optional<MatrixBundle> search_indefinite(int n, double beta, int budget,
                                              std::uint64_t seed);

}  // namespace spdkit
