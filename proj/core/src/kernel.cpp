#include "spdkit/kernel.hpp"

#include <cmath>
#include <string>

#include "spdkit/random.hpp"

namespace spdkit {

namespace {

// exp() arguments beyond this magnitude would over/underflow a double.
constexpr double kExpRange = 700.0;

GramReport finish_report(Eigen::MatrixXd gram, bool admissible) {
  GramReport report;
  EigenDecomposition d = sym_eig(gram);
  report.gram = std::move(gram);
  report.max_eig = d.eigenvalues(0);
  report.min_eig = d.eigenvalues(d.eigenvalues.size() - 1);
  report.psd = report.min_eig >= -1e-10 * std::max(1.0, report.max_eig);
  report.beta_admissible = admissible;
  return report;
}

}  // namespace

bool beta_admissible(double beta, int n) {
  if (n < 1) {
    throw InvalidParameterError("beta_admissible: dimension must be >= 1");
  }
  if (!(beta > 0.0)) {
    throw InvalidParameterError("beta_admissible: beta must be positive");
  }
  if (beta > 0.5 * (n - 1)) return true;
  const double doubled = 2.0 * beta;
  const double nearest = std::round(doubled);
  return nearest >= 1.0 && nearest <= static_cast<double>(n - 1) &&
         std::abs(doubled - nearest) <= 2.0 * 1e-12;
}

GramReport gram_matrix(const GramSpec& spec) {
  const auto& bundle = spec.bundle;
  if (bundle.items.empty()) {
    throw InvalidParameterError("gram_matrix: bundle is empty");
  }
  if (!(spec.beta > 0.0)) {
    throw InvalidParameterError("gram_matrix: beta must be positive");
  }
  const int m = static_cast<int>(bundle.items.size());
  const double n_log2 = bundle.n * std::log(2.0);

  std::vector<double> log_det_2x(m);
  for (int i = 0; i < m; ++i) {
    log_det_2x[i] = n_log2 + log_det(bundle.items[i].matrix);
  }

  Eigen::MatrixXd gram(m, m);
  for (int i = 0; i < m; ++i) {
    for (int j = i; j < m; ++j) {
      SpdMatrix sum = make_spd(bundle.items[i].matrix.matrix() +
                               bundle.items[j].matrix.matrix());
      double exponent = -spec.beta * log_det(sum);
      if (spec.variant == GramVariant::kNormalized) {
        exponent += 0.5 * spec.beta * (log_det_2x[i] + log_det_2x[j]);
      }
      if (std::abs(exponent) > kExpRange) {
        throw OverflowError(
            "gram_matrix: |beta * logdet| = " + std::to_string(exponent) +
            " exceeds the exp range; rescale the bundle");
      }
      gram(i, j) = std::exp(exponent);
      gram(j, i) = gram(i, j);
    }
  }
  return finish_report(std::move(gram), beta_admissible(spec.beta, bundle.n));
}

MatrixBundle counterexample_bundle() {
  auto mk = [](double a, double b, double d) {
    Eigen::MatrixXd m(2, 2);
    m << a, b, b, d;
    return make_spd(m);
  };
  std::vector<BundleItem> items;
  items.push_back({"X1", mk(0.1406, 0.0347, 0.1779)});
  items.push_back({"X2", mk(2.0195, 0.0066, 0.2321)});
  items.push_back({"X3", mk(1.0924, 0.0609, 1.2520)});
  items.push_back({"X4", mk(1.0309, 0.8694, 1.2310)});
  items.push_back({"X5", mk(0.2870, -0.4758, 2.3569)});
  return make_bundle(std::move(items));
}

GramReport scalar_gram(const std::vector<double>& xs, double beta) {
  if (xs.empty()) {
    throw InvalidParameterError("scalar_gram: empty input");
  }
  if (!(beta > 0.0)) {
    throw InvalidParameterError("scalar_gram: beta must be positive");
  }
  for (double x : xs) {
    if (!(x > 0.0)) {
      throw NonPositiveInputError("scalar_gram: inputs must be positive");
    }
  }
  const int m = static_cast<int>(xs.size());
  Eigen::MatrixXd gram(m, m);
  for (int i = 0; i < m; ++i) {
    for (int j = i; j < m; ++j) {
      gram(i, j) = std::pow(xs[i] + xs[j], -beta);
      gram(j, i) = gram(i, j);
    }
  }
  GramReport report = finish_report(std::move(gram), beta_admissible(beta, 1));
  if (report.min_eig < -1e-12 * report.max_eig) {
    throw NumericError("scalar_gram: matrix unexpectedly indefinite");
  }
  return report;
}

std::optional<MatrixBundle> search_indefinite(int n, double beta, int budget,
                                              std::uint64_t seed) {
  if (n < 1 || budget < 1) {
    throw InvalidParameterError("search_indefinite: need n >= 1, budget >= 1");
  }
  const int m = n + 3;
  for (int trial = 0; trial < budget; ++trial) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(trial)));
    std::vector<BundleItem> items;
    items.reserve(m);
    for (int i = 0; i < m; ++i) {
      const double cond = rng.log_uniform(2.0, 100.0);
      const double scale = rng.log_uniform(0.2, 5.0);
      SpdMatrix base = random_spd(n, rng.next_u64(), cond);
      items.push_back(
          {"T" + std::to_string(i + 1), make_spd(scale * base.matrix())});
    }
    MatrixBundle bundle = make_bundle(std::move(items));
    GramSpec spec{bundle, beta, GramVariant::kDetSum};
    GramReport report = gram_matrix(spec);
    if (report.min_eig < -1e-8 * report.max_eig) {
      return bundle;
    }
  }
  return std::nullopt;
}

}  // namespace spdkit
