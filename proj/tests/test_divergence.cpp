#include "spdkit/divergence.hpp"

#include <cmath>

#include <gtest/gtest.h>

#include "spdkit/random.hpp"
#include "testutil.hpp"

namespace spdkit {
namespace {

using test::mat2;
using test::spd1;
using test::spd_diag;

TEST(SDiv, ZeroAtEqualArguments) {
  SpdMatrix a = random_spd(4, 11, 100.0);
  EXPECT_DOUBLE_EQ(s_div(a, a), 0.0);
}

TEST(SDiv, ScaledIdentityPair) {
  // Per eigenvalue: log((1+4)/2) - log(2) = log(1.25); two of them.
  EXPECT_NEAR(s_div(spd_diag({1, 1}), spd_diag({4, 4})), 2.0 * std::log(1.25),
              1e-14);
}

TEST(SDiv, AgreesWithEigenvalueDeterminantOracle) {
  // Cholesky-based log-dets checked against an independent spectral route.
  SpdMatrix x1 = make_spd(mat2(0.1406, 0.0347, 0.0347, 0.1779));
  SpdMatrix x2 = make_spd(mat2(2.0195, 0.0066, 0.0066, 0.2321));
  auto eig_logdet = [](const Eigen::MatrixXd& m) {
    return sym_eig(m).eigenvalues.array().log().sum();
  };
  const double oracle =
      eig_logdet(0.5 * (x1.matrix() + x2.matrix())) -
      0.5 * (eig_logdet(x1.matrix()) + eig_logdet(x2.matrix()));
  EXPECT_NEAR(s_div(x1, x2), oracle, 1e-10);
}

TEST(SDiv, SymmetricInArguments) {
  for (int i = 0; i < 50; ++i) {
    SpdMatrix a = random_spd(3, 2 * i, 1000.0);
    SpdMatrix b = random_spd(3, 2 * i + 1, 1000.0);
    EXPECT_NEAR(s_div(a, b), s_div(b, a), 1e-12 * std::max(1.0, s_div(a, b)));
  }
}

TEST(DeltaS, SqrtOfSDiv) {
  SpdMatrix a = spd_diag({1, 1});
  SpdMatrix b = spd_diag({4, 4});
  EXPECT_DOUBLE_EQ(delta_s_metric(a, a), 0.0);
  EXPECT_NEAR(delta_s_metric(a, b), std::sqrt(2.0 * std::log(1.25)), 1e-14);
}

TEST(DeltaS, ScalarTriangleExample) {
  const double d19 = scalar_delta_s(1, 9);
  const double d14 = scalar_delta_s(1, 4);
  const double d49 = scalar_delta_s(4, 9);
  EXPECT_LE(d19, d14 + d49);
}

TEST(ScalarDeltaS, Examples) {
  EXPECT_DOUBLE_EQ(scalar_delta_s(1, 1), 0.0);
  EXPECT_NEAR(scalar_delta_s(1, 4), std::sqrt(std::log(1.25)), 1e-15);
  // Consistent with s_div on 1x1 matrices by definition.
  EXPECT_NEAR(scalar_delta_s(2, 8) * scalar_delta_s(2, 8),
              s_div(spd1(2), spd1(8)), 1e-14);
  EXPECT_THROW(scalar_delta_s(-1, 2), NonPositiveInputError);
  EXPECT_THROW(scalar_delta_s(1, 0), NonPositiveInputError);
}

TEST(Riemannian, Examples) {
  SpdMatrix a = random_spd(5, 3, 100.0);
  EXPECT_LT(riemannian(a, a), 1e-11);
  EXPECT_NEAR(riemannian(spd_diag({1, 1}), spd_diag({4, 4})),
              std::sqrt(2.0) * std::log(4.0), 1e-12);
}

TEST(Riemannian, InverseInvariance) {
  for (int i = 0; i < 30; ++i) {
    SpdMatrix a = random_spd(4, 100 + i, 200.0);
    SpdMatrix b = random_spd(4, 300 + i, 200.0);
    EXPECT_NEAR(riemannian(a, b), riemannian(mat_inv(a), mat_inv(b)), 1e-10);
  }
}

TEST(LogEuclidean, Examples) {
  SpdMatrix a = random_spd(3, 5, 50.0);
  EXPECT_LT(log_euclidean(a, a), 1e-12);
  const double e2 = std::exp(2.0);
  EXPECT_NEAR(log_euclidean(SpdMatrix::identity(2), spd_diag({e2, e2})),
              std::sqrt(8.0), 1e-12);
}

TEST(LogEuclidean, EqualsRiemannianForCommutingPair) {
  Rng rng(77);
  Eigen::MatrixXd q = random_orthogonal(4, rng);
  Eigen::VectorXd l1(4), l2(4);
  l1 << 0.5, 1.0, 2.0, 8.0;
  l2 << 3.0, 0.25, 1.5, 5.0;
  SpdMatrix a = make_spd(q * l1.asDiagonal() * q.transpose());
  SpdMatrix b = make_spd(q * l2.asDiagonal() * q.transpose());
  EXPECT_NEAR(log_euclidean(a, b), riemannian(a, b), 1e-10);
}

TEST(Thompson, Examples) {
  SpdMatrix a = random_spd(3, 9, 40.0);
  EXPECT_LT(thompson(a, a), 1e-12);
  EXPECT_NEAR(thompson(SpdMatrix::identity(2), spd_diag({4, 0.25})),
              std::log(4.0), 1e-12);
}

TEST(Thompson, NeverExceedsRiemannian) {
  for (int i = 0; i < 50; ++i) {
    SpdMatrix a = random_spd(2 + i % 5, 400 + i, 1000.0);
    SpdMatrix b = random_spd(2 + i % 5, 500 + i, 1000.0);
    EXPECT_LE(thompson(a, b), riemannian(a, b) + 1e-14);
  }
}

TEST(Bregman, ZeroAtEqualArguments) {
  SpdMatrix a = random_spd(3, 21, 50.0);
  for (BregmanFn f :
       {BregmanFn::kHalfSquare, BregmanFn::kXLogXMinusX, BregmanFn::kNegLog}) {
    EXPECT_DOUBLE_EQ(bregman(f, a, a), 0.0);
  }
}

TEST(Bregman, ScalarSteinLoss) {
  // D_ld(2, 1) = (2-1)/1 - log 2.
  EXPECT_NEAR(bregman(BregmanFn::kNegLog, spd1(2), spd1(1)),
              1.0 - std::log(2.0), 1e-14);
}

TEST(Bregman, ScalarVonNeumann) {
  // D_vn(e, 1) = e*log(e) - e*log(1) - e + 1 = 1.
  const double e = std::exp(1.0);
  EXPECT_NEAR(bregman(BregmanFn::kXLogXMinusX, spd1(e), spd1(1)), 1.0, 1e-13);
}

TEST(Bregman, HalfSquareIsScaledFrobenius) {
  SpdMatrix a = random_spd(3, 31, 20.0);
  SpdMatrix b = random_spd(3, 32, 20.0);
  EXPECT_NEAR(bregman(BregmanFn::kHalfSquare, a, b),
              0.5 * (a.matrix() - b.matrix()).squaredNorm(), 1e-12);
}

TEST(Bregman, LogKindsRejectNonPositiveInput) {
  Eigen::MatrixXd indefinite = mat2(1, 2, 2, 1);
  Eigen::MatrixXd id = Eigen::MatrixXd::Identity(2, 2);
  EXPECT_THROW(bregman(BregmanFn::kNegLog, indefinite, id),
               NonPositiveInputError);
  EXPECT_THROW(bregman(BregmanFn::kXLogXMinusX, id, indefinite),
               NonPositiveInputError);
  EXPECT_NO_THROW(bregman(BregmanFn::kHalfSquare, indefinite, id));
}

TEST(Bregman, NonnegativeOnRandomPairs) {
  for (int i = 0; i < 50; ++i) {
    SpdMatrix a = random_spd(3, 600 + i, 100.0);
    SpdMatrix b = random_spd(3, 700 + i, 100.0);
    EXPECT_GE(bregman(BregmanFn::kNegLog, a, b), 0.0);
    EXPECT_GE(bregman(BregmanFn::kXLogXMinusX, a, b), 0.0);
  }
}

TEST(Jensen, NegLogMatchesSDiv) {
  for (int i = 0; i < 30; ++i) {
    SpdMatrix a = random_spd(4, 800 + i, 100.0);
    SpdMatrix b = random_spd(4, 900 + i, 100.0);
    EXPECT_NEAR(jensen_div(BregmanFn::kNegLog, a, b), s_div(a, b), 1e-10);
  }
}

TEST(Jensen, HalfSquareScalarOracle) {
  // trace f at x in {0, 2} for f = x^2/2: (0 + 2)/2 - f(1) = 1 - 1/2.
  Eigen::MatrixXd x = Eigen::MatrixXd::Zero(1, 1);
  Eigen::MatrixXd y = Eigen::MatrixXd::Constant(1, 1, 2.0);
  EXPECT_NEAR(jensen_div(BregmanFn::kHalfSquare, x, y), 0.5, 1e-15);
}

TEST(Jensen, EqualsHalvedBregmanSumTowardMidpoint) {
  // S_f(X,Y) = (D_f(X,M) + D_f(Y,M))/2 at M = (X+Y)/2: the Bregman linear
  // terms cancel against the midpoint, leaving the trace representation.
  for (int i = 0; i < 20; ++i) {
    SpdMatrix x = random_spd(3, 2100 + i, 80.0);
    SpdMatrix y = random_spd(3, 2200 + i, 80.0);
    Eigen::MatrixXd mid = 0.5 * (x.matrix() + y.matrix());
    for (BregmanFn f : {BregmanFn::kHalfSquare, BregmanFn::kXLogXMinusX,
                        BregmanFn::kNegLog}) {
      const double expected = 0.5 * (bregman(f, x.matrix(), mid) +
                                     bregman(f, y.matrix(), mid));
      EXPECT_NEAR(jensen_div(f, x, y), expected,
                  1e-10 * std::max(1.0, expected));
    }
  }
}

TEST(Jensen, MidpointOptimalityOfLogDet) {
  // Z* = (X+Y)/2 minimizes D_ld(X,Z) + D_ld(Y,Z); local perturbations only
  // increase the sum.
  SpdMatrix x = random_spd(3, 41, 50.0);
  SpdMatrix y = random_spd(3, 42, 50.0);
  SpdMatrix z = make_spd(0.5 * (x.matrix() + y.matrix()));
  const double base = bregman(BregmanFn::kNegLog, x, z) +
                      bregman(BregmanFn::kNegLog, y, z);
  Eigen::MatrixXd root = mat_sqrt(z).matrix();
  Rng rng(4242);
  for (int k = 0; k < 20; ++k) {
    Eigen::MatrixXd w = random_symmetric(3, rng);
    Eigen::MatrixXd delta = root * w * root;
    delta = 0.5 * (delta + delta.transpose());
    SpdMatrix zp = make_spd(z.matrix() + 1e-3 * delta);
    const double perturbed = bregman(BregmanFn::kNegLog, x, zp) +
                             bregman(BregmanFn::kNegLog, y, zp);
    EXPECT_LE(base, perturbed + 1e-12);
  }
}

TEST(SDivGrad, ZeroAtEqualArguments) {
  SpdMatrix a = random_spd(3, 51, 60.0);
  EXPECT_LT(s_div_grad(a, a).norm(), 1e-13);
}

TEST(SDivGrad, ScalarValue) {
  // d/dx S(x,y) at (1,4): 1/(x+y) - 1/(2x) = 1/5 - 1/2.
  EXPECT_NEAR(s_div_grad(spd1(1), spd1(4))(0, 0), -0.3, 1e-15);
}

TEST(SDivGrad, MatchesFiniteDifferences) {
  for (int i = 0; i < 20; ++i) {
    SpdMatrix x = random_spd(3, 1100 + i, 50.0);
    SpdMatrix y = random_spd(3, 1200 + i, 50.0);
    auto f = [&](const Eigen::MatrixXd& m) { return s_div(make_spd(m), y); };
    Eigen::MatrixXd fd =
        test::fd_gradient(f, x.matrix(), 1e-5 * x.matrix().norm());
    Eigen::MatrixXd an = s_div_grad(x, y);
    EXPECT_LE((fd - an).norm(), 1e-5 * an.norm());
  }
}

TEST(SDivHessian, ScalarValues) {
  // A = B = 1: 1/2 - 1/4.
  EXPECT_NEAR(s_div_hessian(spd1(1), spd1(1))(0, 0), 0.25, 1e-15);
  // A = 4, B = 1 (past the 1+sqrt(2) edge): 1/32 - 1/25 < 0.
  EXPECT_NEAR(s_div_hessian(spd1(4), spd1(1))(0, 0), 1.0 / 32 - 1.0 / 25,
              1e-15);
}

TEST(SDivHessian, MatchesFiniteDifferenceQuadraticForm) {
  Rng rng(314);
  for (int i = 0; i < 10; ++i) {
    SpdMatrix a = random_spd(3, 1300 + i, 30.0);
    SpdMatrix b = random_spd(3, 1400 + i, 30.0);
    Eigen::MatrixXd h = s_div_hessian(a, b);
    auto f = [&](const Eigen::MatrixXd& m) { return s_div(make_spd(m), b); };
    const double href = h.cwiseAbs().maxCoeff();
    for (int k = 0; k < 5; ++k) {
      Eigen::MatrixXd d = random_symmetric(3, rng);
      const double fd = test::fd_quadratic_form(
          f, a.matrix(), d, 1e-4 * (1.0 + a.matrix().norm()));
      const double an = test::quad_form(h, d);
      EXPECT_LE(std::abs(fd - an), 1e-4 * std::max(std::abs(an), 1e-3 * href));
    }
  }
}

TEST(SDivHessian, DefiniteOnLoewnerComparableRegions) {
  const double edge = 1.0 + std::sqrt(2.0);
  for (int i = 0; i < 20; ++i) {
    SpdMatrix b = random_spd(3, 1500 + i, 30.0);
    // A strictly below (1+sqrt(2)) B.
    SpdMatrix a_low = make_spd(0.5 * edge * b.matrix());
    ASSERT_TRUE(loewner_leq(a_low.matrix(), edge * b.matrix()));
    Eigen::MatrixXd h = s_div_hessian(a_low, b);
    EXPECT_GE(sym_eig(h).eigenvalues.minCoeff(),
              -1e-12 * h.cwiseAbs().maxCoeff());
    // A strictly above (1+sqrt(2)) B.
    SpdMatrix a_high = make_spd(2.0 * edge * b.matrix());
    ASSERT_TRUE(loewner_leq(edge * b.matrix(), a_high.matrix()));
    h = s_div_hessian(a_high, b);
    EXPECT_LE(sym_eig(h).eigenvalues.maxCoeff(),
              1e-12 * h.cwiseAbs().maxCoeff());
  }
}

TEST(Invariances, LemmaOneAndCongruence) {
  Rng rng(271828);
  for (int i = 0; i < 30; ++i) {
    const int n = 2 + i % 4;
    SpdMatrix a = random_spd(n, 1600 + i, 100.0);
    SpdMatrix b = random_spd(n, 1700 + i, 100.0);
    SpdMatrix c = random_spd(n, 1800 + i, 100.0);
    SpdMatrix eye = SpdMatrix::identity(n);
    const double s_ab = s_div(a, b);

    // (i) S(I, A) = S(I, Eig(A))
    SpdMatrix eig_a =
        make_spd(Eigen::MatrixXd(sym_eig(a).eigenvalues.asDiagonal()));
    EXPECT_NEAR(s_div(eye, a), s_div(eye, eig_a), 1e-10);

    // (ii) congruence invariance
    Eigen::MatrixXd q1 = random_orthogonal(n, rng);
    Eigen::MatrixXd q2 = random_orthogonal(n, rng);
    Eigen::VectorXd d(n);
    for (int k = 0; k < n; ++k) d(k) = rng.log_uniform(0.5, 2.0);
    Eigen::MatrixXd x = q1 * d.asDiagonal() * q2.transpose();
    SpdMatrix xa = make_spd(0.5 * (x.transpose() * a.matrix() * x +
                                   (x.transpose() * a.matrix() * x).transpose()));
    SpdMatrix xb = make_spd(0.5 * (x.transpose() * b.matrix() * x +
                                   (x.transpose() * b.matrix() * x).transpose()));
    EXPECT_NEAR(s_div(xa, xb), s_ab, 1e-9 * std::max(1.0, s_ab));

    // (iii) inversion invariance
    EXPECT_NEAR(s_div(mat_inv(a), mat_inv(b)), s_ab,
                1e-9 * std::max(1.0, s_ab));

    // (iv) S(A (x) B, A (x) C) = n S(B, C)
    EXPECT_NEAR(s_div(make_spd(kron(a.matrix(), b.matrix())),
                      make_spd(kron(a.matrix(), c.matrix()))),
                n * s_div(b, c), 1e-9 * std::max(1.0, n * s_div(b, c)));
  }
}

TEST(Divergence, TagDispatchAndSymmetry) {
  SpdMatrix a = random_spd(3, 1900, 50.0);
  SpdMatrix b = random_spd(3, 1901, 50.0);
  EXPECT_DOUBLE_EQ(divergence(DivergenceKind::kSDiv, a, b), s_div(a, b));
  EXPECT_DOUBLE_EQ(divergence(DivergenceKind::kThompson, a, b),
                   thompson(a, b));
  EXPECT_DOUBLE_EQ(divergence(DivergenceKind::kJensenF, a, b,
                              BregmanFn::kHalfSquare),
                   jensen_div(BregmanFn::kHalfSquare, a, b));
  for (DivergenceKind kind :
       {DivergenceKind::kSDiv, DivergenceKind::kSDelta,
        DivergenceKind::kRiemannian, DivergenceKind::kLogEuclid,
        DivergenceKind::kThompson}) {
    EXPECT_NEAR(divergence(kind, a, b), divergence(kind, b, a), 1e-12);
    EXPECT_EQ(divergence_kind_from_string(to_string(kind)), kind);
  }
  EXPECT_THROW(divergence_kind_from_string("bogus"), InvalidParameterError);
}

}  // namespace
}  // namespace spdkit
