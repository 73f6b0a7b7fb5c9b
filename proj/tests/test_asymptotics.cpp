#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "bifurq/asymptotics.hpp"
#include "bifurq/error.hpp"
#include "bifurq/numerics.hpp"

using namespace bifurq;
using namespace bifurq::asym;

namespace {
const double kC1 = 2.0 * std::numbers::sqrt2;
}

TEST(C1, ClosedFormAtThree) { EXPECT_NEAR(compute_C1(3.0), kC1, 1e-9); }

TEST(C1, ConstantTermAtThree) {
  const double c = compute_C1(3.0);
  EXPECT_NEAR(c * c / 2.0, 4.0, 1e-9);
}

TEST(C1, BoundedBySupOfIntegrand) {
  for (double p : {1.1, 1.5, 2.0, 3.0, 4.0, 7.5, 12.0}) {
    const double c = compute_C1(p);
    EXPECT_GT(c, 0.0) << p;
    EXPECT_LT(c, (p + 3.0) * std::sqrt((p - 1.0) / (p + 1.0))) << p;
  }
}

TEST(C1, AgreesWithPlainQuadrature) {
  // Plain integration of the radicand with clamping, looser tolerance.
  for (double p : {2.0, 5.0}) {
    auto f = [p](double s) {
      const double r = (p - 1) / (p + 1) - s * s + 2 * std::pow(s, p + 1) / (p + 1);
      return std::sqrt(std::max(0.0, r));
    };
    const double plain = (p + 3) * numerics::integrate(f, 0, 1, {1e-9, 1e-12, 2000});
    EXPECT_NEAR(compute_C1(p), plain, 1e-7) << p;
  }
}

TEST(C1, RejectsBadExponent) { EXPECT_THROW(compute_C1(1.0), DomainError); }

TEST(Constants, ExampleThreeThird) {
  const auto m = constants(ProblemParams::make(3.0, 1.0 / 3.0));
  EXPECT_NEAR(m.k, 2.0, 1e-14);
  EXPECT_NEAR(m.B, m.C1 / 3.0, 1e-14);
  EXPECT_NEAR(m.B, 0.94280904, 1e-8);
  EXPECT_NEAR(m.lambda_exponent, 1.0 / 3.0, 1e-14);
}

TEST(Constants, FiveThird) {
  const auto m = constants(ProblemParams::make(5.0, 1.0 / 3.0));
  EXPECT_NEAR(m.k, 1.0, 1e-14);
}

TEST(Constants, QuadraticCaseExponent) {
  for (double p : {1.5, 2.0, 3.0, 5.0, 9.0}) {
    const auto m = constants(ProblemParams::make(p, quadratic_q(p)));
    EXPECT_NEAR(m.lambda_exponent, (p - 1) * (p - 1) / (4 * p), 1e-15) << p;
  }
}

TEST(Constants, IdentitiesOverAdmissibleRange) {
  for (double p : {1.2, 2.0, 3.0, 4.5, 8.0}) {
    const double qmax = (p - 1) / (p + 1);
    for (double f : {0.05, 0.3, 0.6, 0.95}) {
      const auto params = ProblemParams::make(p, f * qmax);
      const auto m = constants(params);
      EXPECT_GT(m.C1, 0.0);
      EXPECT_GT(m.k, 0.0);
      EXPECT_GT(m.B, 0.0);
      EXPECT_GT(m.lambda_exponent, 0.0);
      EXPECT_NEAR(2.0 * m.lambda_exponent + params.q * (p + 1), p - 1, 1e-14);
      // xi(alpha) and alpha-correction coefficients recombine to C1.
      EXPECT_NEAR((p - 1) * m.B * (-1.0) + ((p - 1) * m.B + m.C1), m.C1, 1e-14);
      EXPECT_GT(params.scalar_exponent(), 1.0);
    }
  }
}

TEST(Params, Rejections) {
  EXPECT_THROW(ProblemParams::make(1.0, 0.1), DomainError);
  EXPECT_THROW(ProblemParams::make(3.0, 0.6), DomainError);
  EXPECT_THROW(ProblemParams::make(3.0, 0.5), DomainError);
  EXPECT_THROW(ProblemParams::make(3.0, 0.0), DomainError);
  EXPECT_THROW(ProblemParams::make(3.0, std::nan("")), DomainError);
  EXPECT_NO_THROW(ProblemParams::make(3.0, 0.49));
}

TEST(GammaAsym, Values) {
  const auto t = gamma_asym(100.0, 3.0);
  EXPECT_DOUBLE_EQ(t.leading, 1e4);
  EXPECT_NEAR(t.first, 100 * kC1, 1e-9);
  EXPECT_NEAR(t.second, 4.0, 1e-9);
  EXPECT_NEAR(t.sum(), 10286.842712474619, 1e-8);
  EXPECT_NEAR(gamma_asym(1.0, 3.0).sum(), 1 + kC1 + 4, 1e-9);
}

TEST(LambdaAsym, ExampleAtThousand) {
  const auto m = constants(ProblemParams::make(3.0, 1.0 / 3.0));
  const auto t = lambda_asym(1000.0, m);
  EXPECT_DOUBLE_EQ(t.leading, 1e6);
  EXPECT_NEAR(t.first, kC1 * 1e5, 1e-6);
}

TEST(LambdaAsym, SmallQLimitOfExponent) {
  const double p = 3.0;
  const auto m = constants(ProblemParams::make(p, 1e-9));
  EXPECT_NEAR(m.lambda_exponent, (p - 1) / 2, 1e-8);
}

TEST(HAsym, Values) {
  const auto m = constants(ProblemParams::make(3.0, 1.0 / 3.0));
  const auto h = h_asym(100.0, m);
  EXPECT_NEAR(h.leading, 1e4, 1e-9);
  EXPECT_NEAR(h.first, kC1 / 3 * 100, 1e-9);
  const auto xi = xi_of_alpha_asym(1e6, m);
  EXPECT_NEAR(xi.leading, 100.0, 1e-10);
  EXPECT_NEAR(xi.first, -m.B / 3.0, 1e-10);
}

TEST(NormAsym, ThreeValues) {
  const auto n = norm_asym(100.0, 3.0);
  EXPECT_DOUBLE_EQ(n.norm_p1.leading, 1e8);
  EXPECT_NEAR(n.norm_p1.first, 2.0 / 3.0 * kC1 * 1e6, 1e-4);
  EXPECT_NEAR(n.grad_sq.leading, kC1 / 3 * 1e6, 1e-4);
  EXPECT_NEAR(n.grad_sq.first, 4.0 * 1e4, 1e-6);
}
