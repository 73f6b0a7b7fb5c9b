#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "bifurq/error.hpp"
#include "bifurq/numerics.hpp"

using namespace bifurq;
using namespace bifurq::numerics;

TEST(Integrate, PolynomialExact) { EXPECT_NEAR(integrate([](double s) { return s; }, 0, 1), 0.5, 1e-15); }

TEST(Integrate, ClosedFormQuadratic) {
  const double v = integrate([](double s) { return (1 - s * s) / std::numbers::sqrt2; }, 0, 1);
  EXPECT_NEAR(v, std::numbers::sqrt2 / 3.0, 1e-13);
}

TEST(Integrate, ZeroIntegrand) { EXPECT_EQ(integrate([](double) { return 0.0; }, 0, 1), 0.0); }

TEST(Integrate, EmptyInterval) { EXPECT_EQ(integrate([](double s) { return s; }, 2, 2), 0.0); }

TEST(Integrate, ReversedIntervalIsDomainError) {
  EXPECT_THROW(integrate([](double s) { return s; }, 1, 0), DomainError);
}

TEST(Integrate, NanReportsAbscissa) {
  try {
    integrate([](double s) { return s > 0.5 ? std::nan("") : 1.0; }, 0, 1);
    FAIL() << "expected NonFiniteError";
  } catch (const NonFiniteError& e) {
    EXPECT_GT(e.abscissa(), 0.5);
  }
}

TEST(Integrate, NonConvergenceCarriesEstimate) {
  QuadratureSpec spec{1e-14, 1e-300, 3};
  try {
    integrate([](double s) { return std::sin(1.0 / (s + 1e-3)); }, 0, 1, spec);
    FAIL() << "expected ConvergenceError";
  } catch (const ConvergenceError& e) {
    EXPECT_TRUE(std::isfinite(e.best_estimate()));
    EXPECT_GT(e.error_estimate(), 0.0);
  }
}

TEST(Integrate, BadSpecRejected) {
  EXPECT_THROW(integrate([](double s) { return s; }, 0, 1, {0.0, 1e-12, 10}), DomainError);
  EXPECT_THROW(integrate([](double s) { return s; }, 0, 1, {1e-10, 1e-12, 0}), DomainError);
}

TEST(Integrate, KronrodWeightsSumToTwo) {
  double sum = detail::kWgk[10];
  for (int i = 0; i < 10; ++i) sum += 2.0 * detail::kWgk[i];
  double gsum = 0.0;
  for (double w : detail::kWg) gsum += 2.0 * w;
  EXPECT_NEAR(sum, 2.0, 1e-15);
  EXPECT_NEAR(gsum, 2.0, 1e-15);
}

TEST(Integrate, Linearity) {
  std::mt19937 rng(12345);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int trial = 0; trial < 20; ++trial) {
    const double a = u(rng), b = u(rng), c = u(rng), k = u(rng);
    auto f = [c](double x) { return std::exp(c * x) * std::cos(x); };
    auto g = [k](double x) { return 1.0 / (1.0 + k * k * x * x); };
    const double If = integrate(f, 0, 2), Ig = integrate(g, 0, 2);
    const double Ih = integrate([&](double x) { return a * f(x) + b * g(x); }, 0, 2);
    const double tol = 2.0 * (1e-10 * (std::abs(a * If) + std::abs(b * Ig)) + 1e-12);
    EXPECT_NEAR(Ih, a * If + b * Ig, tol);
  }
}

TEST(SqrtSingular, InverseSqrt) {
  EXPECT_NEAR(integrate_sqrt_singular([](double w) { return 1.0 / std::sqrt(1.0 - w); }, 0, 1), 2.0, 1e-12);
}

TEST(SqrtSingular, WeightedInverseSqrt) {
  const double v = integrate_sqrt_singular([](double w) { return w / std::sqrt(4.0 - w); }, 0, 4);
  EXPECT_NEAR(v, 32.0 / 3.0, 1e-11);
}

TEST(SqrtSingular, Zero) { EXPECT_EQ(integrate_sqrt_singular([](double) { return 0.0; }, 0, 1), 0.0); }

TEST(SqrtSingular, AgreesWithPlainOnSmoothIntegrands) {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> u(0.5, 2.0);
  for (int trial = 0; trial < 10; ++trial) {
    const double b = u(rng), c = u(rng);
    // phi(w) = (b - w) c, so g = c sqrt(b - w) is smooth enough on [0, b).
    auto g = [b, c](double w) { return c * std::sqrt(std::max(0.0, b - w)) * std::cos(w); };
    const double s = integrate_sqrt_singular(g, 0, b);
    const double plain = integrate(g, 0, b);
    EXPECT_NEAR(s, plain, 1e-9 * std::abs(plain) + 1e-11);
  }
}

TEST(FindRoot, Linear) { EXPECT_NEAR(find_root([](double x) { return x - 1; }, {0, 2}), 1.0, 1e-12); }

TEST(FindRoot, Sqrt2) {
  EXPECT_NEAR(find_root([](double x) { return x * x - 2; }, {1, 2}, 1e-14, 0.0), std::numbers::sqrt2, 1e-13);
}

TEST(FindRoot, Quartic) {
  EXPECT_NEAR(find_root([](double x) { return x * x * x * x - 3 * x * x - 4; }, {1, 3}), 2.0, 1e-11);
}

TEST(FindRoot, EndpointRoot) { EXPECT_EQ(find_root([](double x) { return x - 2; }, {2, 3}), 2.0); }

TEST(FindRoot, SameSignBracketThrows) {
  EXPECT_THROW(find_root([](double x) { return x * x + 1; }, {-1, 1}), BracketError);
}

TEST(FindRoot, BadBracketThrows) { EXPECT_THROW(find_root([](double x) { return x; }, {1, -1}), DomainError); }

TEST(FindRoot, BudgetExhaustedCarriesBracket) {
  RootOptions opts;
  opts.max_iterations = 2;
  opts.x_tol = 0.0;
  opts.x_abs = 0.0;
  opts.f_tol = 0.0;
  try {
    find_root([](double x) { return std::tanh(x - 0.3) + 1e-3 * x; }, {-10, 10}, opts);
    FAIL() << "expected BracketError";
  } catch (const BracketError& e) {
    EXPECT_LE(e.best_bracket().lo, e.best_bracket().hi);
    EXPECT_GE(e.best_bracket().lo, -10.0);
    EXPECT_LE(e.best_bracket().hi, 10.0);
  }
}

TEST(FindRoot, StaysInsideBracket) {
  std::mt19937 rng(99);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  for (int trial = 0; trial < 200; ++trial) {
    const double r = u(rng);
    const double lo = r - std::abs(u(rng)) - 1e-3;
    const double hi = r + std::abs(u(rng)) + 1e-3;
    const double c = std::abs(u(rng));
    const double x = find_root([&](double x) { return std::atan(x - r) + 0.1 * c * (x - r); }, {lo, hi});
    EXPECT_GE(x, lo);
    EXPECT_LE(x, hi);
    EXPECT_NEAR(x, r, 1e-9);
  }
}

TEST(ExpandBracket, Linear) {
  const auto br = expand_bracket_up([](double x) { return x - 10; }, 1, 2, 50);
  EXPECT_LE(br.lo, 10.0);
  EXPECT_GE(br.hi, 10.0);
  EXPECT_EQ(br.lo, 8.0);
  EXPECT_EQ(br.hi, 16.0);
}

TEST(ExpandBracket, Log) {
  const auto br = expand_bracket_up([](double x) { return std::log(x) - 1; }, 1, 2, 50);
  EXPECT_LE(br.lo, std::numbers::e);
  EXPECT_GE(br.hi, std::numbers::e);
}

TEST(ExpandBracket, Growth10) {
  const auto br = expand_bracket_up([](double x) { return x * x - 1e6; }, 1, 10, 50);
  EXPECT_LE(br.lo, 1000.0);
  EXPECT_GE(br.hi, 1000.0);
  EXPECT_GE(br.lo, 100.0 * (1 - 1e-12));
}

TEST(ExpandBracket, BudgetExhausted) {
  EXPECT_THROW(expand_bracket_up([](double) { return -1.0; }, 1, 2, 10), BracketError);
}

TEST(ExpandBracket, BadArguments) {
  EXPECT_THROW(expand_bracket_up([](double x) { return x; }, 1, 1.0, 10), DomainError);
  EXPECT_THROW(expand_bracket_up([](double x) { return x; }, 0, 2.0, 10), DomainError);
}

TEST(LogLogFit, ExactSquare) {
  std::vector<std::pair<double, double>> s{{1, 1}, {10, 100}, {100, 10000}};
  EXPECT_NEAR(fit_loglog_slope(s).slope, 2.0, 1e-14);
}

TEST(LogLogFit, TwoPoints) {
  std::vector<std::pair<double, double>> s{{1, 3}, {10, 30}};
  const auto f = fit_loglog_slope(s);
  EXPECT_NEAR(f.slope, 1.0, 1e-14);
  EXPECT_NEAR(f.intercept, std::log(3.0), 1e-14);
}

TEST(LogLogFit, Identity) {
  const double e = std::numbers::e;
  std::vector<std::pair<double, double>> s{{e, e}, {e * e, e * e}, {e * e * e, e * e * e}};
  EXPECT_NEAR(fit_loglog_slope(s).slope, 1.0, 1e-14);
}

TEST(LogLogFit, RecoversRandomPowerLaws) {
  std::mt19937 rng(2024);
  std::uniform_real_distribution<double> ex(-4.0, 4.0), co(0.1, 10.0), x(0.01, 1000.0);
  for (int trial = 0; trial < 50; ++trial) {
    const double k = ex(rng), c = co(rng);
    std::vector<std::pair<double, double>> s;
    for (int i = 0; i < 6; ++i) {
      const double xi = x(rng);
      s.emplace_back(xi, c * std::pow(xi, k));
    }
    const auto f = fit_loglog_slope(s);
    EXPECT_NEAR(f.slope, k, 1e-12);
    EXPECT_NEAR(f.intercept, std::log(c), 1e-11);
  }
}

TEST(LogLogFit, Errors) {
  std::vector<std::pair<double, double>> one{{1, 1}};
  EXPECT_THROW(fit_loglog_slope(one), DomainError);
  std::vector<std::pair<double, double>> neg{{1, 1}, {2, -1}};
  EXPECT_THROW(fit_loglog_slope(neg), DomainError);
  std::vector<std::pair<double, double>> same_x{{2, 1}, {2, 3}};
  EXPECT_THROW(fit_loglog_slope(same_x), DomainError);
}
