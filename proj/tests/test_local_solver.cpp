#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "bifurq/asymptotics.hpp"
#include "bifurq/error.hpp"
#include "bifurq/local_solver.hpp"
#include "bifurq/oracle/shooting.hpp"

using namespace bifurq;
using namespace bifurq::local;

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kPiSq = kPi * kPi;

const oracle::ShootingResult& oracle20() {
  static const auto shot = oracle::shoot(20.0, 3.0);
  return shot;
}
}  // namespace

TEST(Potential, Values) {
  EXPECT_EQ(potential(0.0, 5.0, 3.0), 0.0);
  EXPECT_DOUBLE_EQ(potential(1.0, 2.0, 3.0), 0.75);
  const double gamma = 7.0, p = 2.5;
  const double root = std::pow(gamma * (p + 1.0) / 2.0, 1.0 / (p - 1.0));
  EXPECT_NEAR(potential(root, gamma, p), 0.0, 1e-12 * gamma * root * root);
  EXPECT_THROW(potential(-1.0, 2.0, 3.0), DomainError);
}

TEST(TimeMap, LinearLimitAtFirstEigenvalue) {
  EXPECT_NEAR(time_map(1e-6, kPiSq, 3.0), 0.5, 1e-6);
}

TEST(TimeMap, LinearLimitAtFourTimesEigenvalue) {
  EXPECT_NEAR(time_map(1e-6, 4.0 * kPiSq, 3.0), 0.25, 1e-6);
}

TEST(TimeMap, ShootingOracleRootGivesHalf) {
  EXPECT_NEAR(time_map(oracle20().rho, 20.0, 3.0), 0.5, 1e-10);
}

TEST(TimeMap, IncreasesWithAmplitude) {
  double prev = 0.0;
  for (double rho : {0.1, 1.0, 2.0, 3.0, 4.0, 4.4}) {
    const double t = time_map(rho, 20.0, 3.0);
    EXPECT_GT(t, prev);
    prev = t;
  }
}

TEST(TimeMap, DomainErrors) {
  EXPECT_THROW(time_map(0.0, 20.0, 3.0), DomainError);
  EXPECT_THROW(time_map(-1.0, 20.0, 3.0), DomainError);
  EXPECT_THROW(time_map(std::sqrt(20.0), 20.0, 3.0), DomainError);
  EXPECT_THROW(time_map(1.0, 20.0, 1.0), DomainError);
  EXPECT_THROW(time_map(1.0, -2.0, 3.0), DomainError);
}

TEST(Amplitude, RoundTripThroughRho) {
  for (double rho : {1e-8, 0.3, 2.0, 4.4}) {
    const auto a = Amplitude::from_rho(rho, 20.0, 3.0);
    EXPECT_NEAR(a.rho(20.0, 3.0), rho, 1e-14 * rho);
  }
  const Amplitude a{3.0};
  EXPECT_NEAR(std::exp(a.log_fraction()) + std::exp(a.log_gap()), 1.0, 1e-15);
}

TEST(SolveRho, NearBifurcationPoint) {
  const double rho = solve_rho(kPiSq * (1.0 + 1e-6), 3.0);
  EXPECT_GT(rho, 0.0);
  EXPECT_LE(rho, 1e-2);
}

TEST(SolveRho, BelowUpperBound) {
  const double rho = solve_rho(100.0, 3.0);
  EXPECT_LT(rho, 10.0);
  EXPECT_GT(rho, 9.0);
}

TEST(SolveRho, MatchesShootingOracle) {
  EXPECT_NEAR(solve_rho(20.0, 3.0), oracle20().rho, 1e-8 * oracle20().rho);
}

TEST(SolveRho, RejectsGammaAtOrBelowPiSquared) {
  EXPECT_THROW(solve_rho(kPiSq, 3.0), DomainError);
  EXPECT_THROW(solve_rho(5.0, 3.0), DomainError);
}

TEST(SolveRho, LargeGammaStaysBelowPlateau) {
  const auto amp = solve_amplitude(1e6, 3.0);
  EXPECT_GT(amp.log_odds, 30.0);
  EXPECT_NEAR(time_map(amp, 1e6, 3.0), 0.5, 1e-10);
}

TEST(ComputeNorms, LinearLimit) {
  const auto sol = compute_norms(1e-4, kPiSq, 3.0);
  EXPECT_NEAR(sol.xi * sol.xi / (1e-8), 0.5, 1e-3 * 0.5);
}

TEST(ComputeNorms, IntegrationByPartsIdentity) {
  for (double gamma : {10.5, 20.0, 100.0, 1e4}) {
    const auto sol = compute_norms(solve_amplitude(gamma, 3.0), gamma, 3.0);
    const double scale = sol.gamma * sol.xi * sol.xi;
    EXPECT_NEAR(sol.grad_sq + sol.norm_p1, scale, 1e-8 * scale) << "gamma " << gamma;
    EXPECT_LT(sol.xi, sol.rho);
    // rho itself rounds to sqrt(gamma) at large gamma; the defect does not.
    EXPECT_LE(sol.rho, std::sqrt(gamma));
    EXPECT_GT(supnorm_defect(sol), 0.0);
  }
}

TEST(ComputeNorms, MatchesShootingOracle) {
  const auto sol = compute_norms(solve_amplitude(20.0, 3.0), 20.0, 3.0);
  const auto& o = oracle20();
  EXPECT_NEAR(sol.xi, o.xi, 1e-6 * o.xi);
  EXPECT_NEAR(sol.norm_p1, o.norm_p1, 1e-6 * o.norm_p1);
  EXPECT_NEAR(sol.grad_sq, o.grad_sq, 1e-6 * o.grad_sq);
}

TEST(ComputeNorms, RejectsNonSolution) { EXPECT_THROW(compute_norms(1.0, 20.0, 3.0), DomainError); }

TEST(ComputeNorms, OtherExponents) {
  for (double p : {1.5, 2.0, 5.0}) {
    const auto sol = compute_norms(solve_amplitude(30.0, p), 30.0, p);
    const double scale = sol.gamma * sol.xi * sol.xi;
    EXPECT_NEAR(sol.grad_sq + sol.norm_p1, scale, 1e-8 * scale) << "p " << p;
    const auto shot = oracle::shoot(30.0, p);
    EXPECT_NEAR(sol.rho, shot.rho, 1e-6 * shot.rho) << "p " << p;
    EXPECT_NEAR(sol.xi, shot.xi, 1e-6 * shot.xi) << "p " << p;
  }
}

TEST(EnergyIdentity, ShootingSlopeSquaredIsTwiceF) {
  const auto& o = oracle20();
  const double rho = solve_rho(20.0, 3.0);
  EXPECT_NEAR(o.slope * o.slope, 2.0 * potential(rho, 20.0, 3.0), 1e-8 * o.slope * o.slope);
}

TEST(SolveGammaForXi, BifurcationPoint) {
  EXPECT_NEAR(solve_gamma_for_xi(1e-3, 3.0).gamma, kPiSq, 1e-3);
}

TEST(SolveGammaForXi, LargeXiNearExpansion) {
  const auto sol = solve_gamma_for_xi(100.0, 3.0);
  const double pred = asym::gamma_asym(100.0, 3.0).sum();
  EXPECT_NEAR(sol.gamma, pred, 0.1);
  EXPECT_NEAR(sol.xi, 100.0, 1e-10 * 100.0);
}

TEST(SolveGammaForXi, RoundTrip) {
  for (double gamma : {15.0, 50.0, 200.0}) {
    const auto sol = compute_norms(solve_amplitude(gamma, 3.0), gamma, 3.0);
    const auto back = solve_gamma_for_xi(sol.xi, 3.0);
    EXPECT_NEAR(back.gamma, gamma, 1e-8 * gamma);
  }
}

TEST(SolveGammaForXi, RangeGuards) {
  EXPECT_THROW(solve_gamma_for_xi(0.0, 3.0), DomainError);
  EXPECT_THROW(solve_gamma_for_xi(-1.0, 3.0), DomainError);
  EXPECT_THROW(solve_gamma_for_xi(1e9, 3.0), DomainError);
  EXPECT_THROW(solve_gamma_for_xi(1.0, 0.5), DomainError);
}

TEST(DOfXi, VanishesAtZero) { EXPECT_LT(D_of_xi(1e-3, 3.0), 1e-4); }

TEST(DOfXi, Increasing) {
  double prev = 0.0;
  for (double xi : {1.0, 2.0, 4.0, 8.0, 16.0}) {
    const double d = D_of_xi(xi, 3.0);
    EXPECT_GT(d, prev);
    prev = d;
  }
}

TEST(DOfXi, LeadingBehaviour) {
  const double d = D_of_xi(100.0, 3.0);
  EXPECT_GT(d, 0.4e8);
  EXPECT_LT(d, 0.7e8);
}

TEST(Monotonicity, DoublingGrid) {
  LocalSolution prev;
  for (double xi = 1.0; xi <= 256.0; xi *= 2.0) {
    const auto sol = solve_gamma_for_xi(xi, 3.0);
    if (xi > 1.0) {
      EXPECT_GT(sol.gamma, prev.gamma);
      EXPECT_GT(sol.rho, prev.rho);
      EXPECT_GT(kirchhoff_D(sol), kirchhoff_D(prev));
      EXPECT_GT(sol.norm_p1, prev.norm_p1);
    }
    EXPECT_NEAR(time_map(sol.amplitude, sol.gamma, 3.0), 0.5, 1e-8);
    prev = sol;
  }
}

TEST(SupNorm, DefectBounded) {
  auto defect = [](double gamma) {
    return std::abs(supnorm_defect(compute_norms(solve_amplitude(gamma, 3.0), gamma, 3.0)));
  };
  const double d2 = defect(1e2), d3 = defect(1e3), d4 = defect(1e4);
  EXPECT_LE(d4, 2.0 * d2);
  EXPECT_LE(d3, 2.0 * d2);
}

TEST(SupNorm, DefectMatchesDirectFormula) {
  const auto sol = compute_norms(solve_amplitude(20.0, 3.0), 20.0, 3.0);
  EXPECT_NEAR(supnorm_defect(sol), 20.0 - sol.rho * sol.rho, 1e-12 * 20.0);
}

TEST(Profile, EndpointsAndMidpoint) {
  const double rho = solve_rho(20.0, 3.0);
  const auto prof = reconstruct_profile(rho, 20.0, 3.0, 21);
  ASSERT_EQ(prof.size(), 41u);
  EXPECT_EQ(prof.front().x, 0.0);
  EXPECT_EQ(prof.front().w, 0.0);
  EXPECT_EQ(prof[20].x, 0.5);
  EXPECT_NEAR(prof[20].w, rho, 1e-14 * rho);
  EXPECT_EQ(prof.back().x, 1.0);
  EXPECT_EQ(prof.back().w, 0.0);
}

TEST(Profile, SymmetricAndOrdered) {
  const auto prof = reconstruct_profile(solve_amplitude(50.0, 3.0), 50.0, 3.0, 30);
  const std::size_t n = prof.size();
  for (std::size_t i = 0; i < n; ++i) {
    EXPECT_EQ(prof[i].w, prof[n - 1 - i].w);
    EXPECT_NEAR(prof[i].x, 1.0 - prof[n - 1 - i].x, 1e-15);
    if (i > 0) EXPECT_GT(prof[i].x, prof[i - 1].x);
  }
}

TEST(Profile, LinearLimitIsSine) {
  const double rho = 1e-4;
  const auto prof = reconstruct_profile(rho, kPiSq, 3.0, 50);
  for (const auto& s : prof) EXPECT_NEAR(s.w, rho * std::sin(kPi * s.x), 1e-3 * rho);
}

TEST(Profile, MatchesShootingProfile) {
  const auto& o = oracle20();
  const auto prof = reconstruct_profile(o.rho, 20.0, 3.0, 40);
  const double h = o.x[1] - o.x[0];
  for (const auto& s : prof) {
    // Cubic-free check: linear interpolation of the fine RK4 grid.
    const auto i = std::min<std::size_t>(static_cast<std::size_t>(s.x / h), o.x.size() - 2);
    const double t = (s.x - o.x[i]) / h;
    const double w = (1 - t) * o.w[i] + t * o.w[i + 1];
    EXPECT_NEAR(s.w, w, 1e-6 * o.rho);
  }
}

TEST(Profile, RejectsTooFewSamples) { EXPECT_THROW(reconstruct_profile(1.0, 20.0, 3.0, 1), DomainError); }
