#include "time_map_kernel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "bifurq/error.hpp"

namespace bifurq::local::detail {
namespace {

double softplus(double x) { return x > 0.0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x)); }

// Below this u the series part beyond u^2 is far under one ulp of c_2.
constexpr double kNegligibleU = 1e-150;
constexpr double kSeriesLimit = 0.25;

}  // namespace

TimeMapKernel::TimeMapKernel(double p, double log_odds) : p_(p) {
  if (!(p > 1.0)) throw DomainError("exponent p must exceed 1");
  if (!std::isfinite(log_odds)) throw DomainError("amplitude log-odds must be finite");
  log_s_ = -softplus(-log_odds);
  log_delta_ = -softplus(log_odds);
  s_ = std::exp(log_s_);
  delta_ = std::exp(log_delta_);
  if (log_odds > 30.0) {
    theta_max_ = -log_delta_ + std::log1p(std::sqrt(std::max(0.0, 1.0 - delta_ * delta_)));
  } else {
    const double ratio = std::exp(log_odds);  // s / delta = 1/delta - 1
    theta_max_ = std::log1p(ratio + std::sqrt(ratio * (2.0 + ratio)));
  }
  plateau_kernel_ = 1.0 / std::sqrt(p - 1.0);
  small_amplitude_ = s_ < 0.5;

  series_.push_back(0.5 * (p - 1.0));
  double binom = 1.0;  // binom(p + 1, j)
  for (int j = 1; j <= 90; ++j) {
    binom *= (p + 2.0 - j) / j;
    if (j < 3) continue;
    if (binom == 0.0) break;
    const double c = ((j % 2 == 0) ? binom : -binom) / (p + 1.0);
    series_.push_back(c);
    if (std::abs(c) * std::pow(kSeriesLimit, j) < 1e-22) break;
  }
}

double TimeMapKernel::reference_integral() const {
  return small_amplitude_ ? 0.5 * std::numbers::pi : theta_max_ * plateau_kernel_;
}

double TimeMapKernel::half_width_offset(double excess_integral) const {
  if (small_amplitude_) return excess_integral;
  return (reference_integral() - 0.5 * std::numbers::pi) + excess_integral;
}

TimeMapKernel::ReducedGap TimeMapKernel::reduced_gap(double u, double x) const {
  if (u < kSeriesLimit) {
    if (u < kNegligibleU) return {series_[0], 0.0, 0.0};
    // (H(u) - H(delta)) / (u - delta) = sum_j c_j (u^j - delta^j) / (u - delta)
    double partial = 1.0;
    double delta_pow = 1.0;
    double quotient = 0.0;
    for (double c : series_) {
      delta_pow *= delta_;
      partial = u * partial + delta_pow;
      quotient += c * partial;
    }
    return {quotient / (u + delta_), 0.0, 0.0};
  }
  // (G(s) - G(v)) / (s - v) with v = s (1 - x):
  //   s (2 - x) / 2 - s^p (1 - (1 - x)^{p+1}) / ((p + 1) x)
  const double ratio = x > 0.0 ? -std::expm1((p_ + 1.0) * std::log1p(-x)) / x : p_ + 1.0;
  const double sum = u + delta_;
  const double linear = 0.5 * s_ * (2.0 - x) / sum;
  const double excess = std::exp(p_ * log_s_) * ratio / ((p_ + 1.0) * sum);
  return {linear - excess, linear, excess};
}

KernelPoint TimeMapKernel::at(double theta) const {
  // log(cosh(theta) - 1) = theta + 2 log(1 - e^{-theta}) - log 2
  const double log_shift = theta + 2.0 * std::log(-std::expm1(-theta)) - std::log(2.0);
  const double d = std::exp(log_delta_ + log_shift);
  const double x = std::min(1.0, std::exp(log_delta_ - log_s_ + log_shift));
  KernelPoint pt;
  pt.u = delta_ + d;
  pt.v_over_s = 1.0 - x;
  pt.v = s_ * pt.v_over_s;
  const ReducedGap gap = reduced_gap(pt.u, x);
  if (!(gap.value > 0.0)) {
    throw DomainError("energy gap F(rho) - F(w) is not positive inside (0, rho)");
  }
  const double root = std::sqrt(2.0 * gap.value);
  pt.kernel = 1.0 / root;
  if (small_amplitude_) {
    // 1/sqrt(a) - 1/sqrt(b) = (b - a) / (sqrt(a) sqrt(b) (sqrt(a) + sqrt(b)))
    const double root_lin = std::sqrt(2.0 * gap.linear);
    pt.excess = 2.0 * gap.excess / (root * root_lin * (root + root_lin));
  } else {
    pt.excess = pt.kernel - plateau_kernel_;
  }
  pt.grad = d * (pt.u + delta_) * root;
  if (pt.u < 0.5) {
    pt.one_minus_v2 = pt.u * (2.0 - pt.u);
    pt.one_minus_vp1 = -std::expm1((p_ + 1.0) * std::log1p(-pt.u));
  } else {
    pt.one_minus_v2 = (1.0 - pt.v) * (1.0 + pt.v);
    pt.one_minus_vp1 = 1.0 - std::pow(pt.v, p_ + 1.0);
  }
  return pt;
}

std::vector<double> TimeMapKernel::breakpoints() const {
  std::vector<double> pts{0.0};
  for (double back = 64.0; back >= 1.0; back *= 0.5) {
    if (theta_max_ - back > pts.back()) pts.push_back(theta_max_ - back);
  }
  pts.push_back(theta_max_);
  return pts;
}

}  // namespace bifurq::local::detail
