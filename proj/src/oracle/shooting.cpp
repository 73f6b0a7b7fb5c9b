#include "bifurq/oracle/shooting.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

namespace bifurq::oracle {
namespace {

// (w, w', int w^2, int |w|^{p+1}, int w'^2)
using State = std::array<double, 5>;

State rhs(const State& y, double gamma, double p) {
  const double w = y[0];
  const double dw = y[1];
  const double wp = std::pow(std::abs(w), p - 1.0) * w;
  return {dw, wp - gamma * w, w * w, std::abs(wp * w), dw * dw};
}

State axpy(const State& y, double h, const State& k) {
  State out;
  for (std::size_t i = 0; i < y.size(); ++i) out[i] = y[i] + h * k[i];
  return out;
}

State rk4_step(const State& y, double h, double gamma, double p) {
  const State k1 = rhs(y, gamma, p);
  const State k2 = rhs(axpy(y, 0.5 * h, k1), gamma, p);
  const State k3 = rhs(axpy(y, 0.5 * h, k2), gamma, p);
  const State k4 = rhs(axpy(y, h, k3), gamma, p);
  State out;
  for (std::size_t i = 0; i < y.size(); ++i) {
    out[i] = y[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  }
  return out;
}

// w'(1/2) for the given initial slope.
double mid_slope(double gamma, double p, double slope, int half_steps) {
  const double h = 0.5 / half_steps;
  State y{0.0, slope, 0.0, 0.0, 0.0};
  for (int i = 0; i < half_steps; ++i) y = rk4_step(y, h, gamma, p);
  return y[1];
}

}  // namespace

ShootingResult integrate_from_slope(double gamma, double p, double slope, int steps) {
  if (steps < 2 || steps % 2 != 0) throw std::invalid_argument("steps must be even and >= 2");
  const double h = 1.0 / steps;
  ShootingResult out;
  out.slope = slope;
  out.x.reserve(static_cast<std::size_t>(steps) + 1);
  out.w.reserve(static_cast<std::size_t>(steps) + 1);
  State y{0.0, slope, 0.0, 0.0, 0.0};
  out.x.push_back(0.0);
  out.w.push_back(0.0);
  for (int i = 1; i <= steps; ++i) {
    y = rk4_step(y, h, gamma, p);
    out.x.push_back(i * h);
    out.w.push_back(y[0]);
    if (i == steps / 2) {
      out.rho = y[0];
      out.dw_mid = y[1];
    }
  }
  out.w_end = y[0];
  out.xi = std::sqrt(y[2]);
  out.norm_p1 = y[3];
  out.grad_sq = y[4];
  return out;
}

ShootingResult shoot(double gamma, double p, int steps) {
  const double pi = std::acos(-1.0);
  if (!(gamma > pi * pi) || !(p > 1.0)) throw std::invalid_argument("shoot: need gamma > pi^2, p > 1");
  // Slopes above sqrt(2 F(rho_max)) never turn back; small slopes turn before x = 1/2.
  const double top = std::pow(gamma, 1.0 / (p - 1.0));
  double hi = std::sqrt(2.0 * (0.5 * gamma * top * top - std::pow(top, p + 1.0) / (p + 1.0)));
  double lo = 0.0;
  const int half = steps / 2;
  for (int iter = 0; iter < 200 && hi - lo > 4e-16 * hi; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (mid_slope(gamma, p, mid, half) < 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return integrate_from_slope(gamma, p, 0.5 * (lo + hi), steps);
}

}  // namespace bifurq::oracle
