#pragma once

// Integrands of the time map and the norm integrals of
//   -w'' + w^p = gamma w,  w(0) = w(1) = 0,
// written in scaled variables v = w / rho_max, rho_max = gamma^{1/(p-1)}.
//
// With G(v) = v^2/2 - v^{p+1}/(p+1), s = rho / rho_max, u = 1 - v and
// delta = 1 - s, the energy gap is G(s) - G(v) = H(u) - H(delta) where
// H(u) = G(1) - G(1 - u) >= 0. The substitution u = delta * cosh(theta),
// theta in [0, acosh(1/delta)], removes the inverse square root at the turning
// point and stretches the logarithmic boundary layer that forms as s -> 1,
// so every integrand below is bounded and smooth in theta.
//
// Only the log-odds of s enter, so s and delta both keep full relative
// precision even when delta underflows (very large gamma).

#include <vector>

namespace bifurq::local::detail {

struct KernelPoint {
  double u = 0.0;         // 1 - v
  double v = 0.0;         // w / rho_max
  double v_over_s = 0.0;  // w / rho
  double kernel = 0.0;    // dv / sqrt(2 (G(s) - G(v))) per dtheta
  double excess = 0.0;    // kernel minus the reference kernel, see reference_integral()
  double one_minus_v2 = 0.0;
  double one_minus_vp1 = 0.0;
  double grad = 0.0;      // sqrt(2 (G(s) - G(v))) dv per dtheta
};

class TimeMapKernel {
 public:
  TimeMapKernel(double p, double log_odds);

  double p() const { return p_; }
  double s() const { return s_; }
  double log_s() const { return log_s_; }
  double log_delta() const { return log_delta_; }
  double theta_max() const { return theta_max_; }
  // Limit of `kernel` deep in the plateau, 1 / sqrt(p - 1).
  double plateau_kernel() const { return plateau_kernel_; }

  // s < 1/2: the reference kernel is that of the linear problem -w'' = gamma w,
  // whose half-width integral is exactly pi/2. Otherwise it is the plateau
  // constant, integrating to theta_max / sqrt(p - 1).
  bool small_amplitude() const { return small_amplitude_; }
  double reference_integral() const;

  // tau - pi/2 given the integral of `excess`, where tau = sqrt(gamma) T.
  double half_width_offset(double excess_integral) const;

  KernelPoint at(double theta) const;

  // Partition of [0, theta_max] that resolves the boundary layer near theta_max.
  std::vector<double> breakpoints() const;

 private:
  struct ReducedGap {
    double value;   // (H(u) - H(delta)) / ((u - delta) (u + delta))
    double linear;  // the same for the linear problem (closed form branch only)
    double excess;  // linear - value
  };
  ReducedGap reduced_gap(double u, double x) const;

  double p_;
  double log_s_;
  double log_delta_;
  double s_;
  double delta_;
  double theta_max_;
  double plateau_kernel_;
  bool small_amplitude_;
  std::vector<double> series_;  // coefficients of H(u) = sum_j c_j u^j, j >= 2
};

}  // namespace bifurq::local::detail
