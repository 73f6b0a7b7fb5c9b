#pragma once

// Large-norm expansions of the local and nonlocal bifurcation curves, with
// each term exposed separately so callers can subtract the leading order
// before fitting the next one.

#include "bifurq/params.hpp"

namespace bifurq::asym {

struct Terms {
  double leading = 0.0;
  double first = 0.0;   // first correction
  double second = 0.0;  // second correction (zero where the expansion stops earlier)

  double sum() const { return leading + first + second; }
};

struct AsymptoticModel {
  ProblemParams params;
  double C1 = 0.0;
  double k = 0.0;                // growth exponent of h_xi
  double B = 0.0;                // correction coefficient of h_xi
  double lambda_exponent = 0.0;  // decay exponent of the relative correction of lambda(alpha)
};

/// (p + 3) int_0^1 sqrt((p-1)/(p+1) - s^2 + 2 s^{p+1}/(p+1)) ds.
double compute_C1(double p);

AsymptoticModel constants(const ProblemParams& params);

/// gamma(xi) ~ xi^{p-1} + C1 xi^{(p-1)/2} + C1^2/(p-1).
Terms gamma_asym(double xi, double p);
Terms gamma_asym(double xi, double p, double C1);

/// lambda(alpha) ~ alpha^{p-1} (1 + C1 alpha^{-lambda_exponent}).
Terms lambda_asym(double alpha, const AsymptoticModel& model);

/// h_xi ~ xi^k + B xi^{k - (p-1)/2}.
Terms h_asym(double xi, const AsymptoticModel& model);

/// xi(alpha) ~ alpha^{1/(k+1)} (1 - B alpha^{-(p-1)/(2(k+1))} / (k+1)).
Terms xi_of_alpha_asym(double alpha, const AsymptoticModel& model);

struct NormTerms {
  Terms norm_p1;  // xi^{p+1} + (p+1)/(p+3) C1 xi^{(p+3)/2}
  Terms grad_sq;  // 2/(p+3) C1 xi^{(p+3)/2} + C1^2/(p-1) xi^2
};
NormTerms norm_asym(double xi, double p);
NormTerms norm_asym(double xi, double p, double C1);

}  // namespace bifurq::asym
