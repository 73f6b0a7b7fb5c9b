#include "bifurq/asymptotics.hpp"

#include <cmath>
#include <sstream>
#include <vector>

#include "bifurq/error.hpp"
#include "bifurq/numerics.hpp"

namespace bifurq {

ProblemParams ProblemParams::make(double p, double q) {
  if (!(p > 1.0) || !std::isfinite(p)) {
    std::ostringstream msg;
    msg << "p = " << p << " is not admissible: need p > 1";
    throw DomainError(msg.str());
  }
  const double q_max = (p - 1.0) / (p + 1.0);
  if (!(q > 0.0) || !(q < q_max)) {
    std::ostringstream msg;
    msg << "q = " << q << " is not admissible: need 0 < q < (p-1)/(p+1) = " << q_max;
    throw DomainError(msg.str());
  }
  ProblemParams params{p, q};
  if (!(params.scalar_exponent() > 1.0)) throw DomainError("scalar exponent must exceed 1");
  return params;
}

namespace asym {

double compute_C1(double p) {
  if (!(p > 1.0)) throw DomainError("compute_C1: need p > 1");
  const double a = (p - 1.0) / (p + 1.0);
  const double b = 2.0 / (p + 1.0);
  // Near s = 1 the radicand is 2 sum_{j>=2} c_j u^j with u = 1 - s and
  // c_2 = (p-1)/2, c_j = (-1)^j binom(p+1, j)/(p+1); factoring u^2 out keeps
  // full precision at the double root.
  std::vector<double> coeff{0.5 * (p - 1.0)};
  double binom = 1.0;
  for (int j = 1; j <= 90; ++j) {
    binom *= (p + 2.0 - j) / j;
    if (j < 3) continue;
    if (binom == 0.0) break;
    coeff.push_back(((j % 2 == 0) ? binom : -binom) / (p + 1.0));
    if (std::abs(coeff.back()) * std::pow(0.25, j) < 1e-22) break;
  }
  auto integrand = [&](double s) {
    const double u = 1.0 - s;
    if (u < 0.25) {
      double sum = 0.0;
      double power = 1.0;
      for (double c : coeff) {
        sum += c * power;
        power *= u;
      }
      return u * std::sqrt(2.0 * sum);
    }
    double radicand = a - s * s + b * std::pow(s, p + 1.0);
    if (radicand < 0.0) {
      if (radicand < -1e-14) {
        std::ostringstream msg;
        msg << "compute_C1: radicand " << radicand << " < 0 at s = " << s;
        throw DomainError(msg.str());
      }
      radicand = 0.0;
    }
    return std::sqrt(radicand);
  };
  numerics::QuadratureSpec spec;
  spec.rel_tol = 1e-13;
  spec.abs_tol = 1e-15;
  return (p + 3.0) * numerics::integrate(integrand, 0.0, 1.0, spec);
}

AsymptoticModel constants(const ProblemParams& params) {
  const double p = params.p;
  const double q = params.q;
  AsymptoticModel model;
  model.params = params;
  model.C1 = compute_C1(p);
  model.k = q * (p + 1.0) / (p - 1.0 - q * (p + 1.0));
  model.B = model.k * model.C1 / (p + 3.0);
  model.lambda_exponent = 0.5 * (p - 1.0 - q * (p + 1.0));
  return model;
}

Terms gamma_asym(double xi, double p, double C1) {
  return {std::pow(xi, p - 1.0), C1 * std::pow(xi, 0.5 * (p - 1.0)), C1 * C1 / (p - 1.0)};
}

Terms gamma_asym(double xi, double p) { return gamma_asym(xi, p, compute_C1(p)); }

Terms lambda_asym(double alpha, const AsymptoticModel& model) {
  const double p = model.params.p;
  return {std::pow(alpha, p - 1.0), model.C1 * std::pow(alpha, p - 1.0 - model.lambda_exponent), 0.0};
}

Terms h_asym(double xi, const AsymptoticModel& model) {
  const double p = model.params.p;
  return {std::pow(xi, model.k), model.B * std::pow(xi, model.k - 0.5 * (p - 1.0)), 0.0};
}

Terms xi_of_alpha_asym(double alpha, const AsymptoticModel& model) {
  const double p = model.params.p;
  const double kp1 = model.k + 1.0;
  const double leading = std::pow(alpha, 1.0 / kp1);
  return {leading, -model.B / kp1 * leading * std::pow(alpha, -(p - 1.0) / (2.0 * kp1)), 0.0};
}

NormTerms norm_asym(double xi, double p, double C1) {
  const double mid = std::pow(xi, 0.5 * (p + 3.0));
  NormTerms out;
  out.norm_p1 = {std::pow(xi, p + 1.0), (p + 1.0) / (p + 3.0) * C1 * mid, 0.0};
  out.grad_sq = {2.0 / (p + 3.0) * C1 * mid, C1 * C1 / (p - 1.0) * xi * xi, 0.0};
  return out;
}

NormTerms norm_asym(double xi, double p) { return norm_asym(xi, p, compute_C1(p)); }

}  // namespace asym
}  // namespace bifurq
