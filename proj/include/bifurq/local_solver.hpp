#pragma once

// Positive solutions of the local logistic eigenvalue problem
//
//   -w'' + w^p = gamma w on (0, 1),  w(0) = w(1) = 0,
//
// by the time-map method. A solution is symmetric about x = 1/2 with
// rho = w(1/2) = ||w||_inf, and the Dirichlet condition reduces to
// T(rho, gamma) = 1/2 for the half-width
//
//   T(rho, gamma) = int_0^rho dw / sqrt(2 (F(rho) - F(w))),
//   F(w) = gamma w^2 / 2 - w^{p+1} / (p + 1).

#include <vector>

#include "bifurq/tolerances.hpp"

namespace bifurq::local {

inline constexpr double kMinXi = 1e-6;
inline constexpr double kMaxXi = 1e8;

/// Position of rho inside (0, rho_max), rho_max = gamma^{1/(p-1)}, stored as
/// the log-odds z = log(rho / (rho_max - rho)). Solutions with large gamma sit
/// exponentially close to rho_max; z keeps that gap representable where rho
/// itself rounds to rho_max.
struct Amplitude {
  double log_odds = 0.0;

  double log_fraction() const;  // log(rho / rho_max)
  double log_gap() const;       // log(1 - rho / rho_max)
  double rho(double gamma, double p) const;

  static Amplitude from_rho(double rho, double gamma, double p);
};

struct LocalSolution {
  double p = 0.0;
  double gamma = 0.0;
  double rho = 0.0;
  double xi = 0.0;       // ||w||_2
  double norm_p1 = 0.0;  // ||w||_{p+1}^{p+1}
  double grad_sq = 0.0;  // ||w'||_2^2
  Amplitude amplitude;
};

struct ProfileSample {
  double x = 0.0;
  double w = 0.0;
};

double potential(double w, double gamma, double p);
double rho_max(double gamma, double p);

/// gamma - rho^{p-1}, computed from the amplitude without cancellation.
double supnorm_defect(const LocalSolution& sol);

double time_map(double rho, double gamma, double p, const Tolerances& tol = {});
double time_map(Amplitude amp, double gamma, double p, const Tolerances& tol = {});

/// Unique amplitude with T = 1/2. Throws DomainError for gamma <= pi^2.
Amplitude solve_amplitude(double gamma, double p, const Tolerances& tol = {});
double solve_rho(double gamma, double p, const Tolerances& tol = {});

LocalSolution compute_norms(Amplitude amp, double gamma, double p, const Tolerances& tol = {});
LocalSolution compute_norms(double rho, double gamma, double p, const Tolerances& tol = {});

/// The solution whose sup-norm has the given log-odds; gamma is fixed by T = 1/2.
LocalSolution solve_at_amplitude(Amplitude amp, double p, const Tolerances& tol = {});

/// The solution with ||w||_2 = xi, for kMinXi <= xi <= kMaxXi.
LocalSolution solve_gamma_for_xi(double xi, double p, const Tolerances& tol = {});

/// D = ||w'||_2^2 + 2/(p+1) ||w||_{p+1}^{p+1}.
double kirchhoff_D(const LocalSolution& sol);
double D_of_xi(double xi, double p, const Tolerances& tol = {});

/// n samples on [0, 1/2] mirrored onto [1/2, 1]; 2n - 1 samples in total,
/// ordered by x, with w(0) = w(1) = 0 and w(1/2) = rho.
std::vector<ProfileSample> reconstruct_profile(Amplitude amp, double gamma, double p, int n,
                                               const Tolerances& tol = {});
std::vector<ProfileSample> reconstruct_profile(double rho, double gamma, double p, int n,
                                               const Tolerances& tol = {});

}  // namespace bifurq::local
