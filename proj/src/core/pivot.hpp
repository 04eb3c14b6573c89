#pragma once

#include <span>

#include "core/estimators.hpp"
#include "core/transform.hpp"

namespace wavecb {

/// Truncated standard-Normal moments over [s, t] (infinite endpoints allowed):
///   D1 = int e phi,  D2 = int e^2 phi,  D3 = int e(e^2-1) phi,
///   D4 = int (e^2-1)^2 phi.
enum class PartialMoment { D1, D2, D3, D4 };

double gaussian_partial(PartialMoment kind, double s, double t);

/// Contribution of one coefficient to the centered loss-minus-risk process at
/// normalized threshold u, written in noise units: with nu = -sqrt(n) mu/sigma
/// and eps the realized standard-Normal noise,
///   (sigma^2/sqrt(n)) [ (eps^2-1)(1 - 2 I) + 2 nu eps I
///                       - 2 u rho_n eps (I+ - I-) ],
/// where I = 1{|X| < u r_n}, I+/I- the one-sided exceedance indicators.
double z_contribution(double eps, double nu, double u, double rho_n, double sigma,
                      std::size_t n);

/// The same contribution computed from its defining form,
/// sqrt(n) * [(soft-threshold fit - mu)^2 - unbiased-risk term]; the two forms
/// agree identically and the agreement is tested.
double z_contribution_loss_form(double eps, double nu, double u, double rho_n,
                                double sigma, std::size_t n);

/// Centered pivot B_n(u) = sum_i Z_i(u_{j(i)}) over all n coefficients. The
/// scaling block (never thresholded by the estimators; diagnostics only) is
/// assigned the coarsest level's threshold component.
double pivot_process(std::span<const double> eps, const CoefficientVector& mu,
                     const ThresholdSchedule& sched, double sigma);

/// B_n via the loss-minus-risk definition; must agree with pivot_process to
/// ~1e-8 (algebraic identity).
double pivot_process_loss_form(std::span<const double> eps,
                               const CoefficientVector& mu,
                               const ThresholdSchedule& sched, double sigma);

/// Var B_n(u) = sum_i E Z_i^2(u) in closed form via the truncated moments.
double theoretical_variance(const CoefficientVector& mu, double u, double sigma);

/// Cov(B_n(u), B_n(v)) for 0 <= u < v <= 1, derived by splitting the noise
/// axis at the four thresholds nu -/+ u rho, nu -/+ v rho and integrating the
/// per-region product of the two contributions; reduces to
/// theoretical_variance as v -> u.
double theoretical_covariance(const CoefficientVector& mu, double u, double v,
                              double sigma);

}  // namespace wavecb
