#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "core/estimators.hpp"
#include "core/transform.hpp"
#include "core/variance.hpp"

namespace wavecb {

enum class Method { Universal, SureGlobal, SureLevel, Modulator };
enum class SigmaMode { Known, Plugin, Double };

Method method_from_name(std::string_view name);
const char* method_name(Method m);
SigmaMode sigma_mode_from_name(std::string_view name);
const char* sigma_mode_name(SigmaMode m);

/// L2 ball { mu : sum (mu_l - center_l)^2 <= radius2 } around the fitted
/// coefficients.
struct ConfidenceBall {
  CoefficientVector center;
  double radius2 = 0.0;
  double alpha = 0.05;
  Method method = Method::Universal;
  SigmaMode sigma_mode = SigmaMode::Known;
};

/// Union of fixed-variance balls over a grid of variance candidates.
struct DoubleSet {
  Interval q_interval;  // the sigma^2 interval the grid spans
  std::vector<double> sigma2_grid;
  std::vector<ConfidenceBall> balls;  // one per grid point
};

/// Fixed threshold sqrt(2 log n) sigma/sqrt(n):
/// radius2 = max(0, sqrt(2) sigma^2 z_alpha/sqrt(n) + unbiased risk at the
/// threshold).
ConfidenceBall radius_universal(const CoefficientVector& coeffs, double sigma,
                                double alpha);

/// Same radius formula with the risk evaluated at a fitted schedule.
ConfidenceBall radius_sure(const CoefficientVector& coeffs,
                           const ThresholdSchedule& sched, double sigma,
                           double alpha);

/// Variance proxy for the modulation fit:
/// (2 sigma^4/n) sum (2 xi_l - 1)^2
///   + 4 sigma^2 sum (mu~_l^2 - sigma^2/n)^2 (1 - xi_l)^2,
/// with xi_l expanded per coefficient from its block.
double tau2_modulator(const CoefficientVector& coeffs, const ModulationPlan& plan,
                      double sigma);

/// radius2 = max(0, sqrt(tau2) z_alpha/sqrt(n) + modulation risk).
ConfidenceBall radius_modulator(const CoefficientVector& coeffs,
                                const ModulationPlan& plan, double sigma,
                                double alpha);

/// Variance proxy with an estimated sigma: adds the cross term
/// 2 U sigma_hat^4 ((1/n) sum (2 xi_l - 1))^2 for an estimator with CLT scale
/// U; U = 0 recovers tau2_modulator at sigma_hat.
double tau2_plugin(const CoefficientVector& coeffs, const ModulationPlan& plan,
                   const SigmaEstimate& est);

/// Full unknown-variance pipeline: estimate sigma^2 from the fine half, then
/// fit and size the ball with the estimate in place of sigma. The modulator
/// route uses tau2_plugin with U = 0 (the estimate shares the fine-half
/// coefficients, so the cross term would double count).
ConfidenceBall plugin_ball(const CoefficientVector& coeffs, Method method,
                           double alpha, double floor = 0.72);

/// Union of level-(1 - alpha_tilde) fixed-variance balls over a uniform grid
/// (endpoints included) on the level-(1 - alpha_tilde) variance interval.
/// split_variance = true (estimate built from the data's fine half) takes
/// alpha_tilde = alpha/2; false (independent estimate) takes
/// 1 - sqrt(1 - alpha).
DoubleSet double_set(const CoefficientVector& coeffs, Method method, double alpha,
                     std::size_t grid_size = 21, double floor = 0.72,
                     bool split_variance = true);

bool ball_contains(const ConfidenceBall& ball, const CoefficientVector& mu);
bool set_contains(const DoubleSet& set, const CoefficientVector& mu);

/// Widen radius2 by delta*log(n)/sqrt(n) to carry coefficient-space coverage
/// over to the function space.
ConfidenceBall dilate_for_function_space(const ConfidenceBall& ball, double delta);

/// JSON record {method, alpha, sigma_mode, radius2, center, n, J0, filter}.
std::string ball_to_json(const ConfidenceBall& ball, std::string_view filter_name);

/// Known-sigma ball for a given method (fits the estimator internally).
ConfidenceBall known_sigma_ball(const CoefficientVector& coeffs, Method method,
                                double sigma, double alpha, double floor = 0.72);

}  // namespace wavecb
