#pragma once

#include <string>
#include <vector>

#include "core/confidence.hpp"
#include "core/transform.hpp"

namespace wavecb {

/// Linear functional of the fitted curve in coefficient space:
/// T = sum_l c_l mu_l.
struct LinearFunctional {
  std::vector<double> coeffs;
  std::string descriptor;
};

struct FunctionalInterval {
  double lower = 0.0;
  double upper = 0.0;
  double widening = 0.0;  // the additive w_n applied to each side
};

/// Closed-form extremes of a linear functional over the ball
/// (Cauchy-Schwarz): sum c_l center_l -/+ sqrt(radius2)*||c||_2, each side
/// widened by w_n.
FunctionalInterval functional_interval(const LinearFunctional& T,
                                       const ConfidenceBall& ball, double w_n);

/// Grid average of the curve over (a, b]: dual coefficients
/// dwt(indicator/(b-a))/sqrt(n), exact for grid-aligned endpoints (off-grid
/// endpoints snap to the grid with at most half-sample error).
LinearFunctional local_average(double a, double b, const WaveletFilter& filter,
                               const TransformShape& shape);

/// One interval per functional from the same ball; simultaneity is inherited
/// from ball coverage.
std::vector<FunctionalInterval> simultaneous_intervals(
    const std::vector<LinearFunctional>& Ts, const ConfidenceBall& ball,
    double w_n);

/// Default widening log(n)/(n*delta_n) for window lengths >= delta_n.
double default_widening(std::size_t n, double delta_n);

}  // namespace wavecb
