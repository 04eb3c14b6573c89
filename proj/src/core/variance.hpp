#pragma once

#include <cstddef>

#include "core/transform.hpp"

namespace wavecb {

/// Estimate of the noise variance sigma^2 plus the CLT scale constant U used
/// by its confidence interval (U = 2 for the fine-half estimator).
struct SigmaEstimate {
  enum class Source { HighComponent, External };
  double sigma2_hat = 0.0;
  double U = 2.0;
  Source source = Source::HighComponent;
};

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

/// Fine-half ("high component") estimator: twice the energy of the upper half
/// of the empirical coefficients, which is nearly pure noise for smooth f.
/// With coefficients scaled so Var = sigma^2/n per coordinate, this directly
/// estimates sigma^2.
SigmaEstimate high_component_sigma2(const CoefficientVector& coeffs);

/// Asymptotic 1-alpha interval for sigma^2:
/// sigma2_hat * [ (1 - U z_{1-alpha/2}/sqrt(n))^{-1}, (1 - U z_{alpha/2}/sqrt(n))^{-1} ]
/// with z_p the upper-tail p-quantile. The sigma interval is the elementwise
/// square root. Throws std::domain_error when n is too small for the upper
/// denominator to stay positive.
Interval sigma_interval(const SigmaEstimate& est, std::size_t n, double alpha);

}  // namespace wavecb
