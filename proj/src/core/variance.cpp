#include "core/variance.hpp"

#include <cmath>
#include <stdexcept>

#include "core/gauss.hpp"

namespace wavecb {

SigmaEstimate high_component_sigma2(const CoefficientVector& coeffs) {
  const std::size_t n = coeffs.shape.n;
  if (n % 2 != 0) throw std::invalid_argument("n must be even");
  double tail_energy = 0.0;
  for (std::size_t ell = n / 2; ell < n; ++ell)  // flat indices n/2+1 .. n
    tail_energy += coeffs.values[ell] * coeffs.values[ell];
  SigmaEstimate est;
  est.sigma2_hat = 2.0 * tail_energy;
  est.U = 2.0;
  est.source = SigmaEstimate::Source::HighComponent;
  return est;
}

Interval sigma_interval(const SigmaEstimate& est, std::size_t n, double alpha) {
  if (alpha <= 0.0 || alpha >= 1.0) throw std::invalid_argument("alpha must be in (0,1)");
  const double sqrt_n = std::sqrt(static_cast<double>(n));
  const double z_lo = z_upper(1.0 - alpha / 2.0);  // negative
  const double z_hi = z_upper(alpha / 2.0);        // positive
  const double denom_lo = 1.0 - est.U * z_lo / sqrt_n;  // > 1
  const double denom_hi = 1.0 - est.U * z_hi / sqrt_n;
  if (denom_hi <= 0.0)
    throw std::domain_error("sample too small for the variance interval");
  return {est.sigma2_hat / denom_lo, est.sigma2_hat / denom_hi};
}

}  // namespace wavecb
