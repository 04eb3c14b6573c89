#include "core/functionals.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace wavecb {

FunctionalInterval functional_interval(const LinearFunctional& T,
                                       const ConfidenceBall& ball, double w_n) {
  if (T.coeffs.size() != ball.center.values.size())
    throw std::invalid_argument("functional length does not match ball");
  if (w_n < 0.0) throw std::invalid_argument("widening must be nonnegative");
  double mid = 0.0, norm2 = 0.0;
  for (std::size_t ell = 0; ell < T.coeffs.size(); ++ell) {
    mid += T.coeffs[ell] * ball.center.values[ell];
    norm2 += T.coeffs[ell] * T.coeffs[ell];
  }
  const double half = std::sqrt(ball.radius2) * std::sqrt(norm2);
  return {mid - half - w_n, mid + half + w_n, w_n};
}

LinearFunctional local_average(double a, double b, const WaveletFilter& filter,
                               const TransformShape& shape) {
  if (!(a >= 0.0 && a < b && b <= 1.0))
    throw std::invalid_argument("window must satisfy 0 <= a < b <= 1");
  const std::size_t n = shape.n;
  std::vector<double> g(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = static_cast<double>(i + 1) / static_cast<double>(n);
    if (x > a && x <= b) g[i] = 1.0 / (b - a);
  }
  CoefficientVector c = dwt_forward(g, filter, shape);
  const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(n));
  LinearFunctional T;
  T.coeffs.reserve(n);
  for (double v : c.values) T.coeffs.push_back(v * inv_sqrt_n);
  char buf[64];
  std::snprintf(buf, sizeof(buf), "avg[%g,%g]", a, b);
  T.descriptor = buf;
  return T;
}

std::vector<FunctionalInterval> simultaneous_intervals(
    const std::vector<LinearFunctional>& Ts, const ConfidenceBall& ball,
    double w_n) {
  if (Ts.empty()) throw std::invalid_argument("empty functional list");
  std::vector<FunctionalInterval> out;
  out.reserve(Ts.size());
  for (const LinearFunctional& T : Ts)
    out.push_back(functional_interval(T, ball, w_n));
  return out;
}

double default_widening(std::size_t n, double delta_n) {
  if (delta_n <= 0.0) throw std::invalid_argument("delta_n must be positive");
  return std::log(static_cast<double>(n)) / (static_cast<double>(n) * delta_n);
}

}  // namespace wavecb
