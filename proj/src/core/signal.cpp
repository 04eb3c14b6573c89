#include "core/signal.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "core/rng.hpp"

namespace wavecb {

TestFunction test_function_from_name(std::string_view name) {
  if (name == "f0") return TestFunction::F0;
  if (name == "f1") return TestFunction::F1;
  if (name == "f2") return TestFunction::F2;
  throw std::invalid_argument("unknown test function: " + std::string(name));
}

const char* test_function_name(TestFunction id) {
  switch (id) {
    case TestFunction::F0: return "f0";
    case TestFunction::F1: return "f1";
    case TestFunction::F2: return "f2";
  }
  return "?";
}

double eval_test_function(TestFunction id, double x) {
  if (x < 0.0 || x > 1.0) throw std::invalid_argument("x must lie in [0,1]");
  switch (id) {
    case TestFunction::F0:
      return 0.0;
    case TestFunction::F1: {
      const double c = 2.0 * 6.75 * 6.75 * 6.75;
      const double x3 = x * x * x;
      const double om = 1.0 - x;
      return c * x3 * x3 * om * om * om;
    }
    case TestFunction::F2:
      if (x < 0.3) return 1.5;
      if (x < 0.6) return 0.5;
      if (x < 0.8) return 2.0;
      return 0.0;
  }
  return 0.0;
}

std::vector<double> sampled_curve(TestFunction id, std::size_t n) {
  if (!is_power_of_two(n)) throw std::invalid_argument("n must be a power of two");
  std::vector<double> f(n);
  for (std::size_t i = 0; i < n; ++i)
    f[i] = eval_test_function(id, static_cast<double>(i + 1) / static_cast<double>(n));
  return f;
}

RegressionSample generate_sample(TestFunction id, std::size_t n, double sigma,
                                 std::uint64_t seed) {
  if (sigma < 0.0) throw std::invalid_argument("sigma must be nonnegative");
  RegressionSample s;
  s.y = sampled_curve(id, n);
  s.sigma = sigma;
  s.seed = seed;
  if (sigma > 0.0) {
    NormalStream normals(seed);
    for (auto& yi : s.y) yi += sigma * normals.next();
  }
  return s;
}

CoefficientVector empirical_coefficients(const RegressionSample& sample,
                                         const WaveletFilter& filter,
                                         const TransformShape& shape) {
  CoefficientVector c = dwt_forward(sample.y, filter, shape);
  const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(shape.n));
  for (auto& v : c.values) v *= inv_sqrt_n;
  return c;
}

CoefficientVector true_coefficients(TestFunction id, const WaveletFilter& filter,
                                    const TransformShape& shape) {
  RegressionSample noiseless;
  noiseless.y = sampled_curve(id, shape.n);
  return empirical_coefficients(noiseless, filter, shape);
}

double BesovParams::gamma() const {
  return p >= 2.0 ? smoothness : smoothness + 0.5 - 1.0 / p;
}

double besov_seminorm(const CoefficientVector& coeffs, const BesovParams& params) {
  if (params.p < 1.0 || params.q < 1.0)
    throw std::invalid_argument("p and q must be >= 1");
  const TransformShape& shape = coeffs.shape;
  const double exponent = params.smoothness + 0.5 - 1.0 / params.p;
  double outer = 0.0;
  for (int j = shape.coarsest; j < shape.finest; ++j) {
    double inner = 0.0;
    for (double b : coeffs.level(j)) inner += std::pow(std::abs(b), params.p);
    const double level_norm =
        std::pow(2.0, j * exponent) * std::pow(inner, 1.0 / params.p);
    outer += std::pow(level_norm, params.q);
  }
  return std::pow(outer, 1.0 / params.q);
}

}  // namespace wavecb
