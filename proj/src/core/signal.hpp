#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "core/transform.hpp"

namespace wavecb {

enum class TestFunction { F0, F1, F2 };

TestFunction test_function_from_name(std::string_view name);
const char* test_function_name(TestFunction id);

/// f0 = 0; f1 = 2*6.75^3 x^6 (1-x)^3 (max 2.0 at x = 2/3); f2 = a 4-piece step
/// taking 1.5 on [0,0.3), 0.5 on [0.3,0.6), 2.0 on [0.6,0.8), 0 elsewhere.
double eval_test_function(TestFunction id, double x);

/// Equispaced regression sample y_i = f(x_i) + sigma*eps_i on x_i = i/n.
struct RegressionSample {
  std::vector<double> y;
  double sigma = 0.0;
  std::uint64_t seed = 0;

  std::size_t n() const { return y.size(); }
  double design(std::size_t i) const {  // i in [0, n): x = (i+1)/n
    return static_cast<double>(i + 1) / static_cast<double>(y.size());
  }
};

RegressionSample generate_sample(TestFunction id, std::size_t n, double sigma,
                                 std::uint64_t seed);

/// Noise-free curve values f(x_i), i = 1..n.
std::vector<double> sampled_curve(TestFunction id, std::size_t n);

/// Empirical coefficients dwt(y)/sqrt(n): mean ~ true coefficient, variance
/// sigma^2/n per coordinate.
CoefficientVector empirical_coefficients(const RegressionSample& sample,
                                         const WaveletFilter& filter,
                                         const TransformShape& shape);

/// Noise-free target coefficients dwt(f(grid))/sqrt(n).
CoefficientVector true_coefficients(TestFunction id, const WaveletFilter& filter,
                                    const TransformShape& shape);

/// Smoothness-scale parameters for the sequence-space seminorm diagnostic.
struct BesovParams {
  double p = 2.0;
  double q = 2.0;
  double smoothness = 0.0;  // the scale exponent
  double radius = 1.0;

  /// Effective rate exponent: smoothness when p >= 2, else
  /// smoothness + 1/2 - 1/p.
  double gamma() const;
};

/// Weighted ell_p/ell_q seminorm of the detail coefficients:
/// ( sum_j (2^{j(s+1/2-1/p)} (sum_k |b_{jk}|^p)^{1/p})^q )^{1/q}.
double besov_seminorm(const CoefficientVector& coeffs, const BesovParams& params);

}  // namespace wavecb
