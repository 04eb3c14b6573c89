#include "core/gauss.hpp"

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/normal.hpp>
#include <cmath>
#include <stdexcept>

namespace wavecb {

double normal_pdf(double x) {
  if (std::isinf(x)) return 0.0;
  static const double inv_sqrt_2pi = 0.3989422804014326779;
  return inv_sqrt_2pi * std::exp(-0.5 * x * x);
}

double normal_cdf(double x) {
  if (std::isinf(x)) return x > 0 ? 1.0 : 0.0;
  return 0.5 * std::erfc(-x * 0.7071067811865475244);
}

double z_upper(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must be in (0,1)");
  static const boost::math::normal_distribution<double> unit{};
  return boost::math::quantile(boost::math::complement(unit, alpha));
}

double chi_squared_quantile(double p, std::size_t k) {
  if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("probability must be in (0,1)");
  const boost::math::chi_squared_distribution<double> dist(static_cast<double>(k));
  return boost::math::quantile(dist, p);
}

}  // namespace wavecb
