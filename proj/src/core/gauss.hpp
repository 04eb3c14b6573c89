#pragma once

#include <cstddef>

namespace wavecb {

double normal_pdf(double x);
double normal_cdf(double x);

/// Upper-tail quantile: P{Z > z_upper(alpha)} = alpha.
double z_upper(double alpha);

/// Chi-square quantile at probability p with k degrees of freedom.
double chi_squared_quantile(double p, std::size_t k);

}  // namespace wavecb
