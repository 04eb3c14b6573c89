#include "core/pivot.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "core/gauss.hpp"

namespace wavecb {
namespace {

// phi-weighted boundary terms, with the extended-real convention that every
// polynomial-times-phi term vanishes at +/-infinity.
double p1(double x) { return std::isinf(x) ? 0.0 : x * normal_pdf(x); }
double p2(double x) { return std::isinf(x) ? 0.0 : (x * x + 1.0) * normal_pdf(x); }
double p3(double x) {
  return std::isinf(x) ? 0.0 : x * (x * x + 1.0) * normal_pdf(x);
}

}  // namespace

double gaussian_partial(PartialMoment kind, double s, double t) {
  if (s > t) throw std::invalid_argument("interval endpoints out of order");
  switch (kind) {
    case PartialMoment::D1:
      return p1(s) - p1(t);
    case PartialMoment::D2:
      return p1(s) - p1(t) + normal_cdf(t) - normal_cdf(s);
    case PartialMoment::D3:
      return p2(s) - p2(t);
    case PartialMoment::D4:
      return 2.0 * (normal_cdf(t) - normal_cdf(s)) + p3(s) - p3(t);
  }
  throw std::invalid_argument("unknown moment kind");
}

double z_contribution(double eps, double nu, double u, double rho_n, double sigma,
                      std::size_t n) {
  const double a = nu - u * rho_n, b = nu + u * rho_n;
  const double inside = (eps > a && eps < b) ? 1.0 : 0.0;
  const double above = eps > b ? 1.0 : 0.0;
  const double below = eps < a ? 1.0 : 0.0;
  const double c = sigma * sigma / std::sqrt(static_cast<double>(n));
  return c * ((eps * eps - 1.0) * (1.0 - 2.0 * inside) +
              2.0 * nu * eps * inside -
              2.0 * u * rho_n * eps * (above - below));
}

double z_contribution_loss_form(double eps, double nu, double u, double rho_n,
                                double sigma, std::size_t n) {
  const double sqrt_n = std::sqrt(static_cast<double>(n));
  const double sigma_n2 = sigma * sigma / static_cast<double>(n);
  const double mu = -sigma * nu / sqrt_n;
  const double x = mu + sigma * eps / sqrt_n;
  const double t = u * rho_n * sigma / sqrt_n;
  const double fit = soft_threshold(x, t);
  const double loss = (fit - mu) * (fit - mu);
  const double risk = sigma_n2 -
                      2.0 * sigma_n2 * (x * x <= t * t ? 1.0 : 0.0) +
                      std::min(x * x, t * t);
  return sqrt_n * (loss - risk);
}

namespace {

/// Normalized threshold component for flat index `ell`: detail levels use
/// their own component, the scaling block the coarsest level's.
double u_for_index(std::size_t ell, const ThresholdSchedule& sched,
                   const TransformShape& shape) {
  if (ell < shape.scaling_count()) return sched.u_at(shape.coarsest, shape);
  int j = shape.coarsest;
  while ((std::size_t{1} << (j + 1)) <= ell) ++j;
  return sched.u_at(j, shape);
}

}  // namespace

double pivot_process(std::span<const double> eps, const CoefficientVector& mu,
                     const ThresholdSchedule& sched, double sigma) {
  if (eps.size() != mu.values.size())
    throw std::invalid_argument("noise and coefficient lengths differ");
  if (sigma == 0.0) return 0.0;
  const TransformShape& shape = mu.shape;
  const double sqrt_n = std::sqrt(static_cast<double>(shape.n));
  const double rho_n = std::sqrt(2.0 * std::log(static_cast<double>(shape.n)));
  double total = 0.0;
  for (std::size_t ell = 0; ell < eps.size(); ++ell) {
    const double nu = -sqrt_n * mu.values[ell] / sigma;
    total += z_contribution(eps[ell], nu, u_for_index(ell, sched, shape), rho_n,
                            sigma, shape.n);
  }
  return total;
}

double pivot_process_loss_form(std::span<const double> eps,
                               const CoefficientVector& mu,
                               const ThresholdSchedule& sched, double sigma) {
  if (eps.size() != mu.values.size())
    throw std::invalid_argument("noise and coefficient lengths differ");
  if (sigma == 0.0) return 0.0;
  const TransformShape& shape = mu.shape;
  const double sqrt_n = std::sqrt(static_cast<double>(shape.n));
  const double rho_n = std::sqrt(2.0 * std::log(static_cast<double>(shape.n)));
  double total = 0.0;
  for (std::size_t ell = 0; ell < eps.size(); ++ell) {
    const double nu = -sqrt_n * mu.values[ell] / sigma;
    total += z_contribution_loss_form(eps[ell], nu,
                                      u_for_index(ell, sched, shape), rho_n,
                                      sigma, shape.n);
  }
  return total;
}

double theoretical_variance(const CoefficientVector& mu, double u, double sigma) {
  if (u <= 0.0 || u > 1.0) throw std::invalid_argument("u must lie in (0,1]");
  const std::size_t n = mu.shape.n;
  const double sqrt_n = std::sqrt(static_cast<double>(n));
  const double rho = std::sqrt(2.0 * std::log(static_cast<double>(n)));
  const double urho = u * rho;
  const double scale = 2.0 * std::pow(sigma, 4) / static_cast<double>(n);
  const double inf = std::numeric_limits<double>::infinity();
  double total = 0.0;
  for (double m : mu.values) {
    const double nu = -sqrt_n * m / sigma;
    const double a = nu - urho, b = nu + urho;
    const double d2 = gaussian_partial(PartialMoment::D2, a, b);
    const double d3 = gaussian_partial(PartialMoment::D3, a, b);
    const double d3_lo = gaussian_partial(PartialMoment::D3, -inf, a);
    const double d3_hi = gaussian_partial(PartialMoment::D3, b, inf);
    total += scale * (1.0 + 2.0 * nu * nu * d2 + 2.0 * urho * urho * (1.0 - d2) -
                      2.0 * nu * d3 + 2.0 * urho * (d3_lo - d3_hi));
  }
  return total;
}

double theoretical_covariance(const CoefficientVector& mu, double u, double v,
                              double sigma) {
  if (!(0.0 <= u && u < v && v <= 1.0))
    throw std::invalid_argument("thresholds must satisfy 0 <= u < v <= 1");
  const std::size_t n = mu.shape.n;
  const double sqrt_n = std::sqrt(static_cast<double>(n));
  const double rho = std::sqrt(2.0 * std::log(static_cast<double>(n)));
  const double urho = u * rho, vrho = v * rho;
  const double scale = std::pow(sigma, 4) / static_cast<double>(n);
  const double inf = std::numeric_limits<double>::infinity();
  auto D2 = [](double s, double t) {
    return gaussian_partial(PartialMoment::D2, s, t);
  };
  auto D3 = [](double s, double t) {
    return gaussian_partial(PartialMoment::D3, s, t);
  };
  auto D4 = [](double s, double t) {
    return gaussian_partial(PartialMoment::D4, s, t);
  };

  double total = 0.0;
  for (double m : mu.values) {
    const double nu = -sqrt_n * m / sigma;
    const double a = nu - urho, b = nu + urho;      // narrow dead zone (u)
    const double at = nu - vrho, bt = nu + vrho;    // wide dead zone (v)
    // The noise axis splits at at < a < b < bt. On each piece both
    // contributions are fixed polynomials in eps; their product integrates
    // to a combination of truncated moments:
    //   (-inf,at): both exceed below       -> D4 + 2(u+v)rho D3 + 4uv rho^2 D2
    //   (at,a):    u exceeds below, v dead -> -D4 + 2a D3 + 4u nu rho D2
    //   (a,b):     both dead               ->  D4 - 4nu D3 + 4nu^2 D2
    //   (b,bt):    u exceeds above, v dead -> -D4 + 2b D3 - 4u nu rho D2
    //   (bt,inf):  both exceed above       ->  D4 - 2(u+v)rho D3 + 4uv rho^2 D2
    double k = 0.0;
    k += D4(-inf, at) + 2.0 * (urho + vrho) * D3(-inf, at) +
         4.0 * urho * vrho * D2(-inf, at);
    k += -D4(at, a) + 2.0 * a * D3(at, a) + 4.0 * urho * nu * D2(at, a);
    k += D4(a, b) - 4.0 * nu * D3(a, b) + 4.0 * nu * nu * D2(a, b);
    k += -D4(b, bt) + 2.0 * b * D3(b, bt) - 4.0 * urho * nu * D2(b, bt);
    k += D4(bt, inf) - 2.0 * (urho + vrho) * D3(bt, inf) +
         4.0 * urho * vrho * D2(bt, inf);
    total += scale * k;
  }
  return total;
}

}  // namespace wavecb
