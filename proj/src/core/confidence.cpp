#include "core/confidence.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "core/gauss.hpp"

namespace wavecb {

Method method_from_name(std::string_view name) {
  if (name == "universal") return Method::Universal;
  if (name == "sure-global") return Method::SureGlobal;
  if (name == "sure-level") return Method::SureLevel;
  if (name == "modulator") return Method::Modulator;
  throw std::invalid_argument("unknown method: " + std::string(name));
}

const char* method_name(Method m) {
  switch (m) {
    case Method::Universal: return "universal";
    case Method::SureGlobal: return "sure-global";
    case Method::SureLevel: return "sure-level";
    case Method::Modulator: return "modulator";
  }
  return "?";
}

SigmaMode sigma_mode_from_name(std::string_view name) {
  if (name == "known") return SigmaMode::Known;
  if (name == "plugin") return SigmaMode::Plugin;
  if (name == "double") return SigmaMode::Double;
  throw std::invalid_argument("unknown sigma mode: " + std::string(name));
}

const char* sigma_mode_name(SigmaMode m) {
  switch (m) {
    case SigmaMode::Known: return "known";
    case SigmaMode::Plugin: return "plugin";
    case SigmaMode::Double: return "double";
  }
  return "?";
}

namespace {

ThresholdSchedule universal_schedule(const TransformShape& shape, double sigma) {
  ThresholdSchedule sched;
  sched.mode = ThresholdSchedule::Mode::Global;
  sched.u = {1.0};
  sched.floor = 1.0;
  sched.rho_n = std::sqrt(2.0 * std::log(static_cast<double>(shape.n)));
  sched.r_n = sched.rho_n * sigma / std::sqrt(static_cast<double>(shape.n));
  return sched;
}

ConfidenceBall threshold_ball(const CoefficientVector& coeffs,
                              const ThresholdSchedule& sched, double sigma,
                              double alpha, Method method) {
  const double n = static_cast<double>(coeffs.shape.n);
  ConfidenceBall ball;
  ball.center = apply_shrinkage(coeffs, sched);
  ball.radius2 = std::max(
      0.0, std::sqrt(2.0) * sigma * sigma * z_upper(alpha) / std::sqrt(n) +
               sure_total(coeffs, sched, sigma));
  ball.alpha = alpha;
  ball.method = method;
  ball.sigma_mode = SigmaMode::Known;
  return ball;
}

/// Per-coefficient modulation factor: scaling block, then detail levels.
double xi_at(std::size_t flat, const ModulationPlan& plan,
             const TransformShape& shape) {
  if (flat < shape.scaling_count()) return plan.xi_scaling;
  int j = shape.coarsest;
  while ((std::size_t{1} << (j + 1)) <= flat) ++j;
  return plan.xi[static_cast<std::size_t>(j - shape.coarsest)];
}

}  // namespace

ConfidenceBall radius_universal(const CoefficientVector& coeffs, double sigma,
                                double alpha) {
  return threshold_ball(coeffs, universal_schedule(coeffs.shape, sigma), sigma,
                        alpha, Method::Universal);
}

ConfidenceBall radius_sure(const CoefficientVector& coeffs,
                           const ThresholdSchedule& sched, double sigma,
                           double alpha) {
  return threshold_ball(coeffs, sched, sigma, alpha,
                        sched.mode == ThresholdSchedule::Mode::Global
                            ? Method::SureGlobal
                            : Method::SureLevel);
}

double tau2_modulator(const CoefficientVector& coeffs, const ModulationPlan& plan,
                      double sigma) {
  SigmaEstimate exact;
  exact.sigma2_hat = sigma * sigma;
  exact.U = 0.0;
  exact.source = SigmaEstimate::Source::External;
  return tau2_plugin(coeffs, plan, exact);
}

double tau2_plugin(const CoefficientVector& coeffs, const ModulationPlan& plan,
                   const SigmaEstimate& est) {
  const TransformShape& shape = coeffs.shape;
  const double n = static_cast<double>(shape.n);
  const double s2 = est.sigma2_hat;       // sigma^2 (estimated or exact)
  const double s2n = s2 / n;              // per-coefficient variance
  double sum_sq = 0.0;    // sum (2 xi - 1)^2
  double sum_lin = 0.0;   // sum (2 xi - 1)
  double sum_bias = 0.0;  // sum (mu~^2 - sigma^2/n)^2 (1 - xi)^2
  for (std::size_t ell = 0; ell < shape.n; ++ell) {
    const double xi = xi_at(ell, plan, shape);
    const double d = 2.0 * xi - 1.0;
    sum_sq += d * d;
    sum_lin += d;
    const double excess = coeffs.values[ell] * coeffs.values[ell] - s2n;
    const double om = 1.0 - xi;
    sum_bias += excess * excess * om * om;
  }
  const double avg = sum_lin / n;
  return 2.0 * s2 * s2 / n * sum_sq + 2.0 * est.U * s2 * s2 * avg * avg +
         4.0 * s2 * sum_bias;
}

ConfidenceBall radius_modulator(const CoefficientVector& coeffs,
                                const ModulationPlan& plan, double sigma,
                                double alpha) {
  const double n = static_cast<double>(coeffs.shape.n);
  ConfidenceBall ball;
  ball.center = apply_shrinkage(coeffs, plan);
  const double tau = std::sqrt(tau2_modulator(coeffs, plan, sigma));
  ball.radius2 = std::max(0.0, tau * z_upper(alpha) / std::sqrt(n) +
                                   modulation_sure(coeffs, plan, sigma));
  ball.alpha = alpha;
  ball.method = Method::Modulator;
  ball.sigma_mode = SigmaMode::Known;
  return ball;
}

ConfidenceBall known_sigma_ball(const CoefficientVector& coeffs, Method method,
                                double sigma, double alpha, double floor) {
  switch (method) {
    case Method::Universal:
      return radius_universal(coeffs, sigma, alpha);
    case Method::SureGlobal:
      return radius_sure(
          coeffs,
          minimize_sure(coeffs, ThresholdSchedule::Mode::Global, sigma, floor),
          sigma, alpha);
    case Method::SureLevel:
      return radius_sure(
          coeffs,
          minimize_sure(coeffs, ThresholdSchedule::Mode::Levelwise, sigma, floor),
          sigma, alpha);
    case Method::Modulator:
      return radius_modulator(coeffs, monotone_modulator(coeffs, sigma), sigma,
                              alpha);
  }
  throw std::invalid_argument("unknown method");
}

ConfidenceBall plugin_ball(const CoefficientVector& coeffs, Method method,
                           double alpha, double floor) {
  const SigmaEstimate est = high_component_sigma2(coeffs);
  const double sigma_hat = std::sqrt(est.sigma2_hat);
  ConfidenceBall ball = known_sigma_ball(coeffs, method, sigma_hat, alpha, floor);
  ball.sigma_mode = SigmaMode::Plugin;
  return ball;
}

DoubleSet double_set(const CoefficientVector& coeffs, Method method, double alpha,
                     std::size_t grid_size, double floor, bool split_variance) {
  if (grid_size < 1) throw std::invalid_argument("grid size must be >= 1");
  const double alpha_tilde =
      split_variance ? alpha / 2.0 : 1.0 - std::sqrt(1.0 - alpha);
  const SigmaEstimate est = high_component_sigma2(coeffs);

  DoubleSet set;
  set.q_interval = sigma_interval(est, coeffs.shape.n, alpha_tilde);
  if (grid_size == 1) {
    set.sigma2_grid = {0.5 * (set.q_interval.lo + set.q_interval.hi)};
  } else {
    const double step = (set.q_interval.hi - set.q_interval.lo) /
                        static_cast<double>(grid_size - 1);
    for (std::size_t g = 0; g < grid_size; ++g)
      set.sigma2_grid.push_back(set.q_interval.lo +
                                static_cast<double>(g) * step);
  }
  for (double s2 : set.sigma2_grid) {
    ConfidenceBall ball =
        known_sigma_ball(coeffs, method, std::sqrt(s2), alpha_tilde, floor);
    ball.sigma_mode = SigmaMode::Double;
    set.balls.push_back(std::move(ball));
  }
  return set;
}

bool ball_contains(const ConfidenceBall& ball, const CoefficientVector& mu) {
  if (mu.shape != ball.center.shape)
    throw std::invalid_argument("shape mismatch in membership test");
  double dist2 = 0.0;
  for (std::size_t ell = 0; ell < mu.values.size(); ++ell) {
    const double d = mu.values[ell] - ball.center.values[ell];
    dist2 += d * d;
  }
  return dist2 <= ball.radius2;
}

bool set_contains(const DoubleSet& set, const CoefficientVector& mu) {
  for (const ConfidenceBall& b : set.balls)
    if (ball_contains(b, mu)) return true;
  return false;
}

ConfidenceBall dilate_for_function_space(const ConfidenceBall& ball,
                                         double delta) {
  if (delta < 0.0) throw std::invalid_argument("delta must be nonnegative");
  ConfidenceBall out = ball;
  const double n = static_cast<double>(ball.center.shape.n);
  out.radius2 += delta * std::log(n) / std::sqrt(n);
  return out;
}

std::string ball_to_json(const ConfidenceBall& ball,
                         std::string_view filter_name) {
  nlohmann::json j;
  j["method"] = method_name(ball.method);
  j["alpha"] = ball.alpha;
  j["sigma_mode"] = sigma_mode_name(ball.sigma_mode);
  j["radius2"] = ball.radius2;
  j["center"] = ball.center.values;
  j["n"] = ball.center.shape.n;
  j["J0"] = ball.center.shape.coarsest;
  j["filter"] = std::string(filter_name);
  return j.dump();
}

}  // namespace wavecb
