#include "core/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace wavecb {

double soft_threshold(double x, double t) {
  if (t < 0.0) throw std::invalid_argument("threshold must be nonnegative");
  if (x > t) return x - t;
  if (x < -t) return x + t;
  return 0.0;
}

double universal_threshold(std::size_t n, double sigma) {
  if (n < 2) throw std::invalid_argument("n must be >= 2");
  return std::sqrt(2.0 * std::log(static_cast<double>(n))) * sigma /
         std::sqrt(static_cast<double>(n));
}

double sure_risk(std::span<const double> coeffs, double t, double sigma_n2) {
  if (t < 0.0) throw std::invalid_argument("threshold must be nonnegative");
  const double t2 = t * t;
  double total = 0.0;
  for (double x : coeffs) {
    const double x2 = x * x;
    total += sigma_n2 - 2.0 * sigma_n2 * (x2 <= t2 ? 1.0 : 0.0) + std::min(x2, t2);
  }
  return total;
}

double sure_total(const CoefficientVector& coeffs, const ThresholdSchedule& sched,
                  double sigma) {
  const TransformShape& shape = coeffs.shape;
  const double sigma_n2 = sigma * sigma / static_cast<double>(shape.n);
  double total = static_cast<double>(shape.scaling_count()) * sigma_n2;
  for (int j = shape.coarsest; j < shape.finest; ++j)
    total += sure_risk(coeffs.level(j), sched.threshold_at(j, shape), sigma_n2);
  return total;
}

namespace {

/// Exact minimizer of u -> sure_risk(coeffs, u * r_n) over [floor_u, 1] for
/// one slice. The objective's downward jumps sit where u * r_n crosses a
/// knot |X_i|; mapping a knot through u = |X_i| / r_n can land one ulp below
/// the jump, so the next representable values are probed too. The risk is
/// evaluated at u * r_n, exactly the threshold consumers recompute, so the
/// reported minimum is achieved bit-for-bit downstream. Ties break toward
/// the larger threshold.
double minimize_slice(std::span<const double> coeffs, double floor_u,
                      double r_n, double sigma_n2) {
  std::vector<double> candidates{floor_u, 1.0};
  for (double x : coeffs) {
    double u = std::abs(x) / r_n;
    for (int bump = 0; bump < 3; ++bump) {
      if (u > floor_u && u < 1.0) candidates.push_back(u);
      u = std::nextafter(u, 2.0);
    }
  }
  std::sort(candidates.begin(), candidates.end());
  double best_u = candidates.front();
  double best_risk = sure_risk(coeffs, best_u * r_n, sigma_n2);
  for (std::size_t i = 1; i < candidates.size(); ++i) {
    const double risk = sure_risk(coeffs, candidates[i] * r_n, sigma_n2);
    if (risk <= best_risk) {
      best_risk = risk;
      best_u = candidates[i];
    }
  }
  return best_u;
}

}  // namespace

ThresholdSchedule minimize_sure(const CoefficientVector& coeffs,
                                ThresholdSchedule::Mode mode, double sigma,
                                double floor) {
  if (floor <= 1.0 / std::sqrt(2.0) || floor >= 1.0)
    throw std::invalid_argument("normalized-threshold floor must lie in (1/sqrt(2), 1)");
  const TransformShape& shape = coeffs.shape;
  ThresholdSchedule sched;
  sched.mode = mode;
  sched.floor = floor;
  sched.rho_n = std::sqrt(2.0 * std::log(static_cast<double>(shape.n)));
  sched.r_n = sched.rho_n * sigma / std::sqrt(static_cast<double>(shape.n));
  const double sigma_n2 = sigma * sigma / static_cast<double>(shape.n);

  if (sched.r_n == 0.0) {  // sigma = 0: every schedule is a no-op
    sched.u.assign(mode == ThresholdSchedule::Mode::Global
                       ? 1
                       : static_cast<std::size_t>(shape.detail_levels()),
                   1.0);
    return sched;
  }

  if (mode == ThresholdSchedule::Mode::Global) {
    sched.u = {minimize_slice(coeffs.details(), floor, sched.r_n, sigma_n2)};
  } else {
    sched.u.reserve(static_cast<std::size_t>(shape.detail_levels()));
    for (int j = shape.coarsest; j < shape.finest; ++j)
      sched.u.push_back(
          minimize_slice(coeffs.level(j), floor, sched.r_n, sigma_n2));
  }
  return sched;
}

LevelStats level_stats(std::span<const double> coeffs, double sigma_n2) {
  if (coeffs.empty()) throw std::invalid_argument("empty coefficient slice");
  LevelStats st;
  for (double x : coeffs) st.total_energy += x * x;
  st.excess_energy =
      st.total_energy - static_cast<double>(coeffs.size()) * sigma_n2;
  st.xi_star = st.total_energy > 0.0
                   ? std::clamp(st.excess_energy / st.total_energy, 0.0, 1.0)
                   : 0.0;
  return st;
}

double modulation_sure(const CoefficientVector& coeffs, const ModulationPlan& plan,
                       double sigma) {
  const TransformShape& shape = coeffs.shape;
  if (plan.xi.size() != static_cast<std::size_t>(shape.detail_levels()))
    throw std::invalid_argument("modulation plan does not match shape");
  const double s2 = sigma * sigma / static_cast<double>(shape.n);
  auto block_risk = [s2](std::span<const double> block, double xi) {
    double r = 0.0;
    for (double x : block)
      r += xi * xi * s2 + (1.0 - xi) * (1.0 - xi) * (x * x - s2);
    return r;
  };
  double total = block_risk(coeffs.scaling(), plan.xi_scaling);
  for (int j = shape.coarsest; j < shape.finest; ++j)
    total += block_risk(coeffs.level(j),
                        plan.xi[static_cast<std::size_t>(j - shape.coarsest)]);
  return total;
}

ModulationPlan monotone_modulator(const CoefficientVector& coeffs, double sigma) {
  const TransformShape& shape = coeffs.shape;
  const double s2 = sigma * sigma / static_cast<double>(shape.n);

  // Per-block targets A_b/w_b and weights w_b: scaling block first, then
  // detail levels in increasing resolution.
  std::vector<double> target, weight;
  auto add_block = [&](std::span<const double> block) {
    double w = 0.0;
    for (double x : block) w += x * x;
    target.push_back(w > 0.0
                         ? (w - static_cast<double>(block.size()) * s2) / w
                         : 0.0);
    weight.push_back(w);
  };
  add_block(coeffs.scaling());
  for (int j = shape.coarsest; j < shape.finest; ++j) add_block(coeffs.level(j));

  // Pool adjacent violators for a nonincreasing fit: merge whenever a later
  // pooled mean exceeds an earlier one.
  struct Pool {
    double sum;  // weighted target sum
    double w;
    std::size_t count;
    double mean() const { return w > 0.0 ? sum / w : 0.0; }
  };
  std::vector<Pool> stack;
  for (std::size_t b = 0; b < target.size(); ++b) {
    Pool p{target[b] * weight[b], weight[b], 1};
    while (!stack.empty() && p.mean() > stack.back().mean()) {
      p.sum += stack.back().sum;
      p.w += stack.back().w;
      p.count += stack.back().count;
      stack.pop_back();
    }
    stack.push_back(p);
  }

  std::vector<double> fit;
  fit.reserve(target.size());
  for (const Pool& p : stack) {
    const double v = std::clamp(p.mean(), 0.0, 1.0);
    fit.insert(fit.end(), p.count, v);
  }

  ModulationPlan plan;
  plan.xi_scaling = fit.front();
  plan.xi.assign(fit.begin() + 1, fit.end());
  return plan;
}

CoefficientVector apply_shrinkage(const CoefficientVector& coeffs,
                                  const ThresholdSchedule& sched) {
  const TransformShape& shape = coeffs.shape;
  if (sched.mode == ThresholdSchedule::Mode::Levelwise &&
      sched.u.size() != static_cast<std::size_t>(shape.detail_levels()))
    throw std::invalid_argument("threshold schedule does not match shape");
  CoefficientVector out = coeffs;
  for (int j = shape.coarsest; j < shape.finest; ++j) {
    const double t = sched.threshold_at(j, shape);
    for (double& x : out.level(j)) x = soft_threshold(x, t);
  }
  return out;
}

CoefficientVector apply_shrinkage(const CoefficientVector& coeffs,
                                  const ModulationPlan& plan) {
  const TransformShape& shape = coeffs.shape;
  if (plan.xi.size() != static_cast<std::size_t>(shape.detail_levels()))
    throw std::invalid_argument("modulation plan does not match shape");
  CoefficientVector out = coeffs;
  for (double& x : out.scaling()) x *= plan.xi_scaling;
  for (int j = shape.coarsest; j < shape.finest; ++j) {
    const double xi = plan.xi[static_cast<std::size_t>(j - shape.coarsest)];
    for (double& x : out.level(j)) x *= xi;
  }
  return out;
}

std::vector<double> estimate_curve(const CoefficientVector& coeffs_hat,
                                   const WaveletFilter& filter) {
  std::vector<double> curve = dwt_inverse(coeffs_hat, filter);
  const double scale = std::sqrt(static_cast<double>(coeffs_hat.shape.n));
  for (double& v : curve) v *= scale;
  return curve;
}

}  // namespace wavecb
