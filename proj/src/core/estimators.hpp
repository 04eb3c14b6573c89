#pragma once

#include <span>
#include <vector>

#include "core/transform.hpp"

namespace wavecb {

/// Soft-threshold schedule in normalized units: the level-j threshold is
/// t_j = u_j * r_n with r_n = sqrt(2 log n) * sigma / sqrt(n) and every u_j
/// restricted to [floor, 1].
struct ThresholdSchedule {
  enum class Mode { Global, Levelwise };
  Mode mode = Mode::Global;
  std::vector<double> u;  // one entry (global) or one per detail level
  double rho_n = 0.0;     // sqrt(2 log n)
  double r_n = 0.0;       // threshold scale in coefficient units
  double floor = 0.0;     // lower bound of the normalized range

  /// Normalized threshold applied to detail level `j` of `shape`.
  double u_at(int j, const TransformShape& shape) const {
    return mode == Mode::Global
               ? u.front()
               : u[static_cast<std::size_t>(j - shape.coarsest)];
  }
  double threshold_at(int j, const TransformShape& shape) const {
    return u_at(j, shape) * r_n;
  }
};

/// Blockwise multiplicative shrinkage: one factor for the scaling block,
/// one per detail level, all in [0,1] and nonincreasing in that order.
struct ModulationPlan {
  double xi_scaling = 1.0;
  std::vector<double> xi;  // detail levels coarsest..finest-1
};

/// sgn(x) * max(|x| - t, 0).
double soft_threshold(double x, double t);

/// sqrt(2 log n) * sigma / sqrt(n).
double universal_threshold(std::size_t n, double sigma);

/// Unbiased risk of soft thresholding at t over one coefficient slice:
/// sum_i [s2 - 2*s2*1{X_i^2 <= t^2} + min(X_i^2, t^2)], s2 = sigma^2/n.
double sure_risk(std::span<const double> coeffs, double t, double sigma_n2);

/// Total unbiased risk of a schedule over the whole vector; the scaling block
/// is kept unshrunk, contributing 2^{coarsest} * sigma^2/n.
double sure_total(const CoefficientVector& coeffs, const ThresholdSchedule& sched,
                  double sigma);

/// Exact minimization of the unbiased risk over u in [floor, 1] (per level or
/// globally). The objective is piecewise smooth with knots at the |X_i|, so the
/// minimum is attained on {endpoints} U {|X_i| in range}; ties break toward the
/// larger threshold.
ThresholdSchedule minimize_sure(const CoefficientVector& coeffs,
                                ThresholdSchedule::Mode mode, double sigma,
                                double floor = 0.72);

struct LevelStats {
  double excess_energy = 0.0;  // A = sum(X^2) - m*sigma^2/n
  double total_energy = 0.0;   // w = sum(X^2)
  double xi_star = 0.0;        // clamp(A/w, 0, 1); 0 when w = 0
};

LevelStats level_stats(std::span<const double> coeffs, double sigma_n2);

/// Risk of a modulation plan: per block,
/// sum_k [xi^2 sigma^2/n + (1-xi)^2 (X_k^2 - sigma^2/n)].
double modulation_sure(const CoefficientVector& coeffs, const ModulationPlan& plan,
                       double sigma);

/// Minimizes modulation risk subject to 1 >= xi_scaling >= xi_{J0} >= ... and
/// xi in [0,1]: weighted isotonic regression (pool adjacent violators) of the
/// per-block targets A_b/w_b with weights w_b, then clamped to [0,1].
ModulationPlan monotone_modulator(const CoefficientVector& coeffs, double sigma);

/// Soft-threshold the detail levels per the schedule; scaling block unchanged.
CoefficientVector apply_shrinkage(const CoefficientVector& coeffs,
                                  const ThresholdSchedule& sched);

/// Multiply the scaling block by xi_scaling and level j by xi_j.
CoefficientVector apply_shrinkage(const CoefficientVector& coeffs,
                                  const ModulationPlan& plan);

/// Fitted curve on the design grid: sqrt(n) * inverse transform.
std::vector<double> estimate_curve(const CoefficientVector& coeffs_hat,
                                   const WaveletFilter& filter);

}  // namespace wavecb
