#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "core/confidence.hpp"
#include "core/signal.hpp"

namespace wavecb {

struct ExperimentConfig {
  TestFunction function = TestFunction::F0;
  std::size_t n = 1024;
  double sigma = 1.0;
  double alpha = 0.05;
  Method method = Method::Universal;
  SigmaMode sigma_mode = SigmaMode::Known;
  std::size_t replications = 1000;
  std::uint64_t seed = 1;
  int coarsest = 2;  // J0
  std::string filter = "s8";
  double floor = 0.72;      // normalized-threshold lower bound
  double delta = 0.0;       // function-space dilation; 0 disables
  std::size_t grid_size = 21;  // variance grid for the union set
  int threads = 0;          // 0: WAVECB_THREADS env var, then hardware count
};

struct CoverageReport {
  ExperimentConfig config;
  double coverage = 0.0;
  double avg_radius = 0.0;  // mean of the radii
  double rms_radius = 0.0;  // sqrt(mean squared radius)
  double radius_sd = 0.0;
  double mc_half_width = 0.0;  // 95% Monte Carlo half-width for coverage
  double wall_seconds = 0.0;   // not serialized (reports must be reproducible)
};

/// Monte Carlo coverage experiment: per replication, simulate, fit, build the
/// confidence set and test it against the noise-free coefficient vector.
/// Deterministic given the seed: replication r draws from an independent
/// stream keyed by (seed, r) and aggregation runs in replication order, so
/// serial and parallel runs agree exactly.
CoverageReport run_coverage(const ExperimentConfig& config);

/// Reproducible JSON rendering of a report (wall time excluded).
std::string report_to_json(const CoverageReport& report);

struct BaselineRadius {
  double radius2 = 0.0;  // sigma^2 * chi2_{1-alpha,n} / n
  double radius = 0.0;
};

/// Squared radius and radius of the no-smoothing chi-square ball.
BaselineRadius chisq_baseline_radius(std::size_t n, double sigma, double alpha);

struct FitResult {
  ConfidenceBall ball;
  std::vector<double> curve;
  double sigma2_hat = 0.0;  // estimate used when sigma_mode != known
};

/// End-to-end pipeline on user data (length must be a power of two). The
/// union sigma mode reports its widest member ball.
FitResult fit_samples(std::span<const double> samples,
                      const ExperimentConfig& config);

std::string fit_to_json(const FitResult& fit, const ExperimentConfig& config);

/// CSV rows "descriptor,lower,upper" for window averages over the fitted
/// ball; w_n < 0 selects the default widening at the shortest window length.
std::string band_csv(std::span<const double> samples,
                     const std::vector<std::pair<double, double>>& windows,
                     const ExperimentConfig& config, double w_n);

struct PivotDiagnostics {
  ExperimentConfig config;
  double u = 1.0;
  double empirical_mean = 0.0;
  double empirical_variance = 0.0;
  double theoretical_variance = 0.0;
  double max_form_gap = 0.0;  // largest disagreement between the two renderings
};

/// Monte Carlo check of the centered loss-minus-risk process at normalized
/// threshold u against its closed-form variance.
PivotDiagnostics run_pivot_diagnostics(const ExperimentConfig& config, double u);

std::string diagnostics_table(const PivotDiagnostics& d);

/// Thread count: requested if > 0, else WAVECB_THREADS, else hardware.
unsigned resolve_threads(int requested);

}  // namespace wavecb
