#include "core/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <stdexcept>
#include <thread>

#include <nlohmann/json.hpp>

#include "core/functionals.hpp"
#include "core/gauss.hpp"
#include "core/pivot.hpp"
#include "core/rng.hpp"

namespace wavecb {

unsigned resolve_threads(int requested) {
  if (requested > 0) return static_cast<unsigned>(requested);
  if (const char* env = std::getenv("WAVECB_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<unsigned>(v);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? hw : 1;
}

namespace {

struct RepOutcome {
  bool covered = false;
  double radius2 = 0.0;
};

RepOutcome one_replication(const ExperimentConfig& cfg,
                           const WaveletFilter& filter,
                           const TransformShape& shape,
                           const CoefficientVector& truth, std::uint64_t rep) {
  const RegressionSample sample = generate_sample(
      cfg.function, cfg.n, cfg.sigma, stream_seed(cfg.seed, rep));
  const CoefficientVector coeffs = empirical_coefficients(sample, filter, shape);

  RepOutcome out;
  switch (cfg.sigma_mode) {
    case SigmaMode::Known: {
      ConfidenceBall ball =
          known_sigma_ball(coeffs, cfg.method, cfg.sigma, cfg.alpha, cfg.floor);
      if (cfg.delta > 0.0) ball = dilate_for_function_space(ball, cfg.delta);
      out.covered = ball_contains(ball, truth);
      out.radius2 = ball.radius2;
      break;
    }
    case SigmaMode::Plugin: {
      ConfidenceBall ball = plugin_ball(coeffs, cfg.method, cfg.alpha, cfg.floor);
      if (cfg.delta > 0.0) ball = dilate_for_function_space(ball, cfg.delta);
      out.covered = ball_contains(ball, truth);
      out.radius2 = ball.radius2;
      break;
    }
    case SigmaMode::Double: {
      const DoubleSet set =
          double_set(coeffs, cfg.method, cfg.alpha, cfg.grid_size, cfg.floor);
      out.covered = set_contains(set, truth);
      for (const ConfidenceBall& b : set.balls)
        out.radius2 = std::max(out.radius2, b.radius2);
      break;
    }
  }
  return out;
}

}  // namespace

CoverageReport run_coverage(const ExperimentConfig& cfg) {
  if (cfg.replications < 1) throw std::invalid_argument("replications must be >= 1");
  const auto t0 = std::chrono::steady_clock::now();
  const WaveletFilter filter = WaveletFilter::from_name(cfg.filter);
  const TransformShape shape = TransformShape::make(cfg.n, cfg.coarsest);
  const CoefficientVector truth = true_coefficients(cfg.function, filter, shape);

  std::vector<RepOutcome> outcomes(cfg.replications);
  const unsigned workers =
      std::min<unsigned>(resolve_threads(cfg.threads),
                         static_cast<unsigned>(cfg.replications));
  if (workers <= 1) {
    for (std::uint64_t r = 0; r < cfg.replications; ++r)
      outcomes[r] = one_replication(cfg, filter, shape, truth, r);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::uint64_t r = w; r < cfg.replications; r += workers)
          outcomes[r] = one_replication(cfg, filter, shape, truth, r);
      });
    }
    for (auto& t : pool) t.join();
  }

  // Aggregate in replication order so results are independent of scheduling.
  const double R = static_cast<double>(cfg.replications);
  double hits = 0.0, sum_r = 0.0, sum_r2 = 0.0;
  for (const RepOutcome& o : outcomes) {
    hits += o.covered ? 1.0 : 0.0;
    sum_r += std::sqrt(o.radius2);
    sum_r2 += o.radius2;
  }
  CoverageReport rep;
  rep.config = cfg;
  rep.coverage = hits / R;
  rep.avg_radius = sum_r / R;
  rep.rms_radius = std::sqrt(sum_r2 / R);
  double ss = 0.0;
  for (const RepOutcome& o : outcomes) {
    const double d = std::sqrt(o.radius2) - rep.avg_radius;
    ss += d * d;
  }
  rep.radius_sd = cfg.replications > 1 ? std::sqrt(ss / (R - 1.0)) : 0.0;
  rep.mc_half_width = 1.959963984540054 *
                      std::sqrt(rep.coverage * (1.0 - rep.coverage) / R);
  rep.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  return rep;
}

std::string report_to_json(const CoverageReport& report) {
  const ExperimentConfig& cfg = report.config;
  nlohmann::json j;
  j["config"] = {
      {"function", test_function_name(cfg.function)},
      {"n", cfg.n},
      {"sigma", cfg.sigma},
      {"alpha", cfg.alpha},
      {"method", method_name(cfg.method)},
      {"sigma_mode", sigma_mode_name(cfg.sigma_mode)},
      {"replications", cfg.replications},
      {"seed", cfg.seed},
      {"J0", cfg.coarsest},
      {"filter", cfg.filter},
      {"floor", cfg.floor},
      {"delta", cfg.delta},
      {"grid_size", cfg.grid_size},
  };
  j["coverage"] = report.coverage;
  j["avg_radius"] = report.avg_radius;
  j["rms_radius"] = report.rms_radius;
  j["radius_sd"] = report.radius_sd;
  j["mc_half_width"] = report.mc_half_width;
  return j.dump(2) + "\n";
}

BaselineRadius chisq_baseline_radius(std::size_t n, double sigma, double alpha) {
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  BaselineRadius b;
  b.radius2 = sigma * sigma * chi_squared_quantile(1.0 - alpha, n) /
              static_cast<double>(n);
  b.radius = std::sqrt(b.radius2);
  return b;
}

FitResult fit_samples(std::span<const double> samples,
                      const ExperimentConfig& cfg) {
  if (!is_power_of_two(samples.size()))
    throw std::invalid_argument("sample length must be a power of two");
  const WaveletFilter filter = WaveletFilter::from_name(cfg.filter);
  const TransformShape shape =
      TransformShape::make(samples.size(), cfg.coarsest);

  RegressionSample sample;
  sample.y.assign(samples.begin(), samples.end());
  sample.sigma = cfg.sigma;
  const CoefficientVector coeffs = empirical_coefficients(sample, filter, shape);

  FitResult fit;
  switch (cfg.sigma_mode) {
    case SigmaMode::Known:
      fit.ball =
          known_sigma_ball(coeffs, cfg.method, cfg.sigma, cfg.alpha, cfg.floor);
      fit.sigma2_hat = cfg.sigma * cfg.sigma;
      break;
    case SigmaMode::Plugin:
      fit.ball = plugin_ball(coeffs, cfg.method, cfg.alpha, cfg.floor);
      fit.sigma2_hat = high_component_sigma2(coeffs).sigma2_hat;
      break;
    case SigmaMode::Double: {
      const DoubleSet set =
          double_set(coeffs, cfg.method, cfg.alpha, cfg.grid_size, cfg.floor);
      std::size_t widest = 0;
      for (std::size_t g = 1; g < set.balls.size(); ++g)
        if (set.balls[g].radius2 > set.balls[widest].radius2) widest = g;
      fit.ball = set.balls[widest];
      fit.sigma2_hat = set.sigma2_grid[widest];
      break;
    }
  }
  if (cfg.delta > 0.0)
    fit.ball = dilate_for_function_space(fit.ball, cfg.delta);
  fit.curve = estimate_curve(fit.ball.center, filter);
  return fit;
}

std::string fit_to_json(const FitResult& fit, const ExperimentConfig& cfg) {
  nlohmann::json j = nlohmann::json::parse(ball_to_json(fit.ball, cfg.filter));
  j["curve"] = fit.curve;
  j["sigma2_hat"] = fit.sigma2_hat;
  return j.dump() + "\n";
}

std::string band_csv(std::span<const double> samples,
                     const std::vector<std::pair<double, double>>& windows,
                     const ExperimentConfig& cfg, double w_n) {
  if (windows.empty()) throw std::invalid_argument("no windows given");
  const FitResult fit = fit_samples(samples, cfg);
  const WaveletFilter filter = WaveletFilter::from_name(cfg.filter);
  const TransformShape shape =
      TransformShape::make(samples.size(), cfg.coarsest);
  if (w_n < 0.0) {
    double min_len = 1.0;
    for (const auto& [a, b] : windows) min_len = std::min(min_len, b - a);
    w_n = default_widening(samples.size(), min_len);
  }
  std::string csv = "descriptor,lower,upper\n";
  char buf[160];
  for (const auto& [a, b] : windows) {
    const LinearFunctional T = local_average(a, b, filter, shape);
    const FunctionalInterval iv = functional_interval(T, fit.ball, w_n);
    std::snprintf(buf, sizeof(buf), "%s,%.10g,%.10g\n", T.descriptor.c_str(),
                  iv.lower, iv.upper);
    csv += buf;
  }
  return csv;
}

PivotDiagnostics run_pivot_diagnostics(const ExperimentConfig& cfg, double u) {
  if (u <= 0.0 || u > 1.0) throw std::invalid_argument("u must lie in (0,1]");
  const WaveletFilter filter = WaveletFilter::from_name(cfg.filter);
  const TransformShape shape = TransformShape::make(cfg.n, cfg.coarsest);
  const CoefficientVector truth = true_coefficients(cfg.function, filter, shape);

  ThresholdSchedule sched;
  sched.mode = ThresholdSchedule::Mode::Global;
  sched.u = {u};
  sched.floor = u;
  sched.rho_n = std::sqrt(2.0 * std::log(static_cast<double>(cfg.n)));
  sched.r_n = sched.rho_n * cfg.sigma / std::sqrt(static_cast<double>(cfg.n));

  const std::size_t R = cfg.replications;
  std::vector<double> b_values(R);
  double max_gap = 0.0;
  std::vector<double> eps(cfg.n);
  for (std::uint64_t r = 0; r < R; ++r) {
    NormalStream normals(stream_seed(cfg.seed, r));
    for (double& e : eps) e = normals.next();
    const double b1 = pivot_process(eps, truth, sched, cfg.sigma);
    const double b2 = pivot_process_loss_form(eps, truth, sched, cfg.sigma);
    max_gap = std::max(max_gap, std::abs(b1 - b2));
    b_values[r] = b1;
  }
  double mean = 0.0;
  for (double b : b_values) mean += b;
  mean /= static_cast<double>(R);
  double var = 0.0;
  for (double b : b_values) var += (b - mean) * (b - mean);
  var = R > 1 ? var / static_cast<double>(R - 1) : 0.0;

  PivotDiagnostics d;
  d.config = cfg;
  d.u = u;
  d.empirical_mean = mean;
  d.empirical_variance = var;
  d.theoretical_variance = theoretical_variance(truth, u, cfg.sigma);
  d.max_form_gap = max_gap;
  return d;
}

std::string diagnostics_table(const PivotDiagnostics& d) {
  char buf[320];
  std::string out =
      "n function u reps emp_mean emp_var theo_var rel_discrepancy\n";
  const double rel =
      d.theoretical_variance != 0.0
          ? (d.empirical_variance - d.theoretical_variance) /
                d.theoretical_variance
          : 0.0;
  std::snprintf(buf, sizeof(buf), "%zu %s %.10g %zu %.10g %.10g %.10g %.10g\n",
                d.config.n, test_function_name(d.config.function), d.u,
                d.config.replications, d.empirical_mean, d.empirical_variance,
                d.theoretical_variance, rel);
  out += buf;
  return out;
}

}  // namespace wavecb
