#include "wavecb.h"

#include <charconv>
#include <cstdlib>
#include <cstring>
#include <new>
#include <stdexcept>
#include <string>

#include "core/harness.hpp"

namespace {

thread_local std::string g_last_error;

constexpr int kOk = 0;
constexpr int kConfigError = 2;
constexpr int kNumericalError = 3;

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

int fail(int code, const std::string& message) {
  g_last_error = message;
  return code;
}

bool parse_double(const char* value, double& out) {
  char* end = nullptr;
  out = std::strtod(value, &end);
  return end && *end == '\0' && end != value;
}

bool parse_u64(const char* value, std::uint64_t& out) {
  const char* end = value + std::strlen(value);
  auto [p, ec] = std::from_chars(value, end, out);
  return ec == std::errc{} && p == end;
}

}  // namespace

struct wavecb_config {
  wavecb::ExperimentConfig cfg;
  double u = 1.0;    // diagnostics threshold
  double wn = -1.0;  // band widening; negative = automatic
};

extern "C" {

wavecb_config* wavecb_config_create(void) {
  return new (std::nothrow) wavecb_config;
}

void wavecb_config_destroy(wavecb_config* cfg) { delete cfg; }

int wavecb_config_set(wavecb_config* cfg, const char* key, const char* value) {
  if (!cfg || !key || !value) return fail(kConfigError, "null argument");
  g_last_error.clear();
  const std::string_view k(key);
  try {
    if (k == "function") {
      cfg->cfg.function = wavecb::test_function_from_name(value);
    } else if (k == "method") {
      cfg->cfg.method = wavecb::method_from_name(value);
    } else if (k == "sigma-mode") {
      cfg->cfg.sigma_mode = wavecb::sigma_mode_from_name(value);
    } else if (k == "filter") {
      wavecb::WaveletFilter::from_name(value);  // validate
      cfg->cfg.filter = value;
    } else if (k == "n") {
      std::uint64_t v;
      if (!parse_u64(value, v) || !wavecb::is_power_of_two(v) || v < 8)
        return fail(kConfigError, "n must be a power of two >= 8");
      cfg->cfg.n = v;
    } else if (k == "reps") {
      std::uint64_t v;
      if (!parse_u64(value, v) || v < 1)
        return fail(kConfigError, "reps must be >= 1");
      cfg->cfg.replications = v;
    } else if (k == "seed") {
      std::uint64_t v;
      if (!parse_u64(value, v)) return fail(kConfigError, "bad seed");
      cfg->cfg.seed = v;
    } else if (k == "j0") {
      std::uint64_t v;
      if (!parse_u64(value, v) || v > 30) return fail(kConfigError, "bad j0");
      cfg->cfg.coarsest = static_cast<int>(v);
    } else if (k == "grid-size") {
      std::uint64_t v;
      if (!parse_u64(value, v) || v < 1)
        return fail(kConfigError, "grid-size must be >= 1");
      cfg->cfg.grid_size = v;
    } else if (k == "threads") {
      std::uint64_t v;
      if (!parse_u64(value, v)) return fail(kConfigError, "bad threads");
      cfg->cfg.threads = static_cast<int>(v);
    } else if (k == "sigma") {
      double v;
      if (!parse_double(value, v) || v < 0.0)
        return fail(kConfigError, "sigma must be >= 0");
      cfg->cfg.sigma = v;
    } else if (k == "alpha") {
      double v;
      if (!parse_double(value, v) || v <= 0.0 || v >= 1.0)
        return fail(kConfigError, "alpha must lie in (0,1)");
      cfg->cfg.alpha = v;
    } else if (k == "floor") {
      double v;
      if (!parse_double(value, v) || v <= 0.70710678118654752 || v >= 1.0)
        return fail(kConfigError, "floor must lie in (1/sqrt(2), 1)");
      cfg->cfg.floor = v;
    } else if (k == "delta") {
      double v;
      if (!parse_double(value, v) || v < 0.0)
        return fail(kConfigError, "delta must be >= 0");
      cfg->cfg.delta = v;
    } else if (k == "u") {
      double v;
      if (!parse_double(value, v) || v <= 0.0 || v > 1.0)
        return fail(kConfigError, "u must lie in (0,1]");
      cfg->u = v;
    } else if (k == "wn") {
      double v;
      if (!parse_double(value, v)) return fail(kConfigError, "bad wn");
      cfg->wn = v;
    } else {
      return fail(kConfigError, "unknown option: " + std::string(key));
    }
  } catch (const std::exception& e) {
    return fail(kConfigError, e.what());
  }
  return kOk;
}

int wavecb_simulate(const wavecb_config* cfg, char** report_json) {
  if (!cfg || !report_json) return fail(kConfigError, "null argument");
  g_last_error.clear();
  try {
    const wavecb::CoverageReport report = wavecb::run_coverage(cfg->cfg);
    *report_json = dup_string(wavecb::report_to_json(report));
    return *report_json ? kOk : fail(kNumericalError, "out of memory");
  } catch (const std::invalid_argument& e) {
    return fail(kConfigError, e.what());
  } catch (const std::exception& e) {
    return fail(kNumericalError, e.what());
  }
}

int wavecb_fit(const wavecb_config* cfg, const double* samples, size_t n,
               char** result_json) {
  if (!cfg || !samples || !result_json)
    return fail(kConfigError, "null argument");
  g_last_error.clear();
  try {
    const wavecb::FitResult fit =
        wavecb::fit_samples({samples, n}, cfg->cfg);
    *result_json = dup_string(wavecb::fit_to_json(fit, cfg->cfg));
    return *result_json ? kOk : fail(kNumericalError, "out of memory");
  } catch (const std::invalid_argument& e) {
    return fail(kConfigError, e.what());
  } catch (const std::exception& e) {
    return fail(kNumericalError, e.what());
  }
}

int wavecb_band(const wavecb_config* cfg, const double* samples, size_t n,
                const double* windows, size_t num_windows, char** csv) {
  if (!cfg || !samples || !windows || !csv)
    return fail(kConfigError, "null argument");
  g_last_error.clear();
  try {
    std::vector<std::pair<double, double>> ws;
    ws.reserve(num_windows);
    for (size_t i = 0; i < num_windows; ++i)
      ws.emplace_back(windows[2 * i], windows[2 * i + 1]);
    *csv = dup_string(wavecb::band_csv({samples, n}, ws, cfg->cfg, cfg->wn));
    return *csv ? kOk : fail(kNumericalError, "out of memory");
  } catch (const std::invalid_argument& e) {
    return fail(kConfigError, e.what());
  } catch (const std::exception& e) {
    return fail(kNumericalError, e.what());
  }
}

int wavecb_diagnose(const wavecb_config* cfg, char** table) {
  if (!cfg || !table) return fail(kConfigError, "null argument");
  g_last_error.clear();
  try {
    const wavecb::PivotDiagnostics d =
        wavecb::run_pivot_diagnostics(cfg->cfg, cfg->u);
    *table = dup_string(wavecb::diagnostics_table(d));
    return *table ? kOk : fail(kNumericalError, "out of memory");
  } catch (const std::invalid_argument& e) {
    return fail(kConfigError, e.what());
  } catch (const std::exception& e) {
    return fail(kNumericalError, e.what());
  }
}

void wavecb_string_free(char* s) { std::free(s); }

const char* wavecb_last_error(void) { return g_last_error.c_str(); }

}  // extern "C"
