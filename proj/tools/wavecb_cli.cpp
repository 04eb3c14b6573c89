// Command-line front end for the wavelet confidence-ball library. Talks to
// the shared library exclusively through the public C interface.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "wavecb.h"

namespace {

constexpr int kConfigError = 2;

struct ConfigDeleter {
  void operator()(wavecb_config* c) const { wavecb_config_destroy(c); }
};
using ConfigPtr = std::unique_ptr<wavecb_config, ConfigDeleter>;

struct StringDeleter {
  void operator()(char* s) const { wavecb_string_free(s); }
};
using CString = std::unique_ptr<char, StringDeleter>;

/// Collects CLI option values as (key, value) pairs for wavecb_config_set.
struct Options {
  std::vector<std::pair<std::string, std::string>> kv;

  void add(CLI::App& app, const std::string& flag, const std::string& key,
           const std::string& help) {
    app.add_option_function<std::string>(
        flag, [this, key](const std::string& v) { kv.emplace_back(key, v); },
        help);
  }
};

int apply_options(wavecb_config* cfg, const Options& opts) {
  for (const auto& [key, value] : opts.kv) {
    const int rc = wavecb_config_set(cfg, key.c_str(), value.c_str());
    if (rc != 0) {
      std::cerr << "error: --" << key << ": " << wavecb_last_error() << "\n";
      return rc;
    }
  }
  return 0;
}

bool read_samples(const std::string& path, std::vector<double>& samples) {
  std::ifstream in(path);
  if (!in) {
    std::cerr << "error: cannot open " << path << "\n";
    return false;
  }
  double v;
  while (in >> v) samples.push_back(v);
  if (!in.eof()) {
    std::cerr << "error: non-numeric content in " << path << "\n";
    return false;
  }
  if (samples.empty()) {
    std::cerr << "error: " << path << " holds no samples\n";
    return false;
  }
  return true;
}

int write_output(const std::string& out_path, const char* text) {
  if (out_path.empty()) {
    std::cout << text;
    return 0;
  }
  std::ofstream out(out_path, std::ios::binary);
  out << text;
  if (!out) {
    std::cerr << "error: cannot write " << out_path << "\n";
    return kConfigError;
  }
  return 0;
}

void add_model_options(CLI::App& app, Options& opts) {
  opts.add(app, "--function", "function", "Test function: f0, f1 or f2");
  opts.add(app, "--n", "n", "Sample count (power of two)");
  opts.add(app, "--sigma", "sigma", "Noise standard deviation");
  opts.add(app, "--alpha", "alpha", "Miscoverage level in (0,1)");
  opts.add(app, "--method", "method",
           "universal, sure-global, sure-level or modulator");
  opts.add(app, "--sigma-mode", "sigma-mode", "known, plugin or double");
  opts.add(app, "--j0", "j0", "Coarsest transform level");
  opts.add(app, "--filter", "filter", "Wavelet filter: haar, s8 or s16");
  opts.add(app, "--floor", "floor", "Normalized threshold lower bound");
  opts.add(app, "--delta", "delta", "Function-space dilation coefficient");
  opts.add(app, "--grid-size", "grid-size",
           "Variance grid size for sigma-mode=double");
  opts.add(app, "--threads", "threads",
           "Worker threads (0 = WAVECB_THREADS env var, then hardware)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Uniform confidence balls for wavelet regression"};
  app.require_subcommand(1);

  // simulate
  Options sim_opts;
  std::string sim_out;
  CLI::App* simulate = app.add_subcommand(
      "simulate", "Monte Carlo coverage experiment (JSON report)");
  add_model_options(*simulate, sim_opts);
  sim_opts.add(*simulate, "--reps", "reps", "Replications");
  sim_opts.add(*simulate, "--seed", "seed", "Master seed");
  simulate->add_option("--out", sim_out, "Report path (default: stdout)");

  // fit
  Options fit_opts;
  std::string fit_in, fit_out;
  CLI::App* fit = app.add_subcommand(
      "fit", "Fit an estimator and confidence ball to a sample file");
  add_model_options(*fit, fit_opts);
  fit->add_option("--input", fit_in, "Whitespace-separated samples")
      ->required();
  fit->add_option("--out", fit_out, "Result path (default: stdout)");

  // band
  Options band_opts;
  std::string band_in, band_out;
  std::vector<std::string> window_specs;
  CLI::App* band = app.add_subcommand(
      "band", "Confidence intervals for window averages (CSV)");
  add_model_options(*band, band_opts);
  band_opts.add(*band, "--wn", "wn", "Interval widening (negative = auto)");
  band->add_option("--input", band_in, "Whitespace-separated samples")
      ->required();
  band->add_option("--window", window_specs, "Window a:b (repeatable)")
      ->required();
  band->add_option("--out", band_out, "CSV path (default: stdout)");

  // diagnose
  Options diag_opts;
  std::string diag_out;
  CLI::App* diagnose = app.add_subcommand(
      "diagnose", "Loss-minus-risk process diagnostics table");
  add_model_options(*diagnose, diag_opts);
  diag_opts.add(*diagnose, "--reps", "reps", "Replications");
  diag_opts.add(*diagnose, "--seed", "seed", "Master seed");
  diag_opts.add(*diagnose, "--u", "u", "Normalized threshold in (0,1]");
  diagnose->add_option("--out", diag_out, "Table path (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kConfigError;
  }

  ConfigPtr cfg(wavecb_config_create());
  if (!cfg) {
    std::cerr << "error: out of memory\n";
    return 3;
  }

  if (simulate->parsed()) {
    if (int rc = apply_options(cfg.get(), sim_opts)) return rc;
    char* json = nullptr;
    const int rc = wavecb_simulate(cfg.get(), &json);
    if (rc != 0) {
      std::cerr << "error: " << wavecb_last_error() << "\n";
      return rc;
    }
    CString holder(json);
    return write_output(sim_out, json);
  }

  if (fit->parsed()) {
    if (int rc = apply_options(cfg.get(), fit_opts)) return rc;
    std::vector<double> samples;
    if (!read_samples(fit_in, samples)) return kConfigError;
    char* json = nullptr;
    const int rc =
        wavecb_fit(cfg.get(), samples.data(), samples.size(), &json);
    if (rc != 0) {
      std::cerr << "error: " << wavecb_last_error() << "\n";
      return rc;
    }
    CString holder(json);
    return write_output(fit_out, json);
  }

  if (band->parsed()) {
    if (int rc = apply_options(cfg.get(), band_opts)) return rc;
    std::vector<double> samples;
    if (!read_samples(band_in, samples)) return kConfigError;
    std::vector<double> windows;
    for (const std::string& spec : window_specs) {
      double a, b;
      if (std::sscanf(spec.c_str(), "%lf:%lf", &a, &b) != 2) {
        std::cerr << "error: bad window '" << spec << "' (want a:b)\n";
        return kConfigError;
      }
      windows.push_back(a);
      windows.push_back(b);
    }
    char* csv = nullptr;
    const int rc = wavecb_band(cfg.get(), samples.data(), samples.size(),
                               windows.data(), windows.size() / 2, &csv);
    if (rc != 0) {
      std::cerr << "error: " << wavecb_last_error() << "\n";
      return rc;
    }
    CString holder(csv);
    return write_output(band_out, csv);
  }

  if (int rc = apply_options(cfg.get(), diag_opts)) return rc;
  char* table = nullptr;
  const int rc = wavecb_diagnose(cfg.get(), &table);
  if (rc != 0) {
    std::cerr << "error: " << wavecb_last_error() << "\n";
    return rc;
  }
  CString holder(table);
  return write_output(diag_out, table);
}
