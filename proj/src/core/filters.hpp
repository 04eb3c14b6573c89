#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace wavecb {

/// Orthonormal quadrature-mirror filter pair, described by its lowpass taps.
/// Invariants: sum(taps) = sqrt(2), sum(taps^2) = 1, double-shift orthogonality.
struct WaveletFilter {
  std::string name;
  std::vector<double> lowpass;

  std::size_t length() const { return lowpass.size(); }

  /// Mirror highpass: g[m] = (-1)^m h[L-1-m].
  std::vector<double> highpass() const;

  /// Known filters: "haar", "s8" (8-tap least-asymmetric, the default basis),
  /// "s16" (16-tap least-asymmetric). Throws std::invalid_argument otherwise.
  static WaveletFilter from_name(std::string_view name);
};

}  // namespace wavecb
