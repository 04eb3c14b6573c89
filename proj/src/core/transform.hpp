#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "core/filters.hpp"

namespace wavecb {

/// Dyadic layout of a length-n coefficient vector: n = 2^finest, a coarse
/// scaling block of 2^coarsest entries followed by detail levels
/// coarsest..finest-1 of 2^j entries each.
struct TransformShape {
  std::size_t n = 0;
  int coarsest = 0;  // J0
  int finest = 0;    // J1 = log2(n)

  static TransformShape make(std::size_t n, int coarsest);

  std::size_t scaling_count() const { return std::size_t{1} << coarsest; }
  int detail_levels() const { return finest - coarsest; }
  std::size_t level_offset(int j) const { return std::size_t{1} << j; }
  std::size_t level_count(int j) const { return std::size_t{1} << j; }

  bool operator==(const TransformShape&) const = default;
};

/// Flat wavelet coefficient vector ordered (scaling block, details by level).
struct CoefficientVector {
  std::vector<double> values;
  TransformShape shape;

  std::span<const double> scaling() const {
    return {values.data(), shape.scaling_count()};
  }
  std::span<double> scaling() {
    return {values.data(), shape.scaling_count()};
  }
  std::span<const double> level(int j) const {
    return {values.data() + shape.level_offset(j), shape.level_count(j)};
  }
  std::span<double> level(int j) {
    return {values.data() + shape.level_offset(j), shape.level_count(j)};
  }
  std::span<const double> details() const {
    return {values.data() + shape.scaling_count(),
            values.size() - shape.scaling_count()};
  }
};

struct CoefIndex {
  enum class Kind { Scaling, Detail };
  Kind kind;
  int level;        // defined for Detail only
  std::size_t pos;  // k
};

/// 1-based flat index -> (kind, level, position). Scaling k maps to ell = k+1,
/// detail (j,k) maps to ell = 2^j + k + 1.
CoefIndex index_to_level(std::size_t ell, const TransformShape& shape);
std::size_t level_to_index(const CoefIndex& idx, const TransformShape& shape);

/// Periodized orthonormal DWT down to level `shape.coarsest`.
/// Requires 2^(coarsest+1) >= filter length so periodization stays orthogonal.
CoefficientVector dwt_forward(std::span<const double> samples,
                              const WaveletFilter& filter,
                              const TransformShape& shape);

std::vector<double> dwt_inverse(const CoefficientVector& coeffs,
                                const WaveletFilter& filter);

bool is_power_of_two(std::size_t n);
int log2_exact(std::size_t n);

}  // namespace wavecb
