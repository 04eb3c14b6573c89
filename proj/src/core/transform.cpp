#include "core/transform.hpp"

#include <stdexcept>
#include <string>

namespace wavecb {

bool is_power_of_two(std::size_t n) { return n > 0 && (n & (n - 1)) == 0; }

int log2_exact(std::size_t n) {
  if (!is_power_of_two(n)) throw std::invalid_argument("length must be a power of two");
  int j = 0;
  while ((std::size_t{1} << j) < n) ++j;
  return j;
}

TransformShape TransformShape::make(std::size_t n, int coarsest) {
  TransformShape s;
  s.n = n;
  s.finest = log2_exact(n);
  s.coarsest = coarsest;
  if (coarsest < 0 || coarsest >= s.finest)
    throw std::invalid_argument("coarsest level must satisfy 0 <= J0 < log2(n)");
  return s;
}

CoefIndex index_to_level(std::size_t ell, const TransformShape& shape) {
  if (ell < 1 || ell > shape.n) throw std::out_of_range("flat index out of range");
  const std::size_t i = ell - 1;
  if (i < shape.scaling_count()) return {CoefIndex::Kind::Scaling, shape.coarsest, i};
  int j = shape.coarsest;
  while ((std::size_t{1} << (j + 1)) <= i) ++j;
  return {CoefIndex::Kind::Detail, j, i - (std::size_t{1} << j)};
}

std::size_t level_to_index(const CoefIndex& idx, const TransformShape& shape) {
  if (idx.kind == CoefIndex::Kind::Scaling) {
    if (idx.pos >= shape.scaling_count()) throw std::out_of_range("scaling position out of range");
    return idx.pos + 1;
  }
  if (idx.level < shape.coarsest || idx.level >= shape.finest)
    throw std::out_of_range("detail level out of range");
  if (idx.pos >= shape.level_count(idx.level)) throw std::out_of_range("detail position out of range");
  return (std::size_t{1} << idx.level) + idx.pos + 1;
}

namespace {

void check(const WaveletFilter& filter, const TransformShape& shape) {
  if ((std::size_t{1} << (shape.coarsest + 1)) < filter.length())
    throw std::invalid_argument("coarsest level too deep for filter '" + filter.name +
                                "': need 2^(J0+1) >= " + std::to_string(filter.length()));
}

// One periodized analysis step: a (length N) -> approx/detail (length N/2).
void analysis_step(std::span<const double> a, const std::vector<double>& h,
                   const std::vector<double>& g, std::span<double> s,
                   std::span<double> d) {
  const std::size_t N = a.size(), L = h.size();
  for (std::size_t k = 0; k < N / 2; ++k) {
    double sv = 0.0, dv = 0.0;
    for (std::size_t m = 0; m < L; ++m) {
      const double x = a[(2 * k + m) % N];
      sv += h[m] * x;
      dv += g[m] * x;
    }
    s[k] = sv;
    d[k] = dv;
  }
}

void synthesis_step(std::span<const double> s, std::span<const double> d,
                    const std::vector<double>& h, const std::vector<double>& g,
                    std::span<double> a) {
  const std::size_t N = a.size(), L = h.size();
  for (std::size_t i = 0; i < N; ++i) a[i] = 0.0;
  for (std::size_t k = 0; k < N / 2; ++k) {
    for (std::size_t m = 0; m < L; ++m) {
      a[(2 * k + m) % N] += h[m] * s[k] + g[m] * d[k];
    }
  }
}

}  // namespace

CoefficientVector dwt_forward(std::span<const double> samples,
                              const WaveletFilter& filter,
                              const TransformShape& shape) {
  if (samples.size() != shape.n) throw std::invalid_argument("sample length does not match shape");
  check(filter, shape);
  const std::vector<double> g = filter.highpass();

  CoefficientVector out;
  out.shape = shape;
  out.values.assign(shape.n, 0.0);

  std::vector<double> approx(samples.begin(), samples.end());
  std::vector<double> next;
  for (int j = shape.finest - 1; j >= shape.coarsest; --j) {
    const std::size_t half = std::size_t{1} << j;
    next.assign(half, 0.0);
    analysis_step(approx, filter.lowpass, g, next, out.level(j));
    approx = next;
  }
  std::copy(approx.begin(), approx.end(), out.values.begin());
  return out;
}

std::vector<double> dwt_inverse(const CoefficientVector& coeffs,
                                const WaveletFilter& filter) {
  const TransformShape& shape = coeffs.shape;
  if (coeffs.values.size() != shape.n) throw std::invalid_argument("coefficient length does not match shape");
  check(filter, shape);
  const std::vector<double> g = filter.highpass();

  std::vector<double> approx(coeffs.scaling().begin(), coeffs.scaling().end());
  std::vector<double> next;
  for (int j = shape.coarsest; j < shape.finest; ++j) {
    next.assign(std::size_t{1} << (j + 1), 0.0);
    synthesis_step(approx, coeffs.level(j), filter.lowpass, g, next);
    approx = next;
  }
  return approx;
}

}  // namespace wavecb
