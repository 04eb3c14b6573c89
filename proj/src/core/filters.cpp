#include "core/filters.hpp"

#include <stdexcept>

namespace wavecb {
namespace {

// Least-asymmetric (symmlet) lowpass taps, refined to full double precision by
// Newton iteration on the orthonormality and vanishing-moment conditions.
const std::vector<double> kHaar = {
    0.70710678118654752440,
    0.70710678118654752440,
};

const std::vector<double> kSym8Tap = {
    -0.075765714789502213228, -0.029635527646002491764,
    0.49761866763277498998,   0.80373875180513208088,
    0.29785779560530605140,   -0.099219543576633532585,
    -0.012603967262031303754, 0.032223100604051467872,
};

const std::vector<double> kSym16Tap = {
    -0.0033824159510050025955, -0.00054213233180001068935,
    0.031695087811525991431,   0.0076074873249766081919,
    -0.14329423835127266284,   -0.061273359067811077843,
    0.48135965125905339159,    0.77718575169962802862,
    0.36444189483617893676,    -0.051945838107881800736,
    -0.027219029917103486322,  0.049137179673730286787,
    0.0038087520138944894631,  -0.014952258337062199118,
    -0.00030292051472413308126, 0.0018899503327676891843,
};

}  // namespace

std::vector<double> WaveletFilter::highpass() const {
  const std::size_t L = lowpass.size();
  std::vector<double> g(L);
  for (std::size_t m = 0; m < L; ++m) {
    const double h = lowpass[L - 1 - m];
    g[m] = (m % 2 == 0) ? h : -h;
  }
  return g;
}

WaveletFilter WaveletFilter::from_name(std::string_view name) {
  if (name == "haar") return {"haar", kHaar};
  if (name == "s8") return {"s8", kSym8Tap};
  if (name == "s16") return {"s16", kSym16Tap};
  throw std::invalid_argument("unknown wavelet filter: " + std::string(name));
}

}  // namespace wavecb
