#pragma once
#include <cstdint>
#include <random>

#include "beam/field.hpp"

namespace beam {

// Deterministic standard-normal stream: mt19937_64 seeded directly, mapped through
// Box-Muller. std::normal_distribution is implementation-defined, so using it would
// make report bytes depend on the standard library; this stream produces the same
// doubles on every platform.
class GaussianStream {
 public:
  explicit GaussianStream(std::uint64_t seed) : rng_(seed) {}

  // uniform in (0, 1], 53-bit mantissa
  double uniform01() { return double((rng_() >> 11) + 1) * 0x1p-53; }

  double normal();

 private:
  std::mt19937_64 rng_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

// Real random field supported on the frequency band lo <= |xi| <= hi. Convention
// (fixed so a seed pins the field): visit flat indices ascending, draw Re then Im
// for each in-band mode, multiply by a smooth envelope vanishing at the band edges,
// conjugate-symmetrize, transform, normalize to max |f| = amp. The zero mode stays
// empty, so the field is mean-free.
Field random_band_field(const GridSpec& g, double lo, double hi, double amp,
                        std::uint64_t seed);

// amp * exp(-decay * |y|^2), y the componentwise distance to the origin on the torus
Field gaussian_data(const GridSpec& g, double amp, double decay = 1.0);

}  // namespace beam
