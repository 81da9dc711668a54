#include "beam/random_fields.hpp"

#include <cmath>
#include <numbers>

#include "util.hpp"

namespace beam {

double GaussianStream::normal() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  double u1 = uniform01();
  double u2 = uniform01();
  double r = std::sqrt(-2.0 * std::log(u1));
  double th = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(th);
  have_spare_ = true;
  return r * std::cos(th);
}

Field random_band_field(const GridSpec& g, double lo, double hi, double amp,
                        std::uint64_t seed) {
  g.validate();
  if (!(0.0 <= lo && lo < hi)) throw ConfigError("random_band_field: need 0 <= lo < hi");
  if (!(amp > 0.0)) throw ConfigError("random_band_field: amp must be positive");

  const double taper = 0.25 * (hi - lo);
  auto envelope = [&](double xi) {
    return detail::smoothstep_cinf((xi - lo) / taper) *
           detail::smoothstep_cinf((hi - xi) / taper);
  };

  GaussianStream gs(seed);
  Spectrum s = make_zero_spectrum(g, true);
  for (std::size_t i = 1; i < g.size(); ++i) {
    double xi = std::sqrt(g.rho(i));
    if (xi < lo || xi > hi) continue;
    double re = gs.normal();
    double im = gs.normal();
    s.c[i] = envelope(xi) * cplx(re, im);
  }

  // enforce c_{-k} = conj(c_k); self-conjugate modes (k_j in {0, N/2}) become real
  auto flip = [&](std::size_t i) -> std::size_t {
    if (g.n == 1) return std::size_t((g.N - int(i)) % g.N);
    int j0 = int(i) / g.N, j1 = int(i) % g.N;
    return std::size_t(((g.N - j0) % g.N) * g.N + (g.N - j1) % g.N);
  };
  for (std::size_t i = 0; i < g.size(); ++i) {
    std::size_t j = flip(i);
    if (j < i) continue;
    cplx h = 0.5 * (s.c[i] + std::conj(s.c[j]));
    s.c[i] = (i == j) ? cplx(h.real(), 0.0) : h;
    if (i != j) s.c[j] = std::conj(h);
  }

  Field f = from_spectrum(s);
  double m = max_abs(f);
  if (!(m > 0.0)) throw ConfigError("random_band_field: band contains no grid modes");
  for (auto& a : f.a) a *= amp / m;
  return f;
}

Field gaussian_data(const GridSpec& g, double amp, double decay) {
  g.validate();
  if (!(amp > 0.0) || !(decay > 0.0))
    throw ConfigError("gaussian_data: amp and decay must be positive");
  Field f = make_zero_field(g, true);
  for (std::size_t i = 0; i < g.size(); ++i) {
    auto x = g.coord(i);
    double r2 = 0.0;
    for (int d = 0; d < g.n; ++d) {
      double y = std::min(x[d], g.L - x[d]);
      r2 += y * y;
    }
    f.a[i] = amp * std::exp(-decay * r2);
  }
  return f;
}

}  // namespace beam
