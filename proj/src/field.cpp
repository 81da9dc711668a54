#include "beam/field.hpp"

#include <algorithm>
#include <cmath>

#include "fft.hpp"

namespace beam {

Field make_zero_field(const GridSpec& g, bool real_tagged) {
  g.validate();
  return Field{g, cvec(g.size(), cplx(0.0, 0.0)), real_tagged};
}

Spectrum make_zero_spectrum(const GridSpec& g, bool real_tagged) {
  g.validate();
  return Spectrum{g, cvec(g.size(), cplx(0.0, 0.0)), real_tagged};
}

Spectrum to_spectrum(const Field& f) {
  Spectrum s{f.grid, {}, f.real_tagged};
  detail::dft(f.grid, f.a, s.c, -1);
  double scale = 1.0 / double(f.grid.size());
  for (auto& v : s.c) v *= scale;
  return s;
}

Field from_spectrum(const Spectrum& s) {
  Field f{s.grid, {}, s.real_tagged};
  detail::dft(s.grid, s.c, f.a, +1);
  return f;
}

double real_tag_defect(const Field& f) {
  double m = 0.0;
  for (const auto& v : f.a) m = std::max(m, std::abs(v.imag()));
  return m;
}

double real_tag_defect(const Spectrum& s) {
  // conjugate symmetry c_{-k} = conj(c_k); -k maps to storage index (N - j) mod N per axis
  const int N = s.grid.N;
  double m = 0.0;
  auto flip = [N](int j) { return j == 0 ? 0 : N - j; };
  if (s.grid.n == 1) {
    for (int j = 0; j < N; ++j)
      m = std::max(m, std::abs(s.c[j] - std::conj(s.c[flip(j)])));
  } else {
    for (int j1 = 0; j1 < N; ++j1)
      for (int j2 = 0; j2 < N; ++j2)
        m = std::max(m, std::abs(s.c[std::size_t(j1) * N + j2] -
                                 std::conj(s.c[std::size_t(flip(j1)) * N + flip(j2)])));
  }
  return m;
}

Spectrum axpy(const Spectrum& x, const Spectrum& y, cplx alpha) {
  if (!(x.grid == y.grid)) throw ConfigError("axpy: grids differ");
  Spectrum r{x.grid, cvec(x.c.size()), x.real_tagged && y.real_tagged && alpha.imag() == 0.0};
  for (std::size_t i = 0; i < x.c.size(); ++i) r.c[i] = alpha * x.c[i] + y.c[i];
  return r;
}

double max_abs(const Field& f) {
  double m = 0.0;
  for (const auto& v : f.a) m = std::max(m, std::abs(v));
  return m;
}

double max_abs_diff(const Field& f, const Field& g) {
  if (!(f.grid == g.grid)) throw ConfigError("max_abs_diff: grids differ");
  double m = 0.0;
  for (std::size_t i = 0; i < f.a.size(); ++i) m = std::max(m, std::abs(f.a[i] - g.a[i]));
  return m;
}

}  // namespace beam
