#pragma once
#include "beam/field.hpp"

namespace beam {

// Frequency point handed to multiplier callables: the lattice frequency vector and rho = |xi|^2.
struct FreqPoint {
  std::array<double, 2> xi;
  double rho;
};

// Apply a Fourier multiplier m(xi) in place: c_k <- m(xi_k) c_k.
// m returns cplx (or double, implicitly converted). Real even multipliers preserve the real tag;
// callers that apply complex or odd multipliers should clear it via the drop_real_tag argument.
template <class M>
void apply_multiplier_inplace(Spectrum& s, M&& m, bool drop_real_tag = false) {
  const std::size_t sz = s.grid.size();
  for (std::size_t i = 0; i < sz; ++i) {
    auto f = s.grid.freq(i);
    s.c[i] *= cplx(m(FreqPoint{f, f[0] * f[0] + f[1] * f[1]}));
  }
  if (drop_real_tag) s.real_tagged = false;
}

template <class M>
Spectrum apply_multiplier(const Spectrum& s, M&& m, bool drop_real_tag = false) {
  Spectrum r = s;
  apply_multiplier_inplace(r, std::forward<M>(m), drop_real_tag);
  return r;
}

}  // namespace beam
