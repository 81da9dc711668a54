#pragma once
#include <array>
#include <cmath>
#include <cstddef>
#include <numbers>

#include "beam/errors.hpp"

namespace beam {

// Uniform periodic grid on [0,L)^n, n = 1 or 2, N samples per axis.
// Lattice frequencies per axis: xi_k = 2*pi*k/L with k in {-N/2, ..., N/2-1},
// stored in FFT order (index j maps to k = j for j < N/2, else j - N).
struct GridSpec {
  int n = 1;
  int N = 64;
  double L = 2.0 * std::numbers::pi;

  void validate() const {
    if (n != 1 && n != 2) throw ConfigError("GridSpec: n must be 1 or 2");
    if (N < 16 || (N & (N - 1)) != 0) throw ConfigError("GridSpec: N must be a power of two >= 16");
    if (!(L > 0.0) || !std::isfinite(L)) throw ConfigError("GridSpec: L must be positive");
  }

  std::size_t size() const { return n == 1 ? std::size_t(N) : std::size_t(N) * N; }
  double dx() const { return L / N; }

  // signed integer mode for storage index j on one axis
  int mode(int j) const { return j < N / 2 ? j : j - N; }
  double xi(int j) const { return 2.0 * std::numbers::pi * mode(j) / L; }
  double xi_max() const { return std::numbers::pi * N / L; }  // |xi| of the -N/2 mode

  // frequency vector and |xi|^2 for a flat storage index (row-major when n=2)
  std::array<double, 2> freq(std::size_t idx) const {
    if (n == 1) return {xi(int(idx)), 0.0};
    return {xi(int(idx / N)), xi(int(idx % N))};
  }
  double rho(std::size_t idx) const {
    auto f = freq(idx);
    return f[0] * f[0] + f[1] * f[1];
  }

  // physical coordinates of sample idx
  std::array<double, 2> coord(std::size_t idx) const {
    if (n == 1) return {dx() * double(idx), 0.0};
    return {dx() * double(idx / N), dx() * double(idx % N)};
  }

  bool operator==(const GridSpec&) const = default;
};

}  // namespace beam
