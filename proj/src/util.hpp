#pragma once
#include <cmath>
#include <numbers>
#include <vector>

// Internal numeric helpers shared across modules.
namespace beam::detail {

// Gauss-Legendre nodes/weights on [0,1] by Newton iteration on Legendre polynomials.
inline void gauss_legendre_unit(int order, std::vector<double>& x, std::vector<double>& w) {
  x.resize(order);
  w.resize(order);
  for (int i = 0; i < order; ++i) {
    double t = std::cos(std::numbers::pi * (i + 0.75) / (order + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = t;
      for (int j = 2; j <= order; ++j) {
        double p2 = ((2.0 * j - 1.0) * t * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      pp = order * (t * p1 - p0) / (t * t - 1.0);
      double dt = p1 / pp;
      t -= dt;
      if (std::abs(dt) < 1e-15) break;
    }
    x[order - 1 - i] = 0.5 * (1.0 + t);
    w[order - 1 - i] = 1.0 / ((1.0 - t * t) * pp * pp);
  }
}

// C-infinity transition 0 -> 1 on [0, 1]
inline double smoothstep_cinf(double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  double a = std::exp(-1.0 / x);
  double b = std::exp(-1.0 / (1.0 - x));
  return a / (a + b);
}

// least-squares slope of y against x
inline double regression_slope(const std::vector<double>& x, const std::vector<double>& y) {
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= double(x.size());
  my /= double(x.size());
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  return sxy / sxx;
}

}  // namespace beam::detail
