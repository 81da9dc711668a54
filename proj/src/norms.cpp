#include "beam/norms.hpp"

#include <algorithm>
#include <cmath>

namespace beam {

namespace {

double ln_volume_factor(const GridSpec& g) { return g.n == 1 ? g.L : g.L * g.L; }

}  // namespace

double sobolev_norm(const Spectrum& s, NormSpec spec) {
  if (!std::isfinite(spec.s)) throw ConfigError("sobolev_norm: s must be finite");
  const auto& g = s.grid;
  const std::size_t sz = g.size();

  if (spec.flavor == SobolevFlavor::homogeneous && spec.s < 0.0) {
    double c0 = std::abs(s.c[0]);
    double total = 0.0;
    for (const auto& v : s.c) total += std::norm(v);
    if (c0 > 1e-12 * std::sqrt(total))
      throw NumericError("sobolev_norm: homogeneous norm with s<0 needs a mean-zero field");
  }

  double acc = 0.0;
  for (std::size_t i = 0; i < sz; ++i) {
    double rho = g.rho(i);
    double w;
    if (spec.flavor == SobolevFlavor::inhomogeneous) {
      w = std::pow(1.0 + rho, spec.s);
    } else if (rho == 0.0) {
      w = (spec.s == 0.0) ? 1.0 : 0.0;
    } else {
      w = std::pow(rho, spec.s);
    }
    acc += w * std::norm(s.c[i]);
  }
  return std::sqrt(ln_volume_factor(g) * acc);
}

double sobolev_norm(const Field& f, NormSpec spec) { return sobolev_norm(to_spectrum(f), spec); }

double lebesgue_norm(const Field& f, double r) {
  if (r == kInf) return max_abs(f);
  if (!(r >= 1.0)) throw ConfigError("lebesgue_norm: r must be >= 1 or inf");
  const double cell = std::pow(f.grid.dx(), f.grid.n);
  double acc = 0.0;
  for (const auto& v : f.a) acc += std::pow(std::abs(v), r);
  return std::pow(cell * acc, 1.0 / r);
}

double spacetime_norm(const std::vector<double>& times, const std::vector<Field>& fields,
                      double p, double r) {
  if (times.size() != fields.size() || times.empty())
    throw ConfigError("spacetime_norm: times and fields must align and be non-empty");
  for (std::size_t i = 1; i < times.size(); ++i)
    if (!(times[i] > times[i - 1]))
      throw ConfigError("spacetime_norm: times must be strictly increasing");

  if (p == kInf) {
    double m = 0.0;
    for (const auto& f : fields) m = std::max(m, lebesgue_norm(f, r));
    return m;
  }
  if (!(p >= 1.0)) throw ConfigError("spacetime_norm: p must be >= 1 or inf");
  if (times.size() < 2) throw ConfigError("spacetime_norm: finite p needs >= 2 time samples");

  std::vector<double> ap(times.size());
  for (std::size_t i = 0; i < times.size(); ++i) ap[i] = std::pow(lebesgue_norm(fields[i], r), p);
  double acc = 0.0;
  for (std::size_t i = 1; i < times.size(); ++i)
    acc += 0.5 * (ap[i] + ap[i - 1]) * (times[i] - times[i - 1]);
  return std::pow(acc, 1.0 / p);
}

}  // namespace beam
