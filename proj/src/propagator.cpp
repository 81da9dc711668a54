#include "beam/propagator.hpp"

#include <algorithm>
#include <cmath>

#include "beam/multiplier.hpp"
#include "util.hpp"

namespace beam {

BeamState make_state(const Field& f, const Field& g) {
  if (!(f.grid == g.grid)) throw ConfigError("make_state: grids differ");
  return BeamState{to_spectrum(f), to_spectrum(g)};
}

void Trajectory::validate() const {
  if (times.size() != states.size() || times.empty())
    throw ConfigError("Trajectory: times and states must align and be non-empty");
  for (std::size_t i = 1; i < times.size(); ++i)
    if (!(times[i] > times[i - 1])) throw ConfigError("Trajectory: times must increase strictly");
}

const BeamState& Trajectory::at_time(double t, double tol) const {
  for (std::size_t i = 0; i < times.size(); ++i)
    if (std::abs(times[i] - t) <= tol) return states[i];
  throw ConfigError("Trajectory: no state at requested time");
}

double cos_symbol(double t, double rho) { return std::cos(t * rho); }

double sinc_symbol(double t, double rho) {
  if (rho == 0.0) return t;
  return std::sin(t * rho) / rho;
}

double dsin_symbol(double t, double rho) { return -rho * std::sin(t * rho); }

BeamState linear_evolve(const BeamState& s, double t, double mu) {
  if (!(s.u.grid == s.v.grid)) throw ConfigError("linear_evolve: component grids differ");
  const auto& g = s.u.grid;
  BeamState out{Spectrum{g, cvec(g.size()), s.u.real_tagged && s.v.real_tagged},
                Spectrum{g, cvec(g.size()), s.u.real_tagged && s.v.real_tagged}};
  const std::size_t sz = g.size();
  for (std::size_t i = 0; i < sz; ++i) {
    double ph = mu * g.rho(i);
    double c = cos_symbol(t, ph);
    double st = sinc_symbol(t, ph);
    double d = dsin_symbol(t, ph);
    out.u.c[i] = c * s.u.c[i] + st * s.v.c[i];
    out.v.c[i] = d * s.u.c[i] + c * s.v.c[i];
  }
  return out;
}

namespace {

// linear interpolation of the forcing series at time s
void interp_forcing(const ForcingSeries& f, double s, cvec& out) {
  const auto& ts = f.times;
  std::size_t hi = 1;
  while (hi < ts.size() - 1 && ts[hi] < s) ++hi;
  std::size_t lo = hi - 1;
  double span = ts[hi] - ts[lo];
  double w = span > 0.0 ? (s - ts[lo]) / span : 0.0;
  w = std::clamp(w, 0.0, 1.0);
  const auto& a = f.values[lo].c;
  const auto& b = f.values[hi].c;
  out.resize(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = (1.0 - w) * a[i] + w * b[i];
}

}  // namespace

std::pair<Spectrum, Spectrum> duhamel_integral(const ForcingSeries& forcing, double t,
                                               DuhamelQuad quad, double mu) {
  if (forcing.times.empty() || forcing.values.empty())
    throw ConfigError("duhamel_integral: empty forcing series");
  if (forcing.times.size() != forcing.values.size())
    throw ConfigError("duhamel_integral: times and values must align");
  if (!(t >= 0.0)) throw ConfigError("duhamel_integral: t must be >= 0");
  if (forcing.times.front() > 0.0 || forcing.times.back() < t)
    throw ConfigError("duhamel_integral: series does not cover [0, t]");
  if (quad.gl_order < 1 || quad.panels_per_unit < 1)
    throw ConfigError("duhamel_integral: quadrature orders must be positive");

  const auto& g = forcing.values.front().grid;
  bool rt = true;
  for (const auto& v : forcing.values) rt = rt && v.real_tagged;
  Spectrum iu = make_zero_spectrum(g, rt);
  Spectrum iv = make_zero_spectrum(g, rt);
  if (t == 0.0) return {iu, iv};

  int panels = std::max(1, int(std::ceil(t * quad.panels_per_unit)));
  std::vector<double> qx, qw;
  detail::gauss_legendre_unit(quad.gl_order, qx, qw);

  cvec fs;
  const std::size_t sz = g.size();
  const double h = t / panels;
  for (int p = 0; p < panels; ++p) {
    double s0 = p * h;
    for (int q = 0; q < quad.gl_order; ++q) {
      double s = s0 + qx[q] * h;
      double w = qw[q] * h;
      interp_forcing(forcing, s, fs);
      double dt_ker = t - s;
      for (std::size_t i = 0; i < sz; ++i) {
        double ph = mu * g.rho(i);
        iu.c[i] += w * sinc_symbol(dt_ker, ph) * fs[i];
        iv.c[i] += w * cos_symbol(dt_ker, ph) * fs[i];
      }
    }
  }
  return {iu, iv};
}

std::vector<double> per_mode_energy(const BeamState& s) {
  const auto& g = s.u.grid;
  std::vector<double> e(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    double rho = g.rho(i);
    e[i] = std::norm(s.v.c[i]) + rho * rho * std::norm(s.u.c[i]);
  }
  return e;
}

double linear_energy(const BeamState& s) {
  auto e = per_mode_energy(s);
  double acc = 0.0;
  for (double x : e) acc += x;
  double vol = s.u.grid.n == 1 ? s.u.grid.L : s.u.grid.L * s.u.grid.L;
  return vol * acc;
}

double full_energy(const BeamState& s, double kappa, double omega) {
  const auto& g = s.u.grid;
  // quadratic part in frequency space, potential part on samples
  double quad = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    double rho = g.rho(i);
    quad += 0.5 * std::norm(s.v.c[i]) + 0.5 * rho * rho * std::norm(s.u.c[i]);
  }
  double vol = g.n == 1 ? g.L : g.L * g.L;
  Field uf = from_spectrum(s.u);
  double cell = std::pow(g.dx(), g.n);
  double pot = 0.0;
  for (const auto& a : uf.a) pot += std::pow(std::abs(a), kappa + 1.0);
  return vol * quad - omega / (kappa + 1.0) * cell * pot;
}

double validity_window(const BeamState& s) {
  const auto& g = s.u.grid;
  double cmax = 0.0;
  for (const auto& c : s.u.c) cmax = std::max(cmax, std::abs(c));
  for (const auto& c : s.v.c) cmax = std::max(cmax, std::abs(c));
  double xi_occ = 0.0;
  if (cmax > 0.0) {
    for (std::size_t i = 0; i < g.size(); ++i) {
      if (std::abs(s.u.c[i]) > 1e-13 * cmax || std::abs(s.v.c[i]) > 1e-13 * cmax)
        xi_occ = std::max(xi_occ, std::sqrt(g.rho(i)));
    }
  }
  if (xi_occ == 0.0) xi_occ = g.xi_max();
  return g.L / (4.0 * xi_occ);
}

Spectrum annulus_bump_data(const GridSpec& g, double eps) {
  if (!(eps > 0.0)) throw ConfigError("annulus_bump_data: eps must be positive");
  Spectrum s = make_zero_spectrum(g, true);
  const double e2 = eps * eps;
  for (std::size_t i = 0; i < g.size(); ++i) {
    double rho = g.rho(i);
    double up = detail::smoothstep_cinf((rho - 0.5 * e2) / (0.25 * e2));
    double dn = detail::smoothstep_cinf((1.5 * e2 - rho) / (0.25 * e2));
    s.c[i] = up * dn;
  }
  return s;
}

GrowthReport counterexample_growth(const GridSpec& g, const std::vector<double>& eps_list,
                                   double s) {
  g.validate();
  if (eps_list.empty()) throw ConfigError("counterexample_growth: empty eps list");
  GrowthReport rep;
  std::vector<double> lx, lyp, lyd;
  for (double eps : eps_list) {
    Spectrum ge = annulus_bump_data(g, eps);
    int modes = 0;
    const double e2 = eps * eps;
    for (std::size_t i = 0; i < g.size(); ++i) {
      double rho = g.rho(i);
      if (rho >= 0.5 * e2 && rho <= 1.5 * e2) ++modes;
    }
    if (modes < 8)
      throw ConfigError("counterexample_growth: grid resolves fewer than 8 annulus modes at eps=" +
                        std::to_string(eps));
    double t_star = 0.5 * std::numbers::pi / e2;
    BeamState st{make_zero_spectrum(g, true), ge};
    BeamState ev = linear_evolve(st, t_star);
    double num = sobolev_norm(ev.u, {s, SobolevFlavor::inhomogeneous});
    double den_proof = sobolev_norm(ge, {s - 2.0, SobolevFlavor::inhomogeneous});
    double den_disp = sobolev_norm(ge, {s, SobolevFlavor::inhomogeneous});
    GrowthRow row{eps, t_star, num / den_proof, num / den_disp, modes};
    rep.rows.push_back(row);
    lx.push_back(std::log(eps));
    lyp.push_back(std::log(row.ratio_proof));
    lyd.push_back(std::log(row.ratio_display));
  }
  if (eps_list.size() >= 2) {
    rep.slope_proof = detail::regression_slope(lx, lyp);
    rep.slope_display = detail::regression_slope(lx, lyd);
  }
  return rep;
}

}  // namespace beam
