#include "beam/dispersion.hpp"

#include <algorithm>
#include <array>
#include <boost/numeric/odeint.hpp>
#include <cmath>
#include <string>

#include "util.hpp"

namespace beam {

namespace {

constexpr double kNodeStep = 0.01;

double oscillator_rhs(double c, double kappa) {
  return -std::pow(std::abs(c), kappa - 1.0) * c;
}

// two-point quintic Hermite on a unit cell; d* and a* are the first and second
// derivatives already scaled by h and h^2
double quintic(double u, double f0, double d0, double a0, double f1, double d1, double a1) {
  const double u2 = u * u, u3 = u2 * u, u4 = u3 * u, u5 = u4 * u;
  return f0 * (1.0 - 10.0 * u3 + 15.0 * u4 - 6.0 * u5) +
         d0 * (u - 6.0 * u3 + 8.0 * u4 - 3.0 * u5) +
         a0 * (0.5 * u2 - 1.5 * u3 + 1.5 * u4 - 0.5 * u5) +
         f1 * (10.0 * u3 - 15.0 * u4 + 6.0 * u5) + d1 * (-4.0 * u3 + 7.0 * u4 - 3.0 * u5) +
         a1 * (0.5 * u3 - u4 + 0.5 * u5);
}

struct CellRef {
  std::size_t i;   // left node index in |tau| units
  double u;        // position inside the cell
  double sgn;      // +1 forward branch, -1 backward branch
  const std::vector<double>* c;
  const std::vector<double>* cp;
};

CellRef locate(const OdeProfile& p, double tau) {
  const double a = std::abs(tau);
  if (a > p.tau_max + 1e-12)
    throw ConfigError("profile evaluated at |tau| = " + std::to_string(a) +
                      " beyond its range " + std::to_string(p.tau_max));
  const bool fwd = tau >= 0.0;
  const auto& cs = fwd ? p.c_fwd : p.c_bwd;
  const auto& ds = fwd ? p.cp_fwd : p.cp_bwd;
  std::size_t i = std::min(std::size_t(a / p.h), cs.size() - 2);
  return {i, a / p.h - double(i), fwd ? 1.0 : -1.0, &cs, &ds};
}

}  // namespace

// Interpolates C as a function of a = |tau| on the matching branch. On the
// backward branch d/da = -d/dtau, hence the sign on the odd derivatives.
double OdeProfile::eval_c(double tau) const {
  const CellRef r = locate(*this, tau);
  const double c0 = (*r.c)[r.i], c1 = (*r.c)[r.i + 1];
  const double d0 = r.sgn * (*r.cp)[r.i], d1 = r.sgn * (*r.cp)[r.i + 1];
  return quintic(r.u, c0, d0 * h, oscillator_rhs(c0, kappa) * h * h, c1, d1 * h,
                 oscillator_rhs(c1, kappa) * h * h);
}

double OdeProfile::eval_cp(double tau) const {
  const CellRef r = locate(*this, tau);
  const double c0 = (*r.c)[r.i], c1 = (*r.c)[r.i + 1];
  const double p0 = (*r.cp)[r.i], p1 = (*r.cp)[r.i + 1];
  // interpolating g(a) = C'(sgn a): g' = sgn C'', g'' = C''' = -kappa |C|^{kappa-1} C'
  const double g0p = r.sgn * oscillator_rhs(c0, kappa), g1p = r.sgn * oscillator_rhs(c1, kappa);
  const double g0a = -kappa * std::pow(std::abs(c0), kappa - 1.0) * p0;
  const double g1a = -kappa * std::pow(std::abs(c1), kappa - 1.0) * p1;
  return quintic(r.u, p0, g0p * h, g0a * h * h, p1, g1p * h, g1a * h * h);
}

namespace {

double bisect_cp_zero(const OdeProfile& p, double lo, double hi) {
  double flo = p.eval_cp(lo);
  for (int it = 0; it < 100; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fm = p.eval_cp(mid);
    if (fm == 0.0) return mid;
    if ((flo < 0.0) == (fm < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

OdeProfile solve_profile_ode(double kappa, double tau_max, double tol) {
  if (!(kappa > 1.0)) throw ConfigError("profile: kappa must be > 1");
  if (!(tau_max > 0.0) || !std::isfinite(tau_max))
    throw ConfigError("profile: tau_max must be positive");
  if (!(tol > 0.0) || tol > 1e-4) throw ConfigError("profile: tol must be in (0, 1e-4]");

  OdeProfile prof;
  prof.kappa = kappa;
  prof.h = kNodeStep;
  const std::size_t cells = std::size_t(std::ceil(tau_max / kNodeStep - 1e-12));
  prof.tau_max = double(cells) * kNodeStep;
  prof.H0 = 1.0 / (kappa + 1.0);

  using state_type = std::array<double, 2>;
  auto rhs = [kappa](const state_type& y, state_type& dy, double) {
    dy[0] = y[1];
    dy[1] = oscillator_rhs(y[0], kappa);
  };

  // integrate_const with a controlled stepper lands on every node exactly, so
  // node values carry the integrator tolerance rather than interpolant error
  auto run_side = [&](double dir, std::vector<double>& cs, std::vector<double>& ds) {
    cs.clear();
    ds.clear();
    cs.reserve(cells + 1);
    ds.reserve(cells + 1);
    state_type y{1.0, 0.0};
    auto stepper = boost::numeric::odeint::make_controlled(
        tol, tol, boost::numeric::odeint::runge_kutta_dopri5<state_type>());
    try {
      boost::numeric::odeint::integrate_const(
          stepper, rhs, y, 0.0, dir * (double(cells) + 0.5) * kNodeStep, dir * kNodeStep,
          [&](const state_type& yy, double) {
            if (cs.size() <= cells) {
              cs.push_back(yy[0]);
              ds.push_back(yy[1]);
            }
          });
    } catch (const std::exception& e) {
      throw NumericError(std::string("profile integration failed: ") + e.what());
    }
    if (cs.size() != cells + 1) throw NumericError("profile integration produced a short table");
  };
  run_side(+1.0, prof.c_fwd, prof.cp_fwd);
  run_side(-1.0, prof.c_bwd, prof.cp_bwd);

  for (const auto* side : {&prof.c_fwd, &prof.c_bwd}) {
    const auto& ds = side == &prof.c_fwd ? prof.cp_fwd : prof.cp_bwd;
    for (std::size_t i = 0; i < side->size(); ++i) {
      const double H =
          0.5 * ds[i] * ds[i] + std::pow(std::abs((*side)[i]), kappa + 1.0) / (kappa + 1.0);
      prof.max_h_drift = std::max(prof.max_h_drift, std::abs(H - prof.H0));
    }
  }

  // C'(0) = 0 by construction; the next two zeros of C' sit half a period apart
  std::vector<double> zeros;
  for (std::size_t i = 1; i + 1 <= cells && zeros.size() < 2; ++i) {
    const double a = prof.cp_fwd[i], b = prof.cp_fwd[i + 1];
    if (a == 0.0)
      zeros.push_back(double(i) * prof.h);
    else if (a * b < 0.0)
      zeros.push_back(bisect_cp_zero(prof, double(i) * prof.h, double(i + 1) * prof.h));
  }
  if (zeros.size() == 2) prof.period = 2.0 * (zeros[1] - zeros[0]);
  return prof;
}

Field bump_power_data(const GridSpec& g, double amp, double width, int l) {
  g.validate();
  if (!(amp > 0.0) || !(width > 0.0)) throw ConfigError("bump: amp and width must be positive");
  if (l < 1) throw ConfigError("bump: l must be a positive integer");
  Field out = make_zero_field(g, true);
  for (std::size_t i = 0; i < g.size(); ++i) {
    const auto x = g.coord(i);
    double r2 = 0.0;
    for (int ax = 0; ax < g.n; ++ax) {
      const double y = std::min(x[std::size_t(ax)], g.L - x[std::size_t(ax)]);
      r2 += y * y;
    }
    out.a[i] = std::pow(amp * std::exp(-0.5 * r2 / (width * width)), 2.0 * l);
  }
  return out;
}

namespace {

double max_clock_rate(const Field& phi0, double kappa) {
  double q = 0.0;
  for (const cplx& a : phi0.a) q = std::max(q, std::abs(a));
  return std::pow(q, 0.5 * (kappa - 1.0));
}

}  // namespace

Field ode_solution_field(const Field& phi0, const OdeProfile& profile, double tau) {
  if (std::abs(tau) * max_clock_rate(phi0, profile.kappa) > profile.tau_max + 1e-12)
    throw ConfigError("profile range exceeded; rebuild it with tau_max >= " +
                      std::to_string(std::abs(tau) * max_clock_rate(phi0, profile.kappa)));
  Field out = phi0;
  for (std::size_t i = 0; i < out.a.size(); ++i) {
    const double q = std::pow(std::abs(phi0.a[i]), 0.5 * (profile.kappa - 1.0));
    out.a[i] = profile.eval_c(q * tau) * phi0.a[i];
  }
  return out;
}

Field ode_solution_rate(const Field& phi0, const OdeProfile& profile, double tau) {
  if (std::abs(tau) * max_clock_rate(phi0, profile.kappa) > profile.tau_max + 1e-12)
    throw ConfigError("profile range exceeded; rebuild it with tau_max >= " +
                      std::to_string(std::abs(tau) * max_clock_rate(phi0, profile.kappa)));
  Field out = phi0;
  for (std::size_t i = 0; i < out.a.size(); ++i) {
    const double q = std::pow(std::abs(phi0.a[i]), 0.5 * (profile.kappa - 1.0));
    out.a[i] = profile.eval_cp(q * tau) * q * phi0.a[i];
  }
  return out;
}

Trajectory small_dispersion_solve(const Field& phi0, const SmallDispersionRun& cfg) {
  if (!phi0.real_tagged)
    throw ConfigError("small-dispersion runs are real-valued; data must be real-tagged");
  if (!(cfg.nu >= 0.0) || !std::isfinite(cfg.nu)) throw ConfigError("nu must be >= 0");
  SplitConfig sc;
  sc.kappa = cfg.kappa;
  sc.omega = -1.0;  // this module is defocusing-only
  sc.T = cfg.tau_max;
  sc.dt = cfg.dt;
  sc.mu = cfg.nu * cfg.nu;
  sc.record_stride = cfg.record_stride;
  sc.dealias = cfg.dealias;
  return split_solve(make_state(phi0, make_zero_field(phi0.grid, true)), sc);
}

namespace {

void check_closeness_config(const GridSpec& g, const ClosenessConfig& cfg) {
  if (cfg.k < 1 || 2 * cfg.k <= g.n)
    throw ConfigError("closeness: k must be a positive integer exceeding n/2");
  if (!(cfg.kappa > 1.0)) throw ConfigError("closeness: kappa must be > 1");
  if (!(cfg.tau_max > 0.0)) throw ConfigError("closeness: tau_max must be positive");
  if (cfg.tau_samples < 1) throw ConfigError("closeness: tau_samples must be >= 1");
  const long nsteps = std::lround(cfg.tau_max / cfg.dt);
  if (nsteps < cfg.tau_samples || nsteps % cfg.tau_samples != 0 ||
      std::abs(double(nsteps) * cfg.dt - cfg.tau_max) > 1e-9)
    throw ConfigError("closeness: tau_max must be tau_samples * (integer) * dt");
}

double distance_against_profile(const Field& phi0, double nu, const ClosenessConfig& cfg,
                                const OdeProfile& prof) {
  const long nsteps = std::lround(cfg.tau_max / cfg.dt);
  SmallDispersionRun run;
  run.nu = nu;
  run.kappa = cfg.kappa;
  run.tau_max = cfg.tau_max;
  run.dt = cfg.dt;
  run.record_stride = int(nsteps / cfg.tau_samples);
  run.dealias = cfg.dealias;
  const Trajectory traj = small_dispersion_solve(phi0, run);

  const NormSpec hk{double(cfg.k), SobolevFlavor::inhomogeneous};
  double worst = 0.0;
  for (std::size_t j = 1; j < traj.times.size(); ++j) {
    const double tau = traj.times[j];
    const Spectrum ode_u = to_spectrum(ode_solution_field(phi0, prof, tau));
    const Spectrum ode_v = to_spectrum(ode_solution_rate(phi0, prof, tau));
    const double d = sobolev_norm(axpy(ode_u, traj.states[j].u, cplx(-1.0)), hk) +
                     sobolev_norm(axpy(ode_v, traj.states[j].v, cplx(-1.0)), hk);
    worst = std::max(worst, d);
  }
  return worst;
}

OdeProfile profile_covering(const Field& phi0, const ClosenessConfig& cfg) {
  const double reach = cfg.tau_max * max_clock_rate(phi0, cfg.kappa);
  return solve_profile_ode(cfg.kappa, reach * 1.01 + 1.0, cfg.profile_tol);
}

}  // namespace

double closeness_distance(const Field& phi0, double nu, const ClosenessConfig& cfg) {
  check_closeness_config(phi0.grid, cfg);
  return distance_against_profile(phi0, nu, cfg, profile_covering(phi0, cfg));
}

ClosenessReport closeness_check(const Field& phi0, const ClosenessConfig& cfg) {
  check_closeness_config(phi0.grid, cfg);
  if (cfg.nu_list.empty()) throw ConfigError("closeness: nu_list must be non-empty");
  const OdeProfile prof = profile_covering(phi0, cfg);

  ClosenessReport rep;
  std::vector<double> log_nu, log_d;
  for (double nu : cfg.nu_list) {
    if (!(nu > 0.0)) throw ConfigError("closeness: swept nu values must be positive");
    const double d = distance_against_profile(phi0, nu, cfg, prof);
    rep.nu.push_back(nu);
    rep.distance.push_back(d);
    if (d > 0.0) {
      log_nu.push_back(std::log(nu));
      log_d.push_back(std::log(d));
    }
  }
  if (log_nu.size() >= 2) rep.alpha = detail::regression_slope(log_nu, log_d);
  return rep;
}

double InflationPlan::s_critical() const { return 0.5 * n - 4.0 / (kappa - 1.0); }

double InflationPlan::nu() const { return nu_over_eps * eps; }

double InflationPlan::lambda() const {
  return std::pow(eps * std::pow(nu(), 0.5 * n - s), 1.0 / (s_critical() - s));
}

void InflationPlan::validate() const {
  GridSpec g{n, N, L};
  g.validate();
  if (!(kappa > 1.0)) throw ConfigError("inflation: kappa must be > 1");
  const double sc = s_critical();
  if (!(sc > 0.0))
    throw ConfigError("inflation: s_c = n/2 - 4/(kappa-1) must be positive; raise kappa");
  if (!(s > 0.0) || !(s < sc))
    throw ConfigError("inflation: s must sit strictly inside (0, s_c)");
  if (!(eps > 0.0)) throw ConfigError("inflation: eps must be positive");
  if (!(nu() > 0.0) || !(nu() < 1.0)) throw ConfigError("inflation: nu must sit in (0, 1)");
  if (!(lambda() > 0.0) || lambda() > nu())
    throw ConfigError("inflation: derived lambda must satisfy 0 < lambda <= nu");
  if (l < 1) throw ConfigError("inflation: l must be a positive integer");
  if (!(psi_amp > 0.0) || !(psi_width > 0.0))
    throw ConfigError("inflation: psi amplitude and width must be positive");
  if (!(dt > 0.0)) throw ConfigError("inflation: dt must be positive");
  const long stride = std::lround(tau_step / dt);
  if (stride < 1 || std::abs(double(stride) * dt - tau_step) > 1e-9)
    throw ConfigError("inflation: tau_step must be an integer multiple of dt");
  const long points = std::lround(tau_report / tau_step);
  if (points < 2 || std::abs(double(points) * tau_step - tau_report) > 1e-9)
    throw ConfigError("inflation: tau_report must be an integer multiple of tau_step");
  if (!(fit_start > 0.0) || fit_start + tau_step > tau_report)
    throw ConfigError("inflation: fit window [fit_start, tau_report] needs >= 2 schedule points");
}

double rescaled_state_norm(const Spectrum& phi, double nu, double lambda, double kappa,
                           double s) {
  if (!(nu > 0.0) || !(lambda > 0.0)) throw ConfigError("rescaled norm: nu, lambda must be > 0");
  if (!(kappa > 1.0)) throw ConfigError("rescaled norm: kappa must be > 1");
  const GridSpec& g = phi.grid;
  const double ratio2 = (nu / lambda) * (nu / lambda);
  double acc = 0.0;
  for (std::size_t i = 0; i < phi.c.size(); ++i)
    acc += std::pow(1.0 + ratio2 * g.rho(i), s) * std::norm(phi.c[i]);
  return std::sqrt(std::pow(lambda, -8.0 / (kappa - 1.0)) *
                   std::pow(lambda / nu, double(g.n)) * std::pow(g.L, double(g.n)) * acc);
}

InflationReport inflation_experiment(const InflationPlan& plan) {
  plan.validate();
  const GridSpec g{plan.n, plan.N, plan.L};
  const Field phi0 = bump_power_data(g, plan.psi_amp, plan.psi_width, plan.l);

  // the bump must effectively vanish at the box edge or the torus distorts it
  const double peak = std::pow(plan.psi_amp, 2.0 * plan.l);
  const double edge =
      std::pow(plan.psi_amp * std::exp(-0.125 * plan.L * plan.L / (plan.psi_width * plan.psi_width)),
               2.0 * plan.l);
  if (edge > 1e-10 * peak)
    throw ConfigError("inflation: box too small, phi0 does not vanish at the edge");

  InflationReport rep;
  rep.plan = plan;
  rep.nu = plan.nu();
  rep.lambda = plan.lambda();

  SmallDispersionRun run;
  run.nu = rep.nu;
  run.kappa = plan.kappa;
  run.tau_max = plan.tau_report;
  run.dt = plan.dt;
  run.record_stride = int(std::lround(plan.tau_step / plan.dt));
  run.dealias = plan.dealias;
  const Trajectory traj = small_dispersion_solve(phi0, run);

  const NormSpec hs{plan.s, SobolevFlavor::inhomogeneous};
  std::vector<double> log_tau, log_phi;
  for (std::size_t j = 0; j < traj.times.size(); ++j) {
    InflationPoint pt;
    pt.tau = traj.times[j];
    pt.phi_h_s = sobolev_norm(traj.states[j].u, hs);
    pt.u_h_s = rescaled_state_norm(traj.states[j].u, rep.nu, rep.lambda, plan.kappa, plan.s);
    rep.table.push_back(pt);
    if (pt.tau >= plan.fit_start - 1e-9 && pt.phi_h_s > 0.0) {
      log_tau.push_back(std::log(pt.tau));
      log_phi.push_back(std::log(pt.phi_h_s));
    }
  }
  rep.u0_norm = rep.table.front().u_h_s;
  rep.u0_over_eps = rep.u0_norm / plan.eps;
  for (InflationPoint& pt : rep.table) {
    pt.ratio = pt.u_h_s / rep.u0_norm;
    rep.sup_ratio = std::max(rep.sup_ratio, pt.ratio);
  }
  rep.ratio_at_report = rep.table.back().ratio;
  if (log_tau.size() >= 2) rep.growth_exponent = detail::regression_slope(log_tau, log_phi);

  // formula-level check of the change of variables at the degenerate point nu = lambda:
  // the weight collapses to the plain inhomogeneous one with a power prefactor
  const Spectrum& last = traj.states.back().u;
  const double lhs = rescaled_state_norm(last, rep.nu, rep.nu, plan.kappa, plan.s);
  const double rhs = std::pow(rep.nu, -4.0 / (plan.kappa - 1.0)) * sobolev_norm(last, hs);
  rep.degenerate_gap = std::abs(lhs - rhs) / rhs;

  rep.limitation =
      "desk-scale run: certifies the mechanism (initial norm tracks eps, t^s growth of the "
      "rescaled profile, inflation ratio monotone in eps), not the full blow-up of the "
      "solution map, which needs |ln nu|^c >> eps^{-2/s} and is far beyond any grid";
  return rep;
}

}  // namespace beam
