#include "beam/nonlinear.hpp"

#include <algorithm>
#include <cmath>

#include "util.hpp"

namespace beam {

Field apply_nonlinearity(const Field& u, double kappa, double omega) {
  if (!(kappa > 1.0)) throw ConfigError("apply_nonlinearity: kappa must be > 1");
  Field out{u.grid, cvec(u.a.size()), u.real_tagged};
  for (std::size_t i = 0; i < u.a.size(); ++i) {
    double m = std::abs(u.a[i]);
    out.a[i] = (m == 0.0) ? cplx(0.0, 0.0) : omega * std::pow(m, kappa - 1.0) * u.a[i];
  }
  return out;
}

bool default_dealias(double kappa) {
  double r = std::round(kappa);
  return std::abs(kappa - r) < 1e-12 && r >= 3.0 && std::fmod(r, 2.0) == 1.0;
}

namespace {

void dealias_inplace(Spectrum& s) {
  const int N = s.grid.N;
  const int cut = N / 3;
  auto keep = [cut](int k) { return std::abs(k) <= cut; };
  if (s.grid.n == 1) {
    for (int j = 0; j < N; ++j)
      if (!keep(s.grid.mode(j))) s.c[j] = 0.0;
  } else {
    for (int j1 = 0; j1 < N; ++j1)
      for (int j2 = 0; j2 < N; ++j2)
        if (!keep(s.grid.mode(j1)) || !keep(s.grid.mode(j2)))
          s.c[std::size_t(j1) * N + j2] = 0.0;
  }
}

}  // namespace

Spectrum nonlinear_forcing(const Spectrum& u, double kappa, double omega, bool dealias) {
  Spectrum in = u;
  if (dealias) dealias_inplace(in);
  Field uf = from_spectrum(in);
  Spectrum out = to_spectrum(apply_nonlinearity(uf, kappa, omega));
  if (dealias) dealias_inplace(out);
  return out;
}

void PicardConfig::finalize(int n) {
  if (!(T > 0.0)) throw ConfigError("PicardConfig: T must be positive");
  if (nodes_per_unit < 2) throw ConfigError("PicardConfig: nodes_per_unit must be >= 2");
  if (!(tol > 0.0)) throw ConfigError("PicardConfig: tol must be positive");
  if (max_iters < 1) throw ConfigError("PicardConfig: max_iters must be >= 1");
  double def = std::max(2.0, (n + 2.0) * (kappa - 1.0) / 4.0);
  if (p_st == 0.0) p_st = def;
  if (r_st == 0.0) r_st = def;
  if (p_st < 2.0 || r_st < 2.0) throw ConfigError("PicardConfig: p_st and r_st must be >= 2");
}

namespace {

struct Mesh {
  int nt;            // panels
  double h;          // panel width
  std::vector<double> times;
};

Mesh make_mesh(double T, int nodes_per_unit) {
  Mesh m;
  m.nt = std::max(2, int(std::ceil(T * nodes_per_unit)));
  m.h = T / m.nt;
  m.times.resize(m.nt + 1);
  for (int i = 0; i <= m.nt; ++i) m.times[i] = T * double(i) / m.nt;
  return m;
}

// One sweep of the Duhamel map: out(t_i) = L(t_i) data + int_0^{t_i} kernel(t_i - s) F(s) ds
// where F are the forcing samples of the previous iterate, linear between nodes.
// Marches panel by panel with the exact propagator, so the quadrature is local.
std::vector<BeamState> duhamel_sweep(const BeamState& data, const std::vector<Spectrum>& forcing,
                                     const Mesh& mesh, const DuhamelQuad& quad) {
  const auto& g = data.u.grid;
  const std::size_t sz = g.size();
  std::vector<double> qx, qw;
  detail::gauss_legendre_unit(quad.gl_order, qx, qw);

  std::vector<BeamState> out;
  out.reserve(mesh.nt + 1);
  out.push_back(data);
  BeamState cur = data;
  const double h = mesh.h;
  for (int i = 0; i < mesh.nt; ++i) {
    BeamState next = linear_evolve(cur, h);
    const auto& Fa = forcing[i].c;
    const auto& Fb = forcing[i + 1].c;
    for (int q = 0; q < quad.gl_order; ++q) {
      double s = qx[q] * h;
      double w = qw[q] * h;
      double ker_t = h - s;
      double wa = w * (1.0 - qx[q]);
      double wb = w * qx[q];
      for (std::size_t j = 0; j < sz; ++j) {
        double rho = g.rho(j);
        double st = sinc_symbol(ker_t, rho);
        double c = cos_symbol(ker_t, rho);
        cplx fq = wa * Fa[j] + wb * Fb[j];
        next.u.c[j] += st * fq;
        next.v.c[j] += c * fq;
      }
    }
    next.u.real_tagged = cur.u.real_tagged && forcing[i].real_tagged && forcing[i + 1].real_tagged;
    next.v.real_tagged = next.u.real_tagged;
    out.push_back(next);
    cur = next;
  }
  return out;
}

double gap_norm(const std::vector<BeamState>& a, const std::vector<BeamState>& b,
                const Mesh& mesh, double p, double r) {
  std::vector<Field> diff;
  diff.reserve(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    Spectrum d = b.empty() ? a[i].u : axpy(b[i].u, a[i].u, cplx(-1.0, 0.0));
    diff.push_back(from_spectrum(d));
  }
  return spacetime_norm(mesh.times, diff, p, r);
}

}  // namespace

PicardResult picard_solve(const BeamState& data, PicardConfig cfg) {
  const auto& g = data.u.grid;
  cfg.finalize(g.n);
  Mesh mesh = make_mesh(cfg.T, cfg.nodes_per_unit);

  // u_0 is the free solution (the iterate before it is identically zero)
  std::vector<BeamState> cur;
  cur.reserve(mesh.nt + 1);
  for (int i = 0; i <= mesh.nt; ++i) cur.push_back(linear_evolve(data, mesh.times[i]));

  PicardDiagnostics diag;
  diag.A.push_back(gap_norm(cur, {}, mesh, cfg.p_st, cfg.r_st));
  diag.B.push_back(diag.A[0]);

  if (diag.B[0] == 0.0) {
    // zero data: the free solution is already the fixed point
    diag.converged = true;
    Trajectory traj{mesh.times, std::move(cur)};
    return {std::move(traj), std::move(diag)};
  }

  std::vector<Spectrum> forcing(mesh.nt + 1, make_zero_spectrum(g));
  for (int m = 1; m <= cfg.max_iters; ++m) {
    for (int i = 0; i <= mesh.nt; ++i)
      forcing[i] = nonlinear_forcing(cur[i].u, cfg.kappa, cfg.omega, cfg.dealias);
    std::vector<BeamState> next = duhamel_sweep(data, forcing, mesh, cfg.quad);
    double Bm = gap_norm(next, cur, mesh, cfg.p_st, cfg.r_st);
    double Am = gap_norm(next, {}, mesh, cfg.p_st, cfg.r_st);
    diag.A.push_back(Am);
    diag.B.push_back(Bm);
    diag.iterations = m;
    cur = std::move(next);
    if (Bm > cfg.divergence_factor * diag.B[0]) {
      diag.diverged = true;
      break;
    }
    if (Bm / diag.B[0] < cfg.tol) {
      diag.converged = true;
      break;
    }
  }
  Trajectory traj{mesh.times, std::move(cur)};
  traj.validate();
  return {std::move(traj), std::move(diag)};
}

double picard_residual(const BeamState& data, const Trajectory& traj, const PicardConfig& cfg_in) {
  PicardConfig cfg = cfg_in;
  cfg.finalize(data.u.grid.n);
  Mesh mesh;
  mesh.nt = int(traj.times.size()) - 1;
  mesh.h = (traj.times.back() - traj.times.front()) / mesh.nt;
  mesh.times = traj.times;

  std::vector<Spectrum> forcing;
  forcing.reserve(traj.states.size());
  for (const auto& st : traj.states)
    forcing.push_back(nonlinear_forcing(st.u, cfg.kappa, cfg.omega, cfg.dealias));
  std::vector<BeamState> mapped = duhamel_sweep(data, forcing, mesh, cfg.quad);

  double worst = 0.0;
  for (std::size_t i = 0; i < mapped.size(); ++i) {
    Spectrum du = axpy(traj.states[i].u, mapped[i].u, cplx(-1.0, 0.0));
    Spectrum dv = axpy(traj.states[i].v, mapped[i].v, cplx(-1.0, 0.0));
    worst = std::max(worst, sobolev_norm(du, {0.0, SobolevFlavor::inhomogeneous}));
    worst = std::max(worst, sobolev_norm(dv, {0.0, SobolevFlavor::inhomogeneous}));
  }
  return worst;
}

Trajectory split_solve(const BeamState& data, const SplitConfig& cfg) {
  if (!(cfg.T > 0.0) || !(cfg.dt > 0.0)) throw ConfigError("split_solve: T and dt must be positive");
  if (!(cfg.kappa > 1.0)) throw ConfigError("split_solve: kappa must be > 1");
  const long nsteps = std::lround(cfg.T / cfg.dt);
  if (nsteps < 1 || std::abs(nsteps * cfg.dt - cfg.T) > 1e-9 * std::max(1.0, cfg.T))
    throw ConfigError("split_solve: T must be an integer multiple of dt");

  Trajectory traj;
  traj.times.push_back(0.0);
  traj.states.push_back(data);

  BeamState cur = data;
  for (long i = 0; i < nsteps; ++i) {
    cur = linear_evolve(cur, 0.5 * cfg.dt, cfg.mu);
    Spectrum F = nonlinear_forcing(cur.u, cfg.kappa, cfg.omega, cfg.dealias);
    for (std::size_t j = 0; j < F.c.size(); ++j) cur.v.c[j] += cfg.dt * F.c[j];
    cur.v.real_tagged = cur.v.real_tagged && F.real_tagged;
    cur = linear_evolve(cur, 0.5 * cfg.dt, cfg.mu);
    bool record = (cfg.record_stride > 0 && (i + 1) % cfg.record_stride == 0) || i + 1 == nsteps;
    if (record && i + 1 < nsteps) {
      traj.times.push_back(double(i + 1) * cfg.dt);
      traj.states.push_back(cur);
    }
  }
  traj.times.push_back(cfg.T);
  traj.states.push_back(cur);
  traj.validate();
  for (const auto& st : traj.states) {
    for (const auto& c : st.u.c)
      if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
        throw NumericError("split_solve: non-finite value in trajectory");
  }
  return traj;
}

CrossCheck cross_validate(const BeamState& data, const PicardConfig& pcfg, const SplitConfig& scfg,
                          double s) {
  PicardResult pr = picard_solve(data, pcfg);
  if (pr.diag.diverged) throw NumericError("cross_validate: Picard iteration diverged");
  Trajectory st = split_solve(data, scfg);
  const BeamState& a = pr.traj.states.back();
  const BeamState& b = st.states.back();
  if (std::abs(pr.traj.times.back() - st.times.back()) > 1e-9)
    throw ConfigError("cross_validate: solvers ended at different times");
  CrossCheck out;
  out.s = s;
  out.max_abs = max_abs_diff(from_spectrum(a.u), from_spectrum(b.u));
  out.h_s = sobolev_norm(axpy(a.u, b.u, cplx(-1.0, 0.0)), {s, SobolevFlavor::inhomogeneous});
  return out;
}

}  // namespace beam
