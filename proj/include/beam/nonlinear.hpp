#pragma once
#include "beam/propagator.hpp"

namespace beam {

// omega |u|^{kappa-1} u, pointwise on samples.
Field apply_nonlinearity(const Field& u, double kappa, double omega);

// Evaluate the forcing of a spectrum-side iterate: inverse transform, pointwise power,
// forward transform. With dealias on, modes with any axis |k| > N/3 are zeroed on the way in
// and out (the 2/3 rule). Default policy: on for odd integer kappa >= 3, off otherwise.
bool default_dealias(double kappa);
Spectrum nonlinear_forcing(const Spectrum& u, double kappa, double omega, bool dealias);

struct PicardConfig {
  double kappa = 3.0;
  double omega = -1.0;
  double T = 0.5;
  int nodes_per_unit = 64;   // uniform mesh resolution; panel quadrature runs between nodes
  DuhamelQuad quad = {};     // Gauss-Legendre order per inter-node panel (panels_per_unit unused)
  double tol = 1e-10;        // stop when B_{m+1}/B_0 < tol
  int max_iters = 25;
  double p_st = 0.0;         // space-time exponents for A_m/B_m; 0 selects the default
  double r_st = 0.0;         //   max(2, (n+2)(kappa-1)/4)
  bool dealias = true;
  double divergence_factor = 10.0;  // abort when B_{m+1} > factor * B_0

  void finalize(int n);  // resolve defaults, enforce p_st, r_st >= 2
};

struct PicardDiagnostics {
  std::vector<double> A;  // iterate space-time norms, A[0] is the free solution
  std::vector<double> B;  // successive gaps, B[0] = A[0] (the previous iterate of u_0 is 0)
  bool converged = false;
  bool diverged = false;
  int iterations = 0;     // Duhamel sweeps performed
};

struct PicardResult {
  Trajectory traj;
  PicardDiagnostics diag;
};

// Fixed-point iteration u_{m} = free + Duhamel[F(u_{m-1})] on a uniform mesh over [0, T].
// Between mesh nodes the propagator is exact and only the forcing is interpolated (linear in t).
// Divergence (B_m above divergence_factor * B_0) aborts the iteration and is reported in the
// diagnostics, not thrown: smallness of the data is empirical, never assumed.
PicardResult picard_solve(const BeamState& data, PicardConfig cfg);

// Apply the Duhamel map once to an arbitrary trajectory and report the worst L^2 gap
// ||traj - free - Duhamel[F(traj)]||_{L^2} over mesh times (the fixed-point residual).
double picard_residual(const BeamState& data, const Trajectory& traj, const PicardConfig& cfg);

struct SplitConfig {
  double kappa = 3.0;
  double omega = -1.0;
  double T = 0.5;
  double dt = 1e-3;
  double mu = 1.0;        // dispersion coefficient passed to the linear half-steps
  int record_stride = 0;  // 0 records only t=0 and t=T; else every stride-th step
  bool dealias = true;
};

// Strang splitting: exact linear half-step, momentum kick v += dt*F(u), half-step.
Trajectory split_solve(const BeamState& data, const SplitConfig& cfg);

struct CrossCheck {
  double max_abs = 0.0;  // max over samples of |u_picard - u_split| at T
  double h_s = 0.0;      // Sobolev distance at T
  double s = 1.0;
};

CrossCheck cross_validate(const BeamState& data, const PicardConfig& pcfg, const SplitConfig& scfg,
                          double s = 1.0);

}  // namespace beam
