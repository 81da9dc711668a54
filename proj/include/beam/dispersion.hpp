#pragma once
#include <string>
#include <vector>

#include "beam/nonlinear.hpp"

namespace beam {

// Everything in this module concerns the defocusing small-dispersion problem
//   d2/dtau2 phi + nu^4 Lap^2 phi = -|phi|^{kappa-1} phi,
// whose nu = 0 limit decouples into the pointwise oscillator
//   -C'' = |C|^{kappa-1} C, C(0) = 1, C'(0) = 0.
// The focusing sign is rejected here: C would not stay bounded.

// Tabulated orbit of the oscillator on [-tau_max, tau_max]. Both directions are
// integrated independently (evenness of C is a property to verify, not an
// assumption baked in). Nodes sit at uniform spacing h; between nodes the
// evaluators use two-point quintic Hermite interpolation fed by the exact
// C'' = -|C|^{kappa-1} C and C''' = -kappa |C|^{kappa-1} C' at the nodes.
struct OdeProfile {
  double kappa = 3.0;
  double tau_max = 0.0;     // realized range, requested value rounded up to whole cells
  double h = 0.0;           // node spacing
  double H0 = 0.0;          // conserved 1/2 C'^2 + |C|^{kappa+1}/(kappa+1) = 1/(kappa+1)
  double period = 0.0;      // 2x the gap between the first two zeros of C'; 0 if not reached
  double max_h_drift = 0.0; // worst |H(node) - H0| over both directions

  std::vector<double> c_fwd, cp_fwd;  // values at tau = +i*h
  std::vector<double> c_bwd, cp_bwd;  // values at tau = -i*h

  double eval_c(double tau) const;   // ConfigError outside [-tau_max, tau_max]
  double eval_cp(double tau) const;
};

// Adaptive Dormand-Prince integration with nodes forced onto the uniform
// lattice, so every stored value carries the full integrator accuracy.
// ConfigError on bad arguments, NumericError if the integrator cannot
// hold the tolerance.
OdeProfile solve_profile_ode(double kappa, double tau_max, double tol = 1e-12);

// phi0 = psi^{2l}, psi(y) = amp * exp(-|y|^2 / (2 width^2)), y the componentwise
// torus distance to the origin. The building block for every run in this module.
Field bump_power_data(const GridSpec& g, double amp, double width, int l);

// Zero-dispersion solution phi0(y) * C(q(y) tau) with q = |phi0|^{(kappa-1)/2},
// and its tau-derivative phi0(y) * q(y) * C'(q(y) tau). ConfigError when
// tau * max q leaves the profile's range.
Field ode_solution_field(const Field& phi0, const OdeProfile& profile, double tau);
Field ode_solution_rate(const Field& phi0, const OdeProfile& profile, double tau);

struct SmallDispersionRun {
  double nu = 0.1;        // dispersion parameter; nu = 0 runs the decoupled oscillator
  double kappa = 3.0;
  double tau_max = 3.0;
  double dt = 2e-3;
  int record_stride = 0;  // forwarded to the splitting solver
  bool dealias = true;
};

// Splitting solve of the small-dispersion equation: the linear half-steps use
// the exact multipliers cos(tau nu^2 |xi|^2), sin(tau nu^2 |xi|^2)/(nu^2 |xi|^2).
// Data is (phi0, 0); phi0 must be real-tagged.
Trajectory small_dispersion_solve(const Field& phi0, const SmallDispersionRun& cfg);

struct ClosenessConfig {
  double kappa = 3.0;
  int k = 1;                // integer Sobolev index, must exceed n/2
  double tau_max = 3.0;
  int tau_samples = 12;     // sup taken over tau = tau_max * j / tau_samples, j >= 1
  double dt = 2e-3;
  std::vector<double> nu_list = {0.2, 0.1, 0.05};
  double profile_tol = 1e-12;
  bool dealias = true;
};

// sup over the sampled tau of H^k(phi - phi_ode) + H^k(phi_tau - phi_ode_tau).
double closeness_distance(const Field& phi0, double nu, const ClosenessConfig& cfg);

struct ClosenessReport {
  std::vector<double> nu;
  std::vector<double> distance;
  double alpha = 0.0;  // fitted exponent of distance ~ nu^alpha (0 with fewer than 2 points)
};

// nu sweep of closeness_distance with a shared profile, plus the log-log fit.
ClosenessReport closeness_check(const Field& phi0, const ClosenessConfig& cfg);

// Inflation run u^{(nu,lambda)}(t,x) = lambda^{-4/(kappa-1)} phi^nu(t/lambda^2, nu x/lambda)
// with lambda tied to eps through lambda^{s_c-s} nu^{s-n/2} = eps. nu is coupled
// to eps as well (nu = nu_over_eps * eps) so that shrinking eps genuinely moves
// the dispersion scale instead of only the amplitude bookkeeping.
struct InflationPlan {
  int n = 1;
  double kappa = 13.0;    // odd, so the nonlinearity is polynomial and smooth
  double s = 0.1;         // must sit strictly inside (0, s_c); s_c = 1/6 at the defaults
  double eps = 0.5;
  double nu_over_eps = 0.02;
  int l = 2;              // phi0 = psi^{2l}
  double psi_amp = 1.1;   // pushes max |phi0|^{(kappa-1)/2} to ~9.8, compressing the
                          // oscillator clock so the fit window below is asymptotic
  double psi_width = 1.0;
  int N = 8192;
  double L = 12.0;
  double dt = 1e-3;
  double tau_step = 0.25;    // recording schedule 0, tau_step, ..., tau_report
  double tau_report = 6.0;
  double fit_start = 3.0;    // growth exponent fitted on [fit_start, tau_report]
  bool dealias = true;

  double s_critical() const;
  double nu() const;
  double lambda() const;
  void validate() const;  // ConfigError naming the violated constraint
};

struct InflationPoint {
  double tau = 0.0;
  double phi_h_s = 0.0;  // H^s of phi^nu on its own grid
  double u_h_s = 0.0;    // change-of-variables H^s of u at t = lambda^2 tau
  double ratio = 0.0;    // u_h_s relative to its tau = 0 value
};

struct InflationReport {
  InflationPlan plan;
  double nu = 0.0;
  double lambda = 0.0;
  double u0_norm = 0.0;          // should track eps within a constant
  double u0_over_eps = 0.0;
  double growth_exponent = 0.0;  // slope of log phi_h_s vs log tau on the fit window
  double ratio_at_report = 0.0;  // u_h_s(tau_report) / u_h_s(0)
  double sup_ratio = 0.0;
  double degenerate_gap = 0.0;   // relative nu = lambda identity check, expected ~1e-16
  std::vector<InflationPoint> table;
  std::string limitation;        // scale disclaimer carried by every report
};

// || u^{(nu,lambda)}(t) ||_{H^s} evaluated on the phi-side spectrum through the
// exact change of variables: no resampling, the weight is
// lambda^{-8/(kappa-1)} (lambda/nu)^n (1 + |nu xi / lambda|^2)^s per mode.
double rescaled_state_norm(const Spectrum& phi, double nu, double lambda, double kappa,
                           double s);

InflationReport inflation_experiment(const InflationPlan& plan);

}  // namespace beam
