#pragma once
#include <utility>
#include <vector>

#include "beam/field.hpp"
#include "beam/norms.hpp"

namespace beam {

// Cauchy pair (u, du/dt) held in frequency space.
struct BeamState {
  Spectrum u;
  Spectrum v;
};

BeamState make_state(const Field& f, const Field& g);

// Time-sampled states; times strictly increasing.
struct Trajectory {
  std::vector<double> times;
  std::vector<BeamState> states;

  void validate() const;
  const BeamState& at_time(double t, double tol = 1e-9) const;  // exact lookup
};

// Time-sampled scalar forcing fields, for Duhamel quadrature.
struct ForcingSeries {
  std::vector<double> times;
  std::vector<Spectrum> values;
};

// Propagator symbols as functions of rho = |xi|^2, scaled by the dispersion
// coefficient mu (the linear operator is mu^2 Laplacian^2, symbol argument mu*rho;
// mu = 1 is the plain beam equation). All three are even in their rho argument.
double cos_symbol(double t, double rho);   // cos(t*rho)
double sinc_symbol(double t, double rho);  // sin(t*rho)/rho, removable value t at rho = 0
double dsin_symbol(double t, double rho);  // -rho*sin(t*rho)

// Exact free evolution by time t (t may be negative; evolve(-t) inverts evolve(t)).
BeamState linear_evolve(const BeamState& s, double t, double mu = 1.0);

// Gauss-Legendre panel quadrature for the Duhamel integral.
struct DuhamelQuad {
  int gl_order = 4;        // nodes per panel
  int panels_per_unit = 4; // panels per unit time (at least 1 panel overall)
};

// (I_u, I_v) = ( int_0^t sinc((t-s)) F(s) ds , int_0^t cos((t-s)) F(s) ds ) in symbol notation,
// with F linearly interpolated in time between its samples. Requires the series to cover [0, t].
std::pair<Spectrum, Spectrum> duhamel_integral(const ForcingSeries& forcing, double t,
                                               DuhamelQuad quad = {}, double mu = 1.0);

// Per-mode linear energy e_k = |v_k|^2 + rho^2 |u_k|^2 (exactly conserved by linear_evolve)
// and its lattice total weighted by L^n.
std::vector<double> per_mode_energy(const BeamState& s);
double linear_energy(const BeamState& s);

// Full conserved energy of the nonlinear flow:
// integral of 1/2 |v|^2 + 1/2 |Lap u|^2 - omega/(kappa+1) |u|^{kappa+1}.
double full_energy(const BeamState& s, double kappa, double omega);

// Wrap-around horizon of the periodic truncation: T = L / (4 * xi_occ), where xi_occ is the
// largest occupied frequency (|c| > 1e-13 * max|c| on either component), falling back to the
// grid maximum for empty states. Free packets travel at group speed 2|xi|.
double validity_window(const BeamState& s);

// Growth probe for the free flow from data (f, g) = (0, g_eps), where g_eps has the smooth
// annulus profile in rho: 1 on [3 eps^2/4, 5 eps^2/4], supported in [eps^2/2, 3 eps^2/2].
// Evolved to t_star = (pi/2) eps^{-2}; ratio_proof normalizes by ||g||_{H^{s-2}} and
// ratio_display by ||g||_{H^s}.
struct GrowthRow {
  double eps = 0.0;
  double t_star = 0.0;
  double ratio_proof = 0.0;
  double ratio_display = 0.0;
  int annulus_modes = 0;
};
struct GrowthReport {
  std::vector<GrowthRow> rows;
  double slope_proof = 0.0;    // log-log regression of ratio_proof vs eps
  double slope_display = 0.0;  // same for ratio_display; the headline slope estimate
};

Spectrum annulus_bump_data(const GridSpec& g, double eps);  // the g_eps spectrum (real even)
GrowthReport counterexample_growth(const GridSpec& g, const std::vector<double>& eps_list,
                                   double s);

}  // namespace beam
