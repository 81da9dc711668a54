// Small-dispersion module: the oscillator profile against frozen closed-form
// periods, the zero-dispersion limit of the splitting solver, the closeness
// sweep, and the inflation bookkeeping.
//
// The period values come from the quarter-period integral of the conserved
// oscillator energy, evaluated once with 30-digit quadrature and frozen. The
// nu = 0 test is the strongest functional check in the module: the PDE solver,
// run with the dispersion switched off, must land on the tabulated profile
// composed with the pointwise clock.
#include <doctest.h>

#include <cmath>

#include "beam/dispersion.hpp"
#include "beam/errors.hpp"
#include "beam/norms.hpp"
#include "beam/random_fields.hpp"

using namespace beam;

namespace {

constexpr double kPeriodKappa3 = 7.4162987092054877;
constexpr double kPeriodKappa13 = 11.596064718747144;

}  // namespace

TEST_CASE("oscillator profile conserves energy and hits the frozen periods") {
  OdeProfile p3 = solve_profile_ode(3.0, 40.0);
  CHECK(p3.H0 == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(std::abs(p3.period - kPeriodKappa3) < 1e-9);
  CHECK(p3.max_h_drift < 1e-10);
  CHECK(p3.tau_max == doctest::Approx(40.0).epsilon(1e-12));

  OdeProfile p13 = solve_profile_ode(13.0, 15.0);
  CHECK(p13.H0 == doctest::Approx(1.0 / 14.0).epsilon(1e-15));
  CHECK(std::abs(p13.period - kPeriodKappa13) < 1e-9);
  CHECK(p13.max_h_drift < 1e-10);

  // too short to bracket two zeros of C': no period estimate
  OdeProfile stub = solve_profile_ode(3.0, 2.0);
  CHECK(stub.period == 0.0);
}

TEST_CASE("profile period is stable under tolerance refinement") {
  const double fine = solve_profile_ode(3.0, 10.0, 1e-12).period;
  const double coarse = solve_profile_ode(3.0, 10.0, 1e-10).period;
  CHECK(std::abs(fine - coarse) < 1e-6);
}

TEST_CASE("profile is even without assuming it") {
  OdeProfile p = solve_profile_ode(3.0, 8.0);
  for (double tau : {0.3, 1.7, 2.9, 5.05, 7.999}) {
    CHECK(std::abs(p.eval_c(tau) - p.eval_c(-tau)) < 1e-9);
    CHECK(std::abs(p.eval_cp(tau) + p.eval_cp(-tau)) < 1e-9);
  }
  CHECK(p.eval_c(0.0) == 1.0);
  CHECK(p.eval_cp(0.0) == 0.0);
}

TEST_CASE("profile interpolation holds the energy between nodes") {
  OdeProfile p = solve_profile_ode(3.0, 6.0);
  // node values are returned up to a cell-boundary rounding of tau / h
  CHECK(std::abs(p.eval_c(17.0 * p.h) - p.c_fwd[17]) < 1e-12);
  CHECK(std::abs(p.eval_cp(-9.0 * p.h) - p.cp_bwd[9]) < 1e-12);
  double worst = 0.0;
  for (int i = 0; i < 500; ++i) {
    const double tau = (i + 0.37) * 6.0 / 500.0;
    const double c = p.eval_c(tau), cp = p.eval_cp(tau);
    const double H = 0.5 * cp * cp + 0.25 * std::pow(std::abs(c), 4.0);
    worst = std::max(worst, std::abs(H - p.H0));
  }
  CHECK(worst < 1e-9);
}

TEST_CASE("profile construction and evaluation reject bad arguments") {
  CHECK_THROWS_AS(solve_profile_ode(1.0, 10.0), ConfigError);
  CHECK_THROWS_AS(solve_profile_ode(3.0, -1.0), ConfigError);
  CHECK_THROWS_AS(solve_profile_ode(3.0, 10.0, 0.0), ConfigError);
  CHECK_THROWS_AS(solve_profile_ode(3.0, 10.0, 1e-3), ConfigError);
  OdeProfile p = solve_profile_ode(3.0, 5.0);
  CHECK_THROWS_AS(p.eval_c(5.1), ConfigError);
  CHECK_THROWS_AS(p.eval_cp(-5.1), ConfigError);
}

TEST_CASE("bump power data takes the prescribed shape") {
  GridSpec g{1, 256, 30.0};
  Field phi0 = bump_power_data(g, 1.0, 1.0, 2);
  REQUIRE(phi0.real_tagged);
  CHECK(phi0.a[0].real() == doctest::Approx(1.0).epsilon(1e-15));
  double worst = 0.0;
  for (std::size_t j = 0; j < g.size(); ++j) {
    const double x = g.coord(j)[0];
    const double y = std::min(x, g.L - x);
    // psi^{2l} = exp(-y^2 / (2 w^2))^{2l} = exp(-2 y^2) at w = 1, l = 2
    worst = std::max(worst, std::abs(phi0.a[j].real() - std::exp(-2.0 * y * y)));
  }
  CHECK(worst < 1e-14);
  CHECK_THROWS_AS(bump_power_data(g, 1.0, 1.0, 0), ConfigError);
  CHECK_THROWS_AS(bump_power_data(g, -1.0, 1.0, 1), ConfigError);
  CHECK_THROWS_AS(bump_power_data(g, 1.0, 0.0, 1), ConfigError);
}

TEST_CASE("ode solution field composes the profile with the local clock") {
  GridSpec g{1, 256, 30.0};
  Field phi0 = bump_power_data(g, 1.0, 1.0, 2);
  OdeProfile p = solve_profile_ode(3.0, 5.0);

  Field at0 = ode_solution_field(phi0, p, 0.0);
  CHECK(max_abs_diff(at0, phi0) == 0.0);  // C(0) = 1 exactly
  Field rate0 = ode_solution_rate(phi0, p, 0.0);
  CHECK(max_abs(rate0) == 0.0);           // C'(0) = 0 exactly

  // spot value: the clock runs at q = |phi0| for kappa = 3
  Field at2 = ode_solution_field(phi0, p, 2.0);
  const double q5 = std::abs(phi0.a[5]);
  CHECK(at2.a[5].real() ==
        doctest::Approx(p.eval_c(q5 * 2.0) * phi0.a[5].real()).epsilon(1e-14));

  // max clock rate is 1 here, so tau beyond the profile range must throw
  CHECK_THROWS_AS(ode_solution_field(phi0, p, 5.2), ConfigError);
  CHECK_THROWS_AS(ode_solution_rate(phi0, p, -5.2), ConfigError);
}

TEST_CASE("small dispersion with nu zero runs the decoupled oscillator") {
  // N = 256 keeps the cube of the bump below 1e-13 at the grid cutoff, and the
  // dealias mask stays off: it would otherwise clip the composed solution's
  // spectral tail at 2/3 of the cutoff and leave a dt-independent 2e-5 floor.
  // What remains is pure Strang stepping error.
  GridSpec g{1, 256, 30.0};
  Field phi0 = bump_power_data(g, 1.0, 1.0, 2);
  OdeProfile p = solve_profile_ode(3.0, 2.5);

  SmallDispersionRun run;
  run.nu = 0.0;
  run.tau_max = 2.0;
  run.dt = 5e-4;
  run.dealias = false;
  Trajectory traj = small_dispersion_solve(phi0, run);
  const BeamState& fin = traj.states.back();
  CHECK(max_abs_diff(from_spectrum(fin.u), ode_solution_field(phi0, p, 2.0)) < 1e-6);
  CHECK(max_abs_diff(from_spectrum(fin.v), ode_solution_rate(phi0, p, 2.0)) < 1e-5);

  Field complex_data = phi0;
  complex_data.real_tagged = false;
  CHECK_THROWS_AS(small_dispersion_solve(complex_data, run), ConfigError);
  run.nu = -0.1;
  CHECK_THROWS_AS(small_dispersion_solve(phi0, run), ConfigError);
}

TEST_CASE("closeness distances shrink with nu") {
  GridSpec g{1, 256, 30.0};
  Field phi0 = bump_power_data(g, 1.0, 1.0, 2);
  ClosenessConfig cfg;
  cfg.tau_max = 2.0;
  cfg.tau_samples = 10;
  cfg.nu_list = {0.2, 0.1};
  ClosenessReport rep = closeness_check(phi0, cfg);
  REQUIRE(rep.distance.size() == 2);
  CHECK(rep.distance[1] < rep.distance[0]);
  CHECK(rep.alpha > 0.5);
}

TEST_CASE("closeness configuration is validated") {
  GridSpec g{1, 128, 30.0};
  Field phi0 = bump_power_data(g, 1.0, 1.0, 2);
  ClosenessConfig cfg;
  cfg.tau_max = 2.0;
  cfg.tau_samples = 10;

  ClosenessConfig bad = cfg;
  bad.k = 0;  // must exceed n/2
  CHECK_THROWS_AS(closeness_distance(phi0, 0.1, bad), ConfigError);
  bad = cfg;
  bad.dt = 7e-4;  // steps not divisible into the sample schedule
  CHECK_THROWS_AS(closeness_distance(phi0, 0.1, bad), ConfigError);
  bad = cfg;
  bad.nu_list = {};
  CHECK_THROWS_AS(closeness_check(phi0, bad), ConfigError);
  bad = cfg;
  bad.nu_list = {0.2, -0.1};
  CHECK_THROWS_AS(closeness_check(phi0, bad), ConfigError);
}

TEST_CASE("inflation plan derives its scales and validates inputs") {
  InflationPlan plan;  // the documented defaults
  CHECK_NOTHROW(plan.validate());
  CHECK(plan.s_critical() == doctest::Approx(1.0 / 6.0).epsilon(1e-15));
  CHECK(plan.nu() == doctest::Approx(0.01).epsilon(1e-15));
  // lambda solves lambda^{s_c - s} nu^{s - n/2} = eps
  const double lam = plan.lambda();
  CHECK(std::pow(lam, 1.0 / 6.0 - 0.1) * std::pow(plan.nu(), 0.1 - 0.5) ==
        doctest::Approx(plan.eps).epsilon(1e-12));
  CHECK(lam > 0.0);
  CHECK(lam <= plan.nu());

  InflationPlan bad = plan;
  bad.s = 0.2;  // above s_c = 1/6
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  bad = plan;
  bad.eps = 5.0;  // pushes lambda above nu
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  bad = plan;
  bad.kappa = 9.0;  // s_c = 1/2 - 4/(kappa-1) collapses to zero
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  bad = plan;
  bad.tau_step = 0.33;  // not a multiple of dt
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  bad = plan;
  bad.fit_start = 6.0;  // empty fit window
  CHECK_THROWS_AS(bad.validate(), ConfigError);
}

TEST_CASE("rescaled norm degenerates to a plain sobolev norm at lambda equals nu") {
  GridSpec g{1, 64, 12.0};
  Spectrum phi = to_spectrum(random_band_field(g, 1.0, 8.0, 0.6, 12));
  const double nu = 0.05, kappa = 13.0, s = 0.1;
  const double got = rescaled_state_norm(phi, nu, nu, kappa, s);
  const double want =
      std::pow(nu, -4.0 / (kappa - 1.0)) * sobolev_norm(phi, {s, SobolevFlavor::inhomogeneous});
  CHECK(std::abs(got / want - 1.0) < 1e-13);
  CHECK_THROWS_AS(rescaled_state_norm(phi, 0.0, 1.0, kappa, s), ConfigError);
}

TEST_CASE("inflation experiment tracks the data scale on a reduced schedule") {
  InflationPlan plan;
  plan.N = 1024;
  plan.L = 12.0;
  plan.dt = 5e-3;
  plan.tau_step = 0.5;
  plan.tau_report = 1.0;
  plan.fit_start = 0.5;
  InflationReport rep = inflation_experiment(plan);
  CHECK(rep.u0_over_eps > 0.5);
  CHECK(rep.u0_over_eps < 2.0);
  CHECK(rep.degenerate_gap < 1e-12);
  REQUIRE(rep.table.size() == 3);  // tau = 0, 0.5, 1
  CHECK(rep.table.front().ratio == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(rep.ratio_at_report == rep.table.back().ratio);
  CHECK(!rep.limitation.empty());

  InflationPlan cramped = plan;
  cramped.psi_width = 3.0;  // bump no longer vanishes at the box edge
  CHECK_THROWS_AS(inflation_experiment(cramped), ConfigError);
}
