#include <CLI11.hpp>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <sstream>

#include "beam/experiments.hpp"

namespace {

// Options bound to holders; only flags the user actually passed overwrite the
// config, so file values and defaults survive untouched.
struct FlagBinder {
  CLI::App* sub = nullptr;
  std::vector<std::pair<CLI::Option*, std::function<void(beam::RunConfig&)>>> actions;

  template <class T, class F>
  CLI::Option* opt(const std::string& name, const std::string& desc, F setter) {
    auto holder = std::make_shared<T>();
    CLI::Option* o = sub->add_option(name, *holder, desc);
    actions.emplace_back(o, [holder, setter](beam::RunConfig& c) { setter(c, *holder); });
    return o;
  }

  template <class F>
  CLI::Option* flag(const std::string& name, const std::string& desc, F setter) {
    auto holder = std::make_shared<bool>(false);
    CLI::Option* o = sub->add_flag(name, *holder, desc);
    actions.emplace_back(o, [holder, setter](beam::RunConfig& c) { setter(c, *holder); });
    return o;
  }

  void apply(beam::RunConfig& c) const {
    for (const auto& [o, fn] : actions)
      if (o->count() > 0) fn(c);
  }
};

struct SubContext {
  std::string name;
  CLI::App* sub = nullptr;
  FlagBinder binder;
  std::string config_path;
  CLI::Option* config_opt = nullptr;
};

std::string read_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw beam::ConfigError("cannot open config file " + path);
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

void add_common(FlagBinder& b) {
  b.opt<std::string>("--out", "output directory (run dir is created inside)",
                     [](beam::RunConfig& c, const std::string& v) { c.out_dir = v; });
  b.opt<std::uint64_t>("--seed", "RNG seed for band-limited data",
                       [](beam::RunConfig& c, std::uint64_t v) { c.seed = v; });
  b.flag("--allow-wrap", "run past the wrap-around validity window",
         [](beam::RunConfig& c, bool) { c.allow_beyond_window = true; });
  b.flag("--snapshots", "write field snapshots into the run directory",
         [](beam::RunConfig& c, bool) { c.write_snapshots = true; });
  b.flag("--no-dealias", "disable the 2/3-rule spectral truncation",
         [](beam::RunConfig& c, bool) { c.dealias = false; });
}

void add_specific(SubContext& ctx) {
  FlagBinder& b = ctx.binder;
  auto set_kappa = [](beam::RunConfig& c, double v) { c.kappa = v; };
  auto set_omega = [](beam::RunConfig& c, double v) { c.omega = v; };
  auto set_s = [](beam::RunConfig& c, double v) { c.s = v; };
  auto set_T = [](beam::RunConfig& c, double v) { c.T = v; };
  auto set_dt = [](beam::RunConfig& c, double v) { c.dt = v; };
  auto set_amp = [](beam::RunConfig& c, double v) { c.amp = v; };
  auto set_times = [](beam::RunConfig& c, const std::vector<double>& v) { c.times = v; };
  auto set_dim = [](beam::RunConfig& c, int v) { c.dim = v; };
  auto set_grid_n = [](beam::RunConfig& c, int v) { c.grid.n = v; };
  auto set_band = [](beam::RunConfig& c, const std::vector<double>& v) {
    if (v.size() != 2) throw beam::ConfigError("--band expects lo,hi");
    c.band_lo = v[0];
    c.band_hi = v[1];
  };

  const std::string& name = ctx.name;
  if (name == "linear") {
    b.opt<std::vector<double>>("--times", "evaluation times", set_times)->delimiter(',');
    b.opt<double>("--amp", "band data amplitude", set_amp);
    b.opt<std::vector<double>>("--band", "frequency band lo,hi", set_band)->delimiter(',');
  } else if (name == "picard") {
    b.opt<double>("--kappa", "nonlinearity power", set_kappa);
    b.opt<double>("--omega", "nonlinearity sign/strength", set_omega);
    b.opt<double>("--T", "final time", set_T);
    b.opt<double>("--amp", "Gaussian amplitude", set_amp);
    b.opt<double>("--decay", "Gaussian exponent", [](beam::RunConfig& c, double v) { c.decay = v; });
    b.opt<double>("--tol", "relative stop threshold on B_m",
                  [](beam::RunConfig& c, double v) { c.tol = v; });
    b.opt<int>("--nodes", "mesh nodes per unit time",
               [](beam::RunConfig& c, int v) { c.nodes_per_unit = v; });
    b.opt<int>("--max-iters", "iteration cap", [](beam::RunConfig& c, int v) { c.max_iters = v; });
    b.opt<int>("--gl-order", "Gauss-Legendre order per panel",
               [](beam::RunConfig& c, int v) { c.gl_order = v; });
  } else if (name == "split") {
    b.opt<double>("--kappa", "nonlinearity power", set_kappa);
    b.opt<double>("--omega", "nonlinearity sign/strength", set_omega);
    b.opt<double>("--T", "final time", set_T);
    b.opt<double>("--dt", "time step", set_dt);
    b.opt<double>("--amp", "Gaussian amplitude", set_amp);
    b.opt<double>("--decay", "Gaussian exponent", [](beam::RunConfig& c, double v) { c.decay = v; });
    b.opt<int>("--stride", "record every stride-th step",
               [](beam::RunConfig& c, int v) { c.record_stride = v; });
  } else if (name == "counterexample") {
    b.opt<std::vector<double>>("--eps", "annulus scales",
                               [](beam::RunConfig& c, const std::vector<double>& v) {
                                 c.eps_list = v;
                               })
        ->delimiter(',');
    b.opt<double>("--s", "Sobolev index of the growth norm", set_s);
    b.opt<std::vector<double>>("--grid", "grid as N,L",
                               [](beam::RunConfig& c, const std::vector<double>& v) {
                                 if (v.size() != 2) throw beam::ConfigError("--grid expects N,L");
                                 c.grid.N = int(v[0]);
                                 c.grid.L = v[1];
                               })
        ->delimiter(',');
  } else if (name == "admissible") {
    b.opt<std::string>("--p", "time exponent", [](beam::RunConfig& c, const std::string& v) { c.p = v; });
    b.opt<std::string>("--q", "space exponent (pair)",
                       [](beam::RunConfig& c, const std::string& v) { c.q = v; });
    b.opt<std::string>("--r", "space exponent (triple)",
                       [](beam::RunConfig& c, const std::string& v) { c.r = v; });
    b.opt<std::string>("--s-gain", "derivative gain of the triple",
                       [](beam::RunConfig& c, const std::string& v) { c.s_gain = v; });
    b.opt<int>("--n", "space dimension", set_dim);
  } else if (name == "regime") {
    b.opt<int>("--n", "space dimension", set_dim);
    b.opt<double>("--kappa", "nonlinearity power", set_kappa);
    b.opt<double>("--s", "data regularity", set_s);
    b.opt<std::string>("--space", "homogeneous or inhomogeneous",
                       [](beam::RunConfig& c, const std::string& v) { c.space = v; });
  } else if (name == "strichartz") {
    b.opt<std::string>("--p", "time exponent", [](beam::RunConfig& c, const std::string& v) { c.p = v; });
    b.opt<std::string>("--r", "space exponent",
                       [](beam::RunConfig& c, const std::string& v) { c.r = v; });
    b.opt<std::string>("--s-gain", "derivative gain of the triple",
                       [](beam::RunConfig& c, const std::string& v) { c.s_gain = v; });
    b.opt<double>("--rhs-s", "homogeneous data index",
                  [](beam::RunConfig& c, double v) { c.rhs_s = v; });
    b.opt<int>("--samples", "ensemble size", [](beam::RunConfig& c, int v) { c.samples = v; });
    b.opt<int>("--time-samples", "trapezoid samples over the window",
               [](beam::RunConfig& c, int v) { c.time_samples = v; });
    b.opt<double>("--window-fraction", "fraction of the validity window",
                  [](beam::RunConfig& c, double v) { c.window_fraction = v; });
    b.opt<std::vector<double>>("--band", "frequency band lo,hi", set_band)->delimiter(',');
    b.opt<double>("--amp", "band data amplitude", set_amp);
  } else if (name == "profile-ode") {
    b.opt<double>("--kappa", "nonlinearity power", set_kappa);
    b.opt<double>("--tau-max", "orbit range",
                  [](beam::RunConfig& c, double v) { c.tau_max = v; });
    b.opt<double>("--tol", "integrator tolerance",
                  [](beam::RunConfig& c, double v) { c.profile_tol = v; });
  } else if (name == "small-dispersion") {
    b.opt<std::vector<double>>("--nu", "dispersion parameters",
                               [](beam::RunConfig& c, const std::vector<double>& v) {
                                 c.nu_list = v;
                               })
        ->delimiter(',');
    b.opt<double>("--kappa", "nonlinearity power", set_kappa);
    b.opt<int>("--k", "Sobolev index of the distance",
               [](beam::RunConfig& c, int v) { c.k = v; });
    b.opt<double>("--tau-max", "horizon", [](beam::RunConfig& c, double v) { c.tau_max = v; });
    b.opt<double>("--dt", "time step", set_dt);
  } else if (name == "inflate") {
    b.opt<std::vector<double>>("--eps", "inflation scales",
                               [](beam::RunConfig& c, const std::vector<double>& v) {
                                 c.eps_list = v;
                               })
        ->delimiter(',');
    b.opt<double>("--kappa", "nonlinearity power", set_kappa);
    b.opt<double>("--s", "norm index, inside (0, s_c)", set_s);
    b.opt<int>("--n", "space dimension", set_grid_n);
    b.opt<double>("--dt", "time step", set_dt);
    b.opt<double>("--nu-over-eps", "coupling nu = c * eps",
                  [](beam::RunConfig& c, double v) { c.nu_over_eps = v; });
    b.opt<double>("--tau-report", "rescaled time of the headline ratio",
                  [](beam::RunConfig& c, double v) { c.tau_report = v; });
    b.opt<double>("--fit-start", "start of the growth-fit window",
                  [](beam::RunConfig& c, double v) { c.fit_start = v; });
  } else if (name == "scatter") {
    b.opt<double>("--amp", "data amplitude", set_amp);
    b.opt<double>("--kappa", "nonlinearity power", set_kappa);
    b.opt<double>("--omega", "nonlinearity sign/strength", set_omega);
    b.opt<int>("--n", "space dimension", set_grid_n);
    b.opt<std::vector<double>>("--times", "pullback probe times", set_times)->delimiter(',');
    b.opt<double>("--dt", "time step", set_dt);
    b.opt<std::vector<double>>("--band", "frequency band lo,hi", set_band)->delimiter(',');
  }

  if (name != "list") {
    add_common(b);
    ctx.config_opt = ctx.sub->add_option("--config", ctx.config_path, "JSON config file");
  }
}

int run_subcommand(const SubContext& ctx) {
  if (ctx.name == "list") {
    for (const auto& e : beam::list_experiments())
      std::cout << e.name << std::string(18 - e.name.size(), ' ') << e.summary << "\n";
    return 0;
  }

  beam::RunConfig cfg;
  if (ctx.config_opt != nullptr && ctx.config_opt->count() > 0) {
    cfg = beam::RunConfig::from_text(read_file(ctx.config_path));
    cfg.experiment = ctx.name;  // the subcommand wins over the file's tag
  } else {
    cfg = beam::default_config(ctx.name);
  }
  ctx.binder.apply(cfg);

  beam::RunArtifacts art = beam::run(cfg);

  beam::Json shown = art.report["results"];
  for (const char* key : {"table", "rows", "routes"})
    if (shown.contains(key)) shown[key] = "(see report.json / series.csv)";
  std::cout << shown.dump(2) << "\n";
  std::cout << "run dir: " << art.run_dir << "\n";
  std::cout << "wall seconds: " << art.wall_seconds << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"spectral simulation and analysis toolkit for the nonlinear beam equation"};
  app.require_subcommand(1);

  std::vector<std::shared_ptr<SubContext>> contexts;
  for (const auto& entry : beam::list_experiments()) {
    auto ctx = std::make_shared<SubContext>();
    ctx->name = entry.name;
    ctx->sub = app.add_subcommand(entry.name, entry.summary);
    ctx->binder.sub = ctx->sub;
    add_specific(*ctx);
    contexts.push_back(ctx);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;  // bad flags are config rejections
  }

  try {
    for (const auto& ctx : contexts)
      if (ctx->sub->parsed()) return run_subcommand(*ctx);
    std::cerr << "no subcommand selected\n";
    return 2;
  } catch (const beam::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const beam::NumericError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
