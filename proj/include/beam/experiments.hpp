#pragma once
#include <cstdint>
#include <json.hpp>
#include <string>
#include <utility>
#include <vector>

#include "beam/field.hpp"

namespace beam {

using Json = nlohmann::ordered_json;

// Every knob of every experiment, flat in memory, nested in the JSON config
// (sections grid/physics/solver/data/sweep/analysis/dispersion). A config file
// may give any subset of keys; the rest come from the experiment's defaults.
// Unknown keys are rejected. to_json always emits the full canonical form,
// which is what gets hashed into the run directory name.
struct RunConfig {
  std::string experiment = "linear";

  GridSpec grid{1, 128, 16.0};

  // physics
  double kappa = 3.0;
  double omega = -1.0;
  double s = 1.0;

  // solver
  double T = 0.5;
  double dt = 1e-3;
  double tol = 1e-10;
  int nodes_per_unit = 64;
  int max_iters = 25;
  int gl_order = 4;
  int record_stride = 0;
  bool dealias = true;
  bool allow_beyond_window = false;
  bool write_snapshots = false;

  // data
  double amp = 0.05;
  double decay = 1.0;   // gaussian_data exponent
  double band_lo = 1.0; // random_band_field support
  double band_hi = 3.0;
  int l = 2;            // bump power for the dispersion experiments
  double psi_amp = 1.1;
  double psi_width = 1.0;

  // sweep lists
  std::vector<double> eps_list;
  std::vector<double> nu_list;
  std::vector<double> times;

  // analysis (admissible / regime / strichartz); dim is decoupled from grid.n
  // because the exact-arithmetic checks run in dimensions the grid cannot hold
  int dim = 2;
  std::string p = "4";
  std::string q = "4";
  std::string r = "4";
  std::string s_gain = "0";
  double rhs_s = 0.0;
  std::string space = "homogeneous";
  int samples = 4;
  int time_samples = 33;
  double window_fraction = 1.0;

  // dispersion
  int k = 1;
  double tau_max = 3.0;
  int tau_samples = 12;
  double profile_tol = 1e-12;
  double nu_over_eps = 0.02;
  double tau_step = 0.25;
  double tau_report = 6.0;
  double fit_start = 3.0;

  std::uint64_t seed = 42;
  std::string out_dir = "runs";

  void validate() const;
  Json to_json() const;
  static RunConfig from_json(const Json& j);     // defaults + overlay, unknown keys rejected
  static RunConfig from_text(const std::string& text);  // parse JSON text first
};

// Baseline config for one experiment tag: grid, physics, sweeps, and data knobs
// set to the documented defaults the acceptance runs use. ConfigError for an
// unknown tag.
RunConfig default_config(const std::string& experiment);

struct CatalogEntry {
  std::string name;
  std::string summary;
};

// One entry per CLI subcommand, in dispatch order.
const std::vector<CatalogEntry>& list_experiments();

// In-memory result of one experiment: scalar/tabular results as JSON, the CSV
// series (first row is the header), optional field snapshots, and free-form
// notes (window flags, gauge choices) echoed into the report.
struct ExperimentOutput {
  Json results;
  std::vector<std::vector<std::string>> series;
  std::vector<std::pair<std::string, Field>> snapshots;
  std::vector<std::string> notes;
};

// Pure dispatch: config in, results out, no filesystem traffic. Deterministic
// given the config (the seed lives inside it).
ExperimentOutput run_experiment(const RunConfig& cfg);

struct RunArtifacts {
  std::string run_dir;
  Json report;
  double wall_seconds = 0.0;  // written to timing.txt, never into report.json
};

// run_experiment plus persistence: writes report.json, series.csv, snapshots,
// and timing.txt into <out_dir>/<experiment>-<hash8(config)>/. Rerunning the
// same config rewrites the same directory with byte-identical report bytes.
RunArtifacts run(const RunConfig& cfg);

}  // namespace beam
