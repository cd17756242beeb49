// ovrv: command-line front end for the OVRV car-following toolkit.
//
// Exit codes: 0 success, 2 usage or input error, 3 numerical failure.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ovrv/calibration.hpp"
#include "ovrv/csv.hpp"
#include "ovrv/errors.hpp"
#include "ovrv/model.hpp"
#include "ovrv/platoon.hpp"
#include "ovrv/profiles.hpp"
#include "ovrv/serialization.hpp"
#include "ovrv/stability.hpp"
#include "ovrv/trajectory_io.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitNumerical = 3;

// Raised for bad flag combinations detected after CLI11 parsing.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ParamOverrides {
  std::string path;
  std::optional<double> k1, k2, tau_e, eta;

  void attach(CLI::App* cmd, bool required) {
    auto* opt = cmd->add_option("--params", path, "Model parameter JSON {k1, k2, tau_e, eta}");
    if (required) opt->required();
    cmd->add_option("--k1", k1, "Override k1 [1/s^2]");
    cmd->add_option("--k2", k2, "Override k2 [1/s]");
    cmd->add_option("--tau-e", tau_e, "Override the effective time-gap tau_e [s]");
    cmd->add_option("--eta", eta, "Override the jam distance eta [m]");
  }

  ovrv::ModelParams load() const {
    if (!fs::exists(path)) throw ovrv::FormatError("parameter file not found: '" + path + "'");
    auto p = ovrv::read_params_file(path);
    if (k1) p = p.with_k1(*k1);
    if (k2) p = p.with_k2(*k2);
    if (tau_e) p = p.with_tau_e(*tau_e);
    if (eta) p = p.with_eta(*eta);
    return p;
  }
};

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw ovrv::FormatError("cannot create output directory '" + dir.string() + "'");
}

void write_json(const fs::path& path, const ovrv::Json& j) { ovrv::csv::write_file_atomic(path, j.dump(2) + "\n"); }

// ---- simulate ----

struct SimulateArgs {
  ParamOverrides params;
  std::string profile;
  std::string lead_csv;
  std::size_t followers = 1;
  double dt = 0.1;
  std::size_t cycles = 1;
  std::string integrator = "euler";
  std::optional<double> ramp_accel;
  ovrv::StepDownUp step;
  ovrv::SinusoidSpec sinusoid;
  double metrics_start = 0.0;
  std::string out = ".";
};

int run_simulate(const SimulateArgs& a) {
  const auto params = a.params.load();
  if (a.profile.empty() == a.lead_csv.empty()) throw UsageError("give exactly one of --profile or --lead");
  if (a.followers == 0) throw UsageError("--followers must be >= 1");
  const auto integrator = ovrv::parse_integrator(a.integrator);
  const fs::path out(a.out);
  ensure_dir(out);

  if (a.profile == "sinusoid") {
    auto spec = a.sinusoid;
    spec.n_followers = a.followers;
    spec.dt = a.dt;
    const auto resp = ovrv::sinusoid_response(params, spec);
    ovrv::csv::write_file_atomic(out / "platoon.csv", ovrv::format_platoon_csv(resp.platoon));
    auto summary = ovrv::summary_json(resp);
    summary["params"] = ovrv::to_json(params);
    summary["gamma_magnitude"] = ovrv::gamma_magnitude(params, spec.omega);
    write_json(out / "summary.json", summary);
    std::cout << summary.dump(2) << "\n";
    return kExitOk;
  }

  ovrv::TimeSeries lead;
  if (!a.lead_csv.empty()) {
    lead = ovrv::read_profile_csv(a.lead_csv);
  } else if (a.profile == "step") {
    lead = ovrv::generate(ovrv::step_down_up_spec(a.step, a.dt));
  } else {
    ovrv::BuiltinOptions opts;
    opts.ramp_accel = a.ramp_accel;
    lead = ovrv::builtin(a.profile, a.dt, a.cycles, opts);
  }

  ovrv::PlatoonScenario sc;
  sc.lead = lead;
  sc.followers.assign(a.followers, params);
  sc.dt = lead.dt;
  sc.integrator = integrator;
  sc.metrics_start = a.metrics_start;
  const auto result = ovrv::simulate_platoon(sc);

  ovrv::csv::write_file_atomic(out / "platoon.csv", ovrv::format_platoon_csv(result));
  if (a.followers == 1) {
    ovrv::Trajectory tr;
    tr.t0 = result.t0;
    tr.dt = result.dt;
    tr.v_lead = result.lead_velocity;
    tr.v_follow = result.vehicles.front().v;
    tr.space_gap = result.vehicles.front().s;
    ovrv::csv::write_file_atomic(out / "trajectory.csv", ovrv::format_trajectory_csv(tr));
  }
  auto summary = ovrv::summary_json(result);
  summary["params"] = ovrv::to_json(params);
  summary["integrator"] = ovrv::integrator_name(integrator);
  write_json(out / "summary.json", summary);
  std::cout << summary.dump(2) << "\n";
  return kExitOk;
}

// ---- stability ----

struct StabilityArgs {
  ParamOverrides params;
  bool bode = false;
  ovrv::BodeRange range;
  std::vector<std::string> sweep;
  std::size_t resolution = 50;
  std::string out = ".";
};

ovrv::SweepRange parse_range(const std::string& key, const std::string& spec) {
  const auto colon = spec.find(':');
  if (colon == std::string::npos) throw UsageError("sweep range for " + key + " must be lo:hi, got '" + spec + "'");
  try {
    std::size_t used = 0;
    const double lo = std::stod(spec.substr(0, colon), &used);
    if (used != colon) throw std::invalid_argument(spec);
    const auto rest = spec.substr(colon + 1);
    const double hi = std::stod(rest, &used);
    if (used != rest.size()) throw std::invalid_argument(spec);
    if (!(lo >= 0.0) || !(hi >= lo)) throw std::invalid_argument(spec);
    return {lo, hi};
  } catch (const std::logic_error&) {
    throw UsageError("invalid sweep range for " + key + ": '" + spec + "'");
  }
}

std::vector<double> parse_list(const std::string& key, const std::string& spec) {
  std::vector<double> values;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      const double v = std::stod(item, &used);
      if (used != item.size() || !(v >= 0.0)) throw std::invalid_argument(item);
      values.push_back(v);
    } catch (const std::logic_error&) {
      throw UsageError("invalid value list for " + key + ": '" + spec + "'");
    }
  }
  if (values.empty()) throw UsageError("empty value list for " + key);
  return values;
}

int run_stability(const StabilityArgs& a) {
  if (a.params.path.empty() && a.sweep.empty()) throw UsageError("give --params and/or --sweep");
  const fs::path out(a.out);
  ensure_dir(out);

  if (!a.params.path.empty()) {
    const auto params = a.params.load();
    const auto report = ovrv::analyze(params, a.range);
    auto j = ovrv::to_json(report);
    j["params"] = ovrv::to_json(params);
    j["rdc"] = ovrv::to_json(ovrv::check_rdc(params));
    write_json(out / "stability.json", j);
    if (a.bode) ovrv::csv::write_file_atomic(out / "bode.csv", ovrv::format_bode_csv(report.gain_curve));
    j.erase("gain_curve");
    std::cout << j.dump(2) << "\n";
  }

  if (!a.sweep.empty()) {
    std::optional<ovrv::SweepRange> k1, k2;
    std::vector<double> tau;
    for (const auto& item : a.sweep) {
      const auto eq = item.find('=');
      if (eq == std::string::npos) throw UsageError("sweep axis must look like key=spec, got '" + item + "'");
      const auto key = item.substr(0, eq);
      const auto spec = item.substr(eq + 1);
      if (key == "k1") {
        k1 = parse_range(key, spec);
      } else if (key == "k2") {
        k2 = parse_range(key, spec);
      } else if (key == "tau_e") {
        tau = parse_list(key, spec);
      } else {
        throw UsageError("unknown sweep axis '" + key + "' (expected k1, k2, tau_e)");
      }
    }
    if (!k1 || !k2 || tau.empty()) throw UsageError("--sweep needs k1=lo:hi k2=lo:hi tau_e=v1,v2,...");
    const auto cells = ovrv::stability_sweep(*k1, *k2, tau, a.resolution);
    ovrv::csv::write_file_atomic(out / "sweep.csv", ovrv::format_sweep_csv(cells));
    std::size_t stable = 0;
    for (const auto& c : cells) stable += c.cls == ovrv::CellClass::kStable;
    std::cout << "sweep: " << cells.size() << " cells, " << stable << " string stable\n";
  }
  return kExitOk;
}

// ---- calibrate / evaluate ----

struct DataArgs {
  std::string data_dir;
  std::vector<std::string> trajectories;
  std::string setting;

  void attach(CLI::App* cmd) {
    cmd->add_option("--data", data_dir, "Directory of trajectory CSVs (t_s,v_lead_mps,v_follow_mps,space_gap_m)");
    cmd->add_option("--trajectory", trajectories, "Trajectory CSV file (repeatable)");
    cmd->add_option("--setting", setting, "Following-setting label written to the error table");
  }

  std::vector<ovrv::Trajectory> load() const {
    std::vector<fs::path> files;
    if (!data_dir.empty()) {
      if (!fs::is_directory(data_dir)) throw ovrv::FormatError("data directory not found: '" + data_dir + "'");
      for (const auto& e : fs::directory_iterator(data_dir)) {
        if (e.is_regular_file() && e.path().extension() == ".csv") files.push_back(e.path());
      }
      std::sort(files.begin(), files.end());
    }
    for (const auto& t : trajectories) files.emplace_back(t);
    if (files.empty()) throw ovrv::FormatError("no trajectory files given (empty --data directory?)");
    std::vector<ovrv::Trajectory> out;
    for (const auto& f : files) {
      auto tr = ovrv::read_trajectory_csv(f);
      tr.metadata.setting = setting;
      out.push_back(std::move(tr));
    }
    return out;
  }
};

struct CalibrateArgs {
  DataArgs data;
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> starts;
  std::optional<double> split;
  std::optional<std::size_t> threads;
  std::string out = ".";
};

ovrv::CalibrationProblem build_problem(const DataArgs& data, const std::string& config) {
  ovrv::CalibrationProblem problem;
  if (!config.empty()) {
    std::ifstream in(config);
    if (!in) throw ovrv::FormatError("cannot open config '" + config + "'");
    try {
      ovrv::apply_config(ovrv::Json::parse(in), problem);
    } catch (const ovrv::Json::exception& e) {
      throw ovrv::FormatError(config + ": " + e.what());
    }
  }
  problem.trajectories = data.load();
  if (!problem.trajectories.empty()) problem.dt = problem.trajectories.front().dt;
  return problem;
}

int run_calibrate(const CalibrateArgs& a) {
  auto problem = build_problem(a.data, a.config);
  problem.seed = *a.seed;
  if (a.starts) problem.n_starts = *a.starts;
  if (a.split) problem.split = *a.split;
  if (a.threads) problem.threads = *a.threads;
  const fs::path out(a.out);
  ensure_dir(out);

  const auto result = ovrv::calibrate(problem);
  auto j = ovrv::to_json(result);
  j["config"] = ovrv::config_json(problem);
  j["stability"] = ovrv::to_json(ovrv::analyze(result.best_params));
  j["stability"].erase("gain_curve");
  write_json(out / "calibration.json", j);
  ovrv::csv::write_file_atomic(out / "error_table.csv", ovrv::format_error_table_csv(result.errors));
  ovrv::Json brief = {{"best_params", j["best_params"]},
                      {"best_rmse_velocity", result.best_rmse_velocity},
                      {"summary", j["errors"]["summary"]}};
  std::cout << brief.dump(2) << "\n";
  return kExitOk;
}

struct EvaluateArgs {
  ParamOverrides params;
  DataArgs data;
  std::string config;
  std::optional<double> split;
  std::string out = ".";
};

int run_evaluate(const EvaluateArgs& a) {
  const auto params = a.params.load();
  auto problem = build_problem(a.data, a.config);
  if (a.split) problem.split = *a.split;
  ovrv::validate(problem);
  const fs::path out(a.out);
  ensure_dir(out);
  const auto table = ovrv::evaluate(params, problem);
  const auto text = ovrv::format_error_table_csv(table);
  ovrv::csv::write_file_atomic(out / "error_table.csv", text);
  std::cout << text;
  return kExitOk;
}

// ---- profile / ingest / validate-gps / synthesize ----

struct ProfileArgs {
  std::string name;
  std::string spec;
  double dt = 0.1;
  std::size_t cycles = 1;
  std::optional<double> ramp_accel;
  std::string out;
  std::string spec_out;
};

ovrv::ProfileSpec profile_spec(const ProfileArgs& a) {
  if (!a.spec.empty()) {
    std::ifstream in(a.spec);
    if (!in) throw ovrv::FormatError("cannot open profile spec '" + a.spec + "'");
    try {
      return ovrv::profile_spec_from_json(ovrv::Json::parse(in));
    } catch (const ovrv::Json::exception& e) {
      throw ovrv::FormatError(a.spec + ": " + e.what());
    }
  }
  if (a.name.empty()) throw UsageError("give --name or --spec");
  ovrv::BuiltinOptions opts;
  opts.ramp_accel = a.ramp_accel;
  return ovrv::builtin_spec(a.name, a.dt, a.cycles, opts);
}

int run_profile(const ProfileArgs& a) {
  const auto spec = profile_spec(a);
  const auto text = ovrv::format_profile_csv(ovrv::generate(spec));
  if (a.out.empty()) {
    std::cout << text;
  } else {
    ovrv::csv::write_file_atomic(a.out, text);
  }
  if (!a.spec_out.empty()) write_json(a.spec_out, ovrv::to_json(spec));
  return kExitOk;
}

struct IngestArgs {
  std::string lead;
  std::string follow;
  ovrv::PairOptions options;
  std::optional<double> lead_setback;
  std::optional<double> follow_setback;
  std::string label;
  std::string setting;
  std::string out = "trajectory.csv";
};

int run_ingest(IngestArgs a) {
  const auto lead = ovrv::read_gps_csv(fs::path(a.lead));
  const auto follow = ovrv::read_gps_csv(fs::path(a.follow));
  a.options.offsets_supplied = a.lead_setback.has_value() || a.follow_setback.has_value();
  a.options.offsets.lead_setback = a.lead_setback.value_or(0.0);
  a.options.offsets.follow_setback = a.follow_setback.value_or(0.0);
  auto tr = ovrv::pair_logs(lead, follow, a.options);
  for (const auto& w : tr.metadata.warnings) std::cerr << "warning: " << w << "\n";
  ovrv::csv::write_file_atomic(a.out, ovrv::format_trajectory_csv(tr));
  std::cout << "wrote " << tr.size() << " samples (dt=" << tr.dt << " s) to " << a.out << "\n";
  return kExitOk;
}

struct ValidateArgs {
  std::string a;
  std::string b;
  double separation = 0.0;
  ovrv::ValidationOptions options;
  std::string out;
};

int run_validate(const ValidateArgs& v) {
  const auto report = ovrv::colocated_stats(ovrv::read_gps_csv(fs::path(v.a)), ovrv::read_gps_csv(fs::path(v.b)),
                                            v.separation, v.options);
  const auto j = ovrv::to_json(report);
  if (!v.out.empty()) write_json(v.out, j);
  std::cout << j.dump(2) << "\n";
  return kExitOk;
}

struct SynthesizeArgs {
  ParamOverrides params;
  std::string profile;
  std::string lead_csv;
  double dt = 0.1;
  std::size_t cycles = 1;
  double duration = 0.0;
  ovrv::SynthesisOptions synth;
  std::string out;
};

int run_synthesize(SynthesizeArgs a) {
  const auto params = a.params.load();
  if (a.profile.empty() == a.lead_csv.empty()) throw UsageError("give exactly one of --profile or --lead");
  auto lead = a.lead_csv.empty() ? ovrv::builtin(a.profile, a.dt, a.cycles) : ovrv::read_profile_csv(a.lead_csv);
  if (a.duration > 0.0) {
    const auto n = ovrv::sample_count(a.duration, lead.dt);
    if (n > lead.size()) throw ovrv::DomainError("--duration exceeds the lead profile length");
    lead.values.resize(n);
  }
  if (a.synth.label.empty()) a.synth.label = a.profile;
  const auto tr = ovrv::synthesize(params, lead, a.synth);
  ovrv::csv::write_file_atomic(a.out, ovrv::format_trajectory_csv(tr));
  std::cout << "wrote " << tr.size() << " samples to " << a.out << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"OVRV adaptive-cruise-control car-following toolkit"};
  app.require_subcommand(1);

  SimulateArgs sim;
  auto* simulate = app.add_subcommand("simulate", "Simulate a follower or platoon behind a lead profile");
  sim.params.attach(simulate, true);
  simulate->add_option("--profile", sim.profile, "Lead profile: A-I, step, or sinusoid");
  simulate->add_option("--lead", sim.lead_csv, "Lead profile CSV (t,velocity_mps)");
  simulate->add_option("--followers", sim.followers, "Number of following vehicles")->capture_default_str();
  simulate->add_option("--dt", sim.dt, "Time step [s]")->capture_default_str();
  simulate->add_option("--cycles", sim.cycles, "Repetitions of a built-in profile")->capture_default_str();
  simulate->add_option("--integrator", sim.integrator, "euler or rk4")->capture_default_str();
  simulate->add_option("--ramp-accel", sim.ramp_accel, "Ramp built-in profile transitions at this acceleration [m/s^2]");
  simulate->add_option("--step-high", sim.step.high, "step: cruise velocity [m/s]")->capture_default_str();
  simulate->add_option("--step-drop", sim.step.drop, "step: velocity drop [m/s]")->capture_default_str();
  simulate->add_option("--step-pre", sim.step.pre_hold, "step: hold before the drop [s]")->capture_default_str();
  simulate->add_option("--step-hold", sim.step.low_hold, "step: duration of the drop [s]")->capture_default_str();
  simulate->add_option("--step-post", sim.step.post_hold, "step: hold after recovery [s]")->capture_default_str();
  simulate->add_option("--v-star", sim.sinusoid.v_star, "sinusoid: mean velocity [m/s]")->capture_default_str();
  simulate->add_option("--amplitude", sim.sinusoid.amplitude, "sinusoid: amplitude [m/s]")->capture_default_str();
  simulate->add_option("--omega", sim.sinusoid.omega, "sinusoid: angular frequency [rad/s]")->capture_default_str();
  simulate->add_option("--warmup", sim.sinusoid.warmup, "sinusoid: constant-velocity lead-in [s]")->capture_default_str();
  simulate->add_option("--duration", sim.sinusoid.duration, "sinusoid: total duration [s] (0: warmup + 12 periods)")
      ->capture_default_str();
  simulate->add_option("--metrics-start", sim.metrics_start, "Ignore samples before this time in peak-to-peak metrics")
      ->capture_default_str();
  simulate->add_option("--out", sim.out, "Output directory")->capture_default_str();

  StabilityArgs stab;
  auto* stability = app.add_subcommand("stability", "String-stability report, Bode curve and parameter sweeps");
  stab.params.attach(stability, false);
  stability->add_flag("--bode", stab.bode, "Write bode.csv (omega_rad_s,gain_db)");
  stability->add_option("--omega-min", stab.range.omega_min, "Bode lower frequency [rad/s]")->capture_default_str();
  stability->add_option("--omega-max", stab.range.omega_max, "Bode upper frequency [rad/s]")->capture_default_str();
  stability->add_option("--points", stab.range.n_points, "Bode point count")->capture_default_str();
  stability->add_option("--sweep", stab.sweep, "Sweep axes: k1=lo:hi k2=lo:hi tau_e=v1,v2,...")->expected(1, 3);
  stability->add_option("--resolution", stab.resolution, "Grid points per k1/k2 axis")->capture_default_str();
  stability->add_option("--out", stab.out, "Output directory")->capture_default_str();

  CalibrateArgs cal;
  auto* calibrate = app.add_subcommand("calibrate", "Fit model parameters to trajectories (multi-start)");
  cal.data.attach(calibrate);
  calibrate->add_option("--config", cal.config, "Calibration config JSON (bounds, n_starts, split, dt)");
  calibrate->add_option("--seed", cal.seed, "Random seed for the start points")->required();
  calibrate->add_option("--starts", cal.starts, "Number of random starts (default 100)");
  calibrate->add_option("--split", cal.split, "Leading training fraction of each trajectory (default 0.5)");
  calibrate->add_option("--threads", cal.threads, "Worker threads (0: all cores)");
  calibrate->add_option("--out", cal.out, "Output directory")->capture_default_str();

  EvaluateArgs ev;
  auto* evaluate = app.add_subcommand("evaluate", "Train/test error table for given parameters");
  ev.params.attach(evaluate, true);
  ev.data.attach(evaluate);
  evaluate->add_option("--config", ev.config, "Calibration config JSON (split, dt)");
  evaluate->add_option("--split", ev.split, "Leading training fraction (default 0.5)");
  evaluate->add_option("--out", ev.out, "Output directory")->capture_default_str();

  ProfileArgs prof;
  auto* profile = app.add_subcommand("profile", "Generate a lead velocity profile CSV (t,velocity_mps)");
  profile->add_option("--name", prof.name, "Built-in profile A-I");
  profile->add_option("--spec", prof.spec, "Profile spec JSON");
  profile->add_option("--dt", prof.dt, "Sample step [s]")->capture_default_str();
  profile->add_option("--cycles", prof.cycles, "Repetitions")->capture_default_str();
  profile->add_option("--ramp-accel", prof.ramp_accel, "Ramp transitions at this acceleration [m/s^2]");
  profile->add_option("--out", prof.out, "Output CSV (stdout when omitted)");
  profile->add_option("--spec-out", prof.spec_out, "Also write the expanded spec as JSON");

  IngestArgs ing;
  auto* ingest = app.add_subcommand("ingest", "Pair lead/follower GPS logs into a trajectory CSV");
  ingest->add_option("--lead", ing.lead, "Lead GPS CSV (t_s,lat_deg,lon_deg,vel_mps)")->required();
  ingest->add_option("--follow", ing.follow, "Follower GPS CSV")->required();
  ingest->add_option("--lead-length", ing.options.lead_length, "Lead vehicle length [m]")->capture_default_str();
  ingest->add_option("--dt", ing.options.dt, "Resampling step [s]")->capture_default_str();
  ingest->add_option("--lead-setback", ing.lead_setback, "Lead antenna distance behind its front bumper [m]");
  ingest->add_option("--follow-setback", ing.follow_setback, "Follower antenna distance behind its front bumper [m]");
  ingest->add_option("--max-gap", ing.options.max_sample_gap, "Largest tolerated raw sample spacing [s]")
      ->capture_default_str();
  ingest->add_option("--out", ing.out, "Output trajectory CSV")->capture_default_str();

  ValidateArgs val;
  auto* validate = app.add_subcommand("validate-gps", "Co-located receiver accuracy statistics");
  validate->add_option("--a", val.a, "First receiver GPS CSV")->required();
  validate->add_option("--b", val.b, "Second receiver GPS CSV")->required();
  validate->add_option("--separation", val.separation, "True antenna separation [m]")->required();
  validate->add_option("--bins", val.options.bins, "Histogram bins")->capture_default_str();
  validate->add_option("--dt", val.options.dt, "Resampling step [s] (0: receiver a's rate)")->capture_default_str();
  validate->add_option("--out", val.out, "Output JSON");

  SynthesizeArgs syn;
  auto* synthesize = app.add_subcommand("synthesize", "Generate a synthetic trajectory CSV from known parameters");
  syn.params.attach(synthesize, true);
  synthesize->add_option("--profile", syn.profile, "Built-in lead profile A-I");
  synthesize->add_option("--lead", syn.lead_csv, "Lead profile CSV");
  synthesize->add_option("--dt", syn.dt, "Time step [s]")->capture_default_str();
  synthesize->add_option("--cycles", syn.cycles, "Repetitions of the built-in profile")->capture_default_str();
  synthesize->add_option("--duration", syn.duration, "Truncate to this duration [s]")->capture_default_str();
  synthesize->add_option("--velocity-noise", syn.synth.velocity_noise, "Gaussian velocity noise std-dev [m/s]")
      ->capture_default_str();
  synthesize->add_option("--gap-noise", syn.synth.gap_noise, "Gaussian space-gap noise std-dev [m]")
      ->capture_default_str();
  synthesize->add_option("--seed", syn.synth.seed, "Noise seed")->capture_default_str();
  synthesize->add_option("--label", syn.synth.label, "Profile label");
  synthesize->add_option("--out", syn.out, "Output trajectory CSV")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*simulate) return run_simulate(sim);
    if (*stability) return run_stability(stab);
    if (*calibrate) return run_calibrate(cal);
    if (*evaluate) return run_evaluate(ev);
    if (*profile) return run_profile(prof);
    if (*ingest) return run_ingest(ing);
    if (*validate) return run_validate(val);
    if (*synthesize) return run_synthesize(syn);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ovrv::CalibrationError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const ovrv::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const ovrv::SingularityError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const ovrv::DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ovrv::FormatError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
