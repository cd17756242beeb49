#include "ovrv/serialization.hpp"

#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>

#include "ovrv/csv.hpp"

namespace ovrv {

namespace {

Json optional_number(std::optional<double> v) {
  return v && std::isfinite(*v) ? Json(*v) : Json(nullptr);
}

Json number_or_null(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

double require_number(const Json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number()) {
    throw FormatError(std::string("JSON field '") + key + "' must be a number");
  }
  return j.at(key).get<double>();
}

std::string_view event_name(EventKind kind) {
  return kind == EventKind::kNegativeGap ? "negative_gap" : "negative_velocity";
}

Json events_json(std::span<const SimEvent> events) {
  Json out = Json::array();
  for (const auto& e : events) {
    out.push_back({{"vehicle", e.vehicle}, {"kind", event_name(e.kind)}, {"t", e.t}, {"value", e.value}});
  }
  return out;
}

Json numbers(std::span<const double> v) {
  Json out = Json::array();
  for (double x : v) out.push_back(number_or_null(x));
  return out;
}

}  // namespace

Json to_json(const ModelParams& p) {
  return {{"k1", p.k1()}, {"k2", p.k2()}, {"tau_e", p.tau_e()}, {"eta", p.eta()}};
}

ModelParams params_from_json(const Json& j) {
  if (!j.is_object()) throw FormatError("model parameters must be a JSON object");
  try {
    return {require_number(j, "k1"), require_number(j, "k2"), require_number(j, "tau_e"),
            require_number(j, "eta")};
  } catch (const DomainError& e) {
    throw FormatError(e.what());
  }
}

ModelParams read_params_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open parameter file '" + path.string() + "'");
  try {
    const Json j = Json::parse(in);
    // Calibration results carry their fit under best_params.
    if (j.is_object() && j.contains("best_params") && !j.contains("k1")) return params_from_json(j.at("best_params"));
    return params_from_json(j);
  } catch (const Json::exception& e) {
    throw FormatError(path.string() + ": " + e.what());
  } catch (const FormatError& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

Json to_json(const RdcReport& report) {
  Json checks = Json::array();
  for (const auto& c : report.checks) checks.push_back({{"name", c.name}, {"value", c.value}, {"pass", c.pass}});
  return {{"pass", report.pass}, {"checks", checks}};
}

Json to_json(const StabilityReport& r) {
  Json curve = Json::array();
  for (const auto& p : r.gain_curve) curve.push_back({p.omega, p.gain_db});
  return {{"lambda2", optional_number(r.lambda2)},
          {"is_string_stable", r.is_string_stable},
          {"marginal", r.marginal},
          {"crossover_omega", optional_number(r.crossover_omega)},
          {"peak_gain_db", r.peak_gain_db},
          {"peak_omega", r.peak_omega},
          {"gain_curve", curve}};
}

std::string format_bode_csv(std::span<const GainPoint> curve) {
  std::string out = "omega_rad_s,gain_db\n";
  for (const auto& p : curve) out += csv::format(p.omega) + ',' + csv::format(p.gain_db) + '\n';
  return out;
}

std::string format_sweep_csv(std::span<const SweepCell> cells) {
  std::string out = "k1,k2,tau_e,lambda2,stable\n";
  for (const auto& c : cells) {
    const char* cls = c.cls == CellClass::kStable ? "true" : c.cls == CellClass::kUnstable ? "false" : "undefined";
    out += csv::format(c.k1) + ',' + csv::format(c.k2) + ',' + csv::format(c.tau_e) + ',' +
           csv::format(c.lambda2) + ',' + cls + '\n';
  }
  return out;
}

std::string format_platoon_csv(const PlatoonResult& r) {
  std::string out = "t,vehicle_index,space_gap_m,velocity_mps,accel_mps2\n";
  const std::size_t n = r.size();
  for (std::size_t i = 0; i < n; ++i) {
    const std::string t = csv::format(r.t0 + r.dt * static_cast<double>(i));
    const double lead_accel = i + 1 < n ? (r.lead_velocity[i + 1] - r.lead_velocity[i]) / r.dt : 0.0;
    out += t + ",0,nan," + csv::format(r.lead_velocity[i]) + ',' + csv::format(lead_accel) + '\n';
    for (std::size_t k = 0; k < r.vehicles.size(); ++k) {
      const auto& v = r.vehicles[k];
      out += t + ',' + std::to_string(k + 1) + ',' + csv::format(v.s[i]) + ',' + csv::format(v.v[i]) + ',' +
             csv::format(v.a[i]) + '\n';
    }
  }
  return out;
}

Json summary_json(const PlatoonResult& r) {
  return {{"n_followers", r.vehicles.size()},
          {"dt", r.dt},
          {"n_samples", r.size()},
          {"metrics_start", r.metrics_start},
          {"peak_to_peak_mps", numbers(r.peak_to_peak)},
          {"min_velocity_mps", numbers(r.min_velocity)},
          {"amplification", numbers(r.amplification)},
          {"events", events_json(r.events)}};
}

Json summary_json(const SinusoidResponse& s) {
  Json j = summary_json(s.platoon);
  j["period_s"] = s.period;
  j["window_start_s"] = s.window_start;
  j["settled"] = s.settled;
  j["amplitude_mps"] = numbers(s.amplitude);
  j["amplitude_ratio"] = numbers(s.amplitude_ratio);
  return j;
}

std::string format_profile_csv(const TimeSeries& series) {
  std::string out = "t,velocity_mps\n";
  for (std::size_t i = 0; i < series.size(); ++i) {
    out += csv::format(series.time(i)) + ',' + csv::format(series.values[i]) + '\n';
  }
  return out;
}

TimeSeries parse_profile_csv(std::istream& in) {
  const auto table = csv::read(in, {"t", "velocity_mps"});
  const auto& t = table.column("t");
  TimeSeries out;
  out.t0 = t.empty() ? 0.0 : t.front();
  out.dt = require_uniform(t);
  out.values = table.column("velocity_mps");
  return out;
}

TimeSeries read_profile_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open '" + path.string() + "'");
  try {
    return parse_profile_csv(in);
  } catch (const FormatError& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

Json to_json(const ProfileSpec& spec) {
  Json j;
  j["kind"] = profile_kind_name(spec.kind);
  j["dt"] = spec.dt;
  Json segs = Json::array();
  for (const auto& s : spec.segments) segs.push_back({{"velocity_mps", s.velocity}, {"hold_s", s.hold}});
  j["segments"] = segs;
  if (spec.ramp_accel) {
    j["transition"] = {{"type", "ramp"}, {"accel_mps2", *spec.ramp_accel}};
  } else {
    j["transition"] = {{"type", "instantaneous"}};
  }
  if (spec.kind == ProfileKind::kSinusoid) {
    const auto& s = spec.sinusoid;
    j["sinusoid"] = {{"v_star", s.v_star}, {"amplitude", s.amplitude}, {"omega", s.omega},
                     {"warmup", s.warmup}, {"duration", s.duration}};
  }
  return j;
}

ProfileSpec profile_spec_from_json(const Json& j) {
  try {
    ProfileSpec spec;
    spec.kind = parse_profile_kind(j.at("kind").get<std::string>());
    spec.dt = j.value("dt", spec.dt);
    if (j.contains("segments")) {
      for (const auto& s : j.at("segments")) {
        spec.segments.push_back({s.at("velocity_mps").get<double>(), s.at("hold_s").get<double>()});
      }
    }
    if (j.contains("transition")) {
      const auto& t = j.at("transition");
      const auto type = t.at("type").get<std::string>();
      if (type == "ramp") {
        spec.ramp_accel = t.at("accel_mps2").get<double>();
      } else if (type != "instantaneous") {
        throw FormatError("unknown transition type '" + type + "'");
      }
    }
    if (j.contains("sinusoid")) {
      const auto& s = j.at("sinusoid");
      spec.sinusoid.v_star = s.value("v_star", spec.sinusoid.v_star);
      spec.sinusoid.amplitude = s.value("amplitude", spec.sinusoid.amplitude);
      spec.sinusoid.omega = s.value("omega", spec.sinusoid.omega);
      spec.sinusoid.warmup = s.value("warmup", spec.sinusoid.warmup);
      spec.sinusoid.duration = s.value("duration", spec.sinusoid.duration);
    }
    validate(spec);
    return spec;
  } catch (const Json::exception& e) {
    throw FormatError(std::string("profile spec: ") + e.what());
  } catch (const DomainError& e) {
    throw FormatError(std::string("profile spec: ") + e.what());
  }
}

void apply_config(const Json& c, CalibrationProblem& p) {
  try {
    p.dt = c.value("dt", p.dt);
    p.n_starts = c.value("n_starts", p.n_starts);
    p.seed = c.value("seed", p.seed);
    p.split = c.value("split", p.split);
    p.threads = c.value("threads", p.threads);
    if (c.contains("bounds")) {
      const auto& b = c.at("bounds");
      auto pair = [&b](const char* key, std::array<double, 2>& out) {
        if (!b.contains(key)) return;
        const auto& v = b.at(key);
        if (!v.is_array() || v.size() != 2) throw FormatError(std::string("bounds.") + key + " must be [lo, hi]");
        out = {v[0].get<double>(), v[1].get<double>()};
      };
      pair("k1", p.bounds.k1);
      pair("k2", p.bounds.k2);
      pair("tau_e", p.bounds.tau_e);
      pair("eta", p.bounds.eta);
    }
    if (c.contains("local")) {
      const auto& l = c.at("local");
      p.local.x_tol = l.value("x_tol", p.local.x_tol);
      p.local.f_tol = l.value("f_tol", p.local.f_tol);
      p.local.max_iterations = l.value("max_iterations", p.local.max_iterations);
      p.local.initial_step = l.value("initial_step", p.local.initial_step);
    }
  } catch (const Json::exception& e) {
    throw FormatError(std::string("calibration config: ") + e.what());
  }
}

Json config_json(const CalibrationProblem& p) {
  return {{"dt", p.dt},
          {"n_starts", p.n_starts},
          {"seed", p.seed},
          {"split", p.split},
          {"bounds",
           {{"k1", p.bounds.k1}, {"k2", p.bounds.k2}, {"tau_e", p.bounds.tau_e}, {"eta", p.bounds.eta}}},
          {"local",
           {{"x_tol", p.local.x_tol},
            {"f_tol", p.local.f_tol},
            {"max_iterations", p.local.max_iterations},
            {"initial_step", p.local.initial_step}}},
          {"integrator", "euler"},
          {"test_evaluation", "continuous simulation from t=0 (no re-initialization at the split)"}};
}

Json to_json(const ErrorRow& r) {
  return {{"profile", r.profile},
          {"setting", r.setting},
          {"duration_s", number_or_null(r.duration_s)},
          {"distance_km", number_or_null(r.distance_km)},
          {"max_velocity_kmh", number_or_null(r.max_velocity_kmh)},
          {"min_velocity_kmh", number_or_null(r.min_velocity_kmh)},
          {"velocity_train_rmse_mps", number_or_null(r.velocity_train_rmse)},
          {"velocity_test_rmse_mps", number_or_null(r.velocity_test_rmse)},
          {"space_gap_train_rmse_m", number_or_null(r.gap_train_rmse)},
          {"space_gap_test_rmse_m", number_or_null(r.gap_test_rmse)},
          {"n_train", r.n_train},
          {"n_test", r.n_test}};
}

Json to_json(const CalibrationResult& r) {
  Json starts = Json::array();
  for (const auto& s : r.per_start) {
    starts.push_back({{"initial", to_json(s.initial)},
                      {"final", to_json(s.final_params)},
                      {"rmse_velocity", s.rmse},
                      {"converged", s.converged},
                      {"iterations", s.iterations},
                      {"evaluations", s.evaluations}});
  }
  Json rows = Json::array();
  for (const auto& row : r.errors.rows) rows.push_back(to_json(row));
  return {{"best_params", to_json(r.best_params)},
          {"best_rmse_velocity", r.best_rmse_velocity},
          {"best_start", r.best_start},
          {"errors", {{"rows", rows}, {"summary", to_json(r.errors.summary)}}},
          {"per_start", starts}};
}

std::string format_error_table_csv(const ErrorTable& table) {
  std::string out =
      "profile,setting,duration_s,distance_km,max_velocity_kmh,min_velocity_kmh,"
      "velocity_train_error_mps,velocity_test_error_mps,space_gap_train_error_m,space_gap_test_error_m\n";
  auto cell = [](double v) { return std::isfinite(v) ? csv::format(v) : std::string(); };
  auto line = [&](const ErrorRow& r) {
    out += r.profile + ',' + r.setting + ',' + cell(r.duration_s) + ',' + cell(r.distance_km) + ',' +
           cell(r.max_velocity_kmh) + ',' + cell(r.min_velocity_kmh) + ',' + cell(r.velocity_train_rmse) + ',' +
           cell(r.velocity_test_rmse) + ',' + cell(r.gap_train_rmse) + ',' + cell(r.gap_test_rmse) + '\n';
  };
  for (const auto& r : table.rows) line(r);
  line(table.summary);
  return out;
}

Json to_json(const ValidationReport& r) {
  auto hist = [](const Histogram& h) { return Json{{"edges", h.edges}, {"counts", h.counts}}; };
  return {{"n_samples", r.n_samples},
          {"true_separation_m", r.true_separation},
          {"mean_separation_m", r.mean_separation},
          {"mean_position_error_m", r.mean_position_error},
          {"mean_abs_position_error_m", r.mean_abs_position_error},
          {"mean_abs_velocity_difference_mps", r.mean_abs_velocity_difference},
          {"position_error_histogram", hist(r.position_error)},
          {"velocity_difference_histogram", hist(r.velocity_difference)}};
}

}  // namespace ovrv
