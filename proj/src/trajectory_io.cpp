#include "ovrv/trajectory_io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>

#include "ovrv/csv.hpp"

namespace ovrv {

namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;

bool valid_coordinate(double lat, double lon) {
  return std::isfinite(lat) && std::isfinite(lon) && std::abs(lat) <= 90.0 && std::abs(lon) <= 180.0;
}

struct AlignedLogs {
  double t0 = 0.0;
  double dt = 0.1;
  std::size_t n = 0;
  std::vector<double> lat_a, lon_a, vel_a;
  std::vector<double> lat_b, lon_b, vel_b;
};

void collect_gaps(const GpsLog& log, double t_start, double t_end, double max_gap,
                  std::vector<std::pair<double, double>>& gaps) {
  const auto& s = log.samples;
  for (std::size_t i = 1; i < s.size(); ++i) {
    if (s[i].t <= t_start || s[i - 1].t >= t_end) continue;
    if (s[i].t - s[i - 1].t > max_gap) gaps.emplace_back(s[i - 1].t, s[i].t);
  }
}

AlignedLogs align(const GpsLog& a, const GpsLog& b, double dt, double max_gap) {
  validate(a);
  validate(b);
  if (!(dt > 0.0)) throw DomainError("resampling step must be positive");
  const double t_start = std::max(a.samples.front().t, b.samples.front().t);
  const double t_end = std::min(a.samples.back().t, b.samples.back().t);
  if (!(t_end > t_start)) throw FormatError("logs have no temporal overlap");

  std::vector<std::pair<double, double>> gaps;
  collect_gaps(a, t_start, t_end, max_gap, gaps);
  collect_gaps(b, t_start, t_end, max_gap, gaps);
  if (!gaps.empty()) {
    std::sort(gaps.begin(), gaps.end());
    std::ostringstream msg;
    msg << "sampling gaps longer than " << max_gap << " s:";
    for (const auto& [lo, hi] : gaps) msg << " [" << lo << ", " << hi << "]";
    throw SamplingGapError(msg.str(), gaps);
  }

  AlignedLogs out;
  out.t0 = t_start;
  out.dt = dt;
  out.n = static_cast<std::size_t>(std::floor((t_end - t_start) / dt + 1e-9)) + 1;

  auto channels = [&](const GpsLog& log, std::vector<double>& lat, std::vector<double>& lon,
                      std::vector<double>& vel) {
    std::vector<double> t, la, lo, ve;
    for (const auto& s : log.samples) {
      t.push_back(s.t);
      la.push_back(s.lat);
      lo.push_back(s.lon);
      ve.push_back(s.vel);
    }
    lat = resample_linear(t, la, out.t0, dt, out.n);
    lon = resample_linear(t, lo, out.t0, dt, out.n);
    vel = resample_linear(t, ve, out.t0, dt, out.n);
  };
  channels(a, out.lat_a, out.lon_a, out.vel_a);
  channels(b, out.lat_b, out.lon_b, out.vel_b);
  return out;
}

double mean(std::span<const double> v) {
  double sum = 0.0;
  for (double x : v) sum += x;
  return v.empty() ? 0.0 : sum / static_cast<double>(v.size());
}

}  // namespace

double haversine(double lat1, double lon1, double lat2, double lon2) {
  if (!valid_coordinate(lat1, lon1) || !valid_coordinate(lat2, lon2)) {
    throw DomainError("haversine: coordinates out of range");
  }
  const double phi1 = lat1 * kDegToRad;
  const double phi2 = lat2 * kDegToRad;
  const double dphi = (lat2 - lat1) * kDegToRad;
  const double dlambda = (lon2 - lon1) * kDegToRad;
  const double sp = std::sin(0.5 * dphi);
  const double sl = std::sin(0.5 * dlambda);
  const double h = sp * sp + std::cos(phi1) * std::cos(phi2) * sl * sl;
  return 2.0 * kEarthRadiusM * std::asin(std::min(1.0, std::sqrt(h)));
}

void validate(const GpsLog& log) {
  if (log.samples.size() < 2) throw FormatError("GPS log needs at least two samples");
  for (std::size_t i = 0; i < log.samples.size(); ++i) {
    const auto& s = log.samples[i];
    if (!valid_coordinate(s.lat, s.lon)) {
      throw FormatError("GPS sample " + std::to_string(i) + " has invalid coordinates");
    }
    if (!std::isfinite(s.t) || !std::isfinite(s.vel)) {
      throw FormatError("GPS sample " + std::to_string(i) + " is not finite");
    }
    if (i > 0 && !(s.t > log.samples[i - 1].t)) {
      throw FormatError("GPS timestamps must be strictly increasing (sample " + std::to_string(i) + ")");
    }
  }
}

GpsLog read_gps_csv(std::istream& in) {
  const auto table = csv::read(in, {"t_s", "lat_deg", "lon_deg", "vel_mps"});
  const auto& t = table.column("t_s");
  const auto& lat = table.column("lat_deg");
  const auto& lon = table.column("lon_deg");
  const auto& vel = table.column("vel_mps");
  GpsLog log;
  for (std::size_t i = 0; i < table.rows(); ++i) log.samples.push_back({t[i], lat[i], lon[i], vel[i]});
  validate(log);
  std::vector<double> steps;
  for (std::size_t i = 1; i < t.size(); ++i) steps.push_back(t[i] - t[i - 1]);
  std::nth_element(steps.begin(), steps.begin() + static_cast<std::ptrdiff_t>(steps.size() / 2), steps.end());
  log.nominal_rate = 1.0 / steps[steps.size() / 2];
  return log;
}

GpsLog read_gps_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open '" + path.string() + "'");
  try {
    return read_gps_csv(in);
  } catch (const FormatError& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

std::string format_gps_csv(const GpsLog& log) {
  std::string out = "t_s,lat_deg,lon_deg,vel_mps\n";
  for (const auto& s : log.samples) {
    out += csv::format(s.t) + ',' + csv::format(s.lat) + ',' + csv::format(s.lon) + ',' +
           csv::format(s.vel) + '\n';
  }
  return out;
}

void validate(const Trajectory& tr) {
  if (tr.v_lead.empty()) throw FormatError("trajectory is empty");
  if (tr.v_follow.size() != tr.v_lead.size() || tr.space_gap.size() != tr.v_lead.size()) {
    throw FormatError("trajectory series have unequal lengths");
  }
  if (!(tr.dt > 0.0) || !std::isfinite(tr.dt)) throw FormatError("trajectory dt must be positive");
  for (std::size_t i = 0; i < tr.size(); ++i) {
    if (!std::isfinite(tr.space_gap[i]) || !std::isfinite(tr.v_lead[i]) || !std::isfinite(tr.v_follow[i])) {
      throw FormatError("trajectory row " + std::to_string(i) + " is not finite");
    }
  }
}

Trajectory read_trajectory_csv(std::istream& in) {
  const auto table = csv::read(in, {"t_s", "v_lead_mps", "v_follow_mps", "space_gap_m"});
  const auto& t = table.column("t_s");
  Trajectory tr;
  tr.t0 = t.empty() ? 0.0 : t.front();
  tr.dt = require_uniform(t);
  tr.v_lead = table.column("v_lead_mps");
  tr.v_follow = table.column("v_follow_mps");
  tr.space_gap = table.column("space_gap_m");
  validate(tr);
  return tr;
}

Trajectory read_trajectory_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open '" + path.string() + "'");
  Trajectory tr;
  try {
    tr = read_trajectory_csv(in);
  } catch (const FormatError& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
  tr.metadata.label = path.stem().string();
  tr.metadata.sources.push_back(path.string());
  return tr;
}

std::string format_trajectory_csv(const Trajectory& tr) {
  std::string out = "t_s,v_lead_mps,v_follow_mps,space_gap_m\n";
  for (std::size_t i = 0; i < tr.size(); ++i) {
    out += csv::format(tr.time(i)) + ',' + csv::format(tr.v_lead[i]) + ',' +
           csv::format(tr.v_follow[i]) + ',' + csv::format(tr.space_gap[i]) + '\n';
  }
  return out;
}

std::vector<double> resample_linear(std::span<const double> t, std::span<const double> values,
                                    double t0, double dt, std::size_t n) {
  if (t.size() != values.size() || t.empty()) throw DomainError("resample_linear: bad input series");
  const double tol = 1e-9 * dt;
  std::vector<double> out(n);
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double ti = t0 + dt * static_cast<double>(i);
    if (ti < t.front() - tol || ti > t.back() + tol) {
      throw DomainError("resample_linear: grid extends beyond the input span");
    }
    // Grid points within tol of a sample take the sample exactly.
    while (k + 1 < t.size() && t[k + 1] <= ti + tol) ++k;
    if (k + 1 == t.size() || std::abs(ti - t[k]) <= tol) {
      out[i] = values[k];
      continue;
    }
    const double w = std::max(0.0, (ti - t[k]) / (t[k + 1] - t[k]));
    out[i] = values[k] + w * (values[k + 1] - values[k]);
  }
  return out;
}

Trajectory pair_logs(const GpsLog& lead, const GpsLog& follow, const PairOptions& options) {
  const auto aligned = align(lead, follow, options.dt, options.max_sample_gap);
  Trajectory tr;
  tr.t0 = aligned.t0;
  tr.dt = aligned.dt;
  tr.v_lead = aligned.vel_a;
  tr.v_follow = aligned.vel_b;
  tr.space_gap.resize(aligned.n);
  bool negative = false;
  for (std::size_t i = 0; i < aligned.n; ++i) {
    const double d = haversine(aligned.lat_a[i], aligned.lon_a[i], aligned.lat_b[i], aligned.lon_b[i]);
    tr.space_gap[i] = d + options.offsets.lead_setback - options.offsets.follow_setback - options.lead_length;
    negative = negative || tr.space_gap[i] < 0.0;
  }
  if (!options.offsets_supplied) {
    tr.metadata.warnings.emplace_back("antenna offsets not supplied; assumed 0 m");
  }
  if (negative) {
    tr.metadata.warnings.emplace_back("implausible negative space-gap in paired trajectory");
  }
  validate(tr);
  return tr;
}

Histogram histogram(std::span<const double> values, std::size_t bins) {
  if (bins == 0) throw DomainError("histogram needs at least one bin");
  Histogram h;
  h.counts.assign(bins, 0);
  double lo = 0.0;
  double hi = 0.0;
  if (!values.empty()) {
    const auto [mn, mx] = std::minmax_element(values.begin(), values.end());
    lo = *mn;
    hi = *mx;
  }
  if (!(hi > lo)) {
    lo -= 0.5;
    hi += 0.5;
  }
  h.edges.resize(bins + 1);
  for (std::size_t i = 0; i <= bins; ++i) {
    h.edges[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(bins);
  }
  h.edges.back() = hi;
  for (double x : values) {
    auto idx = static_cast<std::size_t>((x - lo) / (hi - lo) * static_cast<double>(bins));
    h.counts[std::min(idx, bins - 1)] += 1;
  }
  return h;
}

ValidationReport colocated_stats(const GpsLog& a, const GpsLog& b, double true_separation,
                                 const ValidationOptions& options) {
  if (!(true_separation >= 0.0)) throw DomainError("true separation must be >= 0");
  const double dt = options.dt > 0.0 ? options.dt : 1.0 / a.nominal_rate;
  const auto aligned = align(a, b, dt, options.max_sample_gap);

  std::vector<double> separation(aligned.n), pos_err(aligned.n), abs_pos_err(aligned.n);
  std::vector<double> vel_diff(aligned.n), abs_vel_diff(aligned.n);
  for (std::size_t i = 0; i < aligned.n; ++i) {
    separation[i] = haversine(aligned.lat_a[i], aligned.lon_a[i], aligned.lat_b[i], aligned.lon_b[i]);
    pos_err[i] = separation[i] - true_separation;
    abs_pos_err[i] = std::abs(pos_err[i]);
    vel_diff[i] = aligned.vel_a[i] - aligned.vel_b[i];
    abs_vel_diff[i] = std::abs(vel_diff[i]);
  }

  ValidationReport r;
  r.n_samples = aligned.n;
  r.true_separation = true_separation;
  r.mean_separation = mean(separation);
  r.mean_position_error = r.mean_separation - true_separation;
  r.mean_abs_position_error = mean(abs_pos_err);
  r.mean_abs_velocity_difference = mean(abs_vel_diff);
  r.position_error = histogram(pos_err, options.bins);
  r.velocity_difference = histogram(vel_diff, options.bins);
  return r;
}

}  // namespace ovrv
