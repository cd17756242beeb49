#include "ovrv/platoon.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "ovrv/errors.hpp"

namespace ovrv {

namespace {

constexpr double kDtTolerance = 1e-9;
constexpr double kTransientPeriods = 10.0;
constexpr double kWindowPeriods = 2.0;

struct Derivative {
  double ds;
  double dv;
};

inline Derivative rhs(const ModelParams& p, double s, double v, double lead_v, double d) {
  const double rel = lead_v - v;
  return {rel, accel_unchecked(p, s, v, rel) + d};
}

// Records entry into a negative region (not every sample inside it).
class EventTracker {
 public:
  void observe(std::vector<SimEvent>& log, double t, double s, double v) {
    const bool neg_gap = s < 0.0;
    const bool neg_vel = v < 0.0;
    if (neg_gap && !in_neg_gap_) log.push_back({0, EventKind::kNegativeGap, t, s});
    if (neg_vel && !in_neg_vel_) log.push_back({0, EventKind::kNegativeVelocity, t, v});
    in_neg_gap_ = neg_gap;
    in_neg_vel_ = neg_vel;
  }

 private:
  bool in_neg_gap_ = false;
  bool in_neg_vel_ = false;
};

double min_over(std::span<const double> v) {
  return v.empty() ? std::numeric_limits<double>::quiet_NaN() : *std::min_element(v.begin(), v.end());
}

}  // namespace

std::string_view integrator_name(Integrator integrator) {
  return integrator == Integrator::kEuler ? "euler" : "rk4";
}

Integrator parse_integrator(std::string_view name) {
  if (name == "euler") return Integrator::kEuler;
  if (name == "rk4") return Integrator::kRk4;
  throw DomainError("unknown integrator '" + std::string(name) + "' (expected euler or rk4)");
}

FollowerSeries simulate_follower(const ModelParams& params, const TimeSeries& lead, double s0,
                                 double v0, double dt, Integrator integrator,
                                 std::span<const double> disturbance) {
  if (lead.empty()) throw FormatError("simulate_follower: empty lead velocity series");
  if (!(dt > 0.0) || std::abs(lead.dt - dt) > kDtTolerance * dt) {
    throw FormatError("simulate_follower: lead series step " + std::to_string(lead.dt) +
                      " s does not match dt " + std::to_string(dt) + " s");
  }
  if (!std::isfinite(s0) || !std::isfinite(v0)) {
    throw DomainError("simulate_follower: non-finite initial condition");
  }
  if (!disturbance.empty() && disturbance.size() != lead.size()) {
    throw FormatError("simulate_follower: disturbance length differs from lead length");
  }

  const std::size_t n = lead.size();
  const auto& vl = lead.values;
  auto dist = [&](std::size_t i) { return disturbance.empty() ? 0.0 : disturbance[i]; };

  FollowerSeries out;
  out.t0 = lead.t0;
  out.dt = dt;
  out.s.resize(n);
  out.v.resize(n);
  out.a.resize(n);

  EventTracker tracker;
  double s = s0;
  double v = v0;
  for (std::size_t i = 0; i < n; ++i) {
    out.s[i] = s;
    out.v[i] = v;
    const Derivative k1 = rhs(params, s, v, vl[i], dist(i));
    out.a[i] = k1.dv;
    tracker.observe(out.events, lead.time(i), s, v);
    if (i + 1 == n) break;

    if (integrator == Integrator::kEuler) {
      s = s + dt * k1.ds;
      v = v + dt * k1.dv;
    } else {
      const double lead_mid = 0.5 * (vl[i] + vl[i + 1]);
      const double d_mid = 0.5 * (dist(i) + dist(i + 1));
      const double h = 0.5 * dt;
      const Derivative k2 = rhs(params, s + h * k1.ds, v + h * k1.dv, lead_mid, d_mid);
      const Derivative k3 = rhs(params, s + h * k2.ds, v + h * k2.dv, lead_mid, d_mid);
      const Derivative k4 = rhs(params, s + dt * k3.ds, v + dt * k3.dv, vl[i + 1], dist(i + 1));
      s = s + dt / 6.0 * (k1.ds + 2.0 * k2.ds + 2.0 * k3.ds + k4.ds);
      v = v + dt / 6.0 * (k1.dv + 2.0 * k2.dv + 2.0 * k3.dv + k4.dv);
    }
  }
  return out;
}

double euler_squared_velocity_error(const ModelParams& params, std::span<const double> lead_velocity,
                                    std::span<const double> measured_velocity, double s0, double v0,
                                    double dt) {
  const std::size_t n = std::min(lead_velocity.size(), measured_velocity.size());
  double s = s0;
  double v = v0;
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double err = v - measured_velocity[i];
    sum += err * err;
    // Same update as simulate_follower's Euler branch.
    const Derivative k1 = rhs(params, s, v, lead_velocity[i], 0.0);
    s = s + dt * k1.ds;
    v = v + dt * k1.dv;
  }
  return sum;
}

PlatoonResult simulate_platoon(const PlatoonScenario& sc) {
  if (!(sc.dt > 0.0)) throw DomainError("simulate_platoon: dt must be positive");
  if (sc.followers.empty()) throw DomainError("simulate_platoon: at least one follower is required");
  if (sc.lead.empty()) throw FormatError("simulate_platoon: empty lead profile");
  if (sc.duration != 0.0 && !(sc.duration >= sc.dt)) {
    throw DomainError("simulate_platoon: duration must be >= dt");
  }
  if (sc.initial && sc.initial->size() != sc.followers.size()) {
    throw DomainError("simulate_platoon: one initial state per follower is required");
  }
  if (!sc.disturbance.empty() && sc.disturbance.size() != sc.followers.size()) {
    throw DomainError("simulate_platoon: one disturbance series per follower is required");
  }

  TimeSeries leader = sc.lead;
  if (sc.duration > 0.0) {
    const std::size_t n = sample_count(sc.duration, sc.dt);
    if (n > leader.size()) {
      throw FormatError("simulate_platoon: lead profile covers " + std::to_string(leader.duration()) +
                        " s, shorter than the requested " + std::to_string(sc.duration) + " s");
    }
    leader.values.resize(n);
  }

  PlatoonResult result;
  result.t0 = leader.t0;
  result.dt = sc.dt;
  result.lead_velocity = leader.values;
  result.metrics_start = sc.metrics_start;

  const double v_init = leader.values.front();
  for (std::size_t i = 0; i < sc.followers.size(); ++i) {
    const auto& p = sc.followers[i];
    double s0 = 0.0;
    double v0 = 0.0;
    if (sc.initial) {
      s0 = (*sc.initial)[i].s;
      v0 = (*sc.initial)[i].v;
    } else {
      s0 = equilibrium_gap(p, v_init);
      v0 = v_init;
    }
    std::span<const double> dist;
    if (!sc.disturbance.empty()) dist = sc.disturbance[i];
    if (!dist.empty() && dist.size() < leader.size()) {
      throw FormatError("simulate_platoon: disturbance shorter than the simulated span");
    }
    if (!dist.empty()) dist = dist.first(leader.size());

    auto series = simulate_follower(p, leader, s0, v0, sc.dt, sc.integrator, dist);
    for (auto& e : series.events) {
      e.vehicle = i + 1;
      result.events.push_back(e);
    }
    leader.values = series.v;
    result.vehicles.push_back(std::move(series));
  }

  // Metrics window.
  std::size_t first = 0;
  if (sc.metrics_start > result.t0) {
    first = static_cast<std::size_t>(std::ceil((sc.metrics_start - result.t0) / sc.dt - 1e-9));
    first = std::min(first, result.size() - 1);
  }
  auto window = [first](const std::vector<double>& v) {
    return std::span<const double>(v).subspan(first);
  };
  result.peak_to_peak.push_back(peak_to_peak(window(result.lead_velocity)));
  result.min_velocity.push_back(min_over(window(result.lead_velocity)));
  for (const auto& veh : result.vehicles) {
    result.peak_to_peak.push_back(peak_to_peak(window(veh.v)));
    result.min_velocity.push_back(min_over(window(veh.v)));
  }
  for (std::size_t i = 0; i + 1 < result.peak_to_peak.size(); ++i) {
    const double base = result.peak_to_peak[i];
    result.amplification.push_back(base > 0.0 ? result.peak_to_peak[i + 1] / base
                                              : std::numeric_limits<double>::quiet_NaN());
  }
  std::stable_sort(result.events.begin(), result.events.end(),
                   [](const SimEvent& a, const SimEvent& b) { return a.t < b.t; });
  return result;
}

SinusoidResponse sinusoid_response(const ModelParams& params, const SinusoidSpec& spec) {
  if (!(spec.omega > 0.0) || !std::isfinite(spec.omega)) {
    throw DomainError("sinusoid_response: omega must be positive");
  }
  if (!(spec.amplitude >= 0.0) || !(spec.amplitude < spec.v_star)) {
    throw DomainError("sinusoid_response: need 0 <= amplitude < v_star");
  }
  if (spec.n_followers == 0) throw DomainError("sinusoid_response: at least one follower is required");
  if (!(spec.warmup >= 0.0)) throw DomainError("sinusoid_response: warmup must be >= 0");

  const double period = 2.0 * std::numbers::pi / spec.omega;
  const double duration =
      spec.duration > 0.0 ? spec.duration : spec.warmup + (kTransientPeriods + kWindowPeriods) * period;
  const double available = duration - spec.warmup;
  if (available < period) {
    throw DomainError("sinusoid_response: duration leaves less than one full period after warmup");
  }

  TimeSeries lead;
  lead.dt = spec.dt;
  const std::size_t n = sample_count(duration, spec.dt);
  lead.values.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = lead.time(i);
    lead.values[i] = t < spec.warmup
                         ? spec.v_star
                         : spec.v_star + spec.amplitude * std::sin(spec.omega * (t - spec.warmup));
  }

  PlatoonScenario sc;
  sc.lead = std::move(lead);
  sc.followers.assign(spec.n_followers, params);
  sc.dt = spec.dt;

  SinusoidResponse out;
  out.period = period;
  const double window_periods = std::min(kWindowPeriods, std::floor(available / period));
  out.window_start = duration - window_periods * period;
  out.settled = out.window_start - spec.warmup >= kTransientPeriods * period - 1e-9;
  sc.metrics_start = out.window_start;
  out.platoon = simulate_platoon(sc);

  for (double ptp : out.platoon.peak_to_peak) out.amplitude.push_back(0.5 * ptp);
  for (std::size_t i = 0; i + 1 < out.amplitude.size(); ++i) {
    out.amplitude_ratio.push_back(out.amplitude[i] > 0.0 ? out.amplitude[i + 1] / out.amplitude[i]
                                                         : std::numeric_limits<double>::quiet_NaN());
  }
  return out;
}

PlatoonResult empirical_lead_response(const ModelParams& params, const TimeSeries& recorded_lead,
                                      std::size_t n_followers) {
  if (recorded_lead.empty()) throw FormatError("empirical_lead_response: empty lead series");
  if (n_followers == 0) throw DomainError("empirical_lead_response: at least one follower is required");
  PlatoonScenario sc;
  sc.lead = recorded_lead;
  sc.followers.assign(n_followers, params);
  sc.dt = recorded_lead.dt;
  return simulate_platoon(sc);
}

}  // namespace ovrv
