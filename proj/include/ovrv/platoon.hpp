#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "ovrv/model.hpp"
#include "ovrv/time_series.hpp"

namespace ovrv {

enum class Integrator { kEuler, kRk4 };

std::string_view integrator_name(Integrator integrator);
/// Accepts "euler" or "rk4"; throws DomainError otherwise.
Integrator parse_integrator(std::string_view name);

enum class EventKind { kNegativeGap, kNegativeVelocity };

/// Logged when a vehicle enters a negative-gap or negative-velocity region.
/// States are never clamped.
struct SimEvent {
  std::size_t vehicle = 0;  // 1-based follower index
  EventKind kind = EventKind::kNegativeGap;
  double t = 0.0;
  double value = 0.0;
};

struct FollowerSeries {
  double t0 = 0.0;
  double dt = 0.1;
  std::vector<double> s;
  std::vector<double> v;
  std::vector<double> a;
  std::vector<SimEvent> events;

  std::size_t size() const { return v.size(); }
};

/// Simulates one follower behind the given lead velocity series.
///
/// Euler:  s[n+1] = s[n] + dt (vl[n] - v[n]);  v[n+1] = v[n] + dt a[n].
/// RK4:    classical four-stage scheme; the lead velocity (and disturbance)
///         is linearly interpolated at the half step.
///
/// `disturbance`, when non-empty, is an acceleration offset per sample and
/// must match the lead length. Throws FormatError if the lead is empty or
/// its step differs from dt, DomainError on non-finite initial conditions.
FollowerSeries simulate_follower(const ModelParams& params, const TimeSeries& lead_velocity,
                                 double s0, double v0, double dt,
                                 Integrator integrator = Integrator::kEuler,
                                 std::span<const double> disturbance = {});

/// Sum over n < count of (v_sim[n] - measured_v[n])^2 for an Euler rollout,
/// without materializing the trajectory. Produces the same velocities as
/// simulate_follower with Integrator::kEuler.
double euler_squared_velocity_error(const ModelParams& params, std::span<const double> lead_velocity,
                                    std::span<const double> measured_velocity, double s0, double v0,
                                    double dt);

struct PlatoonScenario {
  TimeSeries lead;
  std::vector<ModelParams> followers;  // vehicle 1 follows the lead, vehicle i follows i-1
  double dt = 0.1;
  /// Simulated span [s]; 0 means the whole lead series.
  double duration = 0.0;
  /// Explicit (s, v) per follower; equilibrium at the lead's first sample when absent.
  std::optional<std::vector<VehicleState>> initial;
  /// Acceleration offsets, empty or one series per follower (an empty series means none).
  std::vector<std::vector<double>> disturbance;
  Integrator integrator = Integrator::kEuler;
  /// Peak-to-peak metrics only consider samples with t >= this time.
  double metrics_start = 0.0;
};

struct PlatoonResult {
  double t0 = 0.0;
  double dt = 0.1;
  std::vector<double> lead_velocity;
  std::vector<FollowerSeries> vehicles;
  /// Index 0 is the lead, index i the i-th follower.
  std::vector<double> peak_to_peak;
  std::vector<double> min_velocity;
  /// amplification[i] = peak_to_peak[i + 1] / peak_to_peak[i]; NaN when the
  /// leader's peak-to-peak is zero.
  std::vector<double> amplification;
  std::vector<SimEvent> events;
  double metrics_start = 0.0;

  std::size_t size() const { return lead_velocity.size(); }
};

PlatoonResult simulate_platoon(const PlatoonScenario& scenario);

struct SinusoidResponse {
  PlatoonResult platoon;
  double period = 0.0;
  double window_start = 0.0;  // start of the amplitude estimation window
  /// Index 0 is the lead.
  std::vector<double> amplitude;
  /// amplitude[i + 1] / amplitude[i].
  std::vector<double> amplitude_ratio;
  /// True when at least 10 transient periods precede the estimation window.
  bool settled = false;
};

struct SinusoidSpec {
  std::size_t n_followers = 10;
  double v_star = 20.0;
  double amplitude = 1.0;
  double omega = 0.204;
  double warmup = 20.0;
  double duration = 0.0;  // 0: warmup + 12 periods
  double dt = 0.1;
};

/// Homogeneous platoon behind a lead that holds v_star during the warmup and
/// then follows v_star + amplitude * sin(omega (t - warmup)). Steady-state
/// amplitude is half the peak-to-peak over the final two full periods.
SinusoidResponse sinusoid_response(const ModelParams& params, const SinusoidSpec& spec);

/// Homogeneous platoon behind a recorded lead profile, initialized at the
/// equilibrium of its first sample. Throws FormatError on an empty series.
PlatoonResult empirical_lead_response(const ModelParams& params, const TimeSeries& recorded_lead,
                                      std::size_t n_followers);

}  // namespace ovrv
