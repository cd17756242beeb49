#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ovrv/time_series.hpp"

namespace ovrv {

enum class ProfileKind { kStepSchedule, kOscillatory, kDip, kSinusoid, kConstant };

std::string_view profile_kind_name(ProfileKind kind);
ProfileKind parse_profile_kind(std::string_view name);

struct Segment {
  double velocity = 0.0;  // m/s
  double hold = 0.0;      // s
};

struct SinusoidShape {
  double v_star = 20.0;
  double amplitude = 1.0;
  double omega = 0.204;
  double warmup = 20.0;
  double duration = 200.0;
};

struct ProfileSpec {
  ProfileKind kind = ProfileKind::kStepSchedule;
  std::vector<Segment> segments;  // unused for kSinusoid
  double dt = 0.1;
  /// Absent: instantaneous (step) transitions. Present: the velocity moves
  /// toward each new target at this constant acceleration [m/s^2].
  std::optional<double> ramp_accel;
  SinusoidShape sinusoid;  // kSinusoid only
};

/// Throws DomainError on negative velocities, non-positive holds or dt.
void validate(const ProfileSpec& spec);

/// Samples the profile on t = 0, dt, 2 dt, ... up to the total hold time.
TimeSeries generate(const ProfileSpec& spec);

struct BuiltinOptions {
  std::optional<double> ramp_accel;
  double step_hold = 60.0;        // step tests A-C
  double oscillation_hold = 30.0; // D-H
};

/// Names of the built-in lead profiles, "A" through "I".
const std::vector<std::string>& builtin_names();

/// Expands a built-in profile. `cycles` repeats the step sequence (A-C),
/// the high/low pair (D-H), or the series of four dips (I).
/// Throws DomainError for an unknown name or zero cycles.
ProfileSpec builtin_spec(std::string_view name, double dt, std::size_t cycles,
                         const BuiltinOptions& options = {});
TimeSeries builtin(std::string_view name, double dt, std::size_t cycles,
                   const BuiltinOptions& options = {});

/// Lead that holds `high`, drops by `drop` for `low_hold` seconds and then
/// returns to `high`.
struct StepDownUp {
  double high = 20.0;
  double drop = 5.0;
  double pre_hold = 30.0;
  double low_hold = 60.0;
  double post_hold = 150.0;
};

ProfileSpec step_down_up_spec(const StepDownUp& step, double dt);

}  // namespace ovrv
