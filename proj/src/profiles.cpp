#include "ovrv/profiles.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ovrv/errors.hpp"
#include "ovrv/units.hpp"

namespace ovrv {

namespace {

using units::mph_to_mps;

std::vector<Segment> mph_segments(std::initializer_list<double> mph, double hold) {
  std::vector<Segment> out;
  for (double v : mph) out.push_back({mph_to_mps(v), hold});
  return out;
}

std::vector<Segment> repeat(const std::vector<Segment>& base, std::size_t cycles) {
  std::vector<Segment> out;
  for (std::size_t c = 0; c < cycles; ++c) out.insert(out.end(), base.begin(), base.end());
  return out;
}

}  // namespace

std::string_view profile_kind_name(ProfileKind kind) {
  switch (kind) {
    case ProfileKind::kStepSchedule: return "step_schedule";
    case ProfileKind::kOscillatory: return "oscillatory";
    case ProfileKind::kDip: return "dip";
    case ProfileKind::kSinusoid: return "sinusoid";
    case ProfileKind::kConstant: return "constant";
  }
  return "unknown";
}

ProfileKind parse_profile_kind(std::string_view name) {
  for (auto k : {ProfileKind::kStepSchedule, ProfileKind::kOscillatory, ProfileKind::kDip,
                 ProfileKind::kSinusoid, ProfileKind::kConstant}) {
    if (profile_kind_name(k) == name) return k;
  }
  throw DomainError("unknown profile kind '" + std::string(name) + "'");
}

void validate(const ProfileSpec& spec) {
  if (!(spec.dt > 0.0) || !std::isfinite(spec.dt)) throw DomainError("profile dt must be positive");
  if (spec.ramp_accel && !(*spec.ramp_accel > 0.0)) {
    throw DomainError("profile ramp acceleration must be positive");
  }
  if (spec.kind == ProfileKind::kSinusoid) {
    const auto& s = spec.sinusoid;
    if (!(s.omega > 0.0) || !(s.amplitude >= 0.0) || !(s.amplitude <= s.v_star) ||
        !(s.warmup >= 0.0) || !(s.duration > 0.0)) {
      throw DomainError("sinusoid profile needs omega > 0, 0 <= amplitude <= v_star, duration > 0");
    }
    return;
  }
  if (spec.segments.empty()) throw DomainError("profile has no segments");
  for (const auto& seg : spec.segments) {
    if (!(seg.velocity >= 0.0) || !std::isfinite(seg.velocity)) {
      throw DomainError("profile velocities must be finite and >= 0");
    }
    if (!(seg.hold > 0.0) || !std::isfinite(seg.hold)) throw DomainError("profile holds must be > 0");
  }
}

TimeSeries generate(const ProfileSpec& spec) {
  validate(spec);
  TimeSeries out;
  out.dt = spec.dt;

  if (spec.kind == ProfileKind::kSinusoid) {
    const auto& s = spec.sinusoid;
    const std::size_t n = sample_count(s.duration, spec.dt);
    out.values.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double t = out.time(i);
      out.values[i] = t < s.warmup ? s.v_star : s.v_star + s.amplitude * std::sin(s.omega * (t - s.warmup));
    }
    return out;
  }

  // Segment k owns samples [start[k], start[k+1]); the final sample belongs
  // to the last segment.
  std::vector<std::size_t> start;
  double cumulative = 0.0;
  for (const auto& seg : spec.segments) {
    start.push_back(static_cast<std::size_t>(std::llround(cumulative / spec.dt)));
    cumulative += seg.hold;
  }
  const std::size_t n = sample_count(cumulative, spec.dt);
  out.values.resize(n);

  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i) {
    while (k + 1 < start.size() && i >= start[k + 1]) ++k;
    const double target = spec.segments[k].velocity;
    if (!spec.ramp_accel || i == 0) {
      out.values[i] = target;
    } else {
      const double max_change = *spec.ramp_accel * spec.dt;
      const double prev = out.values[i - 1];
      out.values[i] = prev + std::clamp(target - prev, -max_change, max_change);
    }
  }
  return out;
}

const std::vector<std::string>& builtin_names() {
  static const std::vector<std::string> names = {"A", "B", "C", "D", "E", "F", "G", "H", "I"};
  return names;
}

ProfileSpec builtin_spec(std::string_view name, double dt, std::size_t cycles,
                         const BuiltinOptions& options) {
  if (cycles == 0) throw DomainError("profile cycles must be >= 1");
  ProfileSpec spec;
  spec.dt = dt;
  spec.ramp_accel = options.ramp_accel;
  const double step = options.step_hold;
  const double osc = options.oscillation_hold;

  if (name == "A") {
    spec.kind = ProfileKind::kStepSchedule;
    spec.segments = repeat(mph_segments({5, 10, 15, 20, 25, 30, 25, 20, 15, 10, 5}, step), cycles);
  } else if (name == "B") {
    spec.kind = ProfileKind::kStepSchedule;
    spec.segments = repeat(mph_segments({35, 40, 45, 50, 55, 50, 45, 40, 35}, step), cycles);
  } else if (name == "C") {
    spec.kind = ProfileKind::kStepSchedule;
    spec.segments = repeat(mph_segments({60, 65, 70, 65, 60}, step), cycles);
  } else if (name == "D") {
    spec.kind = ProfileKind::kOscillatory;
    spec.segments = repeat(mph_segments({30, 20}, osc), cycles);
  } else if (name == "E") {
    spec.kind = ProfileKind::kOscillatory;
    spec.segments = repeat(mph_segments({50, 45}, osc), cycles);
  } else if (name == "F") {
    spec.kind = ProfileKind::kOscillatory;
    spec.segments = repeat(mph_segments({50, 40}, osc), cycles);
  } else if (name == "G") {
    spec.kind = ProfileKind::kOscillatory;
    spec.segments = repeat(mph_segments({70, 65}, osc), cycles);
  } else if (name == "H") {
    spec.kind = ProfileKind::kOscillatory;
    spec.segments = repeat(mph_segments({70, 60}, osc), cycles);
  } else if (name == "I") {
    spec.kind = ProfileKind::kDip;
    spec.segments = {{mph_to_mps(50), 45.0}};
    for (std::size_t c = 0; c < cycles; ++c) {
      for (double drop : {5.0, 10.0, 15.0, 20.0}) {
        spec.segments.push_back({mph_to_mps(50 - drop), 5.0});
        spec.segments.push_back({mph_to_mps(50), 45.0});
      }
    }
  } else {
    std::string valid;
    for (const auto& n : builtin_names()) valid += (valid.empty() ? "" : ", ") + n;
    throw DomainError("unknown profile '" + std::string(name) + "' (valid: " + valid + ")");
  }
  return spec;
}

TimeSeries builtin(std::string_view name, double dt, std::size_t cycles, const BuiltinOptions& options) {
  return generate(builtin_spec(name, dt, cycles, options));
}

ProfileSpec step_down_up_spec(const StepDownUp& step, double dt) {
  ProfileSpec spec;
  spec.kind = ProfileKind::kStepSchedule;
  spec.dt = dt;
  spec.segments = {{step.high, step.pre_hold},
                   {step.high - step.drop, step.low_hold},
                   {step.high, step.post_hold}};
  return spec;
}

}  // namespace ovrv
