#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ovrv/errors.hpp"
#include "ovrv/time_series.hpp"

namespace ovrv {

inline constexpr double kEarthRadiusM = 6'371'000.0;

/// Great-circle distance [m] between two (lat, lon) points in degrees.
/// Throws DomainError when |lat| > 90 or |lon| > 180.
double haversine(double lat1, double lon1, double lat2, double lon2);

struct GpsSample {
  double t = 0.0;    // s
  double lat = 0.0;  // deg
  double lon = 0.0;  // deg
  double vel = 0.0;  // m/s
};

struct GpsLog {
  std::vector<GpsSample> samples;
  double nominal_rate = 10.0;  // Hz
};

/// Throws FormatError unless timestamps strictly increase and coordinates are valid.
void validate(const GpsLog& log);

/// `t_s,lat_deg,lon_deg,vel_mps` with header. The nominal rate is inferred
/// from the median sample spacing.
GpsLog read_gps_csv(std::istream& in);
GpsLog read_gps_csv(const std::filesystem::path& path);
std::string format_gps_csv(const GpsLog& log);

struct TrajectoryMetadata {
  std::string label;    // profile label, e.g. "F"
  std::string setting;  // following setting, e.g. "minimum"
  std::vector<std::string> sources;
  std::vector<std::string> warnings;
};

/// Paired lead/follower trajectory on a uniform grid.
struct Trajectory {
  double t0 = 0.0;
  double dt = 0.1;
  std::vector<double> v_lead;
  std::vector<double> v_follow;
  std::vector<double> space_gap;
  TrajectoryMetadata metadata;

  std::size_t size() const { return v_lead.size(); }
  double time(std::size_t i) const { return t0 + dt * static_cast<double>(i); }
  TimeSeries lead_series() const { return {t0, dt, v_lead}; }
};

/// Throws FormatError on unequal lengths, empty series, bad dt or a non-finite gap.
void validate(const Trajectory& trajectory);

/// `t_s,v_lead_mps,v_follow_mps,space_gap_m` with header.
Trajectory read_trajectory_csv(std::istream& in);
Trajectory read_trajectory_csv(const std::filesystem::path& path);
std::string format_trajectory_csv(const Trajectory& trajectory);

/// Linear interpolation of (t, values) onto t0 + i dt, i < n. Requires the
/// grid to lie within [t.front(), t.back()].
std::vector<double> resample_linear(std::span<const double> t, std::span<const double> values,
                                    double t0, double dt, std::size_t n);

/// Antenna positions measured rearward from each vehicle's front bumper.
struct AntennaOffsets {
  double lead_setback = 0.0;
  double follow_setback = 0.0;
};

struct PairOptions {
  double dt = 0.1;
  double lead_length = 4.5;
  AntennaOffsets offsets;
  bool offsets_supplied = false;
  /// Larger spacing between consecutive raw samples is an error.
  double max_sample_gap = 1.0;
};

class SamplingGapError : public FormatError {
 public:
  SamplingGapError(const std::string& what, std::vector<std::pair<double, double>> intervals)
      : FormatError(what), intervals_(std::move(intervals)) {}
  const std::vector<std::pair<double, double>>& intervals() const { return intervals_; }

 private:
  std::vector<std::pair<double, double>> intervals_;
};

/// Aligns two GPS logs on their common time window.
///
///   space_gap = haversine(lead, follow) + lead_setback - follow_setback - lead_length
///
/// Throws FormatError without temporal overlap and SamplingGapError when a
/// raw sample spacing inside the window exceeds max_sample_gap.
Trajectory pair_logs(const GpsLog& lead, const GpsLog& follow, const PairOptions& options);

struct Histogram {
  std::vector<double> edges;  // bins + 1
  std::vector<std::size_t> counts;
};

Histogram histogram(std::span<const double> values, std::size_t bins);

struct ValidationReport {
  std::size_t n_samples = 0;
  double true_separation = 0.0;
  double mean_separation = 0.0;
  /// mean_separation - true_separation
  double mean_position_error = 0.0;
  double mean_abs_position_error = 0.0;
  double mean_abs_velocity_difference = 0.0;
  Histogram position_error;       // separation - true_separation
  Histogram velocity_difference;  // vel_a - vel_b
};

struct ValidationOptions {
  double dt = 0.0;  // 0: 1 / nominal rate of the first log
  std::size_t bins = 20;
  double max_sample_gap = 1.0;
};

/// Statistics of two receivers mounted a known distance apart on one vehicle.
ValidationReport colocated_stats(const GpsLog& a, const GpsLog& b, double true_separation,
                                 const ValidationOptions& options = {});

}  // namespace ovrv
