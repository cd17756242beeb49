#pragma once

// JSON and CSV encodings of the library's data types.

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "ovrv/calibration.hpp"
#include "ovrv/model.hpp"
#include "ovrv/platoon.hpp"
#include "ovrv/profiles.hpp"
#include "ovrv/stability.hpp"
#include "ovrv/trajectory_io.hpp"

namespace ovrv {

using Json = nlohmann::json;

// ModelParams: {"k1", "k2", "tau_e", "eta"} in SI units.
Json to_json(const ModelParams& params);
ModelParams params_from_json(const Json& j);
/// Also accepts a calibration result, reading its best_params.
ModelParams read_params_file(const std::filesystem::path& path);

Json to_json(const RdcReport& report);
Json to_json(const StabilityReport& report);

/// `omega_rad_s,gain_db`
std::string format_bode_csv(std::span<const GainPoint> curve);
/// `k1,k2,tau_e,lambda2,stable` with stable in {true, false, undefined}.
std::string format_sweep_csv(std::span<const SweepCell> cells);

/// Long form `t,vehicle_index,space_gap_m,velocity_mps,accel_mps2`. Vehicle 0
/// is the lead (gap nan, acceleration by forward difference).
std::string format_platoon_csv(const PlatoonResult& result);
Json summary_json(const PlatoonResult& result);
Json summary_json(const SinusoidResponse& response);

/// Profiles: `t,velocity_mps`.
std::string format_profile_csv(const TimeSeries& series);
TimeSeries parse_profile_csv(std::istream& in);
TimeSeries read_profile_csv(const std::filesystem::path& path);

Json to_json(const ProfileSpec& spec);
ProfileSpec profile_spec_from_json(const Json& j);

/// Applies {"dt", "n_starts", "seed", "split", "threads", "bounds": {"k1": [lo, hi], ...},
/// "local": {"x_tol", "f_tol", "max_iterations", "initial_step"}} onto `problem`;
/// absent keys keep their current values.
void apply_config(const Json& config, CalibrationProblem& problem);
Json config_json(const CalibrationProblem& problem);

Json to_json(const ErrorRow& row);
Json to_json(const CalibrationResult& result);
/// Columns mirror the field error table: profile, setting, duration,
/// distance, max/min velocity, velocity and space-gap train/test errors.
std::string format_error_table_csv(const ErrorTable& table);

Json to_json(const ValidationReport& report);

}  // namespace ovrv
