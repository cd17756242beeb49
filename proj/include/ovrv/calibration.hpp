#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ovrv/errors.hpp"
#include "ovrv/model.hpp"
#include "ovrv/optimizer.hpp"
#include "ovrv/trajectory_io.hpp"

namespace ovrv {

struct ParameterBounds {
  std::array<double, 2> k1{0.001, 2.0};
  std::array<double, 2> k2{0.001, 2.0};
  std::array<double, 2> tau_e{0.1, 5.0};
  std::array<double, 2> eta{0.0, 25.0};

  std::array<double, 4> lower() const { return {k1[0], k2[0], tau_e[0], eta[0]}; }
  std::array<double, 4> upper() const { return {k1[1], k2[1], tau_e[1], eta[1]}; }
};

struct CalibrationProblem {
  std::vector<Trajectory> trajectories;
  double dt = 0.1;
  ParameterBounds bounds;
  std::size_t n_starts = 100;
  std::uint64_t seed = 0;
  /// Leading fraction of every trajectory used for training.
  double split = 0.5;
  NelderMeadOptions local;
  /// Explicit starting points, used before any random draws; they count
  /// toward n_starts.
  std::vector<ModelParams> initial_points;
  /// Worker threads for the independent starts; 0 picks the hardware count.
  std::size_t threads = 0;
};

/// Throws DomainError / FormatError when the problem violates its invariants.
void validate(const CalibrationProblem& problem);

/// Samples in the leading (training) portion of an n-sample trajectory.
std::size_t training_length(std::size_t n, double split);

/// Velocity RMSE of simulated against measured series.
double rmse_velocity(std::span<const double> simulated, std::span<const double> measured);

/// Pooled training RMSE: every trajectory is simulated (explicit Euler) from
/// its measured initial gap and velocity over its training portion, and
/// squared velocity errors are pooled by sample count.
double objective(const ModelParams& params, const CalibrationProblem& problem);

struct StartRecord {
  ModelParams initial;
  ModelParams final_params;
  double rmse = 0.0;
  bool converged = false;
  int iterations = 0;
  int evaluations = 0;
};

/// One row of the train/test error table.
struct ErrorRow {
  std::string profile;
  std::string setting;
  double duration_s = 0.0;
  double distance_km = 0.0;
  double max_velocity_kmh = 0.0;
  double min_velocity_kmh = 0.0;
  double velocity_train_rmse = 0.0;
  double velocity_test_rmse = 0.0;
  double gap_train_rmse = 0.0;
  double gap_test_rmse = 0.0;
  std::size_t n_train = 0;
  std::size_t n_test = 0;
};

struct ErrorTable {
  std::vector<ErrorRow> rows;
  ErrorRow summary;  // pooled over all trajectories
};

struct CalibrationResult {
  ModelParams best_params{0, 0, 0, 0};
  double best_rmse_velocity = 0.0;
  std::size_t best_start = 0;
  std::vector<StartRecord> per_start;
  ErrorTable errors;
};

class CalibrationError : public NumericalError {
 public:
  CalibrationError(const std::string& what, std::vector<StartRecord> starts)
      : NumericalError(what), starts_(std::move(starts)) {}
  const std::vector<StartRecord>& starts() const { return starts_; }

 private:
  std::vector<StartRecord> starts_;
};

/// Starting points for every start: explicit points first, then uniform
/// draws within the bounds from a generator seeded with problem.seed.
std::vector<ModelParams> start_points(const CalibrationProblem& problem);

/// Multi-start bounded Nelder-Mead. Returns the lowest-RMSE start (lowest
/// index on ties); deterministic for a given problem and seed regardless of
/// thread count. Throws CalibrationError if no start converged.
CalibrationResult calibrate(const CalibrationProblem& problem);

/// Simulates each trajectory over its full span from the measured initial
/// condition and reports velocity and space-gap RMSE on the training
/// (leading) and test (trailing) portions.
ErrorTable evaluate(const ModelParams& params, const CalibrationProblem& problem);

struct SynthesisOptions {
  double velocity_noise = 0.0;  // std-dev [m/s] on the measured follower velocity
  double gap_noise = 0.0;       // std-dev [m] on the measured space-gap
  std::uint64_t seed = 0;
  std::string label;
  std::string setting;
};

/// Noise-free (or noisy) measurements of a follower obeying `params`
/// behind `lead`, started at equilibrium with the lead's first sample.
Trajectory synthesize(const ModelParams& params, const TimeSeries& lead,
                      const SynthesisOptions& options = {});

}  // namespace ovrv
