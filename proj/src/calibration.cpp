#include "ovrv/calibration.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <random>
#include <thread>

#include "ovrv/platoon.hpp"
#include "ovrv/units.hpp"

namespace ovrv {

namespace {

ModelParams from_vector(std::span<const double> x) { return {x[0], x[1], x[2], x[3]}; }

struct SquaredErrors {
  double velocity = 0.0;
  double gap = 0.0;
  std::size_t count = 0;
};

double pooled(double sum, std::size_t count) {
  return count == 0 ? std::numeric_limits<double>::quiet_NaN()
                    : std::sqrt(sum / static_cast<double>(count));
}

void accumulate(SquaredErrors& acc, std::span<const double> sim_v, std::span<const double> meas_v,
                std::span<const double> sim_s, std::span<const double> meas_s) {
  for (std::size_t i = 0; i < sim_v.size(); ++i) {
    const double dv = sim_v[i] - meas_v[i];
    const double ds = sim_s[i] - meas_s[i];
    acc.velocity += dv * dv;
    acc.gap += ds * ds;
  }
  acc.count += sim_v.size();
}

}  // namespace

void validate(const CalibrationProblem& p) {
  if (p.trajectories.empty()) throw FormatError("calibration problem has no trajectories");
  if (!(p.dt > 0.0)) throw DomainError("calibration dt must be positive");
  if (p.n_starts < 1) throw DomainError("n_starts must be >= 1");
  if (!(p.split > 0.0 && p.split <= 1.0)) throw DomainError("split must lie in (0, 1]");
  const auto lo = p.bounds.lower();
  const auto hi = p.bounds.upper();
  for (std::size_t i = 0; i < 4; ++i) {
    if (!(lo[i] >= 0.0) || !(hi[i] >= lo[i]) || !std::isfinite(hi[i])) {
      throw DomainError("parameter bounds must satisfy 0 <= lower <= upper < inf");
    }
  }
  if (p.initial_points.size() > p.n_starts) {
    throw DomainError("more explicit starting points than n_starts");
  }
  for (const auto& tr : p.trajectories) {
    validate(tr);
    if (std::abs(tr.dt - p.dt) > 1e-9 * p.dt) {
      throw FormatError("trajectory '" + tr.metadata.label + "' is sampled at " + std::to_string(tr.dt) +
                        " s, expected " + std::to_string(p.dt) + " s");
    }
  }
}

std::size_t training_length(std::size_t n, double split) {
  const auto k = static_cast<std::size_t>(std::floor(split * static_cast<double>(n) + 1e-9));
  return std::clamp<std::size_t>(k, 1, n);
}

double rmse_velocity(std::span<const double> simulated, std::span<const double> measured) {
  return rmse(simulated, measured);
}

double objective(const ModelParams& params, const CalibrationProblem& problem) {
  double sum = 0.0;
  std::size_t count = 0;
  for (const auto& tr : problem.trajectories) {
    const std::size_t n = training_length(tr.size(), problem.split);
    sum += euler_squared_velocity_error(params, std::span(tr.v_lead).first(n),
                                        std::span(tr.v_follow).first(n), tr.space_gap.front(),
                                        tr.v_follow.front(), problem.dt);
    count += n;
  }
  return std::sqrt(sum / static_cast<double>(count));
}

std::vector<ModelParams> start_points(const CalibrationProblem& problem) {
  std::vector<ModelParams> points = problem.initial_points;
  std::mt19937_64 rng(problem.seed);
  const auto lo = problem.bounds.lower();
  const auto hi = problem.bounds.upper();
  while (points.size() < problem.n_starts) {
    std::array<double, 4> x{};
    for (std::size_t i = 0; i < 4; ++i) {
      std::uniform_real_distribution<double> dist(lo[i], hi[i]);
      x[i] = lo[i] == hi[i] ? lo[i] : dist(rng);
    }
    points.push_back(from_vector(x));
  }
  return points;
}

CalibrationResult calibrate(const CalibrationProblem& problem) {
  validate(problem);
  const auto starts = start_points(problem);
  const auto lo = problem.bounds.lower();
  const auto hi = problem.bounds.upper();

  const Objective f = [&problem](std::span<const double> x) { return objective(from_vector(x), problem); };

  std::vector<StartRecord> records(starts.size(), StartRecord{starts[0], starts[0]});
  auto run_start = [&](std::size_t k) {
    const std::array<double, 4> x0{starts[k].k1(), starts[k].k2(), starts[k].tau_e(), starts[k].eta()};
    const auto r = nelder_mead_bounded(f, x0, lo, hi, problem.local);
    records[k] = {starts[k], from_vector(r.x), r.f, r.converged, r.iterations, r.evaluations};
  };

  std::size_t threads = problem.threads == 0 ? std::thread::hardware_concurrency() : problem.threads;
  threads = std::clamp<std::size_t>(threads, 1, starts.size());
  if (threads == 1) {
    for (std::size_t k = 0; k < starts.size(); ++k) run_start(k);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < threads; ++w) {
      pool.emplace_back([&] {
        for (std::size_t k = next++; k < starts.size(); k = next++) run_start(k);
      });
    }
  }

  const bool any_converged =
      std::any_of(records.begin(), records.end(), [](const StartRecord& r) { return r.converged; });
  if (!any_converged) {
    throw CalibrationError("calibration failed: none of the " + std::to_string(records.size()) +
                               " starts converged",
                           records);
  }

  std::size_t best = 0;
  for (std::size_t k = 1; k < records.size(); ++k) {
    if (records[k].rmse < records[best].rmse) best = k;
  }

  CalibrationResult result;
  result.best_params = records[best].final_params;
  result.best_rmse_velocity = records[best].rmse;
  result.best_start = best;
  result.per_start = std::move(records);
  result.errors = evaluate(result.best_params, problem);
  return result;
}

ErrorTable evaluate(const ModelParams& params, const CalibrationProblem& problem) {
  ErrorTable table;
  SquaredErrors train_all;
  SquaredErrors test_all;
  for (const auto& tr : problem.trajectories) {
    const auto sim = simulate_follower(params, tr.lead_series(), tr.space_gap.front(), tr.v_follow.front(),
                                       tr.dt, Integrator::kEuler);
    const std::size_t n = tr.size();
    const std::size_t n_train = training_length(n, problem.split);

    SquaredErrors train;
    SquaredErrors test;
    const std::span sv(sim.v), mv(tr.v_follow), ss(sim.s), ms(tr.space_gap);
    accumulate(train, sv.first(n_train), mv.first(n_train), ss.first(n_train), ms.first(n_train));
    accumulate(test, sv.subspan(n_train), mv.subspan(n_train), ss.subspan(n_train), ms.subspan(n_train));

    ErrorRow row;
    row.profile = tr.metadata.label;
    row.setting = tr.metadata.setting;
    row.duration_s = tr.dt * static_cast<double>(n - 1);
    double distance = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i) distance += tr.v_follow[i] * tr.dt;
    row.distance_km = distance / 1000.0;
    const auto [mn, mx] = std::minmax_element(tr.v_follow.begin(), tr.v_follow.end());
    row.max_velocity_kmh = units::mps_to_kmh(*mx);
    row.min_velocity_kmh = units::mps_to_kmh(*mn);
    row.velocity_train_rmse = pooled(train.velocity, train.count);
    row.velocity_test_rmse = pooled(test.velocity, test.count);
    row.gap_train_rmse = pooled(train.gap, train.count);
    row.gap_test_rmse = pooled(test.gap, test.count);
    row.n_train = train.count;
    row.n_test = test.count;
    table.rows.push_back(row);

    train_all.velocity += train.velocity;
    train_all.gap += train.gap;
    train_all.count += train.count;
    test_all.velocity += test.velocity;
    test_all.gap += test.gap;
    test_all.count += test.count;
  }

  auto& s = table.summary;
  s.profile = "Summary";
  s.setting = problem.trajectories.front().metadata.setting;
  s.duration_s = std::numeric_limits<double>::quiet_NaN();
  s.distance_km = std::numeric_limits<double>::quiet_NaN();
  s.max_velocity_kmh = std::numeric_limits<double>::quiet_NaN();
  s.min_velocity_kmh = std::numeric_limits<double>::quiet_NaN();
  s.velocity_train_rmse = pooled(train_all.velocity, train_all.count);
  s.velocity_test_rmse = pooled(test_all.velocity, test_all.count);
  s.gap_train_rmse = pooled(train_all.gap, train_all.count);
  s.gap_test_rmse = pooled(test_all.gap, test_all.count);
  s.n_train = train_all.count;
  s.n_test = test_all.count;
  return table;
}

Trajectory synthesize(const ModelParams& params, const TimeSeries& lead, const SynthesisOptions& options) {
  if (lead.empty()) throw FormatError("synthesize: empty lead series");
  const double v0 = lead.values.front();
  const auto sim = simulate_follower(params, lead, equilibrium_gap(params, v0), v0, lead.dt);

  Trajectory tr;
  tr.t0 = lead.t0;
  tr.dt = lead.dt;
  tr.v_lead = lead.values;
  tr.v_follow = sim.v;
  tr.space_gap = sim.s;
  tr.metadata.label = options.label;
  tr.metadata.setting = options.setting;
  tr.metadata.sources.emplace_back("synthetic");

  if (options.velocity_noise > 0.0 || options.gap_noise > 0.0) {
    std::mt19937_64 rng(options.seed);
    std::normal_distribution<double> unit(0.0, 1.0);
    for (std::size_t i = 0; i < tr.size(); ++i) {
      if (options.velocity_noise > 0.0) tr.v_follow[i] += options.velocity_noise * unit(rng);
      if (options.gap_noise > 0.0) tr.space_gap[i] += options.gap_noise * unit(rng);
    }
  }
  return tr;
}

}  // namespace ovrv
