#include <algorithm>
#include <cmath>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "ovrv/calibration.hpp"
#include "ovrv/errors.hpp"
#include "ovrv/profiles.hpp"
#include "ovrv/serialization.hpp"

using namespace ovrv;

namespace {

const ModelParams kHidden{0.08, 0.44, 0.52, 8.3};
const ModelParams kMin{0.0782, 0.4445, 0.5162, 8.3365};
const ModelParams kMax{0.0131, 0.2692, 1.6881, 7.5699};

TimeSeries profile_f(double seconds) {
  auto lead = builtin("F", 0.1, static_cast<std::size_t>(std::ceil(seconds / 60.0)));
  lead.values.resize(sample_count(seconds, 0.1));
  return lead;
}

CalibrationProblem problem_for(std::vector<Trajectory> trs, std::size_t starts, std::uint64_t seed = 1) {
  CalibrationProblem p;
  p.trajectories = std::move(trs);
  p.n_starts = starts;
  p.seed = seed;
  p.threads = 1;
  return p;
}

void check_within(const ModelParams& got, const ModelParams& want, double rel) {
  CHECK(got.k1() == doctest::Approx(want.k1()).epsilon(rel));
  CHECK(got.k2() == doctest::Approx(want.k2()).epsilon(rel));
  CHECK(got.tau_e() == doctest::Approx(want.tau_e()).epsilon(rel));
  CHECK(got.eta() == doctest::Approx(want.eta()).epsilon(rel));
}

}  // namespace

TEST_CASE("training_length") {
  CHECK(training_length(4001, 0.5) == 2000);
  CHECK(training_length(10, 0.5) == 5);
  CHECK(training_length(10, 1.0) == 10);
  CHECK(training_length(10, 0.01) == 1);
}

TEST_CASE("objective is zero on self-generated data and positive when perturbed") {
  const auto tr = synthesize(kHidden, profile_f(200.0));
  const auto p = problem_for({tr}, 1);
  CHECK(objective(kHidden, p) <= 1e-12);
  CHECK(objective(kHidden.with_k2(kHidden.k2() * 1.1), p) > 0.0);
}

TEST_CASE("minimum-setting gains on maximum-setting data") {
  // Oracle: longhand Euler rollouts of both settings on profile F.
  const auto lead = profile_f(400.0);
  const oracle::Gains gmax{kMax.k1(), kMax.k2(), kMax.tau_e(), kMax.eta()};
  const oracle::Gains gmin{kMin.k1(), kMin.k2(), kMin.tau_e(), kMin.eta()};
  const double v0 = lead.values.front();
  const double s0 = kMax.eta() + kMax.tau_e() * v0;
  const auto measured = oracle::euler(gmax, lead.values, s0, v0, 0.1);
  const auto predicted = oracle::euler(gmin, lead.values, s0, v0, 0.1);
  const double expected = oracle::rmse(predicted.v, measured.v);
  CHECK(expected == doctest::Approx(0.7288464432).epsilon(1e-9));

  auto p = problem_for({synthesize(kMax, lead)}, 1);
  p.split = 1.0;
  const double got = objective(kMin, p);
  CHECK(got == doctest::Approx(expected).epsilon(1e-9));
  CHECK(got > 0.3);
}

TEST_CASE("pooled objective ignores trajectory order") {
  const auto a = synthesize(kHidden, builtin("D", 0.1, 2), {0.05, 0.0, 3, "D", ""});
  const auto b = synthesize(kHidden, builtin("E", 0.1, 3), {0.05, 0.0, 4, "E", ""});
  const auto ab = problem_for({a, b}, 1);
  const auto ba = problem_for({b, a}, 1);
  CHECK(objective(kMin, ab) == doctest::Approx(objective(kMin, ba)).epsilon(1e-14));
}

TEST_CASE("noise-free self-recovery") {
  const auto p = problem_for({synthesize(kHidden, profile_f(400.0))}, 20, 7);
  const auto r = calibrate(p);
  check_within(r.best_params, kHidden, 1e-3);
  CHECK(r.best_rmse_velocity < 1e-3);
  CHECK(r.per_start.size() == 20);
  CHECK(r.per_start[r.best_start].rmse == r.best_rmse_velocity);
}

TEST_CASE("noisy self-recovery") {
  SynthesisOptions noise;
  noise.velocity_noise = 0.05;
  noise.seed = 2024;
  const auto p = problem_for({synthesize(kHidden, profile_f(400.0), noise)}, 20, 7);
  const auto r = calibrate(p);
  check_within(r.best_params, kHidden, 0.05);
}

TEST_CASE("a single start at the truth stays there") {
  auto p = problem_for({synthesize(kHidden, profile_f(200.0))}, 1);
  p.initial_points = {kHidden};
  const auto r = calibrate(p);
  check_within(r.best_params, kHidden, 1e-12);
  CHECK(r.best_rmse_velocity <= 1e-12);
}

TEST_CASE("calibration results respect the bounds") {
  SynthesisOptions noise;
  noise.velocity_noise = 0.3;
  const auto p = problem_for({synthesize(kMax, profile_f(200.0), noise)}, 10, 3);
  const auto r = calibrate(p);
  const auto lo = p.bounds.lower();
  const auto hi = p.bounds.upper();
  for (const auto& s : r.per_start) {
    const std::array<double, 4> x{s.final_params.k1(), s.final_params.k2(), s.final_params.tau_e(),
                                  s.final_params.eta()};
    for (std::size_t i = 0; i < 4; ++i) {
      CHECK(x[i] >= lo[i]);
      CHECK(x[i] <= hi[i]);
    }
  }
}

TEST_CASE("start points are uniform in the bounds and prefix-stable") {
  CalibrationProblem p;
  p.seed = 99;
  p.n_starts = 2000;
  const auto pts = start_points(p);
  double mean_tau = 0.0;
  for (const auto& x : pts) {
    CHECK(x.k1() >= 0.001);
    CHECK(x.k1() <= 2.0);
    CHECK(x.eta() <= 25.0);
    mean_tau += x.tau_e() / double(pts.size());
  }
  CHECK(mean_tau == doctest::Approx(2.55).epsilon(0.05));
  p.n_starts = 10;
  const auto head = start_points(p);
  for (std::size_t i = 0; i < head.size(); ++i) CHECK(head[i] == pts[i]);
}

TEST_CASE("more starts never make the best fit worse") {
  SynthesisOptions noise;
  noise.velocity_noise = 0.1;
  noise.seed = 5;
  const auto tr = synthesize(kMin, profile_f(200.0), noise);
  double prev = std::numeric_limits<double>::infinity();
  for (std::size_t n : {1u, 3u, 6u}) {
    const auto r = calibrate(problem_for({tr}, n, 11));
    CHECK(r.best_rmse_velocity <= prev);
    prev = r.best_rmse_velocity;
  }
}

TEST_CASE("calibration is deterministic regardless of thread count") {
  SynthesisOptions noise;
  noise.velocity_noise = 0.05;
  noise.seed = 8;
  auto p = problem_for({synthesize(kHidden, profile_f(200.0), noise)}, 8, 21);
  const auto a = calibrate(p);
  p.threads = 4;
  const auto b = calibrate(p);
  CHECK(to_json(a).dump() == to_json(b).dump());
  CHECK(format_error_table_csv(a.errors) == format_error_table_csv(b.errors));
}

TEST_CASE("all starts failing raises with per-start diagnostics") {
  auto p = problem_for({synthesize(kHidden, profile_f(100.0))}, 3, 1);
  p.local.max_iterations = 2;
  try {
    calibrate(p);
    FAIL("expected CalibrationError");
  } catch (const CalibrationError& e) {
    CHECK(e.starts().size() == 3);
    for (const auto& s : e.starts()) CHECK_FALSE(s.converged);
  }
}

TEST_CASE("problem validation") {
  CalibrationProblem p;
  CHECK_THROWS_AS(calibrate(p), FormatError);
  p.trajectories = {synthesize(kHidden, profile_f(20.0))};
  p.split = 0.0;
  CHECK_THROWS_AS(validate(p), DomainError);
  p.split = 0.5;
  p.dt = 0.2;
  CHECK_THROWS_AS(validate(p), FormatError);
  p.dt = 0.1;
  p.bounds.k1 = {1.0, 0.5};
  CHECK_THROWS_AS(validate(p), DomainError);
}

TEST_CASE("evaluate: zero error at the generating parameters") {
  auto tr = synthesize(kHidden, profile_f(200.0));
  tr.metadata.label = "F";
  tr.metadata.setting = "synthetic";
  const auto table = evaluate(kHidden, problem_for({tr}, 1));
  REQUIRE(table.rows.size() == 1);
  const auto& row = table.rows[0];
  CHECK(row.velocity_train_rmse == 0.0);
  CHECK(row.velocity_test_rmse == 0.0);
  CHECK(row.gap_train_rmse == 0.0);
  CHECK(row.gap_test_rmse == 0.0);
  CHECK(row.profile == "F");
  CHECK(row.duration_s == doctest::Approx(200.0));
  CHECK(row.max_velocity_kmh == doctest::Approx(3.6 * *std::max_element(tr.v_follow.begin(), tr.v_follow.end())));
  CHECK(row.max_velocity_kmh > 50 * 0.44704 * 3.6);
  CHECK(row.n_train + row.n_test == tr.size());
  CHECK(table.summary.profile == "Summary");
  CHECK(std::isnan(table.summary.distance_km));
}

TEST_CASE("evaluate: constant gap offset gives exactly that RMSE") {
  // With k1 = 0 the gap never feeds back, so the simulated gap stays at its first sample.
  const ModelParams p(0.0, 0.4, 1.0, 5.0);
  Trajectory tr;
  tr.dt = 0.1;
  tr.v_lead.assign(100, 20.0);
  tr.v_follow.assign(100, 20.0);
  tr.space_gap.assign(100, 29.0);
  tr.space_gap[0] = 30.0;
  const auto row = evaluate(p, problem_for({tr}, 1)).rows[0];
  CHECK(row.gap_test_rmse == 1.0);
  CHECK(row.velocity_test_rmse == 0.0);
}

TEST_CASE("evaluate: train and test agree on stationary noisy data") {
  SynthesisOptions noise;
  noise.velocity_noise = 0.1;
  noise.gap_noise = 0.5;
  noise.seed = 77;
  const auto tr = synthesize(kMax, builtin("D", 0.1, 10), noise);
  const auto s = evaluate(kMax, problem_for({tr}, 1)).summary;
  CHECK(std::abs(s.velocity_test_rmse / s.velocity_train_rmse - 1.0) < 0.1);
  CHECK(std::abs(s.gap_test_rmse / s.gap_train_rmse - 1.0) < 0.1);
}
