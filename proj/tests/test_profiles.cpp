#include <algorithm>
#include <cmath>
#include <set>
#include <string>

#include "doctest.h"
#include "ovrv/errors.hpp"
#include "ovrv/profiles.hpp"
#include "ovrv/units.hpp"

using namespace ovrv;
using units::mph_to_mps;

namespace {

std::vector<double> distinct_runs(const std::vector<double>& v) {
  std::vector<double> runs;
  for (double x : v) {
    if (runs.empty() || runs.back() != x) runs.push_back(x);
  }
  return runs;
}

}  // namespace

TEST_CASE("profile A steps up and back down by 5 mph") {
  const auto spec = builtin_spec("A", 0.1, 1);
  REQUIRE(spec.segments.size() == 11);
  for (const auto& s : spec.segments) CHECK(s.hold == 60.0);
  CHECK(spec.segments[0].velocity == mph_to_mps(5));
  CHECK(spec.segments[5].velocity == mph_to_mps(30));
  CHECK(spec.segments[10].velocity == mph_to_mps(5));
  for (std::size_t i = 1; i < spec.segments.size(); ++i) {
    CHECK(std::abs(std::abs(spec.segments[i].velocity - spec.segments[i - 1].velocity) - mph_to_mps(5)) < 1e-12);
  }
  const auto ts = generate(spec);
  CHECK(ts.duration() == doctest::Approx(660.0));
  CHECK(ts.size() == 6601);
}

TEST_CASE("oscillatory profiles alternate between their two levels") {
  struct Case {
    const char* name;
    double hi, lo;
  };
  for (const auto& c : {Case{"D", 30, 20}, Case{"E", 50, 45}, Case{"F", 50, 40}, Case{"G", 70, 65}, Case{"H", 70, 60}}) {
    CAPTURE(c.name);
    const auto spec = builtin_spec(c.name, 0.1, 2);
    REQUIRE(spec.segments.size() == 4);
    CHECK(spec.kind == ProfileKind::kOscillatory);
    for (std::size_t i = 0; i < 4; ++i) {
      CHECK(spec.segments[i].hold == 30.0);
      CHECK(spec.segments[i].velocity == mph_to_mps(i % 2 == 0 ? c.hi : c.lo));
    }
    const auto runs = distinct_runs(generate(spec).values);
    CHECK(runs.size() == 4);
  }
}

TEST_CASE("profile B and C") {
  const auto b = generate(builtin_spec("B", 0.1, 1)).values;
  CHECK(*std::max_element(b.begin(), b.end()) == mph_to_mps(55));
  CHECK(*std::min_element(b.begin(), b.end()) == mph_to_mps(35));
  const auto c = distinct_runs(generate(builtin_spec("C", 0.1, 1)).values);
  REQUIRE(c.size() == 5);
  CHECK(c[2] == mph_to_mps(70));
}

TEST_CASE("profile I dips from 50 mph down to a 30 mph floor") {
  const auto ts = builtin("I", 0.1, 1);
  CHECK(*std::min_element(ts.values.begin(), ts.values.end()) == doctest::Approx(13.4112).epsilon(1e-14));
  CHECK(*std::max_element(ts.values.begin(), ts.values.end()) == mph_to_mps(50));
  std::set<double> levels(ts.values.begin(), ts.values.end());
  CHECK(levels.size() == 5);
  CHECK(builtin_spec("I", 0.1, 1).kind == ProfileKind::kDip);
}

TEST_CASE("cycles repeat the pattern") {
  const auto one = builtin("G", 0.1, 1);
  const auto two = builtin("G", 0.1, 2);
  CHECK(two.duration() == doctest::Approx(2.0 * one.duration()));
  for (std::size_t i = 0; i + 1 < one.size(); ++i) CHECK(two.values[i + one.size() - 1] == one.values[i]);
  CHECK_THROWS_AS(builtin("G", 0.1, 0), DomainError);
}

TEST_CASE("constant profile sample count") {
  ProfileSpec spec;
  spec.kind = ProfileKind::kConstant;
  spec.segments = {{12.0, 37.5}};
  spec.dt = 0.1;
  const auto ts = generate(spec);
  CHECK(ts.size() == 376);
  for (double v : ts.values) CHECK(v == 12.0);
}

TEST_CASE("ramped transitions are rate limited") {
  BuiltinOptions opts;
  opts.ramp_accel = 1.0;
  const auto ts = builtin("F", 0.1, 2, opts);
  double max_rate = 0.0;
  for (std::size_t i = 1; i < ts.size(); ++i) max_rate = std::max(max_rate, std::abs(ts.values[i] - ts.values[i - 1]) / 0.1);
  CHECK(max_rate <= 1.0 + 1e-9);
  CHECK(*std::min_element(ts.values.begin(), ts.values.end()) == doctest::Approx(mph_to_mps(40)));
}

TEST_CASE("sinusoid profile") {
  ProfileSpec spec;
  spec.kind = ProfileKind::kSinusoid;
  spec.sinusoid = {20.0, 1.0, 0.204, 20.0, 100.0};
  const auto ts = generate(spec);
  CHECK(ts.size() == 1001);
  CHECK(ts.values[100] == 20.0);
  CHECK(ts.values[199] == 20.0);
  CHECK(ts.values[250] == doctest::Approx(20.0 + std::sin(0.204 * 5.0)).epsilon(1e-12));
}

TEST_CASE("step down-up profile") {
  const auto ts = generate(step_down_up_spec({}, 0.1));
  CHECK(ts.duration() == doctest::Approx(240.0));
  CHECK(ts.values[299] == 20.0);
  CHECK(ts.values[300] == 15.0);
  CHECK(ts.values[899] == 15.0);
  CHECK(ts.values[900] == 20.0);
}

TEST_CASE("profile validation and names") {
  CHECK(builtin_names().size() == 9);
  CHECK_THROWS_WITH_AS(builtin("Z", 0.1, 1), doctest::Contains("A, B, C"), DomainError);
  ProfileSpec spec;
  CHECK_THROWS_AS(generate(spec), DomainError);
  spec.segments = {{-1.0, 10.0}};
  CHECK_THROWS_AS(generate(spec), DomainError);
  spec.segments = {{1.0, 0.0}};
  CHECK_THROWS_AS(generate(spec), DomainError);
  spec.segments = {{1.0, 1.0}};
  spec.dt = 0.0;
  CHECK_THROWS_AS(generate(spec), DomainError);
  CHECK(parse_profile_kind("dip") == ProfileKind::kDip);
  CHECK(profile_kind_name(ProfileKind::kStepSchedule) == "step_schedule");
  CHECK_THROWS_AS(parse_profile_kind("ramp"), DomainError);
}
