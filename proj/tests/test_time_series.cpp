#include <cmath>
#include <vector>

#include "doctest.h"
#include "ovrv/errors.hpp"
#include "ovrv/time_series.hpp"

using namespace ovrv;

TEST_CASE("sample_count absorbs representation error") {
  CHECK(sample_count(660.0, 0.1) == 6601);
  CHECK(sample_count(0.0, 0.1) == 1);
  CHECK(sample_count(0.3, 0.1) == 4);
  CHECK(sample_count(0.35, 0.1) == 4);
  CHECK_THROWS_AS(sample_count(1.0, 0.0), DomainError);
  CHECK_THROWS_AS(sample_count(-1.0, 0.1), DomainError);
}

TEST_CASE("require_uniform") {
  std::vector<double> t;
  for (int i = 0; i < 100; ++i) t.push_back(0.1 * i);
  CHECK(require_uniform(t) == doctest::Approx(0.1));
  t[50] += 0.01;
  CHECK_THROWS_AS(require_uniform(t), FormatError);
  CHECK_THROWS_AS(require_uniform(std::vector<double>{1.0}), FormatError);
  CHECK_THROWS_AS(require_uniform(std::vector<double>{1.0, 1.0, 1.0}), FormatError);
}

TEST_CASE("peak_to_peak and rmse") {
  CHECK(peak_to_peak(std::vector<double>{3.0, -1.0, 2.0}) == 4.0);
  CHECK(peak_to_peak(std::vector<double>{}) == 0.0);
  const std::vector<double> sim{20.0, 20.0, 20.0};
  const std::vector<double> meas{20.0, 20.3, 19.7};
  CHECK(rmse(sim, sim) == 0.0);
  CHECK(rmse(sim, meas) == doctest::Approx(std::sqrt(0.18 / 3.0)).epsilon(1e-12));
  CHECK(std::abs(rmse(sim, meas) - 0.2449) < 1e-4);
  const std::vector<double> shifted{20.1, 20.1, 20.1};
  CHECK(rmse(shifted, sim) == doctest::Approx(0.1).epsilon(1e-12));
  CHECK_THROWS_AS(rmse(sim, std::vector<double>{1.0}), DomainError);
  CHECK_THROWS_AS(rmse(std::vector<double>{}, std::vector<double>{}), DomainError);
}
