#include <cmath>
#include <limits>
#include <vector>

#include "doctest.h"
#include "ovrv/errors.hpp"
#include "ovrv/optimizer.hpp"

using namespace ovrv;

namespace {

double rosenbrock(std::span<const double> x) {
  return 100.0 * std::pow(x[1] - x[0] * x[0], 2) + std::pow(1.0 - x[0], 2);
}

}  // namespace

TEST_CASE("Nelder-Mead finds an interior minimum") {
  const std::vector<double> x0{-1.2, 1.0}, lo{-2.0, -2.0}, hi{2.0, 3.0};
  NelderMeadOptions opt;
  opt.x_tol = 1e-9;
  opt.f_tol = 1e-14;
  opt.max_iterations = 5000;
  const auto r = nelder_mead_bounded(rosenbrock, x0, lo, hi, opt);
  CHECK(r.converged);
  CHECK(r.x[0] == doctest::Approx(1.0).epsilon(1e-5));
  CHECK(r.x[1] == doctest::Approx(1.0).epsilon(1e-5));
  CHECK(r.f < 1e-10);
}

TEST_CASE("Nelder-Mead respects bounds and lands on an active bound") {
  // Unconstrained minimum at (3, -1) lies outside the box.
  auto f = [](std::span<const double> x) { return std::pow(x[0] - 3.0, 2) + std::pow(x[1] + 1.0, 2); };
  int outside = 0;
  auto watched = [&](std::span<const double> x) {
    if (x[0] < 0.0 || x[0] > 2.0 || x[1] < 0.0 || x[1] > 1.0) ++outside;
    return f(x);
  };
  const std::vector<double> x0{0.5, 0.5}, lo{0.0, 0.0}, hi{2.0, 1.0};
  const auto r = nelder_mead_bounded(watched, x0, lo, hi);
  CHECK(outside == 0);
  CHECK(r.x[0] == doctest::Approx(2.0).epsilon(1e-5));
  CHECK(std::abs(r.x[1]) < 1e-5);
}

TEST_CASE("best objective never increases") {
  const std::vector<double> x0{1.5, -1.0}, lo{-2.0, -2.0}, hi{2.0, 2.0};
  const auto r = nelder_mead_bounded(rosenbrock, x0, lo, hi);
  REQUIRE_FALSE(r.best_history.empty());
  for (std::size_t i = 1; i < r.best_history.size(); ++i) CHECK(r.best_history[i] <= r.best_history[i - 1]);
  CHECK(r.f == r.best_history.back());
  CHECK(r.evaluations > r.iterations);
}

TEST_CASE("NaN objective values are treated as infinitely bad") {
  auto f = [](std::span<const double> x) {
    return x[0] > 0.8 ? std::numeric_limits<double>::quiet_NaN() : std::pow(x[0] - 0.5, 2);
  };
  const std::vector<double> x0{0.1}, lo{0.0}, hi{1.0};
  const auto r = nelder_mead_bounded(f, x0, lo, hi);
  CHECK(r.x[0] == doctest::Approx(0.5).epsilon(1e-4));
}

TEST_CASE("iteration cap reports non-convergence") {
  NelderMeadOptions opt;
  opt.max_iterations = 3;
  const std::vector<double> x0{-1.2, 1.0}, lo{-2.0, -2.0}, hi{2.0, 3.0};
  const auto r = nelder_mead_bounded(rosenbrock, x0, lo, hi, opt);
  CHECK_FALSE(r.converged);
  CHECK(r.iterations == 3);
}

TEST_CASE("deterministic and validated") {
  const std::vector<double> x0{-1.2, 1.0}, lo{-2.0, -2.0}, hi{2.0, 3.0};
  const auto a = nelder_mead_bounded(rosenbrock, x0, lo, hi);
  const auto b = nelder_mead_bounded(rosenbrock, x0, lo, hi);
  CHECK(a.x == b.x);
  CHECK(a.best_history == b.best_history);
  const std::vector<double> bad_hi{-3.0, 3.0};
  CHECK_THROWS_AS(nelder_mead_bounded(rosenbrock, x0, lo, bad_hi), DomainError);
  const std::vector<double> short_lo{0.0};
  CHECK_THROWS_AS(nelder_mead_bounded(rosenbrock, x0, short_lo, hi), DomainError);
}
