#include "ovrv/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "ovrv/errors.hpp"

namespace ovrv {

namespace {

struct Vertex {
  std::vector<double> u;  // unit-box coordinates
  double f;
};

class BoxedProblem {
 public:
  BoxedProblem(const Objective& f, std::span<const double> lower, std::span<const double> upper)
      : f_(f), lower_(lower.begin(), lower.end()), range_(lower.size()) {
    for (std::size_t i = 0; i < lower.size(); ++i) range_[i] = upper[i] - lower[i];
  }

  std::vector<double> to_unit(std::span<const double> x) const {
    std::vector<double> u(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
      u[i] = range_[i] > 0.0 ? std::clamp((x[i] - lower_[i]) / range_[i], 0.0, 1.0) : 0.0;
    }
    return u;
  }

  std::vector<double> to_box(std::span<const double> u) const {
    std::vector<double> x(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) x[i] = lower_[i] + range_[i] * u[i];
    return x;
  }

  double operator()(std::vector<double>& u) {
    for (double& c : u) c = std::clamp(c, 0.0, 1.0);
    ++evaluations;
    const double value = f_(to_box(u));
    return std::isnan(value) ? std::numeric_limits<double>::infinity() : value;
  }

  int evaluations = 0;

 private:
  const Objective& f_;
  std::vector<double> lower_;
  std::vector<double> range_;
};

std::vector<Vertex> initial_simplex(BoxedProblem& problem, const std::vector<double>& center,
                                    double step) {
  std::vector<Vertex> simplex;
  auto u0 = center;
  const double f0 = problem(u0);
  simplex.push_back({u0, f0});
  for (std::size_t i = 0; i < center.size(); ++i) {
    auto u = center;
    u[i] = u[i] + step <= 1.0 ? u[i] + step : u[i] - step;
    const double f = problem(u);
    simplex.push_back({u, f});
  }
  return simplex;
}

void order(std::vector<Vertex>& simplex) {
  std::stable_sort(simplex.begin(), simplex.end(),
                   [](const Vertex& a, const Vertex& b) { return a.f < b.f; });
}

bool simplex_converged(const std::vector<Vertex>& s, double x_tol, double f_tol) {
  double diameter = 0.0;
  for (std::size_t k = 1; k < s.size(); ++k) {
    for (std::size_t i = 0; i < s[k].u.size(); ++i) {
      diameter = std::max(diameter, std::abs(s[k].u[i] - s[0].u[i]));
    }
  }
  return diameter <= x_tol && s.back().f - s.front().f <= f_tol;
}

}  // namespace

NelderMeadResult nelder_mead_bounded(const Objective& f, std::span<const double> x0,
                                     std::span<const double> lower, std::span<const double> upper,
                                     const NelderMeadOptions& opt) {
  const std::size_t n = x0.size();
  if (n == 0 || lower.size() != n || upper.size() != n) {
    throw DomainError("nelder_mead_bounded: dimension mismatch");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!(lower[i] <= upper[i]) || !std::isfinite(lower[i]) || !std::isfinite(upper[i])) {
      throw DomainError("nelder_mead_bounded: invalid bounds");
    }
  }

  BoxedProblem problem(f, lower, upper);
  auto simplex = initial_simplex(problem, problem.to_unit(x0), opt.initial_step);
  order(simplex);

  NelderMeadResult result;
  double restart_base = simplex.front().f;
  int it = 0;
  for (; it < opt.max_iterations; ++it) {
    if (simplex_converged(simplex, opt.x_tol, opt.f_tol)) {
      const double best = simplex.front().f;
      const bool improved = restart_base - best > opt.f_tol;
      if (!opt.restart || !improved) {
        result.converged = true;
        break;
      }
      restart_base = best;
      auto center = simplex.front().u;
      simplex = initial_simplex(problem, center, opt.initial_step);
      order(simplex);
    }

    // Centroid of all but the worst vertex.
    std::vector<double> centroid(n, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t i = 0; i < n; ++i) centroid[i] += simplex[k].u[i];
    }
    for (double& c : centroid) c /= static_cast<double>(n);

    auto& worst = simplex.back();
    auto along = [&](double coef) {
      std::vector<double> u(n);
      for (std::size_t i = 0; i < n; ++i) u[i] = centroid[i] + coef * (worst.u[i] - centroid[i]);
      return u;
    };

    auto reflected = along(-1.0);
    const double f_r = problem(reflected);
    if (f_r < simplex.front().f) {
      auto expanded = along(-2.0);
      const double f_e = problem(expanded);
      if (f_e < f_r) {
        worst = {std::move(expanded), f_e};
      } else {
        worst = {std::move(reflected), f_r};
      }
    } else if (f_r < simplex[n - 1].f) {
      worst = {std::move(reflected), f_r};
    } else {
      const bool outside = f_r < worst.f;
      auto contracted = along(outside ? -0.5 : 0.5);
      const double f_c = problem(contracted);
      if (f_c < (outside ? f_r : worst.f)) {
        worst = {std::move(contracted), f_c};
      } else {
        for (std::size_t k = 1; k <= n; ++k) {
          for (std::size_t i = 0; i < n; ++i) {
            simplex[k].u[i] = simplex[0].u[i] + 0.5 * (simplex[k].u[i] - simplex[0].u[i]);
          }
          simplex[k].f = problem(simplex[k].u);
        }
      }
    }
    order(simplex);
    result.best_history.push_back(simplex.front().f);
  }

  result.iterations = it;
  result.evaluations = problem.evaluations;
  result.x = problem.to_box(simplex.front().u);
  result.f = simplex.front().f;
  return result;
}

}  // namespace ovrv
