#pragma once

#include <functional>
#include <span>
#include <vector>

namespace ovrv {

struct NelderMeadOptions {
  double x_tol = 1e-6;   // simplex diameter, in coordinates scaled to the unit box
  double f_tol = 1e-8;   // objective spread across the simplex
  int max_iterations = 2000;
  double initial_step = 0.05;  // fraction of each bound range
  /// Restart from the converged vertex until a restart stops improving.
  bool restart = true;
};

struct NelderMeadResult {
  std::vector<double> x;
  double f = 0.0;
  int iterations = 0;
  int evaluations = 0;
  bool converged = false;
  /// Best objective after each iteration; non-increasing.
  std::vector<double> best_history;
};

using Objective = std::function<double(std::span<const double>)>;

/// Derivative-free minimization within the box [lower, upper]. Trial points
/// are projected onto the box, so the objective is only evaluated inside it.
/// Vertex ties are broken by insertion order, which keeps runs deterministic.
NelderMeadResult nelder_mead_bounded(const Objective& f, std::span<const double> x0,
                                     std::span<const double> lower, std::span<const double> upper,
                                     const NelderMeadOptions& options = {});

}  // namespace ovrv
