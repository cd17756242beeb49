#include "ovrv/time_series.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ovrv/errors.hpp"

namespace ovrv {

std::size_t sample_count(double duration, double dt) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw DomainError("time step must be positive and finite");
  if (!(duration >= 0.0) || !std::isfinite(duration)) throw DomainError("duration must be >= 0");
  // Tolerate representation error in duration / dt (660 / 0.1 = 6599.999...).
  return static_cast<std::size_t>(std::floor(duration / dt + 1e-9)) + 1;
}

double require_uniform(std::span<const double> t, double rel_tol) {
  if (t.size() < 2) throw FormatError("time column needs at least two samples");
  const double dt = t[1] - t[0];
  if (!(dt > 0.0)) throw FormatError("timestamps must be strictly increasing");
  for (std::size_t i = 1; i < t.size(); ++i) {
    const double expected = t[0] + dt * static_cast<double>(i);
    if (!(t[i] > t[i - 1]) || std::abs(t[i] - expected) > rel_tol * dt) {
      throw FormatError("non-uniform sampling at row " + std::to_string(i) + " (t=" +
                        std::to_string(t[i]) + ")");
    }
  }
  return dt;
}

double peak_to_peak(std::span<const double> values) {
  if (values.empty()) return 0.0;
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  return *hi - *lo;
}

double rmse(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw DomainError("rmse: length mismatch");
  if (a.empty()) throw DomainError("rmse: empty series");
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    sum += d * d;
  }
  return std::sqrt(sum / static_cast<double>(a.size()));
}

}  // namespace ovrv
