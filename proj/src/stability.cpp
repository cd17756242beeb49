#include "ovrv/stability.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "kernels/kernels_impl.hpp"
#include "ovrv/errors.hpp"

namespace ovrv {

namespace {

namespace kd = kernels::detail;

constexpr std::size_t kPeakSweepPoints = 2000;
// Sweep span relative to sqrt(f_s). Any interior peak lies below sqrt(2 f_s).
constexpr double kPeakSweepLow = 1e-6;
constexpr double kPeakSweepHigh = 10.0;
constexpr int kGoldenMaxIterations = 300;

double to_db(double gain) { return 20.0 * std::log10(gain); }

// Maximizes f on [lo, hi] assuming a single interior maximum.
template <typename F>
double golden_section_max(F f, double lo, double hi) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo;
  double b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  for (int it = 0; it < kGoldenMaxIterations; ++it) {
    if (b - a <= 1e-14 * std::max(std::abs(a), std::abs(b))) break;
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

}  // namespace

kernels::Partials partials_of(const ModelParams& params) {
  return {params.f_s(), params.f_v(), params.f_dv()};
}

double lambda2(const ModelParams& params) {
  const double value = kd::lambda2_element(params.k1(), params.k2(), params.tau_e());
  if (std::isnan(value)) {
    throw SingularityError("lambda2 is undefined when f_v = -k1 * tau_e = 0");
  }
  return value;
}

double gamma_magnitude(const ModelParams& params, double omega) {
  if (!(omega >= 0.0)) throw DomainError("gamma_magnitude: omega must be >= 0");
  if (omega == 0.0) {
    // Removable 0/0 when f_s = 0: Gamma reduces to f_dv / (z + f_dv).
    return (params.f_s() > 0.0 || params.f_dv() > 0.0) ? 1.0 : 0.0;
  }
  return kd::gamma_element(kd::gamma_coefficients(partials_of(params)), omega);
}

std::optional<double> crossover_frequency(const ModelParams& params) {
  const double f_s = params.f_s();
  const double f_v = params.f_v();
  const double f_dv = params.f_dv();
  const double omega_sq = 2.0 * f_s + 2.0 * f_dv * f_v - f_v * f_v;
  if (!(omega_sq > 0.0)) return std::nullopt;
  return std::sqrt(omega_sq);
}

PeakGain peak_gain(const ModelParams& params) {
  const double f_s = params.f_s();
  if (f_s == 0.0) return {0.0, 0.0};

  const double scale = std::sqrt(f_s);
  const auto omega = log_space(kPeakSweepLow * scale, kPeakSweepHigh * scale, kPeakSweepPoints);
  std::vector<double> gain(omega.size());
  kernels::gamma_magnitude(partials_of(params), omega, gain);

  const auto best = static_cast<std::size_t>(
      std::distance(gain.begin(), std::max_element(gain.begin(), gain.end())));
  if (!(gain[best] > 1.0)) return {0.0, 0.0};

  const auto c = kd::gamma_coefficients(partials_of(params));
  const double lo = best > 0 ? omega[best - 1] : 0.0;
  const double hi = best + 1 < omega.size() ? omega[best + 1] : omega[best];
  const double peak = golden_section_max([&](double w) { return kd::gamma_element(c, w); }, lo, hi);
  const double peak_gain = kd::gamma_element(c, peak);
  if (!(peak_gain > 1.0)) return {0.0, 0.0};
  return {peak, to_db(peak_gain)};
}

PeakGain peak_gain_analytic(const ModelParams& params) {
  // |Gamma|^2 = (a x + b) / (x^2 + c x + b), x = omega^2. The stationary
  // point solves a x^2 + 2 b x + b (c - a) = 0.
  const double a = params.f_dv() * params.f_dv();
  const double b = params.f_s() * params.f_s();
  const double damp = params.f_dv() - params.f_v();
  const double c = damp * damp - 2.0 * params.f_s();
  const double excess = a - c;
  if (b == 0.0 || !(excess > 0.0)) return {0.0, 0.0};
  // Rationalized root, well conditioned for a -> 0.
  const double x = b * excess / (b + std::sqrt(b * b + a * b * excess));
  const double omega = std::sqrt(x);
  return {omega, to_db(gamma_magnitude(params, omega))};
}

std::vector<double> log_space(double lo, double hi, std::size_t n) {
  std::vector<double> out(n);
  if (n == 0) return out;
  if (n == 1) {
    out[0] = lo;
    return out;
  }
  const double l0 = std::log10(lo);
  const double step = (std::log10(hi) - l0) / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) out[i] = std::pow(10.0, l0 + step * static_cast<double>(i));
  out.front() = lo;
  out.back() = hi;
  return out;
}

std::vector<GainPoint> bode_curve(const ModelParams& params, const BodeRange& range) {
  if (!(range.omega_min > 0.0) || !(range.omega_min < range.omega_max) ||
      !std::isfinite(range.omega_max) || range.n_points < 2) {
    throw DomainError("bode_curve: need 0 < omega_min < omega_max and n_points >= 2");
  }
  const auto omega = log_space(range.omega_min, range.omega_max, range.n_points);
  std::vector<double> gain(omega.size());
  kernels::gamma_magnitude(partials_of(params), omega, gain);
  std::vector<GainPoint> curve(omega.size());
  for (std::size_t i = 0; i < omega.size(); ++i) curve[i] = {omega[i], to_db(gain[i])};
  return curve;
}

StabilityReport analyze(const ModelParams& params, const BodeRange& range) {
  StabilityReport report;
  report.crossover_omega = crossover_frequency(params);
  try {
    const double l2 = lambda2(params);
    report.lambda2 = l2;
    report.is_string_stable = l2 < 0.0;
    report.marginal = std::abs(l2) < kMarginalLambda2;
  } catch (const SingularityError&) {
    // Fall back to the transfer-function route; without an amplified band
    // the system sits on the boundary and is not classified as stable.
    report.is_string_stable = false;
    report.marginal = !report.crossover_omega.has_value();
  }
  const auto peak = peak_gain(params);
  report.peak_omega = peak.omega;
  report.peak_gain_db = peak.gain_db;
  report.gain_curve = bode_curve(params, range);
  return report;
}

std::vector<SweepCell> stability_sweep(SweepRange k1, SweepRange k2,
                                       std::span<const double> tau_e_values,
                                       std::size_t resolution) {
  auto valid = [](SweepRange r) {
    return std::isfinite(r.lo) && std::isfinite(r.hi) && r.lo >= 0.0 && r.hi >= r.lo;
  };
  if (!valid(k1) || !valid(k2)) throw DomainError("stability_sweep: ranges must satisfy 0 <= lo <= hi");
  if (resolution == 0) throw DomainError("stability_sweep: resolution must be >= 1");
  for (double t : tau_e_values) {
    if (!std::isfinite(t) || t < 0.0) throw DomainError("stability_sweep: tau_e values must be >= 0");
  }

  auto axis = [resolution](SweepRange r) {
    std::vector<double> v(resolution);
    for (std::size_t i = 0; i < resolution; ++i) {
      v[i] = resolution == 1 ? r.lo
                             : r.lo + (r.hi - r.lo) * static_cast<double>(i) /
                                          static_cast<double>(resolution - 1);
    }
    if (resolution > 1) v.back() = r.hi;
    return v;
  };
  const auto k1_axis = axis(k1);
  const auto k2_axis = axis(k2);

  const std::size_t n = tau_e_values.size() * resolution * resolution;
  std::vector<double> k1s, k2s, taus;
  k1s.reserve(n);
  k2s.reserve(n);
  taus.reserve(n);
  for (double t : tau_e_values) {
    for (double a : k1_axis) {
      for (double b : k2_axis) {
        k1s.push_back(a);
        k2s.push_back(b);
        taus.push_back(t);
      }
    }
  }
  std::vector<double> values(n);
  kernels::lambda2(k1s, k2s, taus, values);

  std::vector<SweepCell> cells(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto& cell = cells[i];
    cell.k1 = k1s[i];
    cell.k2 = k2s[i];
    cell.tau_e = taus[i];
    cell.lambda2 = values[i];
    if (std::isnan(values[i])) {
      cell.cls = CellClass::kUndefined;
    } else {
      cell.cls = values[i] < 0.0 ? CellClass::kStable : CellClass::kUnstable;
    }
  }
  return cells;
}

}  // namespace ovrv
