#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "ovrv/kernels.hpp"
#include "ovrv/model.hpp"

namespace ovrv {

struct GainPoint {
  double omega = 0.0;    // rad/s
  double gain_db = 0.0;  // 20 log10 |Gamma(j omega)|
};

struct PeakGain {
  double omega = 0.0;
  double gain_db = 0.0;
};

struct BodeRange {
  double omega_min = 1e-3;
  double omega_max = 10.0;
  std::size_t n_points = 500;
};

/// |lambda2| below this is reported as marginal.
inline constexpr double kMarginalLambda2 = 1e-9;

struct StabilityReport {
  std::optional<double> lambda2;  // absent when f_v = 0
  bool is_string_stable = false;
  bool marginal = false;
  std::optional<double> crossover_omega;
  double peak_gain_db = 0.0;
  double peak_omega = 0.0;
  std::vector<GainPoint> gain_curve;
};

kernels::Partials partials_of(const ModelParams& params);

/// String-stability criterion; negative means string stable.
/// Throws SingularityError when f_v = -k1 * tau_e is zero.
double lambda2(const ModelParams& params);

/// |Gamma(j omega)|. Throws DomainError for omega < 0.
double gamma_magnitude(const ModelParams& params, double omega);

/// Frequency where |Gamma| = 1, from omega^2 = 2 f_s + 2 f_dv f_v - f_v^2.
/// Absent when the right-hand side is <= 0 (no amplified band).
std::optional<double> crossover_frequency(const ModelParams& params);

/// Global maximum of |Gamma| over omega >= 0, located by a dense log sweep
/// followed by golden-section refinement. Returns (0, 0 dB) when no
/// frequency amplifies.
PeakGain peak_gain(const ModelParams& params);

/// Closed-form stationary point of |Gamma|^2 as a rational function of omega^2.
PeakGain peak_gain_analytic(const ModelParams& params);

/// n log-spaced values from lo to hi; the endpoints are exact.
std::vector<double> log_space(double lo, double hi, std::size_t n);

/// Gain in dB at log-spaced frequencies. Throws DomainError unless
/// 0 < omega_min < omega_max and n_points >= 2.
std::vector<GainPoint> bode_curve(const ModelParams& params, const BodeRange& range = {});

StabilityReport analyze(const ModelParams& params, const BodeRange& range = {});

// ---- parameter-space sweeps ----

struct SweepRange {
  double lo = 0.0;
  double hi = 0.0;
};

enum class CellClass { kStable, kUnstable, kUndefined };

struct SweepCell {
  double k1 = 0.0;
  double k2 = 0.0;
  double tau_e = 0.0;
  double lambda2 = 0.0;  // NaN when undefined
  CellClass cls = CellClass::kUndefined;
};

/// lambda2 on the grid tau_e_values x linspace(k1) x linspace(k2), in that
/// nesting order (k2 fastest). Cells with k1 = 0 or tau_e = 0 are undefined.
std::vector<SweepCell> stability_sweep(SweepRange k1, SweepRange k2,
                                       std::span<const double> tau_e_values,
                                       std::size_t resolution);

}  // namespace ovrv
