#pragma once

// Batch kernels for the frequency-domain analysis.
//
// Each kernel has a scalar reference implementation and SIMD variants
// (AVX2 on x86-64, NEON on AArch64). The variant is picked at runtime from
// the CPU's capabilities; all variants perform the same IEEE operations in
// the same order (no FMA contraction), so their outputs are bit-identical.

#include <span>
#include <string_view>

namespace ovrv::kernels {

enum class Backend { kScalar, kAvx2, kNeon };

std::string_view backend_name(Backend backend);

/// True if the variant was compiled in and the running CPU supports it.
bool backend_available(Backend backend);

/// Best available backend, unless overridden with force_backend().
Backend active_backend();

/// Pins dispatch to one backend (tests, benchmarking). Throws DomainError
/// if it is unavailable.
void force_backend(Backend backend);
void reset_backend();

/// Partial derivatives (f_s, f_v, f_dv) of the car-following law.
struct Partials {
  double f_s = 0.0;
  double f_v = 0.0;
  double f_dv = 0.0;
};

/// out[i] = |Gamma(j * omega[i])|, the velocity-to-velocity transfer gain.
/// omega and out must have the same length.
void gamma_magnitude(const Partials& partials, std::span<const double> omega,
                     std::span<double> out);
void gamma_magnitude(Backend backend, const Partials& partials,
                     std::span<const double> omega, std::span<double> out);

/// out[i] = lambda2 criterion for (k1[i], k2[i], tau_e[i]); NaN where
/// f_v = -k1 * tau_e is zero.
void lambda2(std::span<const double> k1, std::span<const double> k2,
             std::span<const double> tau_e, std::span<double> out);
void lambda2(Backend backend, std::span<const double> k1, std::span<const double> k2,
             std::span<const double> tau_e, std::span<double> out);

}  // namespace ovrv::kernels
