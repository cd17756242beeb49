#pragma once

#include <cmath>
#include <cstddef>
#include <limits>

#include "ovrv/kernels.hpp"

namespace ovrv::kernels::detail {

// Loop-invariant pieces of |Gamma|^2 = (x*fdv2 + fs2) / ((fs - x)^2 + x*damp2), x = omega^2.
struct GammaCoefficients {
  double fs;
  double fs2;
  double fdv2;
  double damp2;
};

inline GammaCoefficients gamma_coefficients(const Partials& p) {
  const double damp = p.f_dv - p.f_v;
  return {p.f_s, p.f_s * p.f_s, p.f_dv * p.f_dv, damp * damp};
}

// Scalar element kernels. The SIMD variants use them for tail elements and
// mirror their operation order exactly.
inline double gamma_element(const GammaCoefficients& c, double omega) {
  const double x = omega * omega;
  const double num = x * c.fdv2 + c.fs2;
  const double d = c.fs - x;
  const double den = d * d + x * c.damp2;
  return std::sqrt(num / den);
}

inline double lambda2_element(double k1, double k2, double tau_e) {
  const double f_s = k1;
  const double f_v = -(k1 * tau_e);
  const double f_v2 = f_v * f_v;
  const double f_v3 = f_v2 * f_v;
  if (f_v3 == 0.0) return std::numeric_limits<double>::quiet_NaN();
  const double bracket = (f_v2 * 0.5 - k2 * f_v) - f_s;
  return (f_s / f_v3) * bracket;
}

namespace scalar {
void gamma_magnitude(const GammaCoefficients& c, const double* omega, double* out,
                     std::size_t n);
void lambda2(const double* k1, const double* k2, const double* tau_e, double* out,
             std::size_t n);
}  // namespace scalar

#if defined(OVRV_HAVE_AVX2)
namespace avx2 {
void gamma_magnitude(const GammaCoefficients& c, const double* omega, double* out,
                     std::size_t n);
void lambda2(const double* k1, const double* k2, const double* tau_e, double* out,
             std::size_t n);
}  // namespace avx2
#endif

#if defined(OVRV_HAVE_NEON)
namespace neon {
void gamma_magnitude(const GammaCoefficients& c, const double* omega, double* out,
                     std::size_t n);
void lambda2(const double* k1, const double* k2, const double* tau_e, double* out,
             std::size_t n);
}  // namespace neon
#endif

}  // namespace ovrv::kernels::detail
