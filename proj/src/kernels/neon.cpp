#include <arm_neon.h>

#include "kernels_impl.hpp"

namespace ovrv::kernels::detail::neon {

void gamma_magnitude(const GammaCoefficients& c, const double* omega, double* out,
                     std::size_t n) {
  const float64x2_t fs = vdupq_n_f64(c.fs);
  const float64x2_t fs2 = vdupq_n_f64(c.fs2);
  const float64x2_t fdv2 = vdupq_n_f64(c.fdv2);
  const float64x2_t damp2 = vdupq_n_f64(c.damp2);

  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t w = vld1q_f64(omega + i);
    const float64x2_t x = vmulq_f64(w, w);
    const float64x2_t num = vaddq_f64(vmulq_f64(x, fdv2), fs2);
    const float64x2_t d = vsubq_f64(fs, x);
    const float64x2_t den = vaddq_f64(vmulq_f64(d, d), vmulq_f64(x, damp2));
    vst1q_f64(out + i, vsqrtq_f64(vdivq_f64(num, den)));
  }
  for (; i < n; ++i) out[i] = gamma_element(c, omega[i]);
}

void lambda2(const double* k1, const double* k2, const double* tau_e, double* out,
             std::size_t n) {
  const float64x2_t zero = vdupq_n_f64(0.0);
  const float64x2_t half = vdupq_n_f64(0.5);
  const float64x2_t nan = vdupq_n_f64(std::numeric_limits<double>::quiet_NaN());

  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t f_s = vld1q_f64(k1 + i);
    const float64x2_t f_dv = vld1q_f64(k2 + i);
    const float64x2_t te = vld1q_f64(tau_e + i);
    const float64x2_t f_v = vsubq_f64(zero, vmulq_f64(f_s, te));
    const float64x2_t f_v2 = vmulq_f64(f_v, f_v);
    const float64x2_t f_v3 = vmulq_f64(f_v2, f_v);
    const float64x2_t bracket =
        vsubq_f64(vsubq_f64(vmulq_f64(f_v2, half), vmulq_f64(f_dv, f_v)), f_s);
    const float64x2_t value = vmulq_f64(vdivq_f64(f_s, f_v3), bracket);
    const uint64x2_t singular = vceqq_f64(f_v3, zero);
    vst1q_f64(out + i, vbslq_f64(singular, nan, value));
  }
  for (; i < n; ++i) out[i] = lambda2_element(k1[i], k2[i], tau_e[i]);
}

}  // namespace ovrv::kernels::detail::neon
