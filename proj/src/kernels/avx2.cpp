#include <immintrin.h>

#include "kernels_impl.hpp"

namespace ovrv::kernels::detail::avx2 {

void gamma_magnitude(const GammaCoefficients& c, const double* omega, double* out,
                     std::size_t n) {
  const __m256d fs = _mm256_set1_pd(c.fs);
  const __m256d fs2 = _mm256_set1_pd(c.fs2);
  const __m256d fdv2 = _mm256_set1_pd(c.fdv2);
  const __m256d damp2 = _mm256_set1_pd(c.damp2);

  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d w = _mm256_loadu_pd(omega + i);
    const __m256d x = _mm256_mul_pd(w, w);
    const __m256d num = _mm256_add_pd(_mm256_mul_pd(x, fdv2), fs2);
    const __m256d d = _mm256_sub_pd(fs, x);
    const __m256d den = _mm256_add_pd(_mm256_mul_pd(d, d), _mm256_mul_pd(x, damp2));
    _mm256_storeu_pd(out + i, _mm256_sqrt_pd(_mm256_div_pd(num, den)));
  }
  for (; i < n; ++i) out[i] = gamma_element(c, omega[i]);
}

void lambda2(const double* k1, const double* k2, const double* tau_e, double* out,
             std::size_t n) {
  const __m256d zero = _mm256_setzero_pd();
  const __m256d half = _mm256_set1_pd(0.5);
  const __m256d nan = _mm256_set1_pd(std::numeric_limits<double>::quiet_NaN());

  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d f_s = _mm256_loadu_pd(k1 + i);
    const __m256d f_dv = _mm256_loadu_pd(k2 + i);
    const __m256d te = _mm256_loadu_pd(tau_e + i);
    const __m256d f_v = _mm256_sub_pd(zero, _mm256_mul_pd(f_s, te));
    const __m256d f_v2 = _mm256_mul_pd(f_v, f_v);
    const __m256d f_v3 = _mm256_mul_pd(f_v2, f_v);
    const __m256d bracket = _mm256_sub_pd(
        _mm256_sub_pd(_mm256_mul_pd(f_v2, half), _mm256_mul_pd(f_dv, f_v)), f_s);
    const __m256d value = _mm256_mul_pd(_mm256_div_pd(f_s, f_v3), bracket);
    const __m256d singular = _mm256_cmp_pd(f_v3, zero, _CMP_EQ_OQ);
    _mm256_storeu_pd(out + i, _mm256_blendv_pd(value, nan, singular));
  }
  for (; i < n; ++i) out[i] = lambda2_element(k1[i], k2[i], tau_e[i]);
}

}  // namespace ovrv::kernels::detail::avx2
