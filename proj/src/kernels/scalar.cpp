#include "kernels_impl.hpp"

namespace ovrv::kernels::detail::scalar {

void gamma_magnitude(const GammaCoefficients& c, const double* omega, double* out,
                     std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = gamma_element(c, omega[i]);
}

void lambda2(const double* k1, const double* k2, const double* tau_e, double* out,
             std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = lambda2_element(k1[i], k2[i], tau_e[i]);
}

}  // namespace ovrv::kernels::detail::scalar
