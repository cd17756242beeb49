#include <atomic>
#include <string>

#include "kernels_impl.hpp"
#include "ovrv/errors.hpp"

namespace ovrv::kernels {

namespace {

bool cpu_has_avx2() {
#if defined(OVRV_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

Backend detect_best() {
  if (backend_available(Backend::kAvx2)) return Backend::kAvx2;
  if (backend_available(Backend::kNeon)) return Backend::kNeon;
  return Backend::kScalar;
}

// -1 means "not forced".
std::atomic<int> g_forced{-1};

void require_available(Backend backend) {
  if (!backend_available(backend)) {
    throw DomainError("kernel backend '" + std::string(backend_name(backend)) +
                      "' is not available on this machine");
  }
}

}  // namespace

std::string_view backend_name(Backend backend) {
  switch (backend) {
    case Backend::kScalar: return "scalar";
    case Backend::kAvx2: return "avx2";
    case Backend::kNeon: return "neon";
  }
  return "unknown";
}

bool backend_available(Backend backend) {
  switch (backend) {
    case Backend::kScalar: return true;
    case Backend::kAvx2: return cpu_has_avx2();
    case Backend::kNeon:
#if defined(OVRV_HAVE_NEON)
      return true;
#else
      return false;
#endif
  }
  return false;
}

Backend active_backend() {
  static const Backend best = detect_best();
  const int forced = g_forced.load(std::memory_order_relaxed);
  return forced < 0 ? best : static_cast<Backend>(forced);
}

void force_backend(Backend backend) {
  require_available(backend);
  g_forced.store(static_cast<int>(backend), std::memory_order_relaxed);
}

void reset_backend() { g_forced.store(-1, std::memory_order_relaxed); }

void gamma_magnitude(const Partials& partials, std::span<const double> omega,
                     std::span<double> out) {
  gamma_magnitude(active_backend(), partials, omega, out);
}

void gamma_magnitude(Backend backend, const Partials& partials,
                     std::span<const double> omega, std::span<double> out) {
  if (omega.size() != out.size()) {
    throw DomainError("gamma_magnitude: input and output lengths differ");
  }
  require_available(backend);
  const auto c = detail::gamma_coefficients(partials);
  switch (backend) {
    case Backend::kScalar:
      detail::scalar::gamma_magnitude(c, omega.data(), out.data(), omega.size());
      return;
    case Backend::kAvx2:
#if defined(OVRV_HAVE_AVX2)
      detail::avx2::gamma_magnitude(c, omega.data(), out.data(), omega.size());
#endif
      return;
    case Backend::kNeon:
#if defined(OVRV_HAVE_NEON)
      detail::neon::gamma_magnitude(c, omega.data(), out.data(), omega.size());
#endif
      return;
  }
}

void lambda2(std::span<const double> k1, std::span<const double> k2,
             std::span<const double> tau_e, std::span<double> out) {
  lambda2(active_backend(), k1, k2, tau_e, out);
}

void lambda2(Backend backend, std::span<const double> k1, std::span<const double> k2,
             std::span<const double> tau_e, std::span<double> out) {
  if (k1.size() != out.size() || k2.size() != out.size() || tau_e.size() != out.size()) {
    throw DomainError("lambda2: input and output lengths differ");
  }
  require_available(backend);
  switch (backend) {
    case Backend::kScalar:
      detail::scalar::lambda2(k1.data(), k2.data(), tau_e.data(), out.data(), out.size());
      return;
    case Backend::kAvx2:
#if defined(OVRV_HAVE_AVX2)
      detail::avx2::lambda2(k1.data(), k2.data(), tau_e.data(), out.data(), out.size());
#endif
      return;
    case Backend::kNeon:
#if defined(OVRV_HAVE_NEON)
      detail::neon::lambda2(k1.data(), k2.data(), tau_e.data(), out.data(), out.size());
#endif
      return;
  }
}

}  // namespace ovrv::kernels
