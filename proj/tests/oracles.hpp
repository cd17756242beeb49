#pragma once

// Independent reference computations used by the tests. Nothing here calls
// into the library: transfer functions are evaluated with std::complex and
// the integrators are written out longhand.

#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

namespace oracle {

struct Gains {
  double k1, k2, tau_e, eta;
};

inline const Gains kMin{0.0782, 0.4445, 0.5162, 8.3365};
inline const Gains kMax{0.0131, 0.2692, 1.6881, 7.5699};

// Gamma(s) = (k2 s + k1) / (s^2 + (k2 + k1 tau) s + k1), evaluated at s = j omega.
inline double gamma_abs(const Gains& g, double omega) {
  const std::complex<double> s(0.0, omega);
  const auto num = g.k2 * s + g.k1;
  const auto den = s * s + (g.k2 + g.k1 * g.tau_e) * s + g.k1;
  return std::abs(num / den);
}

// Same criterion rewritten in the gains: (1 - k2 tau - k1 tau^2 / 2) / (k1 tau^3).
inline double lambda2(const Gains& g) {
  const double t = g.tau_e;
  return (1.0 - g.k2 * t - 0.5 * g.k1 * t * t) / (g.k1 * t * t * t);
}

// Bisection on |Gamma| - 1 between a point known to amplify and one known to attenuate.
inline double crossover(const Gains& g) {
  double lo = 1e-4;
  double hi = 1e3;
  if (gamma_abs(g, lo) <= 1.0) return NAN;
  for (int i = 0; i < 400; ++i) {
    const double mid = std::sqrt(lo * hi);
    (gamma_abs(g, mid) > 1.0 ? lo : hi) = mid;
    if (hi - lo < 1e-15 * hi) break;
  }
  return 0.5 * (lo + hi);
}

struct Peak {
  double omega;
  double gain;
};

// Dense log grid followed by ternary refinement around the best grid point.
inline Peak peak(const Gains& g, double lo = 1e-5, double hi = 10.0, std::size_t n = 20001) {
  std::size_t best = 0;
  double best_v = -1.0;
  std::vector<double> w(n);
  for (std::size_t i = 0; i < n; ++i) {
    w[i] = lo * std::pow(hi / lo, double(i) / double(n - 1));
    const double v = gamma_abs(g, w[i]);
    if (v > best_v) {
      best_v = v;
      best = i;
    }
  }
  double a = w[best == 0 ? 0 : best - 1];
  double b = w[best + 1 == n ? n - 1 : best + 1];
  for (int i = 0; i < 300; ++i) {
    const double m1 = a + (b - a) / 3.0;
    const double m2 = b - (b - a) / 3.0;
    if (gamma_abs(g, m1) < gamma_abs(g, m2)) {
      a = m1;
    } else {
      b = m2;
    }
  }
  const double x = 0.5 * (a + b);
  return {x, gamma_abs(g, x)};
}

inline double to_db(double mag) { return 20.0 * std::log10(mag); }

inline double accel(const Gains& g, double s, double v, double dv) {
  return g.k1 * (s - g.eta - g.tau_e * v) + g.k2 * dv;
}

struct Rollout {
  std::vector<double> s, v;
};

// Forward Euler, lead velocity sampled on the same grid.
inline Rollout euler(const Gains& g, const std::vector<double>& lead, double s0, double v0, double dt) {
  Rollout r;
  double s = s0, v = v0;
  for (std::size_t i = 0; i < lead.size(); ++i) {
    r.s.push_back(s);
    r.v.push_back(v);
    const double ds = lead[i] - v;
    const double dv = accel(g, s, v, ds);
    s += dt * ds;
    v += dt * dv;
  }
  return r;
}

// Classical RK4 with the lead given as a function of time.
template <class Lead>
inline Rollout rk4(const Gains& g, Lead lead, double t_end, double s0, double v0, double dt) {
  Rollout r;
  double s = s0, v = v0;
  const auto n = static_cast<std::size_t>(std::llround(t_end / dt));
  auto f = [&](double t, double ss, double vv, double& ds, double& dv) {
    ds = lead(t) - vv;
    dv = accel(g, ss, vv, ds);
  };
  for (std::size_t i = 0; i <= n; ++i) {
    r.s.push_back(s);
    r.v.push_back(v);
    if (i == n) break;
    const double t = dt * double(i);
    double a1, b1, a2, b2, a3, b3, a4, b4;
    f(t, s, v, a1, b1);
    f(t + dt / 2, s + dt / 2 * a1, v + dt / 2 * b1, a2, b2);
    f(t + dt / 2, s + dt / 2 * a2, v + dt / 2 * b2, a3, b3);
    f(t + dt, s + dt * a3, v + dt * b3, a4, b4);
    s += dt / 6 * (a1 + 2 * a2 + 2 * a3 + a4);
    v += dt / 6 * (b1 + 2 * b2 + 2 * b3 + b4);
  }
  return r;
}

inline double rmse(const std::vector<double>& a, const std::vector<double>& b) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(sum / double(a.size()));
}

}  // namespace oracle
