#pragma once

#include <string>
#include <vector>

namespace ovrv {

/// Parameters of the constant-effective-time-gap OVRV car-following law
///
///   dv/dt = k1 * (s - eta - tau_e * v) + k2 * (v_lead - v)
///
/// All four values are validated once, at construction: they must be finite
/// and non-negative. Evaluation functions do not re-check them.
class ModelParams {
 public:
  /// Throws DomainError if any value is negative or non-finite.
  ModelParams(double k1, double k2, double tau_e, double eta);

  double k1() const { return k1_; }
  double k2() const { return k2_; }
  double tau_e() const { return tau_e_; }
  double eta() const { return eta_; }

  // Partial derivatives of the acceleration law.
  double f_s() const { return k1_; }
  double f_v() const { return -k1_ * tau_e_; }
  double f_dv() const { return k2_; }

  // Coefficients of the generic OVRV form alpha*(V(s) - v) + beta*dv.
  double alpha() const { return k1_ * tau_e_; }
  double beta() const { return k2_; }

  ModelParams with_k1(double k1) const { return {k1, k2_, tau_e_, eta_}; }
  ModelParams with_k2(double k2) const { return {k1_, k2, tau_e_, eta_}; }
  ModelParams with_tau_e(double tau_e) const { return {k1_, k2_, tau_e, eta_}; }
  ModelParams with_eta(double eta) const { return {k1_, k2_, tau_e_, eta}; }

  friend bool operator==(const ModelParams&, const ModelParams&) = default;

 private:
  double k1_;
  double k2_;
  double tau_e_;
  double eta_;
};

/// Raw partials used by the rational-driving-constraint check. Unlike
/// ModelParams these may be negative, so that rejected candidates can be
/// reported instead of failing at construction.
struct RawParams {
  double k1 = 0.0;
  double k2 = 0.0;
  double tau_e = 0.0;
  double eta = 0.0;
};

struct VehicleState {
  double s = 0.0;  // space-gap [m]
  double v = 0.0;  // velocity [m/s]
};

/// Acceleration [m/s^2] at space-gap s, velocity v, relative velocity dv = v_lead - v.
/// Throws DomainError on non-finite input.
double accel(const ModelParams& params, double s, double v, double dv);

/// Unchecked hot-path variant used by the integrators. The desired gap is
/// formed exactly as equilibrium_gap() forms it, so the equilibrium gap
/// yields an acceleration of exactly zero.
inline double accel_unchecked(const ModelParams& p, double s, double v, double dv) {
  return p.k1() * (s - (p.eta() + p.tau_e() * v)) + p.k2() * dv;
}

/// Space-gap with zero acceleration at velocity v when dv = 0: eta + tau_e * v.
double equilibrium_gap(const ModelParams& params, double v);

/// Velocity-dependent time-gap eta / v + tau_e; undefined at v <= 0.
double time_gap_at(const ModelParams& params, double v);

struct RdcCheck {
  std::string name;   // "f_s >= 0", ...
  double value = 0.0;
  bool pass = false;
};

struct RdcReport {
  bool pass = false;
  std::vector<RdcCheck> checks;
};

RdcReport check_rdc(const RawParams& params);
RdcReport check_rdc(const ModelParams& params);

}  // namespace ovrv
