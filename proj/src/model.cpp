#include "ovrv/model.hpp"

#include <cmath>
#include <string>

#include "ovrv/errors.hpp"

namespace ovrv {

namespace {

void require_parameter(const char* name, double value) {
  if (!std::isfinite(value) || value < 0.0) {
    throw DomainError(std::string("model parameter ") + name +
                      " must be finite and non-negative, got " + std::to_string(value));
  }
}

}  // namespace

ModelParams::ModelParams(double k1, double k2, double tau_e, double eta)
    : k1_(k1), k2_(k2), tau_e_(tau_e), eta_(eta) {
  require_parameter("k1", k1);
  require_parameter("k2", k2);
  require_parameter("tau_e", tau_e);
  require_parameter("eta", eta);
}

double accel(const ModelParams& params, double s, double v, double dv) {
  if (!std::isfinite(s) || !std::isfinite(v) || !std::isfinite(dv)) {
    throw DomainError("accel: non-finite state");
  }
  return accel_unchecked(params, s, v, dv);
}

double equilibrium_gap(const ModelParams& params, double v) {
  if (!(v >= 0.0) || !std::isfinite(v)) {
    throw DomainError("equilibrium_gap: velocity must be finite and >= 0");
  }
  return params.eta() + params.tau_e() * v;
}

double time_gap_at(const ModelParams& params, double v) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw DomainError("time_gap_at: time-gap is undefined for v <= 0");
  }
  return params.eta() / v + params.tau_e();
}

RdcReport check_rdc(const RawParams& p) {
  const double f_s = p.k1;
  const double f_dv = p.k2;
  const double f_v = -p.k1 * p.tau_e;
  RdcReport report;
  report.checks = {
      {"f_s >= 0", f_s, f_s >= 0.0},
      {"f_dv >= 0", f_dv, f_dv >= 0.0},
      {"f_v <= 0", f_v, f_v <= 0.0},
  };
  report.pass = true;
  for (const auto& c : report.checks) report.pass = report.pass && c.pass;
  return report;
}

RdcReport check_rdc(const ModelParams& params) {
  return check_rdc(RawParams{params.k1(), params.k2(), params.tau_e(), params.eta()});
}

}  // namespace ovrv
