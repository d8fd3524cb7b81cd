#include "idp/eos.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "idp/error.hpp"

namespace idp {

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw ConfigError(what);
}

bool finite_positive(double x) { return std::isfinite(x) && x > 0.0; }

}  // namespace

void validate(const MacawParams& p) {
  require(finite_positive(p.tau0), "macaw: tau0 must be > 0");
  require(finite_positive(p.gamma0), "macaw: gamma0 must be > 0");
  require(finite_positive(p.a_coef), "macaw: a_coef must be > 0");
  require(finite_positive(p.b_coef), "macaw: b_coef must be > 0");
}

void validate(const DavisParams& p) {
  require(finite_positive(p.tau0), "davis: tau0 must be > 0");
  require(finite_positive(p.cv0), "davis: cv0 must be > 0");
  require(finite_positive(p.alpha_st), "davis: alpha_st must be > 0");
  require(std::isfinite(p.z_coef) && p.z_coef >= 0.0, "davis: z_coef must be >= 0");
  require(finite_positive(p.gamma0), "davis: gamma0 must be > 0");
  require(finite_positive(p.t0), "davis: t0 must be > 0");
  require(finite_positive(p.a_coef) && finite_positive(p.b_coef), "davis: a_coef, b_coef must be > 0");
  require(std::isfinite(p.c_coef) && std::isfinite(p.e0), "davis: c_coef, e0 must be finite");
}

void validate(const StiffenedParams& p) {
  require(std::isfinite(p.gamma) && p.gamma > 1.0, "stiffened: gamma must be > 1");
  require(std::isfinite(p.p_inf) && p.p_inf >= 0.0, "stiffened: p_inf must be >= 0");
  require(std::isfinite(p.q), "stiffened: q must be finite");
}

// ---------------------------------------------------------------------------
// Simple MACAW

double MacawCurves::energy(double tau) const {
  const double r = tau / prm.tau0;
  const double b = prm.b_coef;
  return prm.a_coef * prm.tau0 * (std::pow(r, -b) + b * r - (b + 1.0));
}

double MacawCurves::pressure(double tau) const {
  const double b = prm.b_coef;
  return prm.a_coef * b * (std::pow(prm.tau0 / tau, b + 1.0) - 1.0);
}

double MacawCurves::bulk(double tau) const {
  const double b = prm.b_coef;
  return prm.a_coef * b * (b + 1.0) * std::pow(tau / prm.tau0, -(b + 1.0));
}

double MacawCurves::bulk_slope(double tau) const { return (prm.b_coef + 1.0) * bulk(tau); }

SimpleMacaw::SimpleMacaw(MacawParams prm) : mg_(MacawCurves{prm}) { validate(prm); }

ThermoState SimpleMacaw::evaluate(ThermoPoint pt) const {
  // Same as the generic Mie-Grüneisen path with a single pow.
  const MacawParams& q = params();
  const double r = pt.tau / q.tau0;
  const double rb = std::pow(r, -q.b_coef);
  const double ab = q.a_coef * q.b_coef;
  const double e_cold = q.a_coef * q.tau0 * (rb + q.b_coef * r - (q.b_coef + 1.0));
  const double excess = pt.e - e_cold;
  const double g_over_tau = q.gamma0 / pt.tau;
  const double p = ab * (rb / r - 1.0) + g_over_tau * excess;
  const double k = ab * (q.b_coef + 1.0) * (rb / r) + g_over_tau * (q.gamma0 + 1.0) * excess;
  return {p, k, excess};
}

double SimpleMacaw::entropy_like(ThermoPoint pt) const { return entropy_from_excess(pt, evaluate(pt).excess); }

double SimpleMacaw::entropy_from_excess(ThermoPoint pt, double excess) const {
  return excess * std::pow(pt.tau / params().tau0, params().gamma0);
}

double SimpleMacaw::isentrope_energy(double tau, double sigma) const {
  const MacawParams& q = params();
  return cold_energy(tau) + sigma * std::pow(q.tau0 / tau, q.gamma0);
}

double SimpleMacaw::g_min_bound() const {
  const MacawParams& q = params();
  // -tau K_cold'/K_cold = B + 1 identically.
  return 0.5 * (1.0 + std::min(q.b_coef + 1.0, q.gamma0 + 1.0));
}

// ---------------------------------------------------------------------------
// Reactant Davis

namespace {

// 4By and the scale factors shared by the reference-curve branches.
struct DavisArgs {
  double y;
  double x;  // 4 B y
};

DavisArgs davis_args(const DavisParams& p, double tau) {
  const double y = 1.0 - tau / p.tau0;
  return {y, 4.0 * p.b_coef * y};
}

}  // namespace

double DavisCurves::energy(double tau) const {
  const auto [y, x] = davis_args(prm, tau);
  const double b = prm.b_coef;
  const double scale = prm.a_coef * prm.a_coef / (16.0 * b * b);
  if (tau > prm.tau0) return prm.e0 + scale * std::expm1(x) - scale * x;
  const double x2 = x * x;
  const double poly = x2 / 2.0 + x2 * x / 6.0 + x2 * x2 / 24.0 + prm.c_coef * x2 * x2 * x / 120.0;
  const double om = 1.0 - y;
  return prm.e0 + scale * (poly + 4.0 * b * y * y * y / (3.0 * om * om * om));
}

double DavisCurves::pressure(double tau) const {
  const auto [y, x] = davis_args(prm, tau);
  const double b = prm.b_coef;
  const double scale = prm.a_coef * prm.a_coef / (4.0 * b * prm.tau0);
  if (tau > prm.tau0) return scale * std::expm1(x);
  const double x2 = x * x;
  const double om = 1.0 - y;
  const double om2 = om * om;
  return scale * (x + x2 / 2.0 + x2 * x / 6.0 + prm.c_coef * x2 * x2 / 24.0 + y * y / (om2 * om2));
}

double DavisCurves::bulk(double tau) const {
  const auto [y, x] = davis_args(prm, tau);
  const double b = prm.b_coef;
  const double om = 1.0 - y;
  const double scale = prm.a_coef * prm.a_coef / prm.tau0 * om;
  if (tau > prm.tau0) return scale * std::exp(x);
  const double om2 = om * om;
  return scale * (0.5 * x * x + x + 1.0 + prm.c_coef * x * x * x / 6.0 +
                  y * (y + 1.0) / (2.0 * b * om2 * om2 * om));
}

double DavisCurves::bulk_slope(double tau) const {
  const auto [y, x] = davis_args(prm, tau);
  const double b4 = 4.0 * prm.b_coef;
  const double om = 1.0 - y;
  const double scale = prm.a_coef * prm.a_coef / prm.tau0 * om;
  if (tau > prm.tau0) return scale * std::exp(x) * (b4 * om - 1.0);
  const double om2 = om * om;
  return scale * (b4 * b4 * y * (1.0 - 1.5 * y) + b4 * (1.0 - 2.0 * y) - 1.0 +
                  prm.c_coef * b4 * b4 * b4 * y * y * (0.5 - 2.0 / 3.0 * y) +
                  (2.0 * y * y + 5.0 * y + 1.0) / (2.0 * prm.b_coef * om2 * om2 * om));
}

Gruneisen DavisCurves::gruneisen(double tau) const {
  if (tau > prm.tau0) return {prm.gamma0, 0.0, 0.0};
  const double y = 1.0 - tau / prm.tau0;
  return {prm.gamma0 + prm.z_coef * y, -prm.z_coef / prm.tau0, 0.0};
}

double DavisCurves::temperature(double tau) const {
  const double r = tau / prm.tau0;
  if (tau > prm.tau0) return prm.t0 * std::pow(r, -prm.gamma0);
  return prm.t0 * std::pow(r, -(prm.gamma0 + prm.z_coef)) * std::exp(-prm.z_coef * (1.0 - r));
}

ReactantDavis::ReactantDavis(DavisParams prm) : mg_(DavisCurves{prm}) { validate(prm); }

namespace {

// (e - e_s) (1 + alpha) / (cv0 T_s) + 1, which equals
// (1 + alpha (s - s0)/cv0)^(1 + 1/alpha).
double davis_x(const DavisCurves& c, ThermoPoint pt) {
  const DavisParams& p = c.prm;
  return (pt.e - c.energy(pt.tau)) * (1.0 + p.alpha_st) / (p.cv0 * c.temperature(pt.tau)) + 1.0;
}

}  // namespace

double ReactantDavis::entropy_like(ThermoPoint pt) const {
  const DavisParams& p = params();
  const double x = std::max(davis_x(curves(), pt), 0.0);
  return reference_entropy() + p.cv0 / p.alpha_st * (std::pow(x, p.alpha_st / (1.0 + p.alpha_st)) - 1.0);
}

double ReactantDavis::entropy_from_excess(ThermoPoint pt, double /*excess*/) const { return entropy_like(pt); }

double ReactantDavis::isentrope_energy(double tau, double s) const {
  const DavisParams& p = params();
  const double base = std::max(1.0 + p.alpha_st * (s - reference_entropy()) / p.cv0, 0.0);
  const double x = std::pow(base, (1.0 + p.alpha_st) / p.alpha_st);
  return curves().energy(tau) + p.cv0 * curves().temperature(tau) * (x - 1.0) / (1.0 + p.alpha_st);
}

double ReactantDavis::temperature(ThermoPoint pt) const {
  const double x = std::max(davis_x(curves(), pt), 0.0);
  return curves().temperature(pt.tau) * std::pow(x, 1.0 / (1.0 + params().alpha_st));
}

double ReactantDavis::g_min_bound(const GminSweep& sweep) const {
  if (sweep.samples < 2 || !(sweep.tau_lo_factor > 0.0) || !(sweep.tau_hi_factor > sweep.tau_lo_factor)) {
    throw ConfigError("g_min sweep: need samples >= 2 and 0 < lo < hi");
  }
  const DavisParams& p = params();
  const double lo = std::log(sweep.tau_lo_factor * p.tau0);
  const double hi = std::log(sweep.tau_hi_factor * p.tau0);
  double ratio_min = std::numeric_limits<double>::infinity();
  double gamma_min = std::numeric_limits<double>::infinity();
  for (int k = 0; k < sweep.samples; ++k) {
    const double tau = std::exp(lo + (hi - lo) * k / (sweep.samples - 1));
    const double ks = curves().bulk(tau);
    const double slope = curves().bulk_slope(tau);
    const Gruneisen g = curves().gruneisen(tau);
    if (!(ks > 0.0) || !(slope > 0.0)) {
      throw BoundUnavailableError("davis g_min: reference bulk modulus not positive and decreasing at tau=" +
                                  std::to_string(tau));
    }
    if (!(g.value > 0.0) || g.d1 > 0.0 || g.d2 < 0.0) {
      throw BoundUnavailableError("davis g_min: Grüneisen coefficient not positive, decreasing, convex at tau=" +
                                  std::to_string(tau));
    }
    ratio_min = std::min(ratio_min, slope / ks);
    gamma_min = std::min(gamma_min, g.value);
  }
  return 0.5 * (1.0 + std::min(ratio_min, gamma_min + 1.0));
}

double temperature(const ReactantDavis& eos, ThermoPoint pt) {
  if (!(pt.tau > 0.0) || pt.e - eos.cold_energy(pt.tau) < -admissibility_tolerance(pt.e)) {
    throw InadmissibleStateError("davis temperature: energy below the reference isentrope", pt.tau, pt.e);
  }
  return eos.temperature(pt);
}

// ---------------------------------------------------------------------------
// Stiffened gas

StiffenedGas::StiffenedGas(StiffenedParams prm) : prm_(prm) { validate(prm); }

double StiffenedGas::pressure(ThermoPoint pt) const {
  return (prm_.gamma - 1.0) * (pt.e - prm_.q) / pt.tau - prm_.gamma * prm_.p_inf;
}

ThermoState StiffenedGas::evaluate(ThermoPoint pt) const {
  const double p = pressure(pt);
  return {p, prm_.gamma * (p + prm_.p_inf), pt.e - cold_energy(pt.tau)};
}

double StiffenedGas::energy_from_pressure(double tau, double p) const {
  return prm_.q + (p + prm_.gamma * prm_.p_inf) * tau / (prm_.gamma - 1.0);
}

double StiffenedGas::entropy_like(ThermoPoint pt) const { return entropy_from_excess(pt, evaluate(pt).excess); }

double StiffenedGas::entropy_from_excess(ThermoPoint pt, double excess) const {
  return excess * std::pow(pt.tau, prm_.gamma - 1.0);
}

double StiffenedGas::isentrope_energy(double tau, double sigma) const {
  return cold_energy(tau) + sigma * std::pow(tau, 1.0 - prm_.gamma);
}

// ---------------------------------------------------------------------------
// EosModel

std::string_view EosModel::name() const noexcept {
  struct Visitor {
    std::string_view operator()(const SimpleMacaw&) const { return "macaw"; }
    std::string_view operator()(const ReactantDavis&) const { return "davis"; }
    std::string_view operator()(const StiffenedGas&) const { return "stiffened"; }
  };
  return std::visit(Visitor{}, law_);
}

namespace {

void require_tau(ThermoPoint pt) {
  if (!(pt.tau > 0.0) || !std::isfinite(pt.tau)) {
    throw EosError("specific volume must be positive and finite", pt.tau, pt.e);
  }
}

}  // namespace

double EosModel::pressure(ThermoPoint pt) const {
  require_tau(pt);
  const double p = std::visit([&](const auto& law) { return law.pressure(pt); }, law_);
  if (!std::isfinite(p)) throw EosError("non-finite pressure", pt.tau, pt.e);
  return p;
}

ThermoState EosModel::evaluate(ThermoPoint pt) const {
  require_tau(pt);
  const ThermoState st = std::visit([&](const auto& law) { return law.evaluate(pt); }, law_);
  if (!std::isfinite(st.p) || !std::isfinite(st.bulk_k)) {
    throw EosError("non-finite pressure or bulk modulus", pt.tau, pt.e);
  }
  if (!(st.bulk_k > 0.0)) throw HyperbolicityError("bulk modulus is not positive", pt.tau, pt.e);
  return st;
}

ThermoState EosModel::sample(ThermoPoint pt) const {
  const ThermoState st = evaluate(pt);
  if (st.excess < -admissibility_tolerance(pt.e)) {
    throw InadmissibleStateError("energy below the cold curve", pt.tau, pt.e);
  }
  return st;
}

double EosModel::bulk_modulus(ThermoPoint pt) const { return evaluate(pt).bulk_k; }

double EosModel::sound_speed(ThermoPoint pt) const { return std::sqrt(pt.tau * evaluate(pt).bulk_k); }

double EosModel::cold_energy(double tau) const {
  require_tau({tau, 0.0});
  const double e = std::visit([&](const auto& law) { return law.cold_energy(tau); }, law_);
  if (!std::isfinite(e)) throw EosError("non-finite cold energy", tau, e);
  return e;
}

double EosModel::cold_pressure(double tau) const {
  require_tau({tau, 0.0});
  const double p = std::visit([&](const auto& law) { return law.cold_pressure(tau); }, law_);
  if (!std::isfinite(p)) throw EosError("non-finite cold pressure", tau, 0.0);
  return p;
}

double EosModel::entropy_like(ThermoPoint pt) const {
  require_tau(pt);
  if (!admissible(pt)) throw InadmissibleStateError("energy below the cold curve", pt.tau, pt.e);
  const double s = std::visit([&](const auto& law) { return law.entropy_like(pt); }, law_);
  if (!std::isfinite(s)) throw EosError("non-finite entropy", pt.tau, pt.e);
  return s;
}

double EosModel::entropy_from_excess(ThermoPoint pt, double excess) const {
  const double s = std::visit([&](const auto& law) { return law.entropy_from_excess(pt, excess); }, law_);
  if (!std::isfinite(s)) throw EosError("non-finite entropy", pt.tau, pt.e);
  return s;
}

double EosModel::cold_sigma() const {
  return std::visit([](const auto& law) { return law.cold_sigma(); }, law_);
}

double EosModel::isentrope_energy(double tau, double sigma) const {
  require_tau({tau, 0.0});
  const double floor = cold_sigma();
  if (!(sigma >= floor - admissibility_tolerance(sigma))) {
    throw DomainError("isentrope_energy: entropy below its value on the cold curve");
  }
  const double e = std::visit([&](const auto& law) { return law.isentrope_energy(tau, sigma); }, law_);
  if (!std::isfinite(e)) throw EosError("non-finite isentrope energy", tau, e);
  return e;
}

double EosModel::fundamental_derivative(ThermoPoint pt) const {
  evaluate(pt);
  const double g = std::visit([&](const auto& law) { return law.fundamental_derivative(pt); }, law_);
  if (!std::isfinite(g)) throw EosError("non-finite fundamental derivative", pt.tau, pt.e);
  return g;
}

double EosModel::g_min_bound() const {
  return std::visit([](const auto& law) { return law.g_min_bound(); }, law_);
}

double EosModel::energy_from_pressure(double tau, double p) const {
  require_tau({tau, 0.0});
  const double e = std::visit([&](const auto& law) { return law.energy_from_pressure(tau, p); }, law_);
  if (!std::isfinite(e)) throw EosError("non-finite energy from pressure", tau, e);
  return e;
}

}  // namespace idp
