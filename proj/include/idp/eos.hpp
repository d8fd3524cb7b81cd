#pragma once

#include <string_view>
#include <variant>

#include "idp/mie_gruneisen.hpp"

namespace idp {

// Units: tau cm^3/g, e kJ/g, p GPa, c mm/us, T K.

/// Copper.
struct MacawParams {
  double tau0 = 1.0 / 8.952;
  double gamma0 = 0.5;
  double a_coef = 7.3;  // GPa
  double b_coef = 3.9;
};

/// Unreacted explosive. e0 defaults to 0 (no reference value available).
struct DavisParams {
  double tau0 = 1.0 / 1.71;
  double gamma0 = 0.8437;
  double t0 = 298.15;    // K
  double a_coef = 2.434;  // mm/us
  double b_coef = 2.367;
  double c_coef = 1.024;
  double z_coef = 0.0;
  double cv0 = 0.001072;  // kJ/(g K)
  double alpha_st = 0.8484;
  double e0 = 0.0;  // kJ/g
};

struct StiffenedParams {
  double gamma = 1.4;
  double p_inf = 0.0;  // GPa
  double q = 0.0;      // kJ/g
};

void validate(const MacawParams& p);
void validate(const DavisParams& p);
void validate(const StiffenedParams& p);

/// Sampling window used when a lower bound on the fundamental derivative has
/// to be found numerically.
struct GminSweep {
  double tau_lo_factor = 0.1;
  double tau_hi_factor = 10.0;
  int samples = 10000;
};

struct MacawCurves {
  MacawParams prm;

  double energy(double tau) const;
  double pressure(double tau) const;
  double bulk(double tau) const;
  double bulk_slope(double tau) const;
  Gruneisen gruneisen(double) const { return {prm.gamma0, 0.0, 0.0}; }
};

struct DavisCurves {
  DavisParams prm;

  double energy(double tau) const;
  double pressure(double tau) const;
  double bulk(double tau) const;
  double bulk_slope(double tau) const;
  Gruneisen gruneisen(double tau) const;
  double temperature(double tau) const;  // T_s
};

/// Simple MACAW: constant-Grüneisen law built on the cold curve.
class SimpleMacaw {
 public:
  explicit SimpleMacaw(MacawParams prm = {});

  const MacawParams& params() const noexcept { return mg_.curves().prm; }

  double pressure(ThermoPoint pt) const { return mg_.pressure(pt); }
  ThermoState evaluate(ThermoPoint pt) const;
  double cold_energy(double tau) const { return mg_.curves().energy(tau); }
  double cold_pressure(double tau) const { return mg_.curves().pressure(tau); }
  double cold_bulk(double tau) const { return mg_.curves().bulk(tau); }
  double fundamental_derivative(ThermoPoint pt) const { return mg_.fundamental_derivative(pt); }
  double energy_from_pressure(double tau, double p) const {
    return mg_.energy_from_pressure(tau, p);
  }

  // Isentropes are e = e_cold(tau) + C (tau0/tau)^Gamma0, C increasing in s,
  // so C itself serves as the entropy coordinate.
  double entropy_like(ThermoPoint pt) const;
  double entropy_from_excess(ThermoPoint pt, double excess) const;
  double isentrope_energy(double tau, double sigma) const;
  double cold_sigma() const { return 0.0; }

  double g_min_bound() const;

 private:
  MieGruneisen<MacawCurves> mg_;
};

/// Reactant Davis law. The admissibility floor is the s = s0 = cv0/alpha
/// reference isentrope e_s; states with s < s0 are excluded.
class ReactantDavis {
 public:
  explicit ReactantDavis(DavisParams prm = {});

  const DavisParams& params() const noexcept { return mg_.curves().prm; }
  const DavisCurves& curves() const noexcept { return mg_.curves(); }

  double pressure(ThermoPoint pt) const { return mg_.pressure(pt); }
  ThermoState evaluate(ThermoPoint pt) const { return mg_.evaluate(pt); }
  double cold_energy(double tau) const { return mg_.curves().energy(tau); }
  double cold_pressure(double tau) const { return mg_.curves().pressure(tau); }
  double fundamental_derivative(ThermoPoint pt) const { return mg_.fundamental_derivative(pt); }
  double energy_from_pressure(double tau, double p) const {
    return mg_.energy_from_pressure(tau, p);
  }

  double reference_entropy() const { return params().cv0 / params().alpha_st; }
  /// Physical specific entropy, kJ/(g K).
  double entropy_like(ThermoPoint pt) const;
  double entropy_from_excess(ThermoPoint pt, double excess) const;
  double isentrope_energy(double tau, double s) const;
  double cold_sigma() const { return reference_entropy(); }
  double temperature(ThermoPoint pt) const;

  double g_min_bound(const GminSweep& sweep = {}) const;

 private:
  MieGruneisen<DavisCurves> mg_;
};

/// p = (gamma-1)(e-q)/tau - gamma p_inf.
class StiffenedGas {
 public:
  explicit StiffenedGas(StiffenedParams prm = {});

  const StiffenedParams& params() const noexcept { return prm_; }

  double pressure(ThermoPoint pt) const;
  ThermoState evaluate(ThermoPoint pt) const;
  double cold_energy(double tau) const { return prm_.q + prm_.p_inf * tau; }
  double cold_pressure(double) const { return -prm_.p_inf; }
  double fundamental_derivative(ThermoPoint) const { return 0.5 * (prm_.gamma + 1.0); }
  double energy_from_pressure(double tau, double p) const;

  double entropy_like(ThermoPoint pt) const;
  double entropy_from_excess(ThermoPoint pt, double excess) const;
  double isentrope_energy(double tau, double sigma) const;
  double cold_sigma() const { return 0.0; }

  double g_min_bound() const { return 0.5 * (prm_.gamma + 1.0); }

 private:
  StiffenedParams prm_;
};

/// Tolerance below the cold curve that is still treated as admissible.
inline double admissibility_tolerance(double e) {
  return 1e-12 * (e < 0.0 ? (-e > 1.0 ? -e : 1.0) : (e > 1.0 ? e : 1.0));
}

/// Complete-EOS front end. Wraps one concrete law and adds the error checks
/// every caller relies on: finite outputs, positive bulk modulus, and
/// energies on or above the cold curve.
class EosModel {
 public:
  using Law = std::variant<SimpleMacaw, ReactantDavis, StiffenedGas>;

  EosModel(SimpleMacaw law) : law_(std::move(law)) {}
  EosModel(ReactantDavis law) : law_(std::move(law)) {}
  EosModel(StiffenedGas law) : law_(std::move(law)) {}

  static EosModel macaw(const MacawParams& p = {}) { return EosModel(SimpleMacaw(p)); }
  static EosModel davis(const DavisParams& p = {}) { return EosModel(ReactantDavis(p)); }
  static EosModel stiffened(const StiffenedParams& p = {}) { return EosModel(StiffenedGas(p)); }

  const Law& law() const noexcept { return law_; }
  template <class T>
  const T* get_if() const noexcept {
    return std::get_if<T>(&law_);
  }
  std::string_view name() const noexcept;

  double pressure(ThermoPoint pt) const;
  /// Pressure and bulk modulus together; throws HyperbolicityError when the
  /// bulk modulus is not positive.
  ThermoState evaluate(ThermoPoint pt) const;
  /// evaluate() that also throws InadmissibleStateError below the cold curve.
  ThermoState sample(ThermoPoint pt) const;
  double bulk_modulus(ThermoPoint pt) const;
  double sound_speed(ThermoPoint pt) const;
  double cold_energy(double tau) const;
  double cold_pressure(double tau) const;
  double entropy_like(ThermoPoint pt) const;
  /// entropy_like(pt) given excess = evaluate(pt).excess, without the
  /// admissibility check.
  double entropy_from_excess(ThermoPoint pt, double excess) const;
  double isentrope_energy(double tau, double sigma) const;
  /// Value of entropy_like on the admissibility floor.
  double cold_sigma() const;
  double fundamental_derivative(ThermoPoint pt) const;
  double g_min_bound() const;
  double energy_from_pressure(double tau, double p) const;

  /// e - e_cold(tau); admissible iff >= -admissibility_tolerance(e).
  double excess_energy(ThermoPoint pt) const { return pt.e - cold_energy(pt.tau); }
  bool admissible(ThermoPoint pt) const {
    return pt.tau > 0.0 && excess_energy(pt) >= -admissibility_tolerance(pt.e);
  }

 private:
  Law law_;
};

/// Temperature for the reactant Davis law.
double temperature(const ReactantDavis& eos, ThermoPoint pt);

}  // namespace idp
