#pragma once

#include <concepts>
#include <utility>

namespace idp {

/// Specific volume and specific internal energy of one thermodynamic point.
struct ThermoPoint {
  double tau;  // cm^3/g
  double e;    // kJ/g
};

/// Grüneisen coefficient and its first two derivatives in tau.
struct Gruneisen {
  double value;
  double d1;
  double d2;
};

// Reference isentrope of a Mie-Grüneisen law.
//   energy(tau)        e_s
//   pressure(tau)      p_s = -e_s'
//   bulk(tau)          K_s = -tau p_s'
//   bulk_slope(tau)    -tau K_s'
//   gruneisen(tau)     Gamma, Gamma', Gamma''
template <class C>
concept ReferenceCurves = requires(const C& c, double tau) {
  { c.energy(tau) } -> std::convertible_to<double>;
  { c.pressure(tau) } -> std::convertible_to<double>;
  { c.bulk(tau) } -> std::convertible_to<double>;
  { c.bulk_slope(tau) } -> std::convertible_to<double>;
  { c.gruneisen(tau) } -> std::convertible_to<Gruneisen>;
};

/// Pressure and isentropic bulk modulus at one point, plus the energy above
/// the cold curve when the law provides it.
struct ThermoState {
  double p;
  double bulk_k;
  double excess = 0.0;
};

/// Generic Mie-Grüneisen pressure law
///
///   pi(tau, e) = p_s(tau) + Gamma(tau)/tau * (e - e_s(tau))
///
/// built on a reference isentrope. The isentropic bulk modulus and the
/// fundamental derivative follow in closed form from the reference curves,
/// with no derivative of the pressure taken numerically.
template <ReferenceCurves Curves>
class MieGruneisen {
 public:
  MieGruneisen() = default;
  explicit MieGruneisen(Curves curves) : curves_(std::move(curves)) {}

  const Curves& curves() const noexcept { return curves_; }

  double pressure(ThermoPoint pt) const {
    const double g = curves_.gruneisen(pt.tau).value;
    return curves_.pressure(pt.tau) + g / pt.tau * (pt.e - curves_.energy(pt.tau));
  }

  ThermoState evaluate(ThermoPoint pt) const {
    const Gruneisen g = curves_.gruneisen(pt.tau);
    const double excess = pt.e - curves_.energy(pt.tau);
    const double p = curves_.pressure(pt.tau) + g.value / pt.tau * excess;
    const double k = curves_.bulk(pt.tau) + (g.value * (g.value + 1.0) / pt.tau - g.d1) * excess;
    return {p, k, excess};
  }

  double bulk_modulus(ThermoPoint pt) const { return evaluate(pt).bulk_k; }

  double fundamental_derivative(ThermoPoint pt) const {
    const double tau = pt.tau;
    const Gruneisen g = curves_.gruneisen(tau);
    const double excess = pt.e - curves_.energy(tau);
    const double w = g.value * (g.value + 1.0) / tau - g.d1;
    const double kappa = curves_.bulk(tau) + w * excess;
    const double tau_dks = -curves_.bulk_slope(tau);
    const double num =
        tau_dks - (tau * g.d2 - 2.0 * g.d1 * g.value + (g.value + 1.0) * w) * excess;
    return 0.5 * (1.0 - num / kappa);
  }

  /// The pressure law is affine in e; this is its exact inverse.
  double energy_from_pressure(double tau, double p) const {
    const double g = curves_.gruneisen(tau).value;
    return curves_.energy(tau) + (p - curves_.pressure(tau)) * tau / g;
  }

 private:
  Curves curves_{};
};

}  // namespace idp
