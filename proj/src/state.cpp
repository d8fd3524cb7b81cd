#include "idp/state.hpp"

#include "idp/eos.hpp"
#include "idp/error.hpp"

namespace idp {

ConservedState to_conserved(const EosModel& eos, const Primitive& w) {
  if (!(w.rho > 0.0)) throw DomainError("to_conserved: density must be positive");
  const double e = eos.energy_from_pressure(1.0 / w.rho, w.p);
  return {w.rho, {w.rho * w.v[0], w.rho * w.v[1]}, w.rho * (e + 0.5 * dot(w.v, w.v))};
}

Primitive to_primitive(const EosModel& eos, const ConservedState& u) {
  if (!(u.rho > 0.0)) throw DomainError("to_primitive: density must be positive");
  return {u.rho, velocity(u), eos.pressure({1.0 / u.rho, specific_internal_energy(u)})};
}

}  // namespace idp
