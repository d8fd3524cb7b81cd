#pragma once

#include <cstddef>
#include <optional>
#include <span>

#include "idp/boundary.hpp"
#include "idp/eos.hpp"
#include "idp/mesh.hpp"
#include "idp/state.hpp"

namespace idp {

inline constexpr double kEntropyTolerance = 1e-9;

struct AdmissibilityReport {
  bool ok = true;
  std::size_t worst_node = 0;
  std::size_t violations = 0;
  double min_rho = 0.0;
  double min_excess_energy = 0.0;  // e - e_cold(tau)
  double min_sigma = 0.0;
  double excess_tolerance = 0.0;  // relative, see admissibility_tolerance()
  std::optional<double> sigma_floor;
  double sigma_tolerance = 0.0;  // absolute, applied below sigma_floor
};

/// rho > 0 and e >= e_cold(tau) at every node; with a floor, additionally
/// sigma >= floor - kEntropyTolerance max(1, |floor|). Reports, never throws.
AdmissibilityReport check_admissible(const EosModel& eos, std::span<const ConservedState> field,
                                     std::optional<double> sigma_floor = std::nullopt);

struct LocalMinReport {
  bool ok = true;
  std::size_t worst_node = 0;
  std::size_t violations = 0;
  double min_margin = 0.0;  // min_i sigma_i(after) - min over the stencil of sigma(before)
};

/// sigma_i(after) >= min over {i} and its graph neighbors of sigma(before),
/// up to kEntropyTolerance max(1, |stencil min|). With `bc`, ghost states
/// across boundary faces join the stencil. `rings` widens the stencil: one
/// for a forward-Euler step, three for a full SSP-RK3 step.
LocalMinReport check_local_min_principle(const EosModel& eos, std::span<const ConservedState> before,
                                         std::span<const ConservedState> after, const Mesh& mesh,
                                         const BoundaryCondition* bc = nullptr, int rings = 1);

/// rho e(u) - rho e_sigma0(1/rho): concave in u under the EOS assumptions.
double energy_above_isentrope(const EosModel& eos, const ConservedState& u, double sigma0);

}  // namespace idp
