#include "idp/validate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "idp/error.hpp"

namespace idp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// NaN for inadmissible states.
double sigma_or_nan(const EosModel& eos, const ConservedState& u) {
  if (!(u.rho > 0.0)) return std::numeric_limits<double>::quiet_NaN();
  const ThermoPoint pt{1.0 / u.rho, specific_internal_energy(u)};
  if (!std::isfinite(pt.e) || !eos.admissible(pt)) return std::numeric_limits<double>::quiet_NaN();
  try {
    return eos.entropy_like(pt);
  } catch (const Error&) {
    return std::numeric_limits<double>::quiet_NaN();
  }
}

}  // namespace

AdmissibilityReport check_admissible(const EosModel& eos, std::span<const ConservedState> field,
                                     std::optional<double> sigma_floor) {
  AdmissibilityReport r;
  r.min_rho = kInf;
  r.min_excess_energy = kInf;
  r.min_sigma = kInf;
  r.excess_tolerance = admissibility_tolerance(1.0);
  r.sigma_floor = sigma_floor;
  if (sigma_floor) r.sigma_tolerance = kEntropyTolerance * std::max(1.0, std::abs(*sigma_floor));

  // Worst node: lowest density if any is non-positive, else lowest margin
  // to the cold curve relative to its tolerance, else lowest sigma.
  int worst_rank = -1;
  double worst_value = kInf;
  const auto consider = [&](int rank, double value, std::size_t i) {
    if (rank > worst_rank || (rank == worst_rank && value < worst_value)) {
      worst_rank = rank;
      worst_value = value;
      r.worst_node = i;
    }
  };

  for (std::size_t i = 0; i < field.size(); ++i) {
    const ConservedState& u = field[i];
    r.min_rho = std::min(r.min_rho, u.rho);
    if (!(u.rho > 0.0) || !std::isfinite(u.rho)) {
      ++r.violations;
      consider(3, u.rho, i);
      continue;
    }
    const ThermoPoint pt{1.0 / u.rho, specific_internal_energy(u)};
    double excess;
    try {
      excess = eos.excess_energy(pt);
    } catch (const Error&) {
      excess = -kInf;
    }
    if (!std::isfinite(excess)) excess = -kInf;
    r.min_excess_energy = std::min(r.min_excess_energy, excess);
    const double tol = admissibility_tolerance(pt.e);
    if (excess < -tol) {
      ++r.violations;
      consider(2, excess / tol, i);
      continue;
    }
    const double s = eos.entropy_like(pt);
    r.min_sigma = std::min(r.min_sigma, s);
    if (sigma_floor && s < *sigma_floor - r.sigma_tolerance) {
      ++r.violations;
      consider(1, s, i);
      continue;
    }
    if (worst_rank <= 0) consider(0, s, i);
  }
  r.ok = r.violations == 0;
  return r;
}

LocalMinReport check_local_min_principle(const EosModel& eos, std::span<const ConservedState> before,
                                         std::span<const ConservedState> after, const Mesh& mesh,
                                         const BoundaryCondition* bc, int rings) {
  if (before.size() != mesh.num_nodes() || after.size() != mesh.num_nodes()) {
    throw DomainError("check_local_min_principle: fields do not match the mesh");
  }
  const std::size_t n = mesh.num_nodes();
  std::vector<double> s0(n);
  for (std::size_t i = 0; i < n; ++i) s0[i] = sigma_or_nan(eos, before[i]);
  const auto faces = mesh.boundary_faces();
  std::vector<double> sg(faces.size(), kInf);
  if (bc) {
    for (std::size_t f = 0; f < faces.size(); ++f) sg[f] = sigma_or_nan(eos, bc->ghost(faces[f], f, before[faces[f].node]));
  }

  const auto edges = mesh.edges();
  // One pass widens the stencil by one ring; NaN (inadmissible) is sticky.
  const auto widen = [&](const std::vector<double>& v) {
    std::vector<double> w(n);
    for (std::size_t i = 0; i < n; ++i) {
      double lo = v[i];
      for (const Incidence& inc : mesh.incidences(i)) {
        double s;
        if (inc.boundary) {
          s = sg[inc.index];
        } else {
          const Edge& e = edges[inc.index];
          s = v[inc.sign > 0.0 ? e.j : e.i];
        }
        lo = std::isnan(s) || std::isnan(lo) ? std::numeric_limits<double>::quiet_NaN() : std::min(lo, s);
      }
      w[i] = lo;
    }
    return w;
  };
  std::vector<double> stencil_min = s0;
  for (int k = 0; k < std::max(rings, 1); ++k) stencil_min = widen(stencil_min);

  LocalMinReport r;
  r.min_margin = kInf;
  double worst = kInf;
  for (std::size_t i = 0; i < n; ++i) {
    const double lo = stencil_min[i];
    const double s1 = sigma_or_nan(eos, after[i]);
    double margin = s1 - lo;
    // An inadmissible state on either side counts as a violation.
    if (std::isnan(margin)) margin = -kInf;
    const double tol = std::isfinite(lo) ? kEntropyTolerance * std::max(1.0, std::abs(lo)) : 0.0;
    r.min_margin = std::min(r.min_margin, margin);
    if (margin < -tol) ++r.violations;
    const double scaled = margin / std::max(tol, std::numeric_limits<double>::min());
    if (scaled < worst) {
      worst = scaled;
      r.worst_node = i;
    }
  }
  r.ok = r.violations == 0;
  return r;
}

double energy_above_isentrope(const EosModel& eos, const ConservedState& u, double sigma0) {
  const double tau = 1.0 / u.rho;
  return u.rho * specific_internal_energy(u) - u.rho * eos.isentrope_energy(tau, sigma0);
}

}  // namespace idp
