#pragma once

#include <cstdint>
#include <utility>

#include "idp/eos.hpp"
#include "idp/state.hpp"

namespace idp {

/// One side of the extended Riemann problem in the vanishing-epsilon limit.
/// The local stiffened-gas interpolant is fully described by (p, K): its
/// stiffening pressure is p_inf = K - p.
struct SideData {
  double rho;
  double tau;
  double v_n;
  double p;
  double bulk_k;
  double c;
  double p_inf;
};

struct WaveEstimate {
  double p_hat_star;
  double lambda_left;
  double lambda_right;
  double lambda_max;
};

/// Projects `state` onto the unit `normal` and evaluates the EOS at it.
SideData make_side_data(const EosModel& eos, const ConservedState& state, const Vec2& normal);

/// Same as make_side_data from already evaluated thermodynamics.
SideData side_data_from(double rho, double v_n, const ThermoState& thermo);

/// Expansion branch c log((p + p_inf)/K) for p <= p_Z, shock branch
/// (p - p_Z)/sqrt(rho (p + p_inf)) above. Throws DomainError for p <= -p_inf.
double f_side(const SideData& side, double p);
double f_expansion(const SideData& side, double p);
double f_shock(const SideData& side, double p);

/// phi(p) = f_L(p) + f_R(p) + v_R - v_L; its root is the star pressure.
double phi(const SideData& left, const SideData& right, double p);

/// Root of the double-expansion lower bound of phi. `clamped` is set when the
/// exponent had to be clamped to avoid overflow.
double p_hat_rr(const SideData& left, const SideData& right, bool* clamped = nullptr);

/// Root of the double-shock lower bound of phi.
double p_hat_ss(const SideData& left, const SideData& right);

/// Upper bound on the star pressure. In the double-expansion case the bound
/// returned is p_min: every value at or below p_min gives the same speeds.
double p_star_upper(const SideData& left, const SideData& right, bool* clamped = nullptr);

/// (lambda_L, lambda_R) evaluated at a star-pressure estimate.
std::pair<double, double> wave_speeds(const SideData& left, const SideData& right, double p_hat);

/// Full estimate. Side data are put in a canonical order first so that
/// swapping the sides and flipping the normal gives bitwise-identical speeds.
WaveEstimate estimate_wave_speed(const SideData& left, const SideData& right);

double lambda_max(const SideData& left, const SideData& right);
double lambda_max(const EosModel& eos, const ConservedState& left, const ConservedState& right,
                  const Vec2& normal);

/// Exact star pressure by bisection; test oracle only.
double p_star_bisect(const SideData& left, const SideData& right);

/// Number of p_hat_rr evaluations whose exponent was clamped, process-wide.
std::uint64_t rr_clamp_count();

/// Local stiffened-gas interpolant at finite epsilon.
struct StiffenedInterpolant {
  double gamma;
  double p_inf;
  double q;
};

StiffenedInterpolant interpolate_stiffened(const SideData& side, double e, double eps);
double interpolant_pressure(const StiffenedInterpolant& s, double rho, double e);
double interpolant_energy(const StiffenedInterpolant& s, double rho, double p);

}  // namespace idp
