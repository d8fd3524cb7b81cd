#include "idp/wavespeed.hpp"

#include <algorithm>
#include <atomic>
#include <cassert>
#include <cmath>
#include <limits>
#include <tuple>

#include "idp/error.hpp"

namespace idp {

namespace {

constexpr double kMinDensity = 1e-14;
constexpr double kMaxExponent = 700.0;

std::atomic<std::uint64_t> g_rr_clamps{0};

}  // namespace

SideData side_data_from(double rho, double v_n, const ThermoState& thermo) {
  const double tau = 1.0 / rho;
  return {rho, tau, v_n, thermo.p, thermo.bulk_k, std::sqrt(tau * thermo.bulk_k), thermo.bulk_k - thermo.p};
}

SideData make_side_data(const EosModel& eos, const ConservedState& state, const Vec2& normal) {
  if (std::abs(norm(normal) - 1.0) > 1e-12) throw DomainError("make_side_data: normal must have unit length");
  if (!(state.rho >= kMinDensity)) {
    throw InadmissibleStateError("density below the vacuum guard", 1.0 / state.rho, 0.0);
  }
  const ThermoPoint pt{1.0 / state.rho, specific_internal_energy(state)};
  const ThermoState thermo = eos.sample(pt);
  const SideData side = side_data_from(state.rho, dot(state.m, normal) / state.rho, thermo);
  // Interpolation of the oracle pressure and bulk modulus.
  assert(side.p == eos.pressure(pt));
  assert(side.p + side.p_inf == side.bulk_k || std::abs(side.p + side.p_inf - side.bulk_k) <= 1e-14 * side.bulk_k);
  return side;
}

double f_expansion(const SideData& side, double p) {
  const double ratio = (p - side.p) / side.bulk_k;
  if (!(ratio > -1.0)) throw DomainError("f_side: pressure at or below -p_inf");
  // (p + p_inf)/K = 1 + (p - p_Z)/K.
  return side.c * std::log1p(ratio);
}

double f_shock(const SideData& side, double p) {
  const double dp = p - side.p;
  const double s = side.bulk_k + dp;
  if (!(s > 0.0)) throw DomainError("f_side: pressure at or below -p_inf");
  return dp / std::sqrt(side.rho * s);
}

double f_side(const SideData& side, double p) { return p <= side.p ? f_expansion(side, p) : f_shock(side, p); }

double phi(const SideData& left, const SideData& right, double p) {
  return (f_side(left, p) + f_side(right, p)) + (right.v_n - left.v_n);
}

double p_hat_rr(const SideData& left, const SideData& right, bool* clamped) {
  const double p_inf_min = std::min(left.p_inf, right.p_inf);
  double arg = (left.c * std::log(left.bulk_k) + right.c * std::log(right.bulk_k) - (right.v_n - left.v_n)) /
               (left.c + right.c);
  bool hit = false;
  if (arg > kMaxExponent) {
    arg = kMaxExponent;
    hit = true;
    g_rr_clamps.fetch_add(1, std::memory_order_relaxed);
  }
  if (clamped) *clamped = hit;
  return std::exp(arg) - p_inf_min;
}

double p_hat_ss(const SideData& left, const SideData& right) {
  const double p_inf_max = std::max(left.p_inf, right.p_inf);
  const double sl = std::sqrt(left.rho);
  const double sr = std::sqrt(right.rho);
  const double a = sl + sr;
  const double b = std::sqrt(left.rho * right.rho) * (right.v_n - left.v_n);
  const double c = -(sr * (left.p + p_inf_max) + sl * (right.p + p_inf_max));
  const double disc = b * b - 4.0 * a * c;
  assert(disc >= 0.0);
  const double root = std::sqrt(disc);
  // Root of a x^2 + b x + c with x = sqrt(p + p_inf_max) > 0; the second form
  // avoids cancellation when b > 0.
  const double x = b <= 0.0 ? (root - b) / (2.0 * a) : -2.0 * c / (root + b);
  return x * x - p_inf_max;
}

double p_star_upper(const SideData& left, const SideData& right, bool* clamped) {
  if (clamped) *clamped = false;
  const double p_min = std::min(left.p, right.p);
  const double p_max = std::max(left.p, right.p);
  if (phi(left, right, p_min) >= 0.0) return p_min;
  const double rr = p_hat_rr(left, right, clamped);
  if (phi(left, right, p_max) >= 0.0) return std::min(p_max, rr);
  return std::min(rr, p_hat_ss(left, right));
}

std::pair<double, double> wave_speeds(const SideData& left, const SideData& right, double p_hat) {
  const double xl = std::max((p_hat - left.p) / left.bulk_k, 0.0);
  const double xr = std::max((p_hat - right.p) / right.bulk_k, 0.0);
  return {left.v_n - left.c * std::sqrt(xl + 1.0), right.v_n + right.c * std::sqrt(xr + 1.0)};
}

namespace {

SideData mirrored(const SideData& s) {
  SideData m = s;
  m.v_n = -s.v_n;
  return m;
}

auto key(const SideData& s) { return std::tie(s.rho, s.v_n, s.p, s.bulk_k); }

WaveEstimate estimate_ordered(const SideData& left, const SideData& right) {
  const double p_hat = p_star_upper(left, right);
  const auto [ll, lr] = wave_speeds(left, right, p_hat);
  return {p_hat, ll, lr, std::max(std::abs(ll), std::abs(lr))};
}

}  // namespace

WaveEstimate estimate_wave_speed(const SideData& left, const SideData& right) {
  if (key(left) == key(right)) {
    // Same result as the general path, without the transcendental calls.
    const double ll = left.v_n - left.c;
    const double lr = right.v_n + right.c;
    return {left.p, ll, lr, std::max(std::abs(ll), std::abs(lr))};
  }
  // The mirrored problem (R, L) with negated velocities has the same fan,
  // reflected. Evaluate whichever of the two orders compares smaller.
  const SideData ml = mirrored(right);
  const SideData mr = mirrored(left);
  const bool flip = std::tuple_cat(key(ml), key(mr)) < std::tuple_cat(key(left), key(right));
  if (!flip) return estimate_ordered(left, right);
  const WaveEstimate w = estimate_ordered(ml, mr);
  return {w.p_hat_star, -w.lambda_right, -w.lambda_left, w.lambda_max};
}

double lambda_max(const SideData& left, const SideData& right) {
  return estimate_wave_speed(left, right).lambda_max;
}

double lambda_max(const EosModel& eos, const ConservedState& left, const ConservedState& right,
                  const Vec2& normal) {
  return lambda_max(make_side_data(eos, left, normal), make_side_data(eos, right, normal));
}

double p_star_bisect(const SideData& left, const SideData& right) {
  const auto safe_phi = [&](double p) {
    try {
      return phi(left, right, p);
    } catch (const DomainError&) {
      return -std::numeric_limits<double>::infinity();
    }
  };
  double lo = -std::min(left.p_inf, right.p_inf);
  double hi = p_hat_rr(left, right);
  for (int k = 0; k < 200 && safe_phi(hi) < 0.0; ++k) hi += std::max(1.0, std::abs(hi));

  // Bisect down to adjacent doubles.
  for (int it = 0; it < 4000; ++it) {
    const double mid = lo + 0.5 * (hi - lo);
    if (!(mid > lo && mid < hi)) break;
    const double val = safe_phi(mid);
    if (val == 0.0) return mid;
    if (val < 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo + 0.5 * (hi - lo);
}

std::uint64_t rr_clamp_count() { return g_rr_clamps.load(std::memory_order_relaxed); }

StiffenedInterpolant interpolate_stiffened(const SideData& side, double e, double eps) {
  if (!(eps > 0.0)) throw DomainError("interpolate_stiffened: eps must be > 0");
  const double gamma = 1.0 + eps;
  const double p_inf = side.bulk_k / gamma - side.p;
  const double q = e - side.tau * (side.p + gamma * p_inf) / (gamma - 1.0);
  return {gamma, p_inf, q};
}

double interpolant_pressure(const StiffenedInterpolant& s, double rho, double e) {
  return (s.gamma - 1.0) * (rho * e - rho * s.q) - s.gamma * s.p_inf;
}

double interpolant_energy(const StiffenedInterpolant& s, double rho, double p) {
  return (p + s.gamma * s.p_inf) / ((s.gamma - 1.0) * rho) + s.q;
}

}  // namespace idp
