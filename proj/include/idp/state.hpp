#pragma once

#include <array>
#include <cmath>

namespace idp {

class EosModel;

/// Spatial vector; 1D problems use only the first component.
using Vec2 = std::array<double, 2>;

inline double dot(const Vec2& a, const Vec2& b) { return a[0] * b[0] + a[1] * b[1]; }
inline double norm(const Vec2& a) { return std::sqrt(dot(a, a)); }

/// u = (rho, m, E) at one node: density, momentum, total mechanical energy.
struct ConservedState {
  double rho = 0.0;
  Vec2 m{0.0, 0.0};
  double E = 0.0;

  ConservedState& operator+=(const ConservedState& o) {
    rho += o.rho;
    m[0] += o.m[0];
    m[1] += o.m[1];
    E += o.E;
    return *this;
  }
  ConservedState& operator-=(const ConservedState& o) {
    rho -= o.rho;
    m[0] -= o.m[0];
    m[1] -= o.m[1];
    E -= o.E;
    return *this;
  }
  ConservedState& operator*=(double s) {
    rho *= s;
    m[0] *= s;
    m[1] *= s;
    E *= s;
    return *this;
  }

  friend bool operator==(const ConservedState&, const ConservedState&) = default;
};

inline ConservedState operator+(ConservedState a, const ConservedState& b) { return a += b; }
inline ConservedState operator-(ConservedState a, const ConservedState& b) { return a -= b; }
inline ConservedState operator*(double s, ConservedState a) { return a *= s; }
inline ConservedState operator*(ConservedState a, double s) { return a *= s; }

inline Vec2 velocity(const ConservedState& u) { return {u.m[0] / u.rho, u.m[1] / u.rho}; }

/// e = E/rho - |v|^2/2.
inline double specific_internal_energy(const ConservedState& u) {
  const Vec2 v = velocity(u);
  return u.E / u.rho - 0.5 * dot(v, v);
}

/// (rho, v, p).
struct Primitive {
  double rho = 0.0;
  Vec2 v{0.0, 0.0};
  double p = 0.0;
};

/// Converts via the EOS's exact inverse e(tau, p).
ConservedState to_conserved(const EosModel& eos, const Primitive& w);
Primitive to_primitive(const EosModel& eos, const ConservedState& u);

}  // namespace idp
