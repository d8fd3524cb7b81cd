#include "test_support.hpp"

#include <cmath>

namespace idp::test {

double Rng::log_uniform(double lo, double hi) { return std::exp(uniform(std::log(lo), std::log(hi))); }

namespace {

struct Scales {
  double tau_ref;
  double excess;
};

Scales scales_for(const EosModel& eos) {
  if (const auto* m = eos.get_if<SimpleMacaw>()) return {m->params().tau0, 5.0};
  if (const auto* d = eos.get_if<ReactantDavis>()) return {d->params().tau0, 2.0};
  return {1.0, 5.0};
}

}  // namespace

ThermoPoint random_point(const EosModel& eos, Rng& rng) {
  const Scales s = scales_for(eos);
  const double tau = s.tau_ref * rng.log_uniform(0.6, 1.8);
  const double excess = s.excess * rng.log_uniform(1e-4, 1.0);
  return {tau, eos.cold_energy(tau) + excess};
}

ConservedState random_state(const EosModel& eos, Rng& rng, double v_max, bool two_d) {
  const ThermoPoint pt = random_point(eos, rng);
  const double rho = 1.0 / pt.tau;
  const Vec2 v{rng.uniform(-v_max, v_max), two_d ? rng.uniform(-v_max, v_max) : 0.0};
  return {rho, {rho * v[0], rho * v[1]}, rho * (pt.e + 0.5 * dot(v, v))};
}

std::vector<ConservedState> random_field(const EosModel& eos, Rng& rng, std::size_t n, bool two_d) {
  std::vector<ConservedState> u(n);
  for (auto& s : u) s = random_state(eos, rng, 2.0, two_d);
  return u;
}

std::filesystem::path scratch_dir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / ("idp_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace idp::test
