#include <cmath>
#include <limits>

#include <catch_amalgamated.hpp>

#include "idp/problems.hpp"
#include "idp/scheme.hpp"
#include "idp/timeloop.hpp"
#include "idp/validate.hpp"
#include "test_support.hpp"

using namespace idp;
using Catch::Approx;
using idp::test::Rng;

namespace {

// Graph update with no step-size check, for negative controls.
std::vector<ConservedState> unchecked_update(const EosModel& eos, const Mesh& mesh, std::span<const ConservedState> u,
                                             double dt) {
  const auto bc = BoundaryCondition::periodic();
  const GraphViscosity d = compute_dij(eos, u, mesh, bc);
  std::vector<ConservedState> out(u.begin(), u.end());
  for (std::size_t k = 0; k < mesh.edges().size(); ++k) {
    const Edge& e = mesh.edges()[k];
    const ConservedState fi = contract(euler_flux(eos, u[e.i]), e.c);
    const ConservedState fj = contract(euler_flux(eos, u[e.j]), e.c);
    const ConservedState flux = (fi + fj) - d.edge[k] * (u[e.j] - u[e.i]);
    out[e.i] -= (dt / mesh.masses()[e.i]) * flux;
    out[e.j] += (dt / mesh.masses()[e.j]) * flux;
  }
  return out;
}

}  // namespace

TEST_CASE("admissibility report", "[validate]") {
  const auto eos = EosModel::macaw();
  std::vector<ConservedState> cold;
  for (double rho : {7.0, 8.0, 8.952, 10.0, 12.0}) cold.push_back({rho, {0.0, 0.0}, rho * eos.cold_energy(1.0 / rho)});
  const AdmissibilityReport a = check_admissible(eos, cold);
  CHECK(a.ok);
  CHECK(a.min_excess_energy == Approx(0.0).margin(1e-12));
  CHECK(a.min_rho == 7.0);

  auto bad = cold;
  bad[3].rho = -1.0;
  const AdmissibilityReport b = check_admissible(eos, bad);
  CHECK_FALSE(b.ok);
  CHECK(b.worst_node == 3);
  CHECK(b.violations == 1);
  CHECK(b.min_rho == -1.0);

  auto low = cold;
  low[1].E -= 1e-3;
  const AdmissibilityReport c = check_admissible(eos, low);
  CHECK_FALSE(c.ok);
  CHECK(c.worst_node == 1);
  CHECK(c.min_excess_energy < 0.0);

  auto nan = cold;
  nan[2].E = std::numeric_limits<double>::quiet_NaN();
  CHECK_FALSE(check_admissible(eos, nan).ok);
}

TEST_CASE("raising the entropy floor never turns a failure into a pass", "[validate]") {
  Rng rng(61);
  for (const auto& eos : {EosModel::macaw(), EosModel::davis()}) {
    for (int k = 0; k < 200; ++k) {
      const auto u = test::random_field(eos, rng, 16);
      const double s_min = min_entropy(eos, u);
      const double lo = s_min * rng.uniform(0.5, 1.5);
      const double hi = lo + std::abs(s_min) * rng.uniform(0.0, 1.0);
      const bool pass_lo = check_admissible(eos, u, lo).ok;
      const bool pass_hi = check_admissible(eos, u, hi).ok;
      CHECK((pass_lo || !pass_hi));
      CHECK(check_admissible(eos, u, s_min).ok);
    }
  }
}

TEST_CASE("local minimum principle checker", "[validate]") {
  const auto eos = EosModel::macaw();
  Rng rng(62);
  const Mesh mesh = Mesh::interval(0.0, 1.0, 64, true);
  const auto u = test::random_field(eos, rng, 64);
  const LocalMinReport same = check_local_min_principle(eos, u, u, mesh);
  CHECK(same.ok);
  CHECK(same.min_margin >= 0.0);

  int passes = 0;
  int failures = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const auto f = test::random_field(eos, rng, 64);
    const double dt = cfl_dt(eos, f, mesh, BoundaryCondition::periodic(), 1.0);
    const auto ok_step = unchecked_update(eos, mesh, f, dt);
    if (check_local_min_principle(eos, f, ok_step, mesh).ok) ++passes;
    if (!check_local_min_principle(eos, f, unchecked_update(eos, mesh, f, 10.0 * dt), mesh).ok) ++failures;
  }
  CHECK(passes == 100);
  CHECK(failures > 0);

  // A dip below the neighbors' minimum is caught at the right node.
  std::vector<ConservedState> after = u;
  const double tau = 1.0 / after[10].rho;
  const double s = min_entropy(eos, std::span(u).subspan(9, 3));
  after[10].E = after[10].rho * (eos.isentrope_energy(tau, 0.5 * s) + 0.5 * std::pow(after[10].m[0] / after[10].rho, 2));
  const LocalMinReport dip = check_local_min_principle(eos, u, after, mesh);
  CHECK_FALSE(dip.ok);
  CHECK(dip.worst_node == 10);
  CHECK(dip.violations == 1);
  CHECK(dip.min_margin < 0.0);
  // A wider stencil may include a lower minimum, never a higher one.
  CHECK(check_local_min_principle(eos, u, after, mesh, nullptr, 3).min_margin >= dip.min_margin);
}

TEST_CASE("energy above an isentrope is concave", "[validate]") {
  Rng rng(63);
  for (const auto& eos : {EosModel::macaw(), EosModel::davis()}) {
    for (int k = 0; k < 1000; ++k) {
      const ConservedState a = test::random_state(eos, rng, 2.0, true);
      const ConservedState b = test::random_state(eos, rng, 2.0, true);
      const double sigma0 = std::min(eos.entropy_like({1.0 / a.rho, specific_internal_energy(a)}),
                                     eos.entropy_like({1.0 / b.rho, specific_internal_energy(b)}));
      const double pa = energy_above_isentrope(eos, a, sigma0);
      const double pb = energy_above_isentrope(eos, b, sigma0);
      const double mid = energy_above_isentrope(eos, 0.5 * (a + b), sigma0);
      const double avg = 0.5 * (pa + pb);
      CHECK(mid >= avg - 1e-9 * std::max(1.0, std::abs(avg)));
      CHECK(pa >= -1e-9 * std::max(1.0, a.E));
    }
  }
}

TEST_CASE("entropy-test initial states", "[validate]") {
  // The published pressures put both states below the Davis reference
  // isentrope, which is the admissibility floor.
  const ProblemSpec verbatim = entropy_test();
  std::vector<ConservedState> pair;
  for (double x : {2.0, 8.0}) pair.push_back(to_conserved(verbatim.eos, verbatim.initial({x, 0.0})));
  CHECK_FALSE(check_admissible(verbatim.eos, pair).ok);

  const ProblemSpec fixed = entropy_test_admissible();
  std::vector<ConservedState> adm;
  for (double x : {2.0, 8.0}) adm.push_back(to_conserved(fixed.eos, fixed.initial({x, 0.0})));
  CHECK(check_admissible(fixed.eos, adm).ok);
  const double s_l = fixed.eos.entropy_like({1.0 / adm[0].rho, specific_internal_energy(adm[0])});
  const double s_r = fixed.eos.entropy_like({1.0 / adm[1].rho, specific_internal_energy(adm[1])});
  CHECK(std::abs(s_l - s_r) <= 1e-6 * std::abs(s_r));
  REQUIRE(fixed.isentrope_sigma.has_value());
  CHECK(*fixed.isentrope_sigma == Approx(s_r).epsilon(1e-12));
  CHECK(adm[0].rho == 2.5);
  CHECK(adm[1].rho == 1.0);
  CHECK(adm[0].m[0] == Approx(2.5 * -0.5).epsilon(1e-15));
  CHECK(adm[1].m[0] == Approx(0.5).epsilon(1e-15));
}
