#include <cmath>
#include <cstring>

#include <catch_amalgamated.hpp>

#include "idp/error.hpp"
#include "idp/problems.hpp"
#include "idp/timeloop.hpp"
#include "idp/validate.hpp"
#include "test_support.hpp"

using namespace idp;
using Catch::Approx;
using idp::test::Rng;

namespace {

bool same_bits(std::span<const ConservedState> a, std::span<const ConservedState> b) {
  return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(ConservedState)) == 0;
}

double max_rel(std::span<const ConservedState> a, std::span<const ConservedState> b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double s = std::max({std::abs(b[i].rho), std::abs(b[i].m[0]), std::abs(b[i].E)});
    m = std::max({m, std::abs(a[i].rho - b[i].rho) / s, std::abs(a[i].m[0] - b[i].m[0]) / s,
                  std::abs(a[i].E - b[i].E) / s});
  }
  return m;
}

double l1_rho(std::span<const ConservedState> a, std::span<const ConservedState> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::abs(a[i].rho - b[i].rho);
  return s;
}

ProblemSpec periodic_smooth_wave(const EosModel& eos) {
  ProblemSpec spec = smooth_wave(eos);
  spec.bc = BoundaryKind::periodic;
  return spec;
}

}  // namespace

TEST_CASE("SSP-RK3 step is the composition of three forward-Euler stages", "[timeloop]") {
  Rng rng(51);
  for (const auto& eos : {EosModel::macaw(), EosModel::davis()}) {
    const Mesh mesh = Mesh::interval(0.0, 1.0, 64, true);
    const auto bc = BoundaryCondition::periodic();
    const FieldState f0{test::random_field(eos, rng, 64), 0.0};
    const double dt = 0.5 * cfl_dt(eos, f0.u, mesh, bc, 0.9);

    const FieldState s1 = forward_euler_update(eos, f0, mesh, dt, bc);
    const FieldState v2 = forward_euler_update(eos, s1, mesh, dt, bc);
    std::vector<ConservedState> s2(64);
    for (std::size_t i = 0; i < 64; ++i) s2[i] = 0.75 * f0.u[i] + 0.25 * v2.u[i];
    const FieldState v3 = forward_euler_update(eos, {s2, 0.0}, mesh, dt, bc);
    std::vector<ConservedState> s3(64);
    for (std::size_t i = 0; i < 64; ++i) s3[i] = (1.0 / 3.0) * f0.u[i] + (2.0 / 3.0) * v3.u[i];

    const FieldState g = ssp_rk3_step(eos, f0, mesh, dt, bc);
    CHECK(max_rel(g.u, s3) <= 1e-15);
    CHECK(g.t == dt);
  }
}

TEST_CASE("SSP-RK3 is high order in time", "[timeloop]") {
  const auto eos = EosModel::macaw();
  const ProblemSpec spec = periodic_smooth_wave(eos);
  const Mesh mesh = make_mesh(spec, {400, 1});
  const FieldState f0 = initial_field(spec, mesh);
  const BoundaryCondition bc = make_bc(spec, mesh, f0.u);
  const double dt0 = cfl_dt(eos, f0.u, mesh, bc, 0.8);
  const int steps0 = 20;

  std::vector<std::vector<ConservedState>> sol;
  for (int r = 0; r < 3; ++r) {
    FieldState f = f0;
    const int steps = steps0 << r;
    const double dt = dt0 / static_cast<double>(1 << r);
    for (int k = 0; k < steps; ++k) f = ssp_rk3_step(eos, f, mesh, dt, bc);
    sol.push_back(f.u);
  }
  const double e1 = l1_rho(sol[0], sol[1]);
  const double e2 = l1_rho(sol[1], sol[2]);
  const double order = std::log2(e1 / e2);
  INFO("self-convergence order " << order);
  CHECK(order >= 0.95);
}

TEST_CASE("run_to_time edge cases", "[timeloop]") {
  const auto eos = EosModel::macaw();
  const ConservedState u = to_conserved(eos, {8.5, {0.3, 0.0}, 4.0});
  const Mesh mesh = Mesh::interval(0.0, 1.0, 50, true);
  const auto bc = BoundaryCondition::periodic();
  const FieldState f0{std::vector<ConservedState>(50, u), 0.25};

  const RunResult none = run_to_time(eos, f0, mesh, bc, 0.25);
  CHECK(none.report.steps == 0);
  CHECK(same_bits(none.field.u, f0.u));
  CHECK(none.field.t == 0.25);

  const double t_final = 0.25 + 0.0123456789;
  const RunResult r = run_to_time(eos, f0, mesh, bc, t_final);
  CHECK(r.report.steps > 1);
  CHECK(r.field.t == t_final);
  CHECK(r.report.t_end == t_final);
  for (const auto& x : r.field.u) CHECK(std::memcmp(&x, &u, sizeof u) == 0);
  CHECK(r.report.final.mass == r.report.initial.mass);
  CHECK(r.report.final.energy == r.report.initial.energy);

  RunOptions tight;
  tight.max_steps = 3;
  CHECK_THROWS_AS(run_to_time(eos, f0, mesh, bc, 1.0, tight), StepLimitError);

  std::size_t seen = 0;
  double last_t = f0.t;
  RunOptions obs;
  obs.observers.push_back([&](const StepInfo& info, const FieldState& before, const FieldState& after) {
    ++seen;
    CHECK(info.step == seen);
    CHECK(before.t == last_t);
    CHECK(after.t == info.t);
    last_t = info.t;
  });
  const RunResult o = run_to_time(eos, f0, mesh, bc, t_final, obs);
  CHECK(seen == o.report.steps);
}

TEST_CASE("global entropy minimum does not decrease", "[timeloop]") {
  for (const auto& spec : {smooth_wave(EosModel::macaw()), smooth_wave(EosModel::davis()), pull_apart_1d(),
                           blast_wave(), leblanc_like(), entropy_test_admissible()}) {
    const Mesh mesh = make_mesh(spec, {200, 1});
    const FieldState f0 = initial_field(spec, mesh);
    const BoundaryCondition bc = make_bc(spec, mesh, f0.u);
    RunOptions opt;
    opt.max_steps = 400;
    std::size_t failures = 0;
    opt.observers.push_back([&](const StepInfo&, const FieldState& before, const FieldState& after) {
      const double a = min_entropy(spec.eos, before.u);
      const double b = min_entropy(spec.eos, after.u);
      if (b < a - kEntropyTolerance * std::max(1.0, std::abs(a))) ++failures;
      if (!check_local_min_principle(spec.eos, before.u, after.u, mesh, &bc, 3).ok) ++failures;
    });
    const double t_end = std::min(spec.t_final, 50.0 * cfl_dt(spec.eos, f0.u, mesh, bc, 0.9));
    const RunResult r = run_to_time(spec.eos, f0, mesh, bc, t_end, opt);
    INFO(spec.name);
    CHECK(failures == 0);
    CHECK(check_admissible(spec.eos, r.field.u).ok);
    REQUIRE(r.report.sigma_trace.size() >= 2);
    for (std::size_t k = 1; k < r.report.sigma_trace.size(); ++k) {
      const double a = r.report.sigma_trace[k - 1].min_sigma;
      CHECK(r.report.sigma_trace[k].min_sigma >= a - kEntropyTolerance * std::max(1.0, std::abs(a)));
    }
  }
}

TEST_CASE("incremental and dense evaluation agree bit for bit", "[timeloop]") {
  for (const auto& spec : {leblanc_like(), pull_apart_1d(), blast_wave(), smooth_wave(EosModel::davis())}) {
    const Mesh mesh = make_mesh(spec, {1000, 1});
    const FieldState f0 = initial_field(spec, mesh);
    const BoundaryCondition bc = make_bc(spec, mesh, f0.u);
    RunOptions dense;
    dense.incremental = false;
    RunOptions sparse;
    sparse.incremental = true;
    const double t_end = spec.t_final / 10.0;
    const RunResult a = run_to_time(spec.eos, f0, mesh, bc, t_end, dense);
    const RunResult b = run_to_time(spec.eos, f0, mesh, bc, t_end, sparse);
    INFO(spec.name);
    CHECK(a.report.steps == b.report.steps);
    CHECK(a.report.restarts == b.report.restarts);
    CHECK(same_bits(a.field.u, b.field.u));
  }
}

TEST_CASE("boundary conditions", "[timeloop]") {
  const auto eos = EosModel::macaw();
  const Mesh mesh = Mesh::rectangle({0.0, 0.0}, {1.0, 1.0}, 4, 4);
  const ConservedState tangential = to_conserved(eos, {8.9, {0.0, 0.8}, 2.0});

  const auto slip = BoundaryCondition::slip();
  for (std::size_t k = 0; k < mesh.boundary_faces().size(); ++k) {
    const BoundaryFace& f = mesh.boundary_faces()[k];
    const ConservedState g = slip.ghost(f, k, tangential);
    if (f.wall == Wall::x_min || f.wall == Wall::x_max) {
      CHECK(g == tangential);
    } else {
      CHECK(g.m[1] == -tangential.m[1]);
      CHECK(g.rho == tangential.rho);
      CHECK(g.E == tangential.E);
    }
  }

  std::vector<ConservedState> field(mesh.num_nodes(), tangential);
  const auto copy = field;
  apply_bc(field, mesh, slip, 0.0);
  CHECK(field == copy);
  apply_bc(field, mesh, BoundaryCondition::do_nothing(), 0.0);
  CHECK(field == copy);
  const auto dir = BoundaryCondition::dirichlet_from(mesh, field);
  apply_bc(field, mesh, dir, 0.0);
  CHECK(field == copy);
  for (std::size_t k = 0; k < mesh.boundary_faces().size(); ++k) {
    CHECK(BoundaryCondition::do_nothing().ghost(mesh.boundary_faces()[k], k, tangential) == tangential);
    CHECK(dir.ghost(mesh.boundary_faces()[k], k, copy[0]) == tangential);
  }

  std::vector<ConservedState> other(mesh.num_nodes(), to_conserved(eos, {8.0, {0.0, 0.0}, 1.0}));
  apply_bc(other, mesh, dir, 0.0);
  CHECK(other[mesh.node_index(0, 0)] == tangential);
  CHECK(other[mesh.node_index(1, 1)] != tangential);

  CHECK_THROWS_AS(BoundaryCondition::periodic().check(mesh), ConfigError);
  CHECK(boundary_kind_from_string("slip") == BoundaryKind::slip);
  CHECK(to_string(BoundaryKind::do_nothing) == "do_nothing");
  CHECK_THROWS_AS(boundary_kind_from_string("open"), ConfigError);
}

TEST_CASE("periodic runs conserve mass, momentum and energy", "[timeloop]") {
  const auto eos = EosModel::davis();
  const ProblemSpec spec = periodic_smooth_wave(eos);
  const Mesh mesh = make_mesh(spec, {200, 1});
  const FieldState f0 = initial_field(spec, mesh);
  const BoundaryCondition bc = make_bc(spec, mesh, f0.u);
  FieldState f = f0;
  for (int k = 0; k < 200; ++k) f = ssp_rk3_step(eos, f, mesh, cfl_dt(eos, f.u, mesh, bc, 0.9), bc);
  const Totals a = totals(mesh, f0.u);
  const Totals b = totals(mesh, f.u);
  CHECK(std::abs(b.mass - a.mass) <= 1e-13 * a.mass);
  CHECK(std::abs(b.momentum[0] - a.momentum[0]) <= 1e-13 * std::abs(a.momentum[0]));
  CHECK(std::abs(b.energy - a.energy) <= 1e-13 * a.energy);
}
