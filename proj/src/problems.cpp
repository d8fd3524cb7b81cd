#include "idp/problems.hpp"

#include <cmath>

#include "idp/error.hpp"
#include "idp/validate.hpp"

namespace idp {

namespace {

double bump(double r) {
  if (std::abs(r) >= 1.0) return 0.0;
  const double s = 1.0 - r * r;
  const double s2 = s * s;
  return s2 * s2;
}

PrimitiveField two_state(double x_split, Primitive left, Primitive right) {
  return [=](const Vec2& x) { return x[0] <= x_split ? left : right; };
}

}  // namespace

SmoothWaveParams smooth_wave_defaults(const EosModel& eos) {
  if (eos.get_if<SimpleMacaw>()) return {8.93, 0.5, 10.0};
  // p_bar = 5 rather than 1: at the bump peak rho = 1.91 the reference
  // pressure is about 1.82 GPa, so p = 1 would lie below the floor.
  if (eos.get_if<ReactantDavis>()) return {1.71, 0.2, 5.0};
  throw ConfigError("smooth_wave: no default base state for eos '" + std::string(eos.name()) + "'");
}

ProblemSpec smooth_wave(const EosModel& eos, const SmoothWaveParams& prm) {
  if (!(prm.width > 0.0) || !(prm.rho_base > 0.0) || !(prm.rho_base + std::min(prm.amplitude, 0.0) > 0.0)) {
    throw ConfigError("smooth_wave: need width > 0 and a positive density");
  }
  ProblemSpec s;
  s.name = "smooth_wave";
  s.dimension = 1;
  s.lo = {0.0, 0.0};
  s.hi = {1.0, 1.0};
  s.eos = eos;
  s.bc = BoundaryKind::dirichlet;
  s.t_final = prm.t_final;
  s.default_cells = {100, 1};
  s.exact = [prm](const Vec2& x, double t) {
    const double rho = prm.rho_base + prm.amplitude * bump((x[0] - prm.v_bar * t - prm.x0) / prm.width);
    return Primitive{rho, {prm.v_bar, 0.0}, prm.p_bar};
  };
  s.initial = [exact = s.exact](const Vec2& x) { return exact(x, 0.0); };
  // Every density in [rho_b, rho_b + amp] must carry p_bar admissibly.
  for (int k = 0; k <= 64; ++k) {
    const double rho = prm.rho_base + prm.amplitude * k / 64.0;
    const double e = eos.energy_from_pressure(1.0 / rho, prm.p_bar);
    if (!eos.admissible({1.0 / rho, e})) {
      throw ConfigError("smooth_wave: p_bar = " + std::to_string(prm.p_bar) + " is below the cold curve at rho = " +
                        std::to_string(rho));
    }
  }
  return s;
}

ProblemSpec smooth_wave(const EosModel& eos) { return smooth_wave(eos, smooth_wave_defaults(eos)); }

ProblemSpec pull_apart_1d(const MacawParams& params) {
  ProblemSpec s;
  s.name = "pull_apart_1d";
  s.lo = {0.0, 0.0};
  s.hi = {1.0, 1.0};
  s.eos = EosModel::macaw(params);
  s.bc = BoundaryKind::dirichlet;
  s.t_final = 5e-2;
  s.default_cells = {1000, 1};
  s.initial = two_state(0.5, {8.93, {-1.76, 0.0}, 0.0}, {8.93, {1.76, 0.0}, 0.0});
  return s;
}

ProblemSpec leblanc_like(const MacawParams& params) {
  ProblemSpec s;
  s.name = "leblanc_like";
  s.lo = {-2.0, 0.0};
  s.hi = {2.0, 1.0};
  s.eos = EosModel::macaw(params);
  s.bc = BoundaryKind::dirichlet;
  s.t_final = 1e-4;
  s.default_cells = {100000, 1};
  s.initial = two_state(0.0, {8.93, {0.0, 0.0}, 1e8}, {0.001, {0.0, 0.0}, -20.0});
  return s;
}

ProblemSpec entropy_test(const DavisParams& params) {
  ProblemSpec s;
  s.name = "entropy_test";
  s.lo = {0.0, 0.0};
  s.hi = {10.0, 1.0};
  s.eos = EosModel::davis(params);
  s.bc = BoundaryKind::do_nothing;
  s.t_final = 0.1;
  s.default_cells = {12800, 1};
  const Primitive left{2.5, {-0.5, 0.0}, 9.980955089};
  const Primitive right{1.0, {0.5, 0.0}, -1.18049100646};
  s.initial = two_state(5.0, left, right);
  // The right state defines the level; it is only meaningful when admissible.
  const double e_r = s.eos.energy_from_pressure(1.0 / right.rho, right.p);
  if (s.eos.admissible({1.0 / right.rho, e_r})) s.isentrope_sigma = s.eos.entropy_like({1.0 / right.rho, e_r});
  return s;
}

ProblemSpec entropy_test_admissible(const DavisParams& params) {
  ProblemSpec s = entropy_test(params);
  s.name = "entropy_test_admissible";
  const EosModel& eos = s.eos;
  const double rho_l = 2.5;
  const double rho_r = 1.0;
  const double sigma = eos.entropy_like({1.0 / rho_r, eos.energy_from_pressure(1.0 / rho_r, 0.0)});
  const double p_l = eos.pressure({1.0 / rho_l, eos.isentrope_energy(1.0 / rho_l, sigma)});
  const double p_r = eos.pressure({1.0 / rho_r, eos.isentrope_energy(1.0 / rho_r, sigma)});
  s.initial = two_state(5.0, {rho_l, {-0.5, 0.0}, p_l}, {rho_r, {0.5, 0.0}, p_r});
  s.isentrope_sigma = sigma;
  return s;
}

ProblemSpec blast_wave(const DavisParams& params) {
  ProblemSpec s;
  s.name = "blast_wave";
  s.lo = {0.0, 0.0};
  s.hi = {1.0, 1.0};
  s.eos = EosModel::davis(params);
  s.bc = BoundaryKind::slip;
  s.t_final = 0.0038;
  s.default_cells = {800, 1};
  s.initial = [](const Vec2& x) {
    if (x[0] <= 0.1) return Primitive{1.0, {0.0, 0.0}, 1000.0};
    if (x[0] >= 0.9) return Primitive{1.0, {0.0, 0.0}, 100.0};
    return Primitive{1.0, {0.0, 0.0}, 0.0};
  };
  return s;
}

ProblemSpec pull_apart_2d(QuadrantVariant variant, const MacawParams& params) {
  ProblemSpec s;
  s.name = variant == QuadrantVariant::verbatim ? "pull_apart_2d" : "pull_apart_2d_corrected";
  s.dimension = 2;
  s.lo = {0.0, 0.0};
  s.hi = {2.0, 2.0};
  s.eos = EosModel::macaw(params);
  s.bc = BoundaryKind::do_nothing;
  s.t_final = 8e-3;
  s.default_cells = {256, 256};
  const double v0 = 160.0;
  const Vec2 v1 = variant == QuadrantVariant::verbatim ? Vec2{0.0, -v0} : Vec2{0.0, v0};
  const Vec2 v2{-v0, 0.0};
  const Vec2 v3{0.0, -v0};
  const Vec2 v4{v0, 0.0};
  s.initial = [=](const Vec2& x) {
    const bool right = x[0] > 1.0;
    const bool top = x[1] > 1.0;
    const Vec2 v = top ? (right ? v1 : v2) : (right ? v4 : v3);
    return Primitive{8.93, v, 0.0};
  };
  return s;
}

ProblemSpec riemann_problem(const std::string& name) {
  if (name == "pull_apart_1d") return pull_apart_1d();
  if (name == "leblanc_like") return leblanc_like();
  if (name == "entropy_test") return entropy_test();
  if (name == "entropy_test_admissible") return entropy_test_admissible();
  throw ConfigError("unknown Riemann problem '" + name + "'");
}

std::vector<std::string> problem_names() {
  return {"smooth_wave", "pull_apart_1d", "leblanc_like", "entropy_test", "entropy_test_admissible",
          "blast_wave",  "pull_apart_2d"};
}

ProblemSpec make_problem(const std::string& name, const std::optional<EosModel>& eos, QuadrantVariant variant) {
  const auto macaw_params = [&]() -> MacawParams {
    if (!eos) return {};
    if (const auto* m = eos->get_if<SimpleMacaw>()) return m->params();
    throw ConfigError("problem '" + name + "' requires the macaw eos");
  };
  const auto davis_params = [&]() -> DavisParams {
    if (!eos) return {};
    if (const auto* d = eos->get_if<ReactantDavis>()) return d->params();
    throw ConfigError("problem '" + name + "' requires the davis eos");
  };
  if (name == "smooth_wave") return smooth_wave(eos ? *eos : EosModel::macaw());
  if (name == "pull_apart_1d") return pull_apart_1d(macaw_params());
  if (name == "leblanc_like") return leblanc_like(macaw_params());
  if (name == "entropy_test") return entropy_test(davis_params());
  if (name == "entropy_test_admissible") return entropy_test_admissible(davis_params());
  if (name == "blast_wave") return blast_wave(davis_params());
  if (name == "pull_apart_2d") return pull_apart_2d(variant, macaw_params());
  throw ConfigError("unknown problem '" + name + "'");
}

Mesh make_mesh(const ProblemSpec& spec, std::array<std::size_t, 2> cells) {
  const bool periodic = spec.bc == BoundaryKind::periodic;
  if (spec.dimension == 1) return Mesh::interval(spec.lo[0], spec.hi[0], cells[0], periodic);
  return Mesh::rectangle(spec.lo, spec.hi, cells[0], cells[1], periodic);
}

FieldState initial_field(const ProblemSpec& spec, const Mesh& mesh) {
  FieldState f;
  f.t = 0.0;
  f.u.reserve(mesh.num_nodes());
  for (const Vec2& x : mesh.coordinates()) f.u.push_back(to_conserved(spec.eos, spec.initial(x)));
  const AdmissibilityReport rep = check_admissible(spec.eos, f.u);
  if (!rep.ok) {
    const auto& x = mesh.coordinates()[rep.worst_node];
    const ConservedState& u = f.u[rep.worst_node];
    throw ConfigError(spec.name + ": initial state inadmissible at x = " + std::to_string(x[0]) +
                      " (rho = " + std::to_string(u.rho) + ", e - e_cold = " +
                      std::to_string(spec.eos.excess_energy({1.0 / u.rho, specific_internal_energy(u)})) + ")");
  }
  return f;
}

BoundaryCondition make_bc(const ProblemSpec& spec, const Mesh& mesh, std::span<const ConservedState> initial) {
  switch (spec.bc) {
    case BoundaryKind::dirichlet:
      return BoundaryCondition::dirichlet_from(mesh, initial);
    case BoundaryKind::slip:
      return BoundaryCondition::slip();
    case BoundaryKind::do_nothing:
      return BoundaryCondition::do_nothing();
    case BoundaryKind::periodic:
      return BoundaryCondition::periodic();
  }
  throw ConfigError("unknown boundary kind");
}

std::vector<ConservedState> exact_field(const ProblemSpec& spec, const Mesh& mesh, double t) {
  if (!spec.exact) throw ConfigError(spec.name + ": no exact solution");
  std::vector<ConservedState> u;
  u.reserve(mesh.num_nodes());
  for (const Vec2& x : mesh.coordinates()) u.push_back(to_conserved(spec.eos, spec.exact(x, t)));
  return u;
}

double delta1(const Mesh& mesh, std::span<const ConservedState> numeric, std::span<const ConservedState> exact) {
  if (numeric.size() != mesh.num_nodes() || exact.size() != mesh.num_nodes()) {
    throw DomainError("delta1: fields do not match the mesh");
  }
  const auto w = mesh.masses();
  double err_rho = 0.0, err_m = 0.0, err_e = 0.0;
  double nrm_rho = 0.0, nrm_m = 0.0, nrm_e = 0.0;
  for (std::size_t i = 0; i < numeric.size(); ++i) {
    const ConservedState d = numeric[i] - exact[i];
    err_rho += w[i] * std::abs(d.rho);
    err_m += w[i] * norm(d.m);
    err_e += w[i] * std::abs(d.E);
    nrm_rho += w[i] * std::abs(exact[i].rho);
    nrm_m += w[i] * norm(exact[i].m);
    nrm_e += w[i] * std::abs(exact[i].E);
  }
  if (!(nrm_rho > 0.0) || !(nrm_m > 0.0) || !(nrm_e > 0.0)) throw DomainError("delta1: an exact norm vanishes");
  return err_rho / nrm_rho + err_m / nrm_m + err_e / nrm_e;
}

}  // namespace idp
