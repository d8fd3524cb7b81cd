#pragma once

#include <array>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "idp/boundary.hpp"
#include "idp/eos.hpp"
#include "idp/mesh.hpp"
#include "idp/scheme.hpp"
#include "idp/state.hpp"

namespace idp {

using PrimitiveField = std::function<Primitive(const Vec2& x)>;
using ExactSolution = std::function<Primitive(const Vec2& x, double t)>;

struct ProblemSpec {
  std::string name;
  int dimension = 1;
  Vec2 lo{0.0, 0.0};
  Vec2 hi{1.0, 1.0};
  EosModel eos = EosModel::macaw();
  BoundaryKind bc = BoundaryKind::dirichlet;
  double t_final = 0.0;
  std::array<std::size_t, 2> default_cells{100, 1};
  PrimitiveField initial;
  ExactSolution exact;  // empty when no closed form exists
  /// Entropy-like level every initial state should share, when the setup
  /// prescribes one.
  std::optional<double> isentrope_sigma;
};

/// Bump rho_b + amp (1 - r^2)^4, r = (x - x0)/width, advected at v_bar under
/// constant pressure p_bar.
struct SmoothWaveParams {
  double rho_base;
  double amplitude;
  double p_bar;
  double v_bar = 1.0;
  double x0 = 0.4;
  double width = 0.2;
  double t_final = 0.2;
};

/// Defaults for the law held by `eos` (macaw or davis).
SmoothWaveParams smooth_wave_defaults(const EosModel& eos);

ProblemSpec smooth_wave(const EosModel& eos, const SmoothWaveParams& params);
ProblemSpec smooth_wave(const EosModel& eos);

ProblemSpec pull_apart_1d(const MacawParams& params = {});
ProblemSpec leblanc_like(const MacawParams& params = {});
/// Left/right data as published. Under Davis with the s0 reference isentrope
/// as floor these states are inadmissible; see entropy_test_admissible.
ProblemSpec entropy_test(const DavisParams& params = {});
/// Same densities and velocities with both pressures moved onto the
/// isentrope through (rho, p) = (1, 0).
ProblemSpec entropy_test_admissible(const DavisParams& params = {});
ProblemSpec blast_wave(const DavisParams& params = {});

enum class QuadrantVariant { verbatim, corrected };
ProblemSpec pull_apart_2d(QuadrantVariant variant = QuadrantVariant::verbatim, const MacawParams& params = {});

/// Riemann setups by name: pull_apart_1d, leblanc_like, entropy_test,
/// entropy_test_admissible. Throws ConfigError for others.
ProblemSpec riemann_problem(const std::string& name);

/// Names accepted by make_problem().
std::vector<std::string> problem_names();

/// Any shipped problem by name, with its default EOS unless `eos` is given.
ProblemSpec make_problem(const std::string& name, const std::optional<EosModel>& eos = std::nullopt,
                         QuadrantVariant variant = QuadrantVariant::verbatim);

Mesh make_mesh(const ProblemSpec& spec, std::array<std::size_t, 2> cells);
/// Point values of spec.initial at the nodes. Throws ConfigError if any node
/// is inadmissible.
FieldState initial_field(const ProblemSpec& spec, const Mesh& mesh);
BoundaryCondition make_bc(const ProblemSpec& spec, const Mesh& mesh, std::span<const ConservedState> initial);
/// Point values of spec.exact at time t.
std::vector<ConservedState> exact_field(const ProblemSpec& spec, const Mesh& mesh, double t);

/// Sum over rho, m, E of the mass-weighted relative L1 errors. Throws
/// DomainError when an exact norm vanishes.
double delta1(const Mesh& mesh, std::span<const ConservedState> numeric, std::span<const ConservedState> exact);

}  // namespace idp
