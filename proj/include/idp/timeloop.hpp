#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "idp/boundary.hpp"
#include "idp/eos.hpp"
#include "idp/mesh.hpp"
#include "idp/scheme.hpp"

namespace idp {

/// Mass-weighted sums of the conserved variables.
struct Totals {
  double mass = 0.0;
  Vec2 momentum{0.0, 0.0};
  double energy = 0.0;
};

Totals totals(const Mesh& mesh, std::span<const ConservedState> u);

/// Smallest entropy-like value over the field.
double min_entropy(const EosModel& eos, std::span<const ConservedState> u);

/// Three-stage SSP Runge-Kutta step in Shu-Osher form. dt is used for all
/// three stages; pass dt <= cfl_dt of `field`.
FieldState ssp_rk3_step(const EosModel& eos, const FieldState& field, const Mesh& mesh, double dt,
                        const BoundaryCondition& bc);

struct StepInfo {
  std::size_t step;  // 1-based index of the accepted step
  double t;          // time after the step
  double dt;
  FieldStats stats;  // of the field at the start of the step
};

/// Called after every accepted step with the fields before and after it.
using StepObserver = std::function<void(const StepInfo&, const FieldState& before, const FieldState& after)>;

struct RunOptions {
  double cfl = 0.9;
  std::size_t max_steps = 50'000'000;
  /// Cadence of the entropy-minimum trace in steps; 0 records only the
  /// initial and final values.
  std::size_t entropy_every = 1;
  /// A stage whose frozen dt violates its own CFL bound restarts the step
  /// with a smaller dt, at most this many times.
  int max_restarts = 20;
  /// See GraphOperator::set_incremental.
  bool incremental = true;
  std::vector<StepObserver> observers;
};

struct EntropySample {
  std::size_t step;
  double t;
  double min_sigma;
};

struct RunReport {
  std::size_t steps = 0;
  std::size_t restarts = 0;
  double t_start = 0.0;
  double t_end = 0.0;
  double min_rho = 0.0;
  double min_p = 0.0;
  double min_dt = 0.0;
  double max_dt = 0.0;
  std::vector<EntropySample> sigma_trace;
  Totals initial;
  Totals final;
  std::uint64_t rr_clamps = 0;
  double wall_seconds = 0.0;
};

struct RunResult {
  FieldState field;
  RunReport report;
};

/// Advances to t_final; the last step is shortened to land on it exactly.
/// Throws StepLimitError after max_steps steps.
RunResult run_to_time(const EosModel& eos, FieldState field, const Mesh& mesh, const BoundaryCondition& bc,
                      double t_final, const RunOptions& options = {});

}  // namespace idp
