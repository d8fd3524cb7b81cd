#include "idp/timeloop.hpp"

#include <algorithm>
#include <chrono>
#include <limits>
#include <string>

#include "idp/error.hpp"
#include "idp/wavespeed.hpp"

namespace idp {

Totals totals(const Mesh& mesh, std::span<const ConservedState> u) {
  const auto m = mesh.masses();
  Totals t;
  for (std::size_t i = 0; i < u.size(); ++i) {
    t.mass += m[i] * u[i].rho;
    t.momentum[0] += m[i] * u[i].m[0];
    t.momentum[1] += m[i] * u[i].m[1];
    t.energy += m[i] * u[i].E;
  }
  return t;
}

double min_entropy(const EosModel& eos, std::span<const ConservedState> u) {
  double s = std::numeric_limits<double>::infinity();
  for (const ConservedState& x : u) s = std::min(s, eos.entropy_like({1.0 / x.rho, specific_internal_energy(x)}));
  return s;
}

namespace {

using BlockList = GraphOperator::BlockList;

// out = u0 + w (v - u0) on the listed blocks: a convex combination that
// returns u0 bitwise when v == u0.
void blend(std::span<const ConservedState> u0, std::span<const ConservedState> v, double w,
           std::span<ConservedState> out, std::span<const std::uint32_t> blocks) {
  const std::size_t n = u0.size();
  for (const std::uint32_t b : blocks) {
    const std::size_t hi = std::min(n, (b + 1) * GraphOperator::kBlock);
    for (std::size_t i = b * GraphOperator::kBlock; i < hi; ++i) out[i] = u0[i] + w * (v[i] - u0[i]);
  }
}

void copy_blocks(std::span<const ConservedState> from, std::span<ConservedState> to,
                 std::span<const std::uint32_t> blocks) {
  const std::size_t n = from.size();
  for (const std::uint32_t b : blocks) {
    const std::size_t lo = b * GraphOperator::kBlock;
    const std::size_t hi = std::min(n, lo + GraphOperator::kBlock);
    std::copy(from.begin() + lo, from.begin() + hi, to.begin() + lo);
  }
}

// Between steps every work buffer equals the current field, so a stage only
// has to write the blocks where its result can differ from the step's start.
class Rk3Stepper {
 public:
  Rk3Stepper(const EosModel& eos, const Mesh& mesh, const BoundaryCondition& bc)
      : mesh_(mesh), bc_(bc), op_(eos, mesh, bc) {}

  GraphOperator& op() { return op_; }

  // Full prepare of u0 plus buffer resync.
  void reset(std::span<const ConservedState> u0, int stage) {
    op_.prepare(u0, stage);
    for (auto* buf : {&u1_, &u2_, &w_, &out_}) buf->assign(u0.begin(), u0.end());
  }

  // op() must be prepared for u0; the result lands in out().
  void step(std::span<const ConservedState> u0, double t, double dt) {
    const bool sparse = op_.incremental();
    const BlockList& all = op_.all_blocks();
    const BlockList& bcb = op_.bc_blocks();

    const BlockList a1 = sparse ? op_.live_blocks() : all;
    op_.advance(dt, u1_, 1, a1);
    apply_bc(u1_, mesh_, bc_, t + dt);
    const BlockList c1 = sparse ? GraphOperator::merge(a1, bcb) : all;

    op_.prepare(u1_, 1, c1);
    const BlockList a2 = sparse ? GraphOperator::merge(op_.live_blocks(), c1) : all;
    op_.advance(dt, w_, 2, a2);
    blend(u0, w_, 0.25, u2_, a2);
    apply_bc(u2_, mesh_, bc_, t + 0.5 * dt);
    const BlockList c2 = sparse ? GraphOperator::merge(a2, bcb) : all;

    op_.prepare(u2_, 2, c2);
    touched_ = sparse ? GraphOperator::merge(op_.live_blocks(), c2) : all;
    op_.advance(dt, w_, 3, touched_);
    blend(u0, w_, 2.0 / 3.0, out_, touched_);
    apply_bc(out_, mesh_, bc_, t + dt);
    touched_ = sparse ? GraphOperator::merge(touched_, bcb) : all;
  }

  std::vector<ConservedState>& out() { return out_; }
  // Blocks where out() can differ from the step's input and from the
  // last prepared field.
  const BlockList& touched() const { return touched_; }

  // After out() was swapped into the field (its old contents now in out()).
  void resync(std::span<const ConservedState> u) {
    for (auto* buf : {&u1_, &u2_, &w_, &out_}) copy_blocks(u, *buf, touched_);
  }

 private:
  const Mesh& mesh_;
  const BoundaryCondition& bc_;
  GraphOperator op_;
  std::vector<ConservedState> u1_;
  std::vector<ConservedState> u2_;
  std::vector<ConservedState> w_;
  std::vector<ConservedState> out_;
  BlockList touched_;
};

}  // namespace

FieldState ssp_rk3_step(const EosModel& eos, const FieldState& field, const Mesh& mesh, double dt,
                        const BoundaryCondition& bc) {
  Rk3Stepper rk(eos, mesh, bc);
  rk.op().set_incremental(false);
  rk.reset(field.u, 0);
  rk.step(field.u, field.t, dt);
  FieldState out{std::move(rk.out()), field.t + dt};
  rk.op().prepare(out.u, 3);
  return out;
}

RunResult run_to_time(const EosModel& eos, FieldState field, const Mesh& mesh, const BoundaryCondition& bc,
                      double t_final, const RunOptions& options) {
  const auto wall0 = std::chrono::steady_clock::now();
  if (!(options.cfl > 0.0 && options.cfl <= 1.0)) throw ConfigError("cfl must lie in (0, 1]");
  if (!(t_final >= field.t)) throw DomainError("run_to_time: t_final before the start time");
  if (field.u.size() != mesh.num_nodes()) throw DomainError("run_to_time: field does not match the mesh");

  RunResult res;
  RunReport& rep = res.report;
  rep.t_start = field.t;
  rep.initial = totals(mesh, field.u);
  const std::uint64_t clamps0 = rr_clamp_count();

  // -0 components would otherwise become +0 only where a node is updated.
  for (ConservedState& u : field.u) u = u + ConservedState{};

  Rk3Stepper rk(eos, mesh, bc);
  GraphOperator& op = rk.op();
  op.set_incremental(options.incremental);
  rk.reset(field.u, 0);
  rep.min_rho = op.stats().min_rho;
  rep.min_p = op.stats().min_p;
  rep.min_dt = std::numeric_limits<double>::infinity();
  rep.sigma_trace.push_back({0, field.t, op.stats().min_sigma});

  FieldState before;
  while (field.t < t_final) {
    if (rep.steps >= options.max_steps) {
      throw StepLimitError("step limit " + std::to_string(options.max_steps) + " reached at t=" +
                           std::to_string(field.t));
    }
    const FieldStats start = op.stats();
    double dt = op.stable_dt(options.cfl);
    bool last = false;
    if (field.t + dt >= t_final) {
      dt = t_final - field.t;
      last = true;
    }
    for (int tries = 0;; ++tries) {
      try {
        rk.step(field.u, field.t, dt);
        break;
      } catch (const TimeStepError&) {
        if (tries >= options.max_restarts) throw;
        // op() holds the stage that failed; its own bound is strictly smaller.
        dt = std::min(op.stable_dt(options.cfl), 0.5 * dt);
        last = false;
        rk.reset(field.u, 0);
        ++rep.restarts;
      }
    }

    if (!options.observers.empty()) before = field;
    std::swap(field.u, rk.out());
    rk.resync(field.u);
    field.t = last ? t_final : field.t + dt;
    ++rep.steps;
    rep.min_dt = std::min(rep.min_dt, dt);
    rep.max_dt = std::max(rep.max_dt, dt);

    op.prepare(field.u, 3, rk.touched());
    rep.min_rho = std::min(rep.min_rho, op.stats().min_rho);
    rep.min_p = std::min(rep.min_p, op.stats().min_p);
    const bool done = !(field.t < t_final);
    if (done || (options.entropy_every > 0 && rep.steps % options.entropy_every == 0)) {
      rep.sigma_trace.push_back({rep.steps, field.t, op.stats().min_sigma});
    }
    if (!options.observers.empty()) {
      const StepInfo info{rep.steps, field.t, dt, start};
      for (const auto& obs : options.observers) obs(info, before, field);
    }
  }
  if (rep.steps == 0) rep.min_dt = 0.0;

  rep.t_end = field.t;
  rep.final = totals(mesh, field.u);
  rep.rr_clamps = rr_clamp_count() - clamps0;
  rep.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - wall0).count();
  res.field = std::move(field);
  return res;
}

}  // namespace idp
