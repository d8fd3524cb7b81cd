#include "idp/scheme.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstring>
#include <iterator>
#include <limits>
#include <string>

#include "idp/error.hpp"
#include "idp/parallel.hpp"

namespace idp {

namespace {

constexpr double kVacuumGuard = 1e-14;
constexpr double kOmegaTolerance = 1e-12;

std::string at_node(std::size_t node) { return " at node " + std::to_string(node); }

bool same_bits(const ConservedState& a, const ConservedState& b) {
  return std::memcmp(&a, &b, sizeof(ConservedState)) == 0;
}

}  // namespace

FluxTensor euler_flux(const EosModel& eos, const ConservedState& u) {
  const Vec2 v = velocity(u);
  const double p = eos.pressure({1.0 / u.rho, specific_internal_energy(u)});
  FluxTensor f;
  f.mass = u.m;
  f.momentum[0] = {v[0] * u.m[0] + p, v[1] * u.m[0]};
  f.momentum[1] = {v[0] * u.m[1], v[1] * u.m[1] + p};
  f.energy = {v[0] * (u.E + p), v[1] * (u.E + p)};
  return f;
}

ConservedState contract(const FluxTensor& f, const Vec2& c) {
  return {dot(f.mass, c), {dot(f.momentum[0], c), dot(f.momentum[1], c)}, dot(f.energy, c)};
}

ConservedState bar_state(const EosModel& eos, const ConservedState& left, const ConservedState& right,
                         const Vec2& normal, double lambda) {
  if (!(lambda > 0.0)) throw DomainError("bar_state: lambda must be positive");
  const ConservedState df = contract(euler_flux(eos, right), normal) - contract(euler_flux(eos, left), normal);
  return 0.5 * (left + right) - (0.5 / lambda) * df;
}

// ---------------------------------------------------------------------------

GraphOperator::GraphOperator(const EosModel& eos, const Mesh& mesh, const BoundaryCondition& bc)
    : eos_(&eos), mesh_(&mesh), bc_(&bc) {
  bc.check(mesh);
  const std::size_t n = mesh.num_nodes();
  const auto faces = mesh.boundary_faces();
  node_.resize(n);
  p_.resize(n);
  dsum_.resize(n);
  ghost_u_.resize(faces.size());
  ghost_.resize(faces.size());
  visc_.edge.resize(mesh.edges().size());
  visc_.boundary.resize(faces.size());
  cache_u_.resize(n);
  changed_at_.assign(n, 0);
  uniform_.assign(n, 0);
  bound_.resize(n);

  const std::size_t nb = (n + kBlock - 1) / kBlock;
  agg_.resize(nb);
  all_blocks_.resize(nb);
  for (std::size_t b = 0; b < nb; ++b) all_blocks_[b] = static_cast<std::uint32_t>(b);
  block_mark_.assign(nb, 0);

  std::vector<std::vector<std::uint32_t>> adj(nb);
  for (std::size_t b = 0; b < nb; ++b) adj[b].push_back(static_cast<std::uint32_t>(b));
  for (const Edge& e : mesh.edges()) {
    const auto bi = static_cast<std::uint32_t>(e.i / kBlock);
    const auto bj = static_cast<std::uint32_t>(e.j / kBlock);
    if (bi == bj) continue;
    adj[bi].push_back(bj);
    adj[bj].push_back(bi);
  }
  block_adj_offsets_.push_back(0);
  for (auto& a : adj) {
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
    block_adj_.insert(block_adj_.end(), a.begin(), a.end());
    block_adj_offsets_.push_back(static_cast<std::uint32_t>(block_adj_.size()));
  }

  if (bc.kind() == BoundaryKind::dirichlet) {
    for (const BoundaryFace& f : faces) bc_blocks_.push_back(static_cast<std::uint32_t>(f.node / kBlock));
    std::sort(bc_blocks_.begin(), bc_blocks_.end());
    bc_blocks_.erase(std::unique(bc_blocks_.begin(), bc_blocks_.end()), bc_blocks_.end());
  }
}

GraphOperator::NodeData GraphOperator::node_data(const ConservedState& u, std::size_t node, int stage) const {
  if (!(u.rho >= kVacuumGuard) || !std::isfinite(u.rho)) {
    throw InvariantViolation("density " + std::to_string(u.rho) + " below the vacuum guard" + at_node(node), node,
                             stage);
  }
  const double tau = 1.0 / u.rho;
  const Vec2 v{u.m[0] / u.rho, u.m[1] / u.rho};
  const double e = u.E / u.rho - 0.5 * dot(v, v);
  ThermoState th;
  try {
    th = eos_->sample({tau, e});
  } catch (const EosError& err) {
    throw InvariantViolation(std::string(err.what()) + at_node(node), node, stage);
  }
  return {u.rho, tau, v, th.p, th.bulk_k, std::sqrt(tau * th.bulk_k), u.E, th.excess};
}

double GraphOperator::edge_lambda(const NodeData& a, const NodeData& b, const Vec2& n) const {
  const SideData left{a.rho, a.tau, dot(a.v, n), a.p, a.k, a.c, a.k - a.p};
  const SideData right{b.rho, b.tau, dot(b.v, n), b.p, b.k, b.c, b.k - b.p};
  return estimate_wave_speed(left, right).lambda_max;
}

GraphOperator::BlockList GraphOperator::merge(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b) {
  BlockList out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

GraphOperator::BlockList GraphOperator::dilate(std::span<const std::uint32_t> blocks) {
  ++mark_;
  for (const std::uint32_t b : blocks) {
    for (std::uint32_t k = block_adj_offsets_[b]; k < block_adj_offsets_[b + 1]; ++k) block_mark_[block_adj_[k]] = mark_;
  }
  BlockList out;
  for (std::size_t b = 0; b < block_mark_.size(); ++b) {
    if (block_mark_[b] == mark_) out.push_back(static_cast<std::uint32_t>(b));
  }
  return out;
}

GraphOperator::BlockList GraphOperator::live_blocks() const {
  BlockList out;
  for (std::size_t b = 0; b < agg_.size(); ++b) {
    if (agg_[b].live) out.push_back(static_cast<std::uint32_t>(b));
  }
  return out;
}

namespace {

// body(i) for every node of the listed blocks, in increasing node order.
template <class Body>
void for_nodes(std::span<const std::uint32_t> blocks, std::size_t n, std::size_t block, Body&& body) {
  parallel_for(
      blocks.size(),
      [&](std::size_t b, std::size_t e) {
        for (std::size_t k = b; k < e; ++k) {
          const std::size_t lo = blocks[k] * block;
          const std::size_t hi = std::min(n, lo + block);
          for (std::size_t i = lo; i < hi; ++i) body(i);
        }
      },
      64);
}

}  // namespace

void GraphOperator::prepare(std::span<const ConservedState> u, int stage) { update(u, stage, all_blocks_, true); }

void GraphOperator::prepare(std::span<const ConservedState> u, int stage, std::span<const std::uint32_t> changed) {
  if (!incremental_ || !primed_) {
    update(u, stage, all_blocks_, true);
  } else {
    update(u, stage, changed, false);
  }
}

void GraphOperator::update(std::span<const ConservedState> u, int stage, std::span<const std::uint32_t> changed,
                           bool full) {
  const Mesh& mesh = *mesh_;
  const std::size_t n = mesh.num_nodes();
  if (u.size() != n) throw DomainError("GraphOperator: field does not match the mesh");
  u_ = u;
  const bool reuse = incremental_ && primed_;
  primed_ = false;
  const std::uint64_t gen = ++generation_;

  for_nodes(changed, n, kBlock, [&](std::size_t i) {
    if (reuse && same_bits(u[i], cache_u_[i])) return;
    node_[i] = node_data(u[i], i, stage);
    p_[i] = node_[i].p;
    cache_u_[i] = u[i];
    changed_at_[i] = gen;
  });

  // Each face belongs to one node; each edge is recomputed by exactly one of
  // its endpoints.
  const auto faces = mesh.boundary_faces();
  const auto edges = mesh.edges();
  for_nodes(changed, n, kBlock, [&](std::size_t i) {
    if (changed_at_[i] != gen) return;
    for (const Incidence& inc : mesh.incidences(i)) {
      if (inc.boundary) {
        const std::size_t f = inc.index;
        ghost_u_[f] = bc_->ghost(faces[f], f, u[i]);
        ghost_[f] = ghost_u_[f] == u[i] ? node_[i] : node_data(ghost_u_[f], i, stage);
        visc_.boundary[f] = edge_lambda(node_[i], ghost_[f], faces[f].normal) * faces[f].c_norm;
      } else {
        const Edge& ed = edges[inc.index];
        if (i != ed.i && changed_at_[ed.i] == gen) continue;
        visc_.edge[inc.index] = edge_lambda(node_[ed.i], node_[ed.j], ed.normal) * ed.c_norm;
      }
    }
  });

  const BlockList ring = full ? all_blocks_ : dilate(changed);
  const auto masses = mesh.masses();
  for_nodes(ring, n, kBlock, [&](std::size_t i) {
    const auto incs = mesh.incidences(i);
    bool dirty = changed_at_[i] == gen;
    for (std::size_t k = 0; k < incs.size() && !dirty; ++k) {
      if (!incs[k].boundary) {
        const Edge& ed = edges[incs[k].index];
        dirty = changed_at_[incs[k].sign > 0.0 ? ed.j : ed.i] == gen;
      }
    }
    if (!dirty) return;
    double d = 0.0;
    bool uniform = true;
    for (const Incidence& inc : incs) {
      if (inc.boundary) {
        d += visc_.boundary[inc.index];
        uniform = uniform && same_bits(ghost_u_[inc.index], u[i]);
      } else {
        const Edge& ed = edges[inc.index];
        d += visc_.edge[inc.index];
        uniform = uniform && same_bits(u[inc.sign > 0.0 ? ed.j : ed.i], u[i]);
      }
    }
    dsum_[i] = d;
    bound_[i] = masses[i] / (2.0 * d);
    uniform_[i] = uniform;
  });

  constexpr double inf = std::numeric_limits<double>::infinity();
  parallel_for(
      ring.size(),
      [&](std::size_t b, std::size_t e) {
        for (std::size_t k = b; k < e; ++k) {
          const std::size_t blk = ring[k];
          BlockAgg a{inf, {inf, inf, inf, inf}, false};
          for (std::size_t i = blk * kBlock; i < std::min(n, (blk + 1) * kBlock); ++i) {
            a.bound = std::min(a.bound, bound_[i]);
            a.stats.min_rho = std::min(a.stats.min_rho, node_[i].rho);
            a.stats.min_p = std::min(a.stats.min_p, node_[i].p);
            a.stats.min_excess = std::min(a.stats.min_excess, node_[i].excess);
            a.live = a.live || !uniform_[i];
          }
          agg_[blk] = a;
        }
      },
      64);

  double dt_max = inf;
  FieldStats st{inf, inf, inf, inf};
  for (const BlockAgg& a : agg_) {
    dt_max = std::min(dt_max, a.bound);
    st.min_rho = std::min(st.min_rho, a.stats.min_rho);
    st.min_p = std::min(st.min_p, a.stats.min_p);
    st.min_excess = std::min(st.min_excess, a.stats.min_excess);
  }
  dt_max_ = dt_max;
  stats_ = st;
  sigma_ready_ = false;
  primed_ = true;
}

FieldStats GraphOperator::stats() const {
  if (!sigma_ready_ && primed_) {
    // Only the time loop's entropy trace needs this, once per step.
    double s = std::numeric_limits<double>::infinity();
    for (const NodeData& a : node_) {
      const double e = a.E / a.rho - 0.5 * dot(a.v, a.v);
      s = std::min(s, eos_->entropy_from_excess({a.tau, e}, a.excess));
    }
    stats_.min_sigma = s;
    sigma_ready_ = true;
  }
  return stats_;
}

double GraphOperator::stable_dt(double cfl) const { return cfl * dt_max_; }

void GraphOperator::check_self_weights(double dt, int stage) const {
  if (!(dt > 0.0)) throw TimeStepError("time step must be positive");
  const std::size_t n = mesh_->num_nodes();
  const auto masses = mesh_->masses();
  for (std::size_t b = 0; b < agg_.size(); ++b) {
    // omega_i < 0 needs dt > bound_i; the margin keeps this a superset.
    if (dt * (1.0 + 1e-9) < agg_[b].bound) continue;
    for (std::size_t i = b * kBlock; i < std::min(n, (b + 1) * kBlock); ++i) {
      const double omega = 1.0 - 2.0 * dt * dsum_[i] / masses[i];
      if (omega < -kOmegaTolerance) {
        throw TimeStepError("negative self weight " + std::to_string(omega) + at_node(i) + " (stage " +
                            std::to_string(stage) + ")");
      }
    }
  }
}

void GraphOperator::advance(double dt, std::span<ConservedState> out, int stage) const {
  advance(dt, out, stage, all_blocks_);
}

void GraphOperator::advance(double dt, std::span<ConservedState> out, int stage,
                            std::span<const std::uint32_t> blocks) const {
  const Mesh& mesh = *mesh_;
  const std::size_t n = mesh.num_nodes();
  assert(out.size() == n && out.data() != u_.data());
  check_self_weights(dt, stage);
  const auto edges = mesh.edges();
  const auto faces = mesh.boundary_faces();
  const auto masses = mesh.masses();

  const auto flux_dot = [](const NodeData& a, const ConservedState& u, const Vec2& c) {
    const double vc = dot(a.v, c);
    return ConservedState{dot(u.m, c), {u.m[0] * vc + a.p * c[0], u.m[1] * vc + a.p * c[1]}, (a.E + a.p) * vc};
  };

  for_nodes(blocks, n, kBlock, [&](std::size_t i) {
    const ConservedState& ui = u_[i];
    if (uniform_[i]) {
      // Same value as the full sum, which is exactly +0 here.
      out[i] = ui + ConservedState{};
      return;
    }
    const NodeData& a = node_[i];
    ConservedState rhs{};
    for (const Incidence& inc : mesh.incidences(i)) {
      const NodeData* bj;
      const ConservedState* uj;
      Vec2 c;
      double d;
      if (inc.boundary) {
        bj = &ghost_[inc.index];
        uj = &ghost_u_[inc.index];
        c = faces[inc.index].c;
        d = visc_.boundary[inc.index];
      } else {
        const Edge& ed = edges[inc.index];
        const std::size_t j = inc.sign > 0.0 ? ed.j : ed.i;
        bj = &node_[j];
        uj = &u_[j];
        c = {inc.sign * ed.c[0], inc.sign * ed.c[1]};
        d = visc_.edge[inc.index];
      }
      rhs -= flux_dot(a, ui, c) + flux_dot(*bj, *uj, c);
      rhs += d * (*uj - ui);
    }
    out[i] = ui + (dt / masses[i]) * rhs;
    if (!(out[i].rho > 0.0)) {
      throw InvariantViolation("non-positive density" + at_node(i), i, stage);
    }
  });
}

// ---------------------------------------------------------------------------

GraphViscosity compute_dij(const EosModel& eos, std::span<const ConservedState> field, const Mesh& mesh,
                           const BoundaryCondition& bc) {
  GraphOperator op(eos, mesh, bc);
  op.prepare(field);
  return op.viscosity();
}

double cfl_dt(const EosModel& eos, std::span<const ConservedState> field, const Mesh& mesh,
              const BoundaryCondition& bc, double cfl) {
  if (!(cfl > 0.0 && cfl <= 1.0)) throw DomainError("cfl must lie in (0, 1]");
  GraphOperator op(eos, mesh, bc);
  op.prepare(field);
  return op.stable_dt(cfl);
}

FieldState forward_euler_update(const EosModel& eos, const FieldState& field, const Mesh& mesh, double dt,
                                const BoundaryCondition& bc) {
  GraphOperator op(eos, mesh, bc);
  op.prepare(field.u);
  FieldState out{std::vector<ConservedState>(field.u.size()), field.t + dt};
  op.advance(dt, out.u);
  apply_bc(out.u, mesh, bc, out.t);
  for (std::size_t i = 0; i < out.u.size(); ++i) {
    const ConservedState& u = out.u[i];
    try {
      eos.sample({1.0 / u.rho, specific_internal_energy(u)});
    } catch (const EosError& err) {
      throw InvariantViolation(std::string(err.what()) + at_node(i), i);
    }
  }
  return out;
}

}  // namespace idp
