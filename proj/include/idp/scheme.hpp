#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "idp/boundary.hpp"
#include "idp/eos.hpp"
#include "idp/mesh.hpp"
#include "idp/state.hpp"
#include "idp/wavespeed.hpp"

namespace idp {

struct FieldState {
  std::vector<ConservedState> u;
  double t = 0.0;
};

/// f(u) = (m, v (x) m + p I, v (E + p)); one spatial vector per conserved row.
struct FluxTensor {
  Vec2 mass;
  std::array<Vec2, 2> momentum;
  Vec2 energy;
};

FluxTensor euler_flux(const EosModel& eos, const ConservedState& u);

/// f(u) c as a conserved-variable vector.
ConservedState contract(const FluxTensor& f, const Vec2& c);

/// Riemann-fan average 1/2 (uL + uR) - 1/(2 lambda) (f(uR) - f(uL)) n.
ConservedState bar_state(const EosModel& eos, const ConservedState& left, const ConservedState& right,
                         const Vec2& normal, double lambda);

/// Graph viscosities on interior edges and on boundary faces (against the
/// ghost state), in mesh order.
struct GraphViscosity {
  std::vector<double> edge;
  std::vector<double> boundary;
};

struct FieldStats {
  double min_rho;
  double min_p;
  double min_excess;
  double min_sigma;
};

/// First-order graph-viscosity operator
///
///   U_i <- U_i - dt/m_i sum_j [ (f(U_j) + f(U_i)) c_ij - d_ij (U_j - U_i) ]
///
/// with d_ij = lambda_max(U_i, U_j, n_ij) |c_ij|. Boundary faces enter the
/// sum as edges to ghost states, so sum_j c_ij = 0 at every node.
///
/// prepare() caches node thermodynamics, ghost states and viscosities for
/// one field; advance() then applies the update for any dt up to
/// stable_dt(1).
///
/// Nodes are grouped into blocks of kBlock consecutive indices. The block
/// overloads let a caller that knows where a field can have changed touch
/// only those blocks: prepare() recomputes what depends on nodes whose state
/// changed bitwise, and advance() copies nodes whose whole stencil is one
/// state (their update is exactly zero). Results match a full recomputation
/// bit for bit; set_incremental(false) forces one on every call.
class GraphOperator {
 public:
  static constexpr std::size_t kBlock = 64;
  using BlockList = std::vector<std::uint32_t>;

  GraphOperator(const EosModel& eos, const Mesh& mesh, const BoundaryCondition& bc);

  /// Throws InvariantViolation naming the first inadmissible node; `stage`
  /// is recorded in it.
  void prepare(std::span<const ConservedState> u, int stage = -1);

  /// As prepare(u, stage), given that u differs from the previously
  /// prepared field only inside `changed` (sorted block indices).
  void prepare(std::span<const ConservedState> u, int stage, std::span<const std::uint32_t> changed);

  /// cfl * min_i m_i / (2 sum_j d_ij).
  double stable_dt(double cfl) const;

  /// Throws TimeStepError when dt makes a self weight negative, and
  /// InvariantViolation when an output density is not positive. Energies are
  /// checked by the next prepare().
  void advance(double dt, std::span<ConservedState> out, int stage = -1) const;

  /// Writes `out` only inside `blocks`; the self-weight check still covers
  /// every node.
  void advance(double dt, std::span<ConservedState> out, int stage, std::span<const std::uint32_t> blocks) const;

  void set_incremental(bool on) noexcept {
    incremental_ = on;
    primed_ = false;
  }
  bool incremental() const noexcept { return incremental_; }

  std::size_t num_blocks() const noexcept { return agg_.size(); }
  const BlockList& all_blocks() const noexcept { return all_blocks_; }
  /// Blocks holding a node whose stencil is not a single state.
  BlockList live_blocks() const;
  /// Blocks holding a node that apply_bc may overwrite.
  const BlockList& bc_blocks() const noexcept { return bc_blocks_; }
  /// Sorted union of two block lists.
  static BlockList merge(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b);

  const GraphViscosity& viscosity() const noexcept { return visc_; }
  /// min_sigma is evaluated on first use after each prepare().
  FieldStats stats() const;
  std::span<const double> pressures() const noexcept { return p_; }
  std::span<const ConservedState> ghosts() const noexcept { return ghost_u_; }

 private:
  struct NodeData {
    double rho;
    double tau;
    Vec2 v;
    double p;
    double k;
    double c;
    double E;
    double excess;
  };

  struct BlockAgg {
    double bound;
    FieldStats stats;
    bool live;
  };

  NodeData node_data(const ConservedState& u, std::size_t node, int stage) const;
  double edge_lambda(const NodeData& a, const NodeData& b, const Vec2& n) const;
  void update(std::span<const ConservedState> u, int stage, std::span<const std::uint32_t> changed, bool full);
  BlockList dilate(std::span<const std::uint32_t> blocks);
  void check_self_weights(double dt, int stage) const;

  const EosModel* eos_;
  const Mesh* mesh_;
  const BoundaryCondition* bc_;

  std::span<const ConservedState> u_;
  std::vector<NodeData> node_;
  std::vector<double> p_;
  std::vector<ConservedState> ghost_u_;
  std::vector<NodeData> ghost_;
  GraphViscosity visc_;
  std::vector<double> dsum_;
  double dt_max_ = 0.0;
  mutable FieldStats stats_{};
  mutable bool sigma_ready_ = false;

  bool incremental_ = true;
  bool primed_ = false;
  std::uint64_t generation_ = 0;
  std::vector<ConservedState> cache_u_;
  std::vector<std::uint64_t> changed_at_;  // generation of the last recompute
  std::vector<unsigned char> uniform_;
  std::vector<double> bound_;

  std::vector<BlockAgg> agg_;
  BlockList all_blocks_;
  BlockList bc_blocks_;
  std::vector<std::uint32_t> block_adj_offsets_;
  std::vector<std::uint32_t> block_adj_;
  std::vector<std::uint64_t> block_mark_;
  std::uint64_t mark_ = 0;
};

GraphViscosity compute_dij(const EosModel& eos, std::span<const ConservedState> field, const Mesh& mesh,
                           const BoundaryCondition& bc);

/// Throws DomainError unless 0 < cfl <= 1.
double cfl_dt(const EosModel& eos, std::span<const ConservedState> field, const Mesh& mesh,
              const BoundaryCondition& bc, double cfl);

/// One forward-Euler step followed by apply_bc; every output node is checked
/// for admissibility.
FieldState forward_euler_update(const EosModel& eos, const FieldState& field, const Mesh& mesh, double dt,
                                const BoundaryCondition& bc);

}  // namespace idp
