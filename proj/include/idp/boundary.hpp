#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "idp/mesh.hpp"
#include "idp/state.hpp"

namespace idp {

enum class BoundaryKind { dirichlet, slip, do_nothing, periodic };

std::string_view to_string(BoundaryKind kind);
BoundaryKind boundary_kind_from_string(std::string_view name);

/// Boundary treatment through ghost states across each boundary face.
///   dirichlet   fixed exterior state per face; boundary nodes are reset to it
///   slip        mirror ghost, m - 2 (m.n) n
///   do_nothing  ghost copies the node
///   periodic    the mesh wraps, no faces
class BoundaryCondition {
 public:
  static BoundaryCondition dirichlet(std::vector<ConservedState> exterior);
  /// Exterior states taken from the boundary nodes of `initial`.
  static BoundaryCondition dirichlet_from(const Mesh& mesh, std::span<const ConservedState> initial);
  static BoundaryCondition slip() { return BoundaryCondition(BoundaryKind::slip); }
  static BoundaryCondition do_nothing() { return BoundaryCondition(BoundaryKind::do_nothing); }
  static BoundaryCondition periodic() { return BoundaryCondition(BoundaryKind::periodic); }

  BoundaryKind kind() const noexcept { return kind_; }
  std::span<const ConservedState> exterior() const noexcept { return exterior_; }

  /// Throws ConfigError when the mesh and the condition do not fit together.
  void check(const Mesh& mesh) const;

  ConservedState ghost(const BoundaryFace& face, std::size_t face_index, const ConservedState& interior) const;

 private:
  explicit BoundaryCondition(BoundaryKind kind) : kind_(kind) {}

  BoundaryKind kind_;
  std::vector<ConservedState> exterior_;
};

/// Imposes strong boundary values (dirichlet only; the other kinds act via
/// ghosts and leave the field untouched).
void apply_bc(std::span<ConservedState> field, const Mesh& mesh, const BoundaryCondition& bc, double t);

}  // namespace idp
