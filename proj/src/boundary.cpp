#include "idp/boundary.hpp"

#include <string>

#include "idp/error.hpp"

namespace idp {

std::string_view to_string(BoundaryKind kind) {
  switch (kind) {
    case BoundaryKind::dirichlet:
      return "dirichlet";
    case BoundaryKind::slip:
      return "slip";
    case BoundaryKind::do_nothing:
      return "do_nothing";
    case BoundaryKind::periodic:
      return "periodic";
  }
  return "unknown";
}

BoundaryKind boundary_kind_from_string(std::string_view name) {
  if (name == "dirichlet") return BoundaryKind::dirichlet;
  if (name == "slip") return BoundaryKind::slip;
  if (name == "do_nothing" || name == "do-nothing") return BoundaryKind::do_nothing;
  if (name == "periodic") return BoundaryKind::periodic;
  throw ConfigError("unknown boundary condition '" + std::string(name) + "'");
}

BoundaryCondition BoundaryCondition::dirichlet(std::vector<ConservedState> exterior) {
  BoundaryCondition bc(BoundaryKind::dirichlet);
  bc.exterior_ = std::move(exterior);
  return bc;
}

BoundaryCondition BoundaryCondition::dirichlet_from(const Mesh& mesh, std::span<const ConservedState> initial) {
  if (initial.size() != mesh.num_nodes()) throw ConfigError("dirichlet: field does not match the mesh");
  std::vector<ConservedState> exterior;
  exterior.reserve(mesh.boundary_faces().size());
  for (const BoundaryFace& f : mesh.boundary_faces()) exterior.push_back(initial[f.node]);
  return dirichlet(std::move(exterior));
}

void BoundaryCondition::check(const Mesh& mesh) const {
  if (kind_ == BoundaryKind::periodic && !mesh.periodic()) {
    throw ConfigError("periodic boundary condition needs a periodic mesh");
  }
  if (kind_ != BoundaryKind::periodic && mesh.periodic()) {
    throw ConfigError("periodic mesh needs the periodic boundary condition");
  }
  if (kind_ == BoundaryKind::dirichlet && exterior_.size() != mesh.boundary_faces().size()) {
    throw ConfigError("dirichlet: one exterior state per boundary face required");
  }
}

ConservedState BoundaryCondition::ghost(const BoundaryFace& face, std::size_t face_index,
                                        const ConservedState& interior) const {
  switch (kind_) {
    case BoundaryKind::dirichlet:
      return exterior_[face_index];
    case BoundaryKind::slip: {
      ConservedState g = interior;
      const double mn = dot(interior.m, face.normal);
      g.m[0] -= 2.0 * mn * face.normal[0];
      g.m[1] -= 2.0 * mn * face.normal[1];
      return g;
    }
    case BoundaryKind::do_nothing:
    case BoundaryKind::periodic:
      break;
  }
  return interior;
}

void apply_bc(std::span<ConservedState> field, const Mesh& mesh, const BoundaryCondition& bc, double /*t*/) {
  if (bc.kind() != BoundaryKind::dirichlet) return;
  const auto faces = mesh.boundary_faces();
  const auto ext = bc.exterior();
  // A corner node owns two faces; the later face wins.
  for (std::size_t f = 0; f < faces.size(); ++f) field[faces[f].node] = ext[f];
}

}  // namespace idp
