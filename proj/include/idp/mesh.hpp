#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "idp/state.hpp"

namespace idp {

/// Interior edge between nodes i and j; `c` is c_ij (c_ji = -c).
struct Edge {
  std::size_t i;
  std::size_t j;
  Vec2 c;
  double c_norm;
  Vec2 normal;  // c / |c|
};

enum class Wall { x_min, x_max, y_min, y_max };

/// Boundary face of a node, with the outward coefficient vector.
struct BoundaryFace {
  std::size_t node;
  Vec2 c;
  double c_norm;
  Vec2 normal;
  Wall wall;
};

/// Entry of a node's stencil: an interior edge or a boundary face.
struct Incidence {
  std::size_t index;  // into edges() or boundary_faces()
  bool boundary;
  double sign;  // +1 when the node is edge.i or owns the face, -1 when it is edge.j
};

/// Uniform cell-centered grid on an interval or rectangle. Nodes are cell
/// centers with lumped mass equal to the cell volume; each face contributes
/// c_ij = (face area / 2) n_ij to the graph.
class Mesh {
 public:
  static Mesh interval(double x_lo, double x_hi, std::size_t cells, bool periodic = false);
  static Mesh rectangle(Vec2 lo, Vec2 hi, std::size_t nx, std::size_t ny, bool periodic = false);

  int dimension() const noexcept { return dim_; }
  std::size_t num_nodes() const noexcept { return x_.size(); }
  std::array<std::size_t, 2> cells() const noexcept { return cells_; }
  Vec2 lower() const noexcept { return lo_; }
  Vec2 upper() const noexcept { return hi_; }
  Vec2 spacing() const noexcept { return h_; }
  bool periodic() const noexcept { return periodic_; }

  std::size_t node_index(std::size_t ix, std::size_t iy = 0) const noexcept { return iy * cells_[0] + ix; }

  std::span<const Vec2> coordinates() const noexcept { return x_; }
  std::span<const double> masses() const noexcept { return mass_; }
  std::span<const Edge> edges() const noexcept { return edges_; }
  std::span<const BoundaryFace> boundary_faces() const noexcept { return faces_; }

  /// Stencil of `node` in fixed order: x-, x+, y-, y+.
  std::span<const Incidence> incidences(std::size_t node) const noexcept {
    return {inc_.data() + offsets_[node], inc_.data() + offsets_[node + 1]};
  }

 private:
  Mesh() = default;

  int dim_ = 1;
  std::array<std::size_t, 2> cells_{0, 1};
  Vec2 lo_{0.0, 0.0};
  Vec2 hi_{0.0, 0.0};
  Vec2 h_{0.0, 0.0};
  bool periodic_ = false;

  std::vector<Vec2> x_;
  std::vector<double> mass_;
  std::vector<Edge> edges_;
  std::vector<BoundaryFace> faces_;
  std::vector<std::size_t> offsets_;
  std::vector<Incidence> inc_;
};

}  // namespace idp
