#include "idp/mesh.hpp"

#include "idp/error.hpp"

namespace idp {

namespace {

enum Slot { kXMinus = 0, kXPlus = 1, kYMinus = 2, kYPlus = 3 };

}  // namespace

Mesh Mesh::interval(double x_lo, double x_hi, std::size_t cells, bool periodic) {
  if (cells < 2) throw ConfigError("mesh: need at least 2 cells");
  if (!(x_hi > x_lo)) throw ConfigError("mesh: empty interval");
  return rectangle({x_lo, 0.0}, {x_hi, 1.0}, cells, 1, periodic);
}

Mesh Mesh::rectangle(Vec2 lo, Vec2 hi, std::size_t nx, std::size_t ny, bool periodic) {
  if (nx < 2 || ny < 1) throw ConfigError("mesh: need at least 2 cells per direction");
  if (!(hi[0] > lo[0]) || !(hi[1] > lo[1])) throw ConfigError("mesh: empty rectangle");
  Mesh m;
  m.dim_ = ny == 1 ? 1 : 2;
  m.cells_ = {nx, ny};
  m.lo_ = lo;
  m.hi_ = hi;
  m.h_ = {(hi[0] - lo[0]) / static_cast<double>(nx), m.dim_ == 2 ? (hi[1] - lo[1]) / static_cast<double>(ny) : 0.0};
  m.periodic_ = periodic;

  const std::size_t n = nx * ny;
  m.x_.resize(n);
  m.mass_.resize(n);
  const double volume = m.dim_ == 2 ? m.h_[0] * m.h_[1] : m.h_[0];
  for (std::size_t iy = 0; iy < ny; ++iy) {
    for (std::size_t ix = 0; ix < nx; ++ix) {
      const std::size_t k = m.node_index(ix, iy);
      m.x_[k] = {lo[0] + (static_cast<double>(ix) + 0.5) * m.h_[0],
                 m.dim_ == 2 ? lo[1] + (static_cast<double>(iy) + 0.5) * m.h_[1] : 0.0};
      m.mass_[k] = volume;
    }
  }

  std::vector<std::array<Incidence, 4>> slots(n);
  std::vector<int> present(n * 4, 0);
  const auto put = [&](std::size_t node, Slot s, Incidence inc) {
    slots[node][s] = inc;
    present[node * 4 + s] = 1;
  };
  const auto add_edge = [&](std::size_t i, std::size_t j, Vec2 normal, double half_area, Slot si, Slot sj) {
    m.edges_.push_back({i, j, {half_area * normal[0], half_area * normal[1]}, half_area, normal});
    put(i, si, {m.edges_.size() - 1, false, 1.0});
    put(j, sj, {m.edges_.size() - 1, false, -1.0});
  };
  const auto add_face = [&](std::size_t node, Vec2 normal, double half_area, Wall wall, Slot s) {
    m.faces_.push_back({node, {half_area * normal[0], half_area * normal[1]}, half_area, normal, wall});
    put(node, s, {m.faces_.size() - 1, true, 1.0});
  };

  // x-direction faces
  const double half_x = 0.5 * (m.dim_ == 2 ? m.h_[1] : 1.0);
  for (std::size_t iy = 0; iy < ny; ++iy) {
    if (!periodic) add_face(m.node_index(0, iy), {-1.0, 0.0}, half_x, Wall::x_min, kXMinus);
    for (std::size_t ix = 0; ix + 1 < nx; ++ix) {
      add_edge(m.node_index(ix, iy), m.node_index(ix + 1, iy), {1.0, 0.0}, half_x, kXPlus, kXMinus);
    }
    if (periodic) {
      add_edge(m.node_index(nx - 1, iy), m.node_index(0, iy), {1.0, 0.0}, half_x, kXPlus, kXMinus);
    } else {
      add_face(m.node_index(nx - 1, iy), {1.0, 0.0}, half_x, Wall::x_max, kXPlus);
    }
  }
  // y-direction faces
  if (m.dim_ == 2) {
    const double half_y = 0.5 * m.h_[0];
    for (std::size_t ix = 0; ix < nx; ++ix) {
      if (!periodic) add_face(m.node_index(ix, 0), {0.0, -1.0}, half_y, Wall::y_min, kYMinus);
      for (std::size_t iy = 0; iy + 1 < ny; ++iy) {
        add_edge(m.node_index(ix, iy), m.node_index(ix, iy + 1), {0.0, 1.0}, half_y, kYPlus, kYMinus);
      }
      if (periodic) {
        add_edge(m.node_index(ix, ny - 1), m.node_index(ix, 0), {0.0, 1.0}, half_y, kYPlus, kYMinus);
      } else {
        add_face(m.node_index(ix, ny - 1), {0.0, 1.0}, half_y, Wall::y_max, kYPlus);
      }
    }
  }

  m.offsets_.assign(n + 1, 0);
  for (std::size_t k = 0; k < n; ++k) {
    for (int s = 0; s < 4; ++s) {
      if (present[k * 4 + s]) m.inc_.push_back(slots[k][s]);
    }
    m.offsets_[k + 1] = m.inc_.size();
  }
  return m;
}

}  // namespace idp
