#include "meshgen.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

namespace spie::testing {

TriSoup icosphere(double radius, int subdiv, const Vec3& center) {
  const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
  TriSoup s;
  s.vertices = {
      {-1, phi, 0}, {1, phi, 0}, {-1, -phi, 0}, {1, -phi, 0},
      {0, -1, phi}, {0, 1, phi}, {0, -1, -phi}, {0, 1, -phi},
      {phi, 0, -1}, {phi, 0, 1}, {-phi, 0, -1}, {-phi, 0, 1},
  };
  s.faces = {
      {0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11},
      {1, 5, 9},  {5, 11, 4}, {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
      {3, 9, 4},  {3, 4, 2},  {3, 2, 6},   {3, 6, 8},  {3, 8, 9},
      {4, 9, 5},  {2, 4, 11}, {6, 2, 10},  {8, 6, 7},  {9, 8, 1},
  };

  for (int level = 0; level < subdiv; ++level) {
    std::map<std::pair<int, int>, int> midpoint;
    auto mid = [&](int a, int b) {
      const auto key = std::minmax(a, b);
      auto it = midpoint.find(key);
      if (it != midpoint.end()) return it->second;
      const int idx = static_cast<int>(s.vertices.size());
      s.vertices.push_back(0.5 * (s.vertices[a] + s.vertices[b]));
      midpoint[key] = idx;
      return idx;
    };
    std::vector<std::array<int, 3>> next;
    next.reserve(4 * s.faces.size());
    for (const auto& f : s.faces) {
      const int m01 = mid(f[0], f[1]);
      const int m12 = mid(f[1], f[2]);
      const int m20 = mid(f[2], f[0]);
      next.push_back({f[0], m01, m20});
      next.push_back({f[1], m12, m01});
      next.push_back({f[2], m20, m12});
      next.push_back({m01, m12, m20});
    }
    s.faces = std::move(next);
  }

  for (auto& v : s.vertices) v = center + radius * v.normalized();
  return s;
}

std::vector<double> linspace(double lo, double hi, int cells) {
  std::vector<double> xs(cells + 1);
  for (int i = 0; i <= cells; ++i)
    xs[i] = lo + (hi - lo) * static_cast<double>(i) / cells;
  return xs;
}

TriSoup box_grid(const std::vector<double>& xs, const std::vector<double>& ys,
                 const std::vector<double>& zs) {
  if (xs.size() < 2 || ys.size() < 2 || zs.size() < 2)
    throw std::invalid_argument("box_grid: need at least one cell per axis");

  TriSoup s;
  std::map<std::array<int, 3>, int> vertex_of;
  auto vid = [&](int i, int j, int k) {
    const std::array<int, 3> key{i, j, k};
    auto it = vertex_of.find(key);
    if (it != vertex_of.end()) return it->second;
    const int idx = static_cast<int>(s.vertices.size());
    s.vertices.emplace_back(xs[i], ys[j], zs[k]);
    vertex_of[key] = idx;
    return idx;
  };

  const int nx = static_cast<int>(xs.size()) - 1;
  const int ny = static_cast<int>(ys.size()) - 1;
  const int nz = static_cast<int>(zs.size()) - 1;

  auto emit_quad = [&](int a, int b, int c, int d, bool flip) {
    // (a, b, c, d) counter-clockwise as seen from outside when !flip.
    if (flip) {
      s.faces.push_back({a, d, c});
      s.faces.push_back({a, c, b});
    } else {
      s.faces.push_back({a, b, c});
      s.faces.push_back({a, c, d});
    }
  };

  // x = const faces: grid over (y, z). Outward normal +x at i = nx.
  for (int side = 0; side < 2; ++side) {
    const int i = side == 0 ? 0 : nx;
    for (int j = 0; j < ny; ++j)
      for (int k = 0; k < nz; ++k)
        emit_quad(vid(i, j, k), vid(i, j + 1, k), vid(i, j + 1, k + 1),
                  vid(i, j, k + 1), side == 1);
  }
  // y = const faces: grid over (z, x). Outward +y at j = ny.
  for (int side = 0; side < 2; ++side) {
    const int j = side == 0 ? 0 : ny;
    for (int k = 0; k < nz; ++k)
      for (int i = 0; i < nx; ++i)
        emit_quad(vid(i, j, k), vid(i, j, k + 1), vid(i + 1, j, k + 1),
                  vid(i + 1, j, k), side == 1);
  }
  // z = const faces: grid over (x, y). Outward +z at k = nz.
  for (int side = 0; side < 2; ++side) {
    const int k = side == 0 ? 0 : nz;
    for (int i = 0; i < nx; ++i)
      for (int j = 0; j < ny; ++j)
        emit_quad(vid(i, j, k), vid(i + 1, j, k), vid(i + 1, j + 1, k),
                  vid(i, j + 1, k), side == 1);
  }
  return s;
}

SurfaceMesh merge_to_mesh(const std::vector<TriSoup>& parts,
                          const std::vector<std::string>& names) {
  std::vector<Vec3> vertices;
  std::vector<std::array<int, 3>> faces;
  std::vector<int> object_ids;
  for (size_t p = 0; p < parts.size(); ++p) {
    const int base = static_cast<int>(vertices.size());
    vertices.insert(vertices.end(), parts[p].vertices.begin(),
                    parts[p].vertices.end());
    for (const auto& f : parts[p].faces) {
      faces.push_back({f[0] + base, f[1] + base, f[2] + base});
      object_ids.push_back(static_cast<int>(p));
    }
  }
  return build_mesh(std::move(vertices), faces, object_ids, names);
}

SurfaceMesh to_mesh(const TriSoup& soup, const std::string& name) {
  return merge_to_mesh({soup}, {name});
}

}  // namespace spie::testing
