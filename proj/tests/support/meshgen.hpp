#pragma once

#include <array>
#include <string>
#include <vector>

#include "spie/mesh.hpp"

namespace spie::testing {

struct TriSoup {
  std::vector<Vec3> vertices;
  std::vector<std::array<int, 3>> faces;
};

/// Icosahedron subdivided `subdiv` times with vertices projected to the
/// sphere: 20 * 4^subdiv triangles (0 -> 20, 1 -> 80, 2 -> 320, 3 -> 1280).
TriSoup icosphere(double radius, int subdiv, const Vec3& center = Vec3::Zero());

/// Axis-aligned box surface on the grid given by per-axis division
/// coordinates (each sorted, at least two entries). Watertight by
/// construction; two triangles per grid cell.
TriSoup box_grid(const std::vector<double>& xs, const std::vector<double>& ys,
                 const std::vector<double>& zs);

/// Uniform n-division helper for box_grid.
std::vector<double> linspace(double lo, double hi, int cells);

/// Merges soups into one mesh, one object per soup.
SurfaceMesh merge_to_mesh(const std::vector<TriSoup>& parts,
                          const std::vector<std::string>& names);

SurfaceMesh to_mesh(const TriSoup& soup, const std::string& name = "object_0");

}  // namespace spie::testing
