#pragma once

#include <Eigen/Dense>

#include <array>
#include <filesystem>
#include <string>
#include <vector>

#include "spie/constants.hpp"
#include "spie/errors.hpp"

namespace spie {

using Vec3 = Eigen::Vector3d;

struct TriangleGeometry {
  double area = 0.0;
  Vec3 centroid = Vec3::Zero();
  Vec3 unit_normal = Vec3::Zero();
};

/// Area, centroid and unit normal of (v0, v1, v2); the normal follows the
/// winding (right-hand rule). Throws InputError for collinear vertices.
TriangleGeometry triangle_geometry(const Vec3& v0, const Vec3& v1,
                                   const Vec3& v2);

struct Triangle {
  std::array<int, 3> vertex_ids{-1, -1, -1};
  int object_id = -1;
  double area = 0.0;        // [m^2]
  Vec3 centroid = Vec3::Zero();
  Vec3 unit_normal = Vec3::Zero();  // outward from the conductor
};

struct ConductorObject {
  int id = -1;
  std::string name;
  // Triangles of one object are stored contiguously in SurfaceMesh::triangles.
  int tri_begin = 0;
  int tri_end = 0;
  double total_area = 0.0;      // [m^2]
  double conductivity = 5.8e7;  // [S/m], copper unless the config overrides
  double permittivity = eps0;   // accepted but unused in the DC system

  int n_triangles() const { return tri_end - tri_begin; }
};

struct Terminal {
  int id = -1;
  int object_id = -1;
  int triangle_id = -1;
  // +1: positive port current enters the object here; -1: it leaves (the
  // current-out terminal).
  int orientation_sign = +1;
};

/// Oriented triangulated surfaces grouped into conductor objects. Immutable
/// once assembly starts; terminal tagging happens during setup.
struct SurfaceMesh {
  std::vector<Vec3> vertices;
  std::vector<Triangle> triangles;
  std::vector<ConductorObject> objects;
  std::vector<Terminal> terminals;
  std::vector<std::string> load_warnings;

  int n_triangles() const { return static_cast<int>(triangles.size()); }
  int n_objects() const { return static_cast<int>(objects.size()); }
  int n_terminals() const { return static_cast<int>(terminals.size()); }

  /// Index of the named object, or -1.
  int object_index(const std::string& name) const;

  const Vec3& tri_vertex(int tri, int corner) const {
    return vertices[triangles[tri].vertex_ids[corner]];
  }

  /// Signed volume enclosed by an object's oriented surface [m^3].
  double object_volume(int object_id) const;
};

/// Builds a validated mesh from raw arrays: grouping by `face_object_ids`
/// (connected components of shared edges when empty), consistent winding,
/// outward orientation by signed volume with cavities pointing inward,
/// manifold and degeneracy checks. Triangles are reordered so each object's
/// block is contiguous.
SurfaceMesh build_mesh(std::vector<Vec3> vertices,
                       const std::vector<std::array<int, 3>>& faces,
                       const std::vector<int>& face_object_ids = {},
                       const std::vector<std::string>& object_names = {});

enum class MeshFormat { Auto, Obj, GmshMshAscii };

/// Loads a Wavefront OBJ (`o`/`g` groups) or Gmsh MSH ASCII v2.2 / v4.1 mesh
/// (element type 2, physical tags as objects). Coordinates are multiplied by
/// `unit_scale` before validation. Formats resolve by extension when Auto.
SurfaceMesh load_mesh(const std::filesystem::path& path,
                      MeshFormat format = MeshFormat::Auto,
                      double unit_scale = 1.0);

/// Writes the mesh as OBJ with one `o` group per object; reloading reproduces
/// the object grouping and triangle order.
void save_obj(const SurfaceMesh& mesh, const std::filesystem::path& path);

/// Triangle of `object_id` whose centroid is nearest to `anchor`; ties break
/// toward the lower triangle index.
int nearest_triangle(const SurfaceMesh& mesh, int object_id,
                     const Vec3& anchor);

/// Tags the nearest triangle of the object as a terminal and appends it to
/// mesh.terminals.
Terminal& tag_terminal(SurfaceMesh& mesh, int object_id, const Vec3& anchor,
                       int orientation_sign);

}  // namespace spie
