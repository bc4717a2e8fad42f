#include "spie/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <sstream>
#include <unordered_map>

namespace spie {

namespace {

constexpr double degenerate_area = 1e-18;  // [m^2], assembly divides by area
constexpr double aspect_warn_threshold = 20.0;

uint64_t edge_key(int a, int b) {
  if (a > b) std::swap(a, b);
  return (static_cast<uint64_t>(a) << 32) | static_cast<uint64_t>(b);
}

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

// Watertight ray/triangle test (Moller-Trumbore). Returns true for a forward
// hit; sets `grazing` when the hit is too close to an edge to trust parity.
bool ray_hits_triangle(const Vec3& origin, const Vec3& dir, const Vec3& a,
                       const Vec3& b, const Vec3& c, bool& grazing) {
  const Vec3 e1 = b - a;
  const Vec3 e2 = c - a;
  const Vec3 p = dir.cross(e2);
  const double det = e1.dot(p);
  const double scale = e1.norm() * e2.norm();
  if (std::abs(det) < 1e-14 * scale) return false;  // parallel
  const double inv = 1.0 / det;
  const Vec3 s = origin - a;
  const double u = s.dot(p) * inv;
  const Vec3 q = s.cross(e1);
  const double v = dir.dot(q) * inv;
  const double t = e2.dot(q) * inv;
  if (t <= 1e-12) return false;
  const bool inside = u >= 0.0 && v >= 0.0 && u + v <= 1.0;
  const double margin = 1e-9;
  const bool near_band = u > -margin && v > -margin && u + v < 1.0 + margin;
  if (near_band && (std::abs(u) < margin || std::abs(v) < margin ||
                    std::abs(u + v - 1.0) < margin))
    grazing = true;  // too close to an edge to trust parity
  return inside;
}

}  // namespace

TriangleGeometry triangle_geometry(const Vec3& v0, const Vec3& v1,
                                   const Vec3& v2) {
  const Vec3 e1 = v1 - v0;
  const Vec3 e2 = v2 - v0;
  const Vec3 cr = e1.cross(e2);
  const double cn = cr.norm();
  const double scale = std::max({e1.squaredNorm(), e2.squaredNorm(),
                                 (v2 - v1).squaredNorm()});
  if (cn <= 1e-12 * scale)
    throw InputError("triangle_geometry: collinear vertices");
  TriangleGeometry g;
  g.area = 0.5 * cn;
  g.centroid = (v0 + v1 + v2) / 3.0;
  g.unit_normal = cr / cn;
  return g;
}

int SurfaceMesh::object_index(const std::string& name) const {
  for (const auto& o : objects)
    if (o.name == name) return o.id;
  return -1;
}

double SurfaceMesh::object_volume(int object_id) const {
  const auto& obj = objects.at(object_id);
  double vol = 0.0;
  for (int t = obj.tri_begin; t < obj.tri_end; ++t) {
    const Vec3& a = tri_vertex(t, 0);
    const Vec3& b = tri_vertex(t, 1);
    const Vec3& c = tri_vertex(t, 2);
    vol += a.dot(b.cross(c)) / 6.0;
  }
  return vol;
}

SurfaceMesh build_mesh(std::vector<Vec3> vertices,
                       const std::vector<std::array<int, 3>>& faces,
                       const std::vector<int>& face_object_ids,
                       const std::vector<std::string>& object_names) {
  const int n_faces = static_cast<int>(faces.size());
  const int n_verts = static_cast<int>(vertices.size());
  if (n_faces == 0) throw InputError("mesh has no triangles");
  if (!face_object_ids.empty() &&
      static_cast<int>(face_object_ids.size()) != n_faces)
    throw InputError("face_object_ids size does not match face count");

  for (int f = 0; f < n_faces; ++f) {
    const auto& ids = faces[f];
    for (int k = 0; k < 3; ++k)
      if (ids[k] < 0 || ids[k] >= n_verts)
        throw InputError("face " + std::to_string(f) +
                         ": vertex index out of range");
    if (ids[0] == ids[1] || ids[1] == ids[2] || ids[0] == ids[2])
      throw InputError("face " + std::to_string(f) +
                       ": repeated vertex index");
  }

  // Group faces into objects: explicit tags, else connected components of
  // shared edges.
  std::vector<int> group(n_faces, -1);
  std::vector<std::string> names;
  if (!face_object_ids.empty()) {
    std::unordered_map<int, int> remap;  // tag value -> dense object id
    for (int f = 0; f < n_faces; ++f) {
      const int tag = face_object_ids[f];
      auto [it, inserted] = remap.try_emplace(tag, static_cast<int>(remap.size()));
      group[f] = it->second;
      if (inserted) {
        if (tag >= 0 && tag < static_cast<int>(object_names.size()) &&
            !object_names[tag].empty())
          names.push_back(object_names[tag]);
        else
          names.push_back("object_" + std::to_string(it->second));
      }
    }
  } else {
    std::unordered_map<uint64_t, std::vector<int>> edges;
    for (int f = 0; f < n_faces; ++f)
      for (int k = 0; k < 3; ++k)
        edges[edge_key(faces[f][k], faces[f][(k + 1) % 3])].push_back(f);
    UnionFind uf(n_faces);
    for (const auto& [key, fs] : edges)
      for (size_t i = 1; i < fs.size(); ++i) uf.unite(fs[0], fs[i]);
    std::unordered_map<int, int> remap;
    for (int f = 0; f < n_faces; ++f) {
      const int root = uf.find(f);
      auto [it, inserted] = remap.try_emplace(root, static_cast<int>(remap.size()));
      group[f] = it->second;
      if (inserted) names.push_back("object_" + std::to_string(it->second));
    }
  }
  const int n_objects = static_cast<int>(names.size());

  // Mutable copy of the connectivity; winding flips happen here.
  std::vector<std::array<int, 3>> conn(faces.begin(), faces.end());

  // Per-object manifold check: every edge shared by exactly two faces.
  std::vector<std::vector<int>> object_faces(n_objects);
  for (int f = 0; f < n_faces; ++f) object_faces[group[f]].push_back(f);

  for (int q = 0; q < n_objects; ++q) {
    std::unordered_map<uint64_t, std::vector<int>> edges;
    for (int f : object_faces[q])
      for (int k = 0; k < 3; ++k)
        edges[edge_key(conn[f][k], conn[f][(k + 1) % 3])].push_back(f);
    for (const auto& [key, fs] : edges)
      if (fs.size() > 2)
        throw InputError("object '" + names[q] + "': non-manifold edge shared by " +
                         std::to_string(fs.size()) + " triangles");
    for (const auto& [key, fs] : edges)
      if (fs.size() == 1)
        throw InputError("object '" + names[q] +
                         "' is not watertight (boundary edge found)");

    // Consistent winding across each connected component, then outward
    // orientation: component volumes positive, cavities (odd containment
    // depth) negative.
    UnionFind comp(n_faces);
    for (const auto& [key, fs] : edges) comp.unite(fs[0], fs[1]);

    std::unordered_map<int, std::vector<int>> comp_faces;
    for (int f : object_faces[q]) comp_faces[comp.find(f)].push_back(f);

    // BFS winding propagation.
    std::vector<char> visited(n_faces, 0);
    auto directed_has = [&](int f, int a, int b) {
      for (int k = 0; k < 3; ++k)
        if (conn[f][k] == a && conn[f][(k + 1) % 3] == b) return true;
      return false;
    };
    for (auto& [root, members] : comp_faces) {
      std::vector<int> stack{members.front()};
      visited[members.front()] = 1;
      while (!stack.empty()) {
        const int f = stack.back();
        stack.pop_back();
        for (int k = 0; k < 3; ++k) {
          const int a = conn[f][k];
          const int b = conn[f][(k + 1) % 3];
          for (int g : edges.at(edge_key(a, b))) {
            if (g == f) continue;
            const bool opposite = directed_has(g, b, a);
            if (!visited[g]) {
              if (!opposite) std::swap(conn[g][1], conn[g][2]);
              visited[g] = 1;
              stack.push_back(g);
            } else if (!opposite) {
              throw InputError("object '" + names[q] + "' is not orientable");
            }
          }
        }
      }
    }

    // Signed volume per component.
    std::vector<int> roots;
    std::unordered_map<int, double> comp_volume;
    for (auto& [root, members] : comp_faces) {
      roots.push_back(root);
      double vol = 0.0;
      for (int f : members) {
        const Vec3& a = vertices[conn[f][0]];
        const Vec3& b = vertices[conn[f][1]];
        const Vec3& c = vertices[conn[f][2]];
        vol += a.dot(b.cross(c)) / 6.0;
      }
      comp_volume[root] = vol;
    }
    std::sort(roots.begin(), roots.end());

    // Containment depth by ray parity against the other components.
    static const Vec3 ray_dirs[3] = {
        Vec3(0.287514, 0.642910, 0.710354).normalized(),
        Vec3(-0.519374, 0.830125, 0.202309).normalized(),
        Vec3(0.104517, -0.310221, 0.944891).normalized()};
    for (int root : roots) {
      int depth = 0;
      const Vec3 probe =
          (vertices[conn[comp_faces[root].front()][0]] +
           vertices[conn[comp_faces[root].front()][1]] +
           vertices[conn[comp_faces[root].front()][2]]) /
          3.0;
      for (int other : roots) {
        if (other == root) continue;
        bool decided = false;
        for (const Vec3& dir : ray_dirs) {
          int crossings = 0;
          bool grazing = false;
          for (int f : comp_faces[other]) {
            if (ray_hits_triangle(probe, dir, vertices[conn[f][0]],
                                  vertices[conn[f][1]], vertices[conn[f][2]],
                                  grazing))
              ++crossings;
          }
          if (!grazing) {
            if (crossings % 2 == 1) ++depth;
            decided = true;
            break;
          }
        }
        if (!decided)
          throw InputError("object '" + names[q] +
                           "': could not resolve component nesting");
      }
      const int target = (depth % 2 == 0) ? +1 : -1;
      const double vol = comp_volume[root];
      if (vol == 0.0)
        throw InputError("object '" + names[q] +
                         "': component encloses zero volume");
      if ((vol > 0 ? +1 : -1) != target)
        for (int f : comp_faces[root]) std::swap(conn[f][1], conn[f][2]);
    }
  }

  // Geometry, ordered by object with original relative order preserved.
  SurfaceMesh mesh;
  mesh.vertices = std::move(vertices);
  mesh.triangles.reserve(n_faces);
  mesh.objects.resize(n_objects);

  double max_aspect = 0.0;
  int n_bad_aspect = 0;
  for (int q = 0; q < n_objects; ++q) {
    auto& obj = mesh.objects[q];
    obj.id = q;
    obj.name = names[q];
    obj.tri_begin = static_cast<int>(mesh.triangles.size());
    for (int f : object_faces[q]) {
      Triangle tri;
      tri.vertex_ids = conn[f];
      tri.object_id = q;
      TriangleGeometry g;
      try {
        g = triangle_geometry(mesh.vertices[conn[f][0]],
                              mesh.vertices[conn[f][1]],
                              mesh.vertices[conn[f][2]]);
      } catch (const InputError&) {
        throw InputError("face " + std::to_string(f) + ": collinear vertices");
      }
      if (g.area < degenerate_area)
        throw InputError("face " + std::to_string(f) +
                         ": degenerate triangle (area < 1e-18 m^2)");
      tri.area = g.area;
      tri.centroid = g.centroid;
      tri.unit_normal = g.unit_normal;
      obj.total_area += g.area;

      const double e0 = (mesh.vertices[conn[f][1]] - mesh.vertices[conn[f][0]]).norm();
      const double e1 = (mesh.vertices[conn[f][2]] - mesh.vertices[conn[f][1]]).norm();
      const double e2 = (mesh.vertices[conn[f][0]] - mesh.vertices[conn[f][2]]).norm();
      const double longest = std::max({e0, e1, e2});
      const double aspect = longest * longest / (2.0 * g.area);
      if (aspect > aspect_warn_threshold) {
        ++n_bad_aspect;
        max_aspect = std::max(max_aspect, aspect);
      }
      mesh.triangles.push_back(tri);
    }
    obj.tri_end = static_cast<int>(mesh.triangles.size());
  }

  if (n_bad_aspect > 0) {
    std::ostringstream w;
    w << n_bad_aspect << " triangle(s) exceed aspect ratio "
      << aspect_warn_threshold << ":1 (worst " << max_aspect << ":1)";
    mesh.load_warnings.push_back(w.str());
  }

  for (const auto& obj : mesh.objects) {
    const double vol = mesh.object_volume(obj.id);
    if (vol <= 0.0)
      throw InputError("object '" + obj.name +
                       "': non-positive enclosed volume after orientation");
  }
  return mesh;
}

int nearest_triangle(const SurfaceMesh& mesh, int object_id,
                     const Vec3& anchor) {
  if (object_id < 0 || object_id >= mesh.n_objects())
    throw InputError("object id " + std::to_string(object_id) +
                     " out of range");
  const auto& obj = mesh.objects[object_id];
  int best = -1;
  double best_d = std::numeric_limits<double>::infinity();
  for (int t = obj.tri_begin; t < obj.tri_end; ++t) {
    const double d = (mesh.triangles[t].centroid - anchor).squaredNorm();
    if (d < best_d) {  // strict: ties keep the lower index
      best_d = d;
      best = t;
    }
  }
  return best;
}

Terminal& tag_terminal(SurfaceMesh& mesh, int object_id, const Vec3& anchor,
                       int orientation_sign) {
  if (orientation_sign != 1 && orientation_sign != -1)
    throw InputError("terminal orientation sign must be +1 or -1");
  Terminal term;
  term.id = static_cast<int>(mesh.terminals.size());
  term.object_id = object_id;
  term.triangle_id = nearest_triangle(mesh, object_id, anchor);
  term.orientation_sign = orientation_sign;
  mesh.terminals.push_back(term);
  return mesh.terminals.back();
}

}  // namespace spie
