#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>
#include <unordered_map>

#include "spie/mesh.hpp"

namespace spie {

namespace {

struct RawMesh {
  std::vector<Vec3> vertices;
  std::vector<std::array<int, 3>> faces;
  std::vector<int> face_tags;  // empty when the file carries no grouping
  std::vector<std::string> tag_names;
};

[[noreturn]] void parse_fail(const std::filesystem::path& path, int line,
                             const std::string& what) {
  throw InputError(path.string() + ":" + std::to_string(line) + ": " + what);
}

int obj_vertex_index(const std::string& token, int n_vertices,
                     const std::filesystem::path& path, int line) {
  // "v", "v/vt", "v//vn", "v/vt/vn": the leading index is the position.
  const size_t slash = token.find('/');
  const std::string head = token.substr(0, slash);
  int idx = 0;
  auto [p, ec] = std::from_chars(head.data(), head.data() + head.size(), idx);
  if (ec != std::errc() || p != head.data() + head.size())
    parse_fail(path, line, "bad face vertex reference '" + token + "'");
  if (idx > 0) return idx - 1;
  if (idx < 0) return n_vertices + idx;  // relative reference
  parse_fail(path, line, "face vertex index 0 is invalid");
}

RawMesh parse_obj(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open mesh file " + path.string());

  RawMesh raw;
  std::unordered_map<std::string, int> tag_of_name;
  int current_tag = -1;
  bool any_group = false;

  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string kw;
    if (!(ls >> kw) || kw[0] == '#') continue;
    if (kw == "v") {
      double x, y, z;
      if (!(ls >> x >> y >> z)) parse_fail(path, lineno, "bad vertex line");
      raw.vertices.emplace_back(x, y, z);
    } else if (kw == "o" || kw == "g") {
      std::string name;
      ls >> name;
      if (name.empty() || name == "default") {
        current_tag = -1;
        continue;
      }
      any_group = true;
      auto [it, inserted] =
          tag_of_name.try_emplace(name, static_cast<int>(raw.tag_names.size()));
      if (inserted) raw.tag_names.push_back(name);
      current_tag = it->second;
    } else if (kw == "f") {
      std::vector<int> ids;
      std::string tok;
      while (ls >> tok)
        ids.push_back(obj_vertex_index(tok, static_cast<int>(raw.vertices.size()),
                                       path, lineno));
      if (ids.size() != 3)
        parse_fail(path, lineno, "only triangular faces are supported (got " +
                                     std::to_string(ids.size()) + " vertices)");
      raw.faces.push_back({ids[0], ids[1], ids[2]});
      raw.face_tags.push_back(current_tag);
    }
    // vn / vt / mtllib / usemtl and anything else: ignored
  }
  if (raw.faces.empty()) throw InputError(path.string() + ": no faces found");

  if (!any_group) {
    raw.face_tags.clear();
  } else {
    // Faces before the first group get their own bucket.
    bool has_untagged = std::any_of(raw.face_tags.begin(), raw.face_tags.end(),
                                    [](int t) { return t < 0; });
    if (has_untagged) {
      const int extra = static_cast<int>(raw.tag_names.size());
      raw.tag_names.push_back("ungrouped");
      for (auto& t : raw.face_tags)
        if (t < 0) t = extra;
    }
  }
  return raw;
}

void msh_skip_to(std::istream& in, const std::string& end_token,
                 const std::filesystem::path& path) {
  std::string tok;
  while (in >> tok)
    if (tok == end_token) return;
  throw InputError(path.string() + ": missing " + end_token);
}

RawMesh parse_msh(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open mesh file " + path.string());

  double version = 0.0;
  std::map<int, std::string> physical_names;      // dim 2 names
  std::map<int, int> surface_physical;            // v4: surface entity -> phys
  std::unordered_map<long long, int> node_index;  // file node tag -> index

  RawMesh raw;
  bool any_physical = false;

  std::string tok;
  while (in >> tok) {
    if (tok == "$MeshFormat") {
      int file_type = 0, data_size = 0;
      in >> version >> file_type >> data_size;
      if (file_type != 0)
        throw InputError(path.string() + ": binary MSH is not supported");
      if (!(std::abs(version - 2.2) < 0.05 || std::abs(version - 4.1) < 0.05))
        throw InputError(path.string() + ": unsupported MSH version " +
                         std::to_string(version));
      msh_skip_to(in, "$EndMeshFormat", path);
    } else if (tok == "$PhysicalNames") {
      int n = 0;
      in >> n;
      for (int i = 0; i < n; ++i) {
        int dim = 0, tag = 0;
        std::string name;
        in >> dim >> tag;
        std::getline(in, name);
        const auto a = name.find('"');
        const auto b = name.rfind('"');
        if (a != std::string::npos && b > a)
          name = name.substr(a + 1, b - a - 1);
        if (dim == 2) physical_names[tag] = name;
      }
      msh_skip_to(in, "$EndPhysicalNames", path);
    } else if (tok == "$Entities") {
      // v4.1: need the surface entities' physical tags.
      long long np = 0, nc = 0, ns = 0, nv = 0;
      in >> np >> nc >> ns >> nv;
      for (long long i = 0; i < np; ++i) {
        int tag;
        double x, y, z;
        long long nphys;
        in >> tag >> x >> y >> z >> nphys;
        for (long long k = 0; k < nphys; ++k) in >> tok;
      }
      auto skip_bounded_entity = [&](bool record_surface) {
        int tag;
        double box[6];
        long long nphys;
        in >> tag;
        for (double& v : box) in >> v;
        in >> nphys;
        int first_phys = 0;
        for (long long k = 0; k < nphys; ++k) {
          int p;
          in >> p;
          if (k == 0) first_phys = p;
        }
        long long nbound;
        in >> nbound;
        for (long long k = 0; k < nbound; ++k) in >> tok;
        if (record_surface && nphys > 0) surface_physical[tag] = first_phys;
      };
      for (long long i = 0; i < nc; ++i) skip_bounded_entity(false);
      for (long long i = 0; i < ns; ++i) skip_bounded_entity(true);
      for (long long i = 0; i < nv; ++i) skip_bounded_entity(false);
      msh_skip_to(in, "$EndEntities", path);
    } else if (tok == "$Nodes") {
      if (version < 3.0) {
        long long n = 0;
        in >> n;
        for (long long i = 0; i < n; ++i) {
          long long tag;
          double x, y, z;
          if (!(in >> tag >> x >> y >> z))
            throw InputError(path.string() + ": truncated $Nodes");
          node_index[tag] = static_cast<int>(raw.vertices.size());
          raw.vertices.emplace_back(x, y, z);
        }
      } else {
        long long nblocks = 0, nnodes = 0, mintag = 0, maxtag = 0;
        in >> nblocks >> nnodes >> mintag >> maxtag;
        for (long long bidx = 0; bidx < nblocks; ++bidx) {
          int dim, etag, parametric;
          long long count;
          in >> dim >> etag >> parametric >> count;
          std::vector<long long> tags(count);
          for (auto& t : tags) in >> t;
          for (long long i = 0; i < count; ++i) {
            double x, y, z;
            if (!(in >> x >> y >> z))
              throw InputError(path.string() + ": truncated $Nodes");
            node_index[tags[i]] = static_cast<int>(raw.vertices.size());
            raw.vertices.emplace_back(x, y, z);
          }
        }
      }
      msh_skip_to(in, "$EndNodes", path);
    } else if (tok == "$Elements") {
      std::unordered_map<int, int> tag_remap;  // physical tag -> dense index
      auto tag_for = [&](int phys) {
        auto [it, inserted] =
            tag_remap.try_emplace(phys, static_cast<int>(raw.tag_names.size()));
        if (inserted) {
          auto nm = physical_names.find(phys);
          raw.tag_names.push_back(nm != physical_names.end()
                                      ? nm->second
                                      : "surface_" + std::to_string(phys));
        }
        return it->second;
      };
      auto node_of = [&](long long t) {
        auto it = node_index.find(t);
        if (it == node_index.end())
          throw InputError(path.string() + ": element references unknown node " +
                           std::to_string(t));
        return it->second;
      };
      if (version < 3.0) {
        long long n = 0;
        in >> n;
        for (long long i = 0; i < n; ++i) {
          long long id;
          int type, ntags;
          in >> id >> type >> ntags;
          std::vector<int> tags(ntags);
          for (auto& t : tags) in >> t;
          const int nn = [&] {
            switch (type) {
              case 1: return 2;   // line
              case 2: return 3;   // triangle
              case 3: return 4;   // quad
              case 4: return 4;   // tet
              case 15: return 1;  // point
              default: return -1;
            }
          }();
          if (nn < 0)
            throw InputError(path.string() + ": unsupported element type " +
                             std::to_string(type));
          std::vector<long long> nodes(nn);
          for (auto& t : nodes) in >> t;
          if (type != 2) continue;
          raw.faces.push_back({node_of(nodes[0]), node_of(nodes[1]),
                               node_of(nodes[2])});
          const int phys = ntags > 0 ? tags[0] : 0;
          if (phys > 0) {
            any_physical = true;
            raw.face_tags.push_back(tag_for(phys));
          } else {
            raw.face_tags.push_back(-1);
          }
        }
      } else {
        long long nblocks = 0, nelems = 0, mintag = 0, maxtag = 0;
        in >> nblocks >> nelems >> mintag >> maxtag;
        for (long long bidx = 0; bidx < nblocks; ++bidx) {
          int dim, etag, type;
          long long count;
          in >> dim >> etag >> type >> count;
          const int nn = [&] {
            switch (type) {
              case 1: return 2;
              case 2: return 3;
              case 3: return 4;
              case 4: return 4;
              case 15: return 1;
              default: return -1;
            }
          }();
          if (nn < 0)
            throw InputError(path.string() + ": unsupported element type " +
                             std::to_string(type));
          for (long long i = 0; i < count; ++i) {
            long long id;
            in >> id;
            std::vector<long long> nodes(nn);
            for (auto& t : nodes) in >> t;
            if (type != 2) continue;
            raw.faces.push_back({node_of(nodes[0]), node_of(nodes[1]),
                                 node_of(nodes[2])});
            const auto sp = surface_physical.find(etag);
            if (sp != surface_physical.end()) {
              any_physical = true;
              raw.face_tags.push_back(tag_for(sp->second));
            } else {
              raw.face_tags.push_back(-1);
            }
          }
        }
      }
      msh_skip_to(in, "$EndElements", path);
    } else if (!tok.empty() && tok[0] == '$') {
      msh_skip_to(in, "$End" + tok.substr(1), path);
    }
  }

  if (raw.faces.empty())
    throw InputError(path.string() + ": no triangles found");
  if (!any_physical) {
    raw.face_tags.clear();
    raw.tag_names.clear();
  } else if (std::any_of(raw.face_tags.begin(), raw.face_tags.end(),
                         [](int t) { return t < 0; })) {
    const int extra = static_cast<int>(raw.tag_names.size());
    raw.tag_names.push_back("ungrouped");
    for (auto& t : raw.face_tags)
      if (t < 0) t = extra;
  }
  return raw;
}

}  // namespace

SurfaceMesh load_mesh(const std::filesystem::path& path, MeshFormat format,
                      double unit_scale) {
  if (unit_scale <= 0.0) throw InputError("unit_scale must be positive");
  if (format == MeshFormat::Auto) {
    const auto ext = path.extension().string();
    if (ext == ".obj" || ext == ".OBJ")
      format = MeshFormat::Obj;
    else if (ext == ".msh" || ext == ".MSH")
      format = MeshFormat::GmshMshAscii;
    else
      throw InputError("cannot infer mesh format from extension '" + ext +
                       "' (use .obj or .msh, or set the format explicitly)");
  }

  RawMesh raw = format == MeshFormat::Obj ? parse_obj(path) : parse_msh(path);
  if (unit_scale != 1.0)
    for (auto& v : raw.vertices) v *= unit_scale;
  return build_mesh(std::move(raw.vertices), raw.faces, raw.face_tags,
                    raw.tag_names);
}

void save_obj(const SurfaceMesh& mesh, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path.string());
  out.precision(17);
  for (const auto& v : mesh.vertices)
    out << "v " << v.x() << ' ' << v.y() << ' ' << v.z() << '\n';
  for (const auto& obj : mesh.objects) {
    out << "o " << obj.name << '\n';
    for (int t = obj.tri_begin; t < obj.tri_end; ++t) {
      const auto& ids = mesh.triangles[t].vertex_ids;
      out << "f " << ids[0] + 1 << ' ' << ids[1] + 1 << ' ' << ids[2] + 1
          << '\n';
    }
  }
  if (!out) throw InputError("write failed for " + path.string());
}

}  // namespace spie
