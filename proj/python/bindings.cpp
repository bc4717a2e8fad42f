#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <optional>

#include "spie/oracles.hpp"
#include "spie/postproc.hpp"
#include "spie/runner.hpp"
#include "spie/solver.hpp"

namespace py = pybind11;
using namespace spie;

namespace {

using Applied = std::tuple<std::string, Vec3, double>;              // object, anchor, volts
using Charge = std::tuple<std::vector<std::string>, double>;        // objects, coulombs
using PortTuple = std::tuple<std::string, Vec3, std::string, Vec3,  // pos, neg
                             double, double>;                       // R, V_src
using PointQ = std::tuple<Vec3, double>;

int object_or_throw(const SurfaceMesh& mesh, const std::string& name) {
  const int q = mesh.object_index(name);
  if (q < 0) throw InputError("unknown object '" + name + "'");
  return q;
}

struct CaseResult {
  FieldReport report;
  std::vector<double> port_resistance;
  Eigen::VectorXd ndgphi;
  double condition = 0.0;
  SurfaceMesh mesh;  // carries the tagged terminals for exporting
};

// One-shot pipeline on a copy of the mesh (terminal tags stay local).
CaseResult solve_case(const SurfaceMesh& mesh_in,
                      const std::vector<Applied>& applied,
                      const std::vector<Charge>& charges,
                      const std::vector<PortTuple>& ports,
                      const std::vector<PointQ>& point_charges, int threads) {
  CaseResult out;
  out.mesh = mesh_in;
  ExcitationSpec spec;
  for (const auto& [name, anchor, volts] : applied)
    spec.applied_potentials.push_back(
        {object_or_throw(out.mesh, name), anchor, volts});
  for (const auto& [names, coulombs] : charges) {
    ChargeSpec ch;
    for (const auto& n : names) ch.objects.push_back(object_or_throw(out.mesh, n));
    ch.coulombs = coulombs;
    spec.charges.push_back(ch);
  }
  for (const auto& [pos_obj, pos_anchor, neg_obj, neg_anchor, r, v] : ports) {
    Port port;
    port.positive_terminal =
        tag_terminal(out.mesh, object_or_throw(out.mesh, pos_obj), pos_anchor, +1).id;
    port.negative_terminal =
        tag_terminal(out.mesh, object_or_throw(out.mesh, neg_obj), neg_anchor, -1).id;
    port.resistance = r;
    port.v_src = v;
    spec.ports.push_back(port);
  }
  for (const auto& [pos, q] : point_charges) spec.point_charges.push_back({pos, q});

  const OperatorSet ops = assemble_operators(out.mesh, threads);
  const ReducedBasis basis = build_reduced_basis(out.mesh);
  const AssembledSystem sys = assemble_system(out.mesh, ops, basis, spec);
  const Solution sol = solve(sys);
  out.condition = condition_estimate(sys);
  out.report = reconstruct_fields(sol, out.mesh, basis, spec);
  out.ndgphi = sol.ndgphi;
  if (!spec.ports.empty())
    out.port_resistance = resistance_from_ports(out.report, out.mesh, spec);
  return out;
}

}  // namespace

PYBIND11_MODULE(_spie, m) {
  m.doc() = "Boundary-element DC solver for conductors: capacitance and "
            "resistance from one scalar-potential formulation";

  py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
  py::register_exception<NumericalError>(m, "NumericalError", PyExc_RuntimeError);

  py::class_<SurfaceMesh>(m, "Mesh")
      .def_static(
          "from_arrays",
          [](const Eigen::MatrixXd& vertices, const Eigen::MatrixXi& faces,
             std::optional<std::vector<int>> object_ids,
             std::optional<std::vector<std::string>> names) {
            if (vertices.cols() != 3) throw InputError("vertices must be (n, 3)");
            if (faces.cols() != 3) throw InputError("faces must be (m, 3)");
            std::vector<Vec3> verts(vertices.rows());
            for (int i = 0; i < vertices.rows(); ++i)
              verts[i] = vertices.row(i).transpose();
            std::vector<std::array<int, 3>> tris(faces.rows());
            for (int i = 0; i < faces.rows(); ++i)
              tris[i] = {faces(i, 0), faces(i, 1), faces(i, 2)};
            return build_mesh(std::move(verts), tris,
                              object_ids.value_or(std::vector<int>{}),
                              names.value_or(std::vector<std::string>{}));
          },
          py::arg("vertices"), py::arg("faces"), py::arg("object_ids") = py::none(),
          py::arg("names") = py::none(),
          "Build a mesh from vertex/face arrays; faces group into objects by "
          "object_ids (connected components when omitted)")
      .def_static(
          "load",
          [](const std::filesystem::path& path, const std::string& format,
             double unit_scale) {
            MeshFormat f = MeshFormat::Auto;
            if (format == "obj")
              f = MeshFormat::Obj;
            else if (format == "gmsh-msh-ascii")
              f = MeshFormat::GmshMshAscii;
            else if (format != "auto")
              throw InputError("format must be auto, obj or gmsh-msh-ascii");
            return load_mesh(path, f, unit_scale);
          },
          py::arg("path"), py::arg("format") = "auto", py::arg("unit_scale") = 1.0)
      .def("save_obj", &save_obj, py::arg("path"))
      .def_property_readonly("n_triangles", &SurfaceMesh::n_triangles)
      .def_property_readonly("n_objects", &SurfaceMesh::n_objects)
      .def_property_readonly("object_names",
                             [](const SurfaceMesh& mesh) {
                               std::vector<std::string> names;
                               for (const auto& o : mesh.objects)
                                 names.push_back(o.name);
                               return names;
                             })
      .def_property_readonly("warnings",
                             [](const SurfaceMesh& m) { return m.load_warnings; })
      .def("areas",
           [](const SurfaceMesh& mesh) {
             Eigen::VectorXd a(mesh.n_triangles());
             for (int t = 0; t < mesh.n_triangles(); ++t)
               a(t) = mesh.triangles[t].area;
             return a;
           })
      .def("centroids",
           [](const SurfaceMesh& mesh) {
             Eigen::MatrixXd c(mesh.n_triangles(), 3);
             for (int t = 0; t < mesh.n_triangles(); ++t)
               c.row(t) = mesh.triangles[t].centroid.transpose();
             return c;
           })
      .def("normals",
           [](const SurfaceMesh& mesh) {
             Eigen::MatrixXd n(mesh.n_triangles(), 3);
             for (int t = 0; t < mesh.n_triangles(); ++t)
               n.row(t) = mesh.triangles[t].unit_normal.transpose();
             return n;
           })
      .def("object_of",
           [](const SurfaceMesh& mesh) {
             std::vector<int> ids(mesh.n_triangles());
             for (int t = 0; t < mesh.n_triangles(); ++t)
               ids[t] = mesh.triangles[t].object_id;
             return ids;
           })
      .def("total_area",
           [](const SurfaceMesh& mesh, const std::string& name) {
             return mesh.objects[object_or_throw(mesh, name)].total_area;
           },
           py::arg("object"))
      .def("volume",
           [](const SurfaceMesh& mesh, const std::string& name) {
             return mesh.object_volume(object_or_throw(mesh, name));
           },
           py::arg("object"))
      .def("set_conductivity",
           [](SurfaceMesh& mesh, const std::string& name, double sigma) {
             if (!(sigma > 0)) throw InputError("conductivity must be positive");
             mesh.objects[object_or_throw(mesh, name)].conductivity = sigma;
           },
           py::arg("object"), py::arg("sigma"));

  py::class_<OperatorSet>(m, "OperatorSet")
      .def_property_readonly("L", [](const OperatorSet& o) { return o.L; })
      .def_property_readonly("Mpv", [](const OperatorSet& o) { return o.Mpv; })
      .def_property_readonly("area", [](const OperatorSet& o) { return o.area; });

  m.def("assemble_operators", &assemble_operators, py::arg("mesh"),
        py::arg("threads") = 1,
        "Dense single-layer / double-layer operator matrices");

  py::class_<CaseResult>(m, "Report")
      .def_property_readonly("phi",
                             [](const CaseResult& r) { return r.report.phi; })
      .def_property_readonly("rho_s",
                             [](const CaseResult& r) { return r.report.rho_s; })
      .def_property_readonly("ndgphi",
                             [](const CaseResult& r) { return r.ndgphi; })
      .def_property_readonly(
          "charge_per_object",
          [](const CaseResult& r) { return r.report.charge_per_object; })
      .def_property_readonly(
          "phi_avg_per_object",
          [](const CaseResult& r) { return r.report.phi_avg_per_object; })
      .def_property_readonly(
          "port_current", [](const CaseResult& r) { return r.report.port_current; })
      .def_property_readonly(
          "port_resistance",
          [](const CaseResult& r) { return r.port_resistance; })
      .def_property_readonly(
          "residual", [](const CaseResult& r) { return r.report.residual_norm; })
      .def_property_readonly("condition",
                             [](const CaseResult& r) { return r.condition; })
      .def("export_vtk",
           [](const CaseResult& r, const std::filesystem::path& path) {
             export_fields(r.report, r.mesh, path, FieldFormat::VtkLegacy);
           },
           py::arg("path"))
      .def("export_csv",
           [](const CaseResult& r, const std::filesystem::path& path) {
             export_fields(r.report, r.mesh, path, FieldFormat::Csv);
           },
           py::arg("path"));

  m.def("solve_case", &solve_case, py::arg("mesh"),
        py::arg("applied_potentials") = std::vector<Applied>{},
        py::arg("charges") = std::vector<Charge>{},
        py::arg("ports") = std::vector<PortTuple>{},
        py::arg("point_charges") = std::vector<PointQ>{}, py::arg("threads") = 1,
        "Assemble and solve one excitation case.\n"
        "applied_potentials: [(object, anchor_xyz, volts)]\n"
        "charges: [([objects...], coulombs)]\n"
        "ports: [(pos_object, pos_anchor, neg_object, neg_anchor, R_ohm, "
        "v_src)]\n"
        "point_charges: [(position_xyz, coulombs)]");

  m.def(
      "capacitance_matrix",
      [](const SurfaceMesh& mesh, const std::vector<std::string>& objects,
         int threads) {
        std::vector<int> ids;
        for (const auto& n : objects) ids.push_back(object_or_throw(mesh, n));
        return capacitance_matrix(mesh, ids, threads);
      },
      py::arg("mesh"), py::arg("objects"), py::arg("threads") = 1,
      "Maxwell capacitance matrix over the named objects");

  auto oracles_mod = m.def_submodule("oracles", "Closed-form reference values");
  oracles_mod.def("sphere_capacitance", &oracles::sphere_capacitance,
                  py::arg("radius"));
  oracles_mod.def("concentric_capacitance", &oracles::concentric_capacitance,
                  py::arg("a"), py::arg("b"));
  oracles_mod.def("pouillet_resistance", &oracles::pouillet_resistance,
                  py::arg("length"), py::arg("sigma"), py::arg("area"));
  oracles_mod.def("parallel_plate_capacitance",
                  &oracles::parallel_plate_capacitance, py::arg("area"),
                  py::arg("spacing"));

  m.attr("eps0") = eps0;
  m.attr("__version__") = "0.1.0";
}
