#include "spie/postproc.hpp"

#include <cmath>
#include <fstream>
#include <string>

#include "spie/constants.hpp"

namespace spie {

FieldReport reconstruct_fields(const Solution& sol, const SurfaceMesh& mesh,
                               const ReducedBasis& basis,
                               const ExcitationSpec& spec) {
  FieldReport report;
  report.phi = basis.expand(sol.v_r, sol.phi_a);
  report.rho_s = -eps0 * sol.ndgphi;
  report.residual_norm = sol.residual_norm;

  for (const auto& obj : mesh.objects) {
    double q = 0.0;
    for (int t = obj.tri_begin; t < obj.tri_end; ++t)
      q += mesh.triangles[t].area * report.rho_s(t);
    report.charge_per_object.push_back(q);
    report.phi_avg_per_object.push_back(sol.phi_a(obj.id));
  }

  for (const auto& port : spec.ports) {
    // I_p = -s_t A_t J_t; the positive terminal carries s = +1.
    const Terminal& tp = mesh.terminals[port.positive_terminal];
    report.port_current.push_back(-tp.orientation_sign *
                                  mesh.triangles[tp.triangle_id].area *
                                  sol.j_t(tp.id));
  }
  return report;
}

std::vector<double> resistance_from_ports(const FieldReport& report,
                                          const SurfaceMesh& mesh,
                                          const ExcitationSpec& spec) {
  std::vector<double> resistance;
  for (size_t p = 0; p < spec.ports.size(); ++p) {
    const auto& port = spec.ports[p];
    const Terminal& tp = mesh.terminals[port.positive_terminal];
    const Terminal& tn = mesh.terminals[port.negative_terminal];
    const double current = report.port_current.at(p);
    if (current == 0.0 || !std::isfinite(current))
      throw NumericalError("port " + std::to_string(p) +
                           ": zero current (open circuit), resistance is "
                           "undefined");
    const double dphi =
        report.phi(tp.triangle_id) - report.phi(tn.triangle_id);
    resistance.push_back(dphi / current);
  }
  return resistance;
}

Eigen::MatrixXd capacitance_matrix(const SurfaceMesh& mesh,
                                   const std::vector<int>& objects,
                                   int threads, const OperatorSet* ops) {
  const int k = static_cast<int>(objects.size());
  if (k < 1)
    throw InputError("capacitance_matrix: need at least one object");
  for (int q : objects)
    if (q < 0 || q >= mesh.n_objects())
      throw InputError("capacitance_matrix: object index out of range");

  OperatorSet local;
  if (!ops) {
    local = assemble_operators(mesh, threads);
    ops = &local;
  }
  const ReducedBasis basis = build_reduced_basis(mesh);

  std::vector<bool> listed(mesh.n_objects(), false);
  for (int q : objects) listed[q] = true;

  Eigen::MatrixXd cap(k, k);
  for (int j = 0; j < k; ++j) {
    ExcitationSpec spec;
    for (int i = 0; i < k; ++i) {
      AppliedPotential ap;
      ap.object = objects[i];
      ap.anchor = mesh.triangles[mesh.objects[objects[i]].tri_begin].centroid;
      ap.volts = (i == j) ? 1.0 : 0.0;
      spec.applied_potentials.push_back(ap);
    }
    for (int q = 0; q < mesh.n_objects(); ++q)
      if (!listed[q]) spec.charges.push_back({{q}, 0.0});  // floating

    const AssembledSystem sys = assemble_system(mesh, *ops, basis, spec);
    const Solution sol = solve(sys);
    const FieldReport report = reconstruct_fields(sol, mesh, basis, spec);
    for (int i = 0; i < k; ++i) cap(i, j) = report.charge_per_object[objects[i]];
  }
  return cap;
}

namespace {

void write_formatted(std::ofstream& out, double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  out << buf;
}

}  // namespace

void export_fields(const FieldReport& report, const SurfaceMesh& mesh,
                   const std::filesystem::path& path, FieldFormat format) {
  if (mesh.n_triangles() == 0 || mesh.objects.empty())
    throw InputError("export_fields: empty mesh");
  if (report.phi.size() != mesh.n_triangles())
    throw InputError("export_fields: report does not match the mesh");

  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path.string());

  if (format == FieldFormat::VtkLegacy) {
    out << "# vtk DataFile Version 3.0\n";
    out << "surface potential and charge density\n";
    out << "ASCII\n";
    out << "DATASET POLYDATA\n";
    out << "POINTS " << mesh.vertices.size() << " double\n";
    for (const auto& v : mesh.vertices) {
      write_formatted(out, v.x());
      out << ' ';
      write_formatted(out, v.y());
      out << ' ';
      write_formatted(out, v.z());
      out << '\n';
    }
    const int n = mesh.n_triangles();
    out << "POLYGONS " << n << ' ' << 4 * n << '\n';
    for (const auto& t : mesh.triangles)
      out << "3 " << t.vertex_ids[0] << ' ' << t.vertex_ids[1] << ' '
          << t.vertex_ids[2] << '\n';
    out << "CELL_DATA " << n << '\n';
    out << "SCALARS phi_V double 1\n";
    out << "LOOKUP_TABLE default\n";
    for (int t = 0; t < n; ++t) {
      write_formatted(out, report.phi(t));
      out << '\n';
    }
    out << "SCALARS rho_s_C_per_m2 double 1\n";
    out << "LOOKUP_TABLE default\n";
    for (int t = 0; t < n; ++t) {
      write_formatted(out, report.rho_s(t));
      out << '\n';
    }
  } else {
    out << "triangle_id,object_id,cx,cy,cz,area,phi,rho_s\n";
    for (int t = 0; t < mesh.n_triangles(); ++t) {
      const auto& tri = mesh.triangles[t];
      out << t << ',' << tri.object_id << ',';
      write_formatted(out, tri.centroid.x());
      out << ',';
      write_formatted(out, tri.centroid.y());
      out << ',';
      write_formatted(out, tri.centroid.z());
      out << ',';
      write_formatted(out, tri.area);
      out << ',';
      write_formatted(out, report.phi(t));
      out << ',';
      write_formatted(out, report.rho_s(t));
      out << '\n';
    }
  }
  if (!out) throw InputError("write failed for " + path.string());
}

}  // namespace spie
