#include "spie/runner.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>
#include <sstream>

#include "spie/oracles.hpp"
#include "spie/postproc.hpp"
#include "spie/solver.hpp"

namespace spie {

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

struct ResolvedCase {
  SurfaceMesh mesh;
  ExcitationSpec spec;
};

int required_object(const SurfaceMesh& mesh, const std::string& name,
                    const std::string& where) {
  const int q = mesh.object_index(name);
  if (q < 0)
    throw InputError(where + ": object '" + name + "' not found in the mesh");
  return q;
}

ResolvedCase resolve_case(const RunConfig& config) {
  ResolvedCase rc;
  rc.mesh = load_mesh(config.mesh.path, config.mesh.format,
                      config.mesh.unit_scale);

  std::vector<bool> configured(rc.mesh.n_objects(), false);
  for (const auto& oc : config.objects) {
    const int q = required_object(rc.mesh, oc.name, "objects");
    rc.mesh.objects[q].conductivity = oc.conductivity;
    rc.mesh.objects[q].permittivity = oc.permittivity;
    configured[q] = true;
  }
  for (int q = 0; q < rc.mesh.n_objects(); ++q)
    if (!configured[q])
      rc.mesh.load_warnings.push_back(
          "object '" + rc.mesh.objects[q].name +
          "' not listed in the config; using default conductivity");

  for (const auto& cc : config.charges) {
    ChargeSpec ch;
    for (const auto& name : cc.objects)
      ch.objects.push_back(required_object(rc.mesh, name, "charges"));
    ch.coulombs = cc.coulombs;
    rc.spec.charges.push_back(ch);
  }
  for (const auto& ac : config.applied_potentials) {
    AppliedPotential ap;
    ap.object = required_object(rc.mesh, ac.object, "applied_potentials");
    ap.anchor = ac.anchor;
    ap.volts = ac.volts;
    rc.spec.applied_potentials.push_back(ap);
  }
  for (const auto& pc : config.ports) {
    const int qp = required_object(rc.mesh, pc.positive.object, "ports");
    const int qn = required_object(rc.mesh, pc.negative.object, "ports");
    Port port;
    port.positive_terminal =
        tag_terminal(rc.mesh, qp, pc.positive.anchor, +1).id;
    port.negative_terminal =
        tag_terminal(rc.mesh, qn, pc.negative.anchor, -1).id;
    port.resistance = pc.resistance;
    port.v_src = pc.v_src;
    rc.spec.ports.push_back(port);
  }
  for (const auto& pc : config.point_charges)
    rc.spec.point_charges.push_back({pc.position, pc.coulombs});
  return rc;
}

void write_header(std::ostream& out, const RunConfig& config,
                  const ResolvedCase& rc, const RunOptions& options,
                  const char* command) {
  out << "# spie summary\n";
  if (!options.no_timestamp) {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buf[64];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
    out << "# generated " << buf << '\n';
  }
  out << "command = " << command << '\n';
  out << "mesh.path = " << config.mesh.path.string() << '\n';
  out << "mesh.triangles = " << rc.mesh.n_triangles() << '\n';
  out << "mesh.objects = " << rc.mesh.n_objects() << '\n';
  for (const auto& w : rc.mesh.load_warnings) out << "# warning: " << w << '\n';
}

void write_solution_block(std::ostream& out, const std::string& prefix,
                          const ResolvedCase& rc, const FieldReport& report,
                          const std::vector<double>& resistances,
                          double condition, const std::string& warning) {
  for (const auto& obj : rc.mesh.objects) {
    out << prefix << "object." << obj.name
        << ".charge_C = " << fmt(report.charge_per_object[obj.id]) << '\n';
    out << prefix << "object." << obj.name
        << ".phi_avg_V = " << fmt(report.phi_avg_per_object[obj.id]) << '\n';
  }
  for (size_t p = 0; p < report.port_current.size(); ++p) {
    out << prefix << "port." << p
        << ".current_A = " << fmt(report.port_current[p]) << '\n';
    if (!resistances.empty())
      out << prefix << "port." << p
          << ".resistance_ohm = " << fmt(resistances[p]) << '\n';
  }
  out << prefix << "solve.residual = " << fmt(report.residual_norm) << '\n';
  out << prefix << "solve.condition_estimate = " << fmt(condition) << '\n';
  if (!warning.empty()) out << "# warning: " << warning << '\n';
}

void run_solve_like(const RunConfig& config, const RunOptions& options,
                    ResolvedCase& rc, std::ostream& out) {
  const OperatorSet ops = assemble_operators(rc.mesh, options.threads);
  const ReducedBasis basis = build_reduced_basis(rc.mesh);

  if (config.command == Command::Solve) {
    const AssembledSystem sys = assemble_system(rc.mesh, ops, basis, rc.spec);
    if (options.dump_matrix) dump_matrix(sys.matrix, *options.dump_matrix);
    const Solution sol = solve(sys);
    const double condition = condition_estimate(sys);
    const FieldReport report = reconstruct_fields(sol, rc.mesh, basis, rc.spec);
    std::vector<double> resistances;
    if (!rc.spec.ports.empty())
      resistances = resistance_from_ports(report, rc.mesh, rc.spec);

    write_header(out, config, rc, options, "solve");
    write_solution_block(out, "", rc, report, resistances, condition,
                         sol.warning);
    if (config.outputs.vtk)
      export_fields(report, rc.mesh, *config.outputs.vtk,
                    FieldFormat::VtkLegacy);
    if (config.outputs.csv)
      export_fields(report, rc.mesh, *config.outputs.csv, FieldFormat::Csv);
    return;
  }

  // Sweep: conductivity enters only through the terminal incidence scaling,
  // so the operators and basis are reused across values.
  const int swept = required_object(rc.mesh, config.sweep.object, "sweep");
  write_header(out, config, rc, options, "sweep");
  out << "sweep.object = " << config.sweep.object << '\n';
  out << "sweep.parameter = conductivity\n";
  for (size_t i = 0; i < config.sweep.values.size(); ++i) {
    rc.mesh.objects[swept].conductivity = config.sweep.values[i];
    const AssembledSystem sys = assemble_system(rc.mesh, ops, basis, rc.spec);
    const Solution sol = solve(sys);
    const double condition = condition_estimate(sys);
    const FieldReport report = reconstruct_fields(sol, rc.mesh, basis, rc.spec);
    std::vector<double> resistances;
    if (!rc.spec.ports.empty())
      resistances = resistance_from_ports(report, rc.mesh, rc.spec);
    const std::string prefix = "sweep." + std::to_string(i) + ".";
    out << prefix << "conductivity_S_per_m = " << fmt(config.sweep.values[i])
        << '\n';
    write_solution_block(out, prefix, rc, report, resistances, condition,
                         sol.warning);
  }
}

void run_capmatrix(const RunConfig& config, const RunOptions& options,
                   ResolvedCase& rc, std::ostream& out) {
  std::vector<int> objects;
  if (config.capmatrix_objects.empty()) {
    for (int q = 0; q < rc.mesh.n_objects(); ++q) objects.push_back(q);
  } else {
    for (const auto& name : config.capmatrix_objects)
      objects.push_back(required_object(rc.mesh, name, "capmatrix.objects"));
  }

  const OperatorSet ops = assemble_operators(rc.mesh, options.threads);
  const Eigen::MatrixXd cap =
      capacitance_matrix(rc.mesh, objects, options.threads, &ops);

  write_header(out, config, rc, options, "capmatrix");
  out << "# Maxwell capacitance matrix [F]; entry (i, j) is the charge on\n";
  out << "# object i with object j at 1 V and the others grounded\n";
  out << "# (diagonally dominant, off-diagonals <= 0)\n";
  out << "capmatrix.objects =";
  for (int q : objects) out << ' ' << rc.mesh.objects[q].name;
  out << '\n';
  for (int i = 0; i < cap.rows(); ++i)
    for (int j = 0; j < cap.cols(); ++j)
      out << "capmatrix.F." << i << '.' << j << " = " << fmt(cap(i, j)) << '\n';
}

}  // namespace

void run(const RunConfig& config, const RunOptions& options) {
  ResolvedCase rc = resolve_case(config);

  std::ostringstream out;
  if (config.command == Command::CapMatrix)
    run_capmatrix(config, options, rc, out);
  else
    run_solve_like(config, options, rc, out);

  if (config.outputs.summary) {
    std::ofstream f(*config.outputs.summary);
    if (!f)
      throw InputError("cannot write summary to " +
                       config.outputs.summary->string());
    f << out.str();
    if (!f)
      throw InputError("write failed for " + config.outputs.summary->string());
  } else {
    std::cout << out.str();
  }
}

int run_cli(const std::filesystem::path& config_path, const RunOptions& options,
            std::ostream& err) {
  try {
    run(parse_config(config_path), options);
    return 0;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return 2;
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace spie
