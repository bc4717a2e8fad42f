#pragma once

#include <filesystem>
#include <vector>

#include "spie/solver.hpp"

namespace spie {

struct FieldReport {
  Eigen::VectorXd phi;    // [V] per triangle
  Eigen::VectorXd rho_s;  // [C/m^2] = -eps0 * n·∇φ
  std::vector<double> charge_per_object;   // [C]
  std::vector<double> phi_avg_per_object;  // [V] (the solved Phi_a)
  // Port current [A]; positive when it enters the positive terminal's object.
  std::vector<double> port_current;
  double residual_norm = 0.0;
};

FieldReport reconstruct_fields(const Solution& sol, const SurfaceMesh& mesh,
                               const ReducedBasis& basis,
                               const ExcitationSpec& spec);

/// (phi_positive - phi_negative)/I per port, from the reconstructed terminal
/// triangle potentials. Throws NumericalError on vanishing current.
std::vector<double> resistance_from_ports(const FieldReport& report,
                                          const SurfaceMesh& mesh,
                                          const ExcitationSpec& spec);

/// Maxwell capacitance matrix over the listed objects: column j solves with
/// object j at 1 V and the others at 0 V; entry (i, j) is the charge on
/// object i. Potentials pin at each object's first triangle. Unlisted mesh
/// objects float with zero total charge. Pass `ops` to reuse an assembled
/// operator set.
Eigen::MatrixXd capacitance_matrix(const SurfaceMesh& mesh,
                                   const std::vector<int>& objects,
                                   int threads = 1,
                                   const OperatorSet* ops = nullptr);

enum class FieldFormat { VtkLegacy, Csv };

/// VTK legacy 3.0 ASCII POLYDATA with CELL_DATA scalars "phi_V" and
/// "rho_s_C_per_m2", or CSV (triangle_id, object_id, cx, cy, cz, area, phi,
/// rho_s) at 12 significant digits.
void export_fields(const FieldReport& report, const SurfaceMesh& mesh,
                   const std::filesystem::path& path, FieldFormat format);

}  // namespace spie
