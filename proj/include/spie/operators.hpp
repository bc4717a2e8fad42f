#pragma once

#include <Eigen/Dense>

#include <filesystem>
#include <utility>
#include <vector>

#include "spie/mesh.hpp"

namespace spie {

/// Dense discretized single-layer (L) and principal-value double-layer (Mpv)
/// operators. Testing is centroid collocation scaled by the observation
/// triangle area, so row m carries a factor A_m and the area-scaled identity
/// is diag(area).
struct OperatorSet {
  Eigen::MatrixXd L;
  Eigen::MatrixXd Mpv;
  Eigen::VectorXd area;
  std::vector<std::pair<int, int>> object_ranges;  // [begin, end) per object

  /// Principal submatrix of L for one object (the internal-region block;
  /// identical kernel, restricted index set).
  Eigen::MatrixXd internal_L(int object) const;
  Eigen::MatrixXd internal_Mpv(int object) const;
};

/// Assembles L and Mpv for the mesh. Rows are independent; `threads` > 1
/// splits them over workers with bit-identical results.
OperatorSet assemble_operators(const SurfaceMesh& mesh, int threads = 1);

/// Raw dump: two little-endian int32 (rows, cols), then row-major float64.
void dump_matrix(const Eigen::Ref<const Eigen::MatrixXd>& m,
                 const std::filesystem::path& path);
Eigen::MatrixXd read_matrix_dump(const std::filesystem::path& path);

}  // namespace spie
