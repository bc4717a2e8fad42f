#pragma once

#include <Eigen/Dense>

#include <vector>

#include "spie/mesh.hpp"

namespace spie {

/// Zero-mean reduced-potential basis. For object q with n_q triangles the
/// block is the n_q x (n_q - 1) matrix [I; -1^T]: column k holds +1 at local
/// triangle k and -1 at the object's last triangle, so every column sums to
/// zero and v_r carries potentials relative to the object average.
struct ReducedBasis {
  struct ObjectBlock {
    int tri_begin = 0;
    int tri_end = 0;
    int vr_begin = 0;
    int vr_end = 0;
  };
  std::vector<ObjectBlock> blocks;
  int n_tri = 0;
  int n_vr = 0;  // n_tri - n_objects

  /// Explicit per-object block, mostly for tests.
  Eigen::MatrixXd dr_matrix(int object) const;
  /// Block-diagonal concatenation, N x (N - N_obj).
  Eigen::MatrixXd global_dr() const;

  /// Phi = D_r v_r + 1 Phi_a, expanded per triangle.
  Eigen::VectorXd expand(const Eigen::VectorXd& v_r,
                         const Eigen::VectorXd& phi_a) const;

  /// M * D_r and D_r^T * M without forming D_r.
  Eigen::MatrixXd apply_dr_right(
      const Eigen::Ref<const Eigen::MatrixXd>& m) const;
  Eigen::MatrixXd apply_drT_left(
      const Eigen::Ref<const Eigen::MatrixXd>& m) const;

  /// Adds coeff * (row of D_r for `triangle`) into the v_r coefficient row;
  /// used to express point values of Phi in the unknowns. The strided Ref
  /// binds rows of column-major matrices directly.
  using RowRef = Eigen::Ref<Eigen::RowVectorXd, 0, Eigen::InnerStride<>>;
  void accumulate_phi_row(RowRef vr_row, int triangle, double coeff) const;

  int object_of(int triangle) const;
};

/// Throws InputError for an object with fewer than two triangles (its v_r
/// block would be empty).
ReducedBasis build_reduced_basis(const SurfaceMesh& mesh);

}  // namespace spie
