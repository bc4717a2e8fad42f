#include "spie/basis.hpp"

#include <algorithm>

namespace spie {

ReducedBasis build_reduced_basis(const SurfaceMesh& mesh) {
  if (mesh.n_objects() == 0) throw InputError("mesh has no objects");
  ReducedBasis basis;
  basis.n_tri = mesh.n_triangles();
  int vr = 0;
  for (const auto& obj : mesh.objects) {
    if (obj.n_triangles() < 2)
      throw InputError("object '" + obj.name +
                       "' has fewer than two triangles; its reduced-potential "
                       "block would be empty");
    ReducedBasis::ObjectBlock b;
    b.tri_begin = obj.tri_begin;
    b.tri_end = obj.tri_end;
    b.vr_begin = vr;
    vr += obj.n_triangles() - 1;
    b.vr_end = vr;
    basis.blocks.push_back(b);
  }
  basis.n_vr = vr;
  return basis;
}

Eigen::MatrixXd ReducedBasis::dr_matrix(int object) const {
  const auto& b = blocks.at(object);
  const int n = b.tri_end - b.tri_begin;
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n - 1);
  d.topRows(n - 1).setIdentity();
  d.row(n - 1).setConstant(-1.0);
  return d;
}

Eigen::MatrixXd ReducedBasis::global_dr() const {
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n_tri, n_vr);
  for (size_t q = 0; q < blocks.size(); ++q) {
    const auto& b = blocks[q];
    d.block(b.tri_begin, b.vr_begin, b.tri_end - b.tri_begin,
            b.vr_end - b.vr_begin) = dr_matrix(static_cast<int>(q));
  }
  return d;
}

Eigen::VectorXd ReducedBasis::expand(const Eigen::VectorXd& v_r,
                                     const Eigen::VectorXd& phi_a) const {
  Eigen::VectorXd phi(n_tri);
  for (size_t q = 0; q < blocks.size(); ++q) {
    const auto& b = blocks[q];
    const int k = b.vr_end - b.vr_begin;
    const auto vq = v_r.segment(b.vr_begin, k);
    phi.segment(b.tri_begin, k) = vq.array() + phi_a(q);
    phi(b.tri_end - 1) = -vq.sum() + phi_a(q);
  }
  return phi;
}

Eigen::MatrixXd ReducedBasis::apply_dr_right(
    const Eigen::Ref<const Eigen::MatrixXd>& m) const {
  Eigen::MatrixXd out(m.rows(), n_vr);
  for (const auto& b : blocks) {
    const int k = b.vr_end - b.vr_begin;
    out.middleCols(b.vr_begin, k) =
        m.middleCols(b.tri_begin, k).colwise() - m.col(b.tri_end - 1);
  }
  return out;
}

Eigen::MatrixXd ReducedBasis::apply_drT_left(
    const Eigen::Ref<const Eigen::MatrixXd>& m) const {
  Eigen::MatrixXd out(n_vr, m.cols());
  for (const auto& b : blocks) {
    const int k = b.vr_end - b.vr_begin;
    out.middleRows(b.vr_begin, k) =
        m.middleRows(b.tri_begin, k).rowwise() - m.row(b.tri_end - 1);
  }
  return out;
}

void ReducedBasis::accumulate_phi_row(RowRef vr_row, int triangle,
                                      double coeff) const {
  const int q = object_of(triangle);
  const auto& b = blocks[q];
  const int local = triangle - b.tri_begin;
  const int k = b.vr_end - b.vr_begin;
  if (local < k)
    vr_row(b.vr_begin + local) += coeff;
  else  // last triangle of the object: D_r row is all -1
    vr_row.segment(b.vr_begin, k).array() -= coeff;
}

int ReducedBasis::object_of(int triangle) const {
  auto it = std::upper_bound(
      blocks.begin(), blocks.end(), triangle,
      [](int t, const ObjectBlock& b) { return t < b.tri_end; });
  const int q = static_cast<int>(it - blocks.begin());
  if (it == blocks.end() || triangle < it->tri_begin)
    throw Error("triangle index out of range");
  return q;
}

}  // namespace spie
