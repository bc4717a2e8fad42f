#include "spie/basis.hpp"

#include <random>

#include "doctest.h"
#include "meshgen.hpp"

using namespace spie;
using doctest::Approx;

namespace {

// small mesh with object sizes (4, 4): two tetrahedra
SurfaceMesh two_tets() {
  testing::TriSoup t1, t2;
  t1.vertices = {{1, 1, 1}, {1, -1, -1}, {-1, 1, -1}, {-1, -1, 1}};
  t1.faces = {{0, 1, 2}, {0, 3, 1}, {0, 2, 3}, {1, 3, 2}};
  t2 = t1;
  for (auto& v : t2.vertices) v += Vec3(10, 0, 0);
  return testing::merge_to_mesh({t1, t2}, {"a", "b"});
}

}  // namespace

TEST_CASE("per-object D_r blocks match Eq.-(42) shape") {
  const SurfaceMesh mesh = two_tets();
  const ReducedBasis basis = build_reduced_basis(mesh);
  REQUIRE(basis.n_tri == 8);
  REQUIRE(basis.n_vr == 6);

  const Eigen::MatrixXd d = basis.dr_matrix(0);
  REQUIRE(d.rows() == 4);
  REQUIRE(d.cols() == 3);
  Eigen::MatrixXd expected(4, 3);
  expected << 1, 0, 0, 0, 1, 0, 0, 0, 1, -1, -1, -1;
  CHECK(d == expected);

  // columns sum to zero exactly
  for (int c = 0; c < d.cols(); ++c) CHECK(d.col(c).sum() == 0.0);
}

TEST_CASE("three- and two-triangle blocks by inspection") {
  // no valid closed mesh has 3 triangles; exercise the block shape directly
  ReducedBasis basis;
  basis.blocks = {{0, 3, 0, 2}, {3, 5, 2, 3}};
  basis.n_tri = 5;
  basis.n_vr = 3;

  Eigen::MatrixXd d0 = basis.dr_matrix(0);
  Eigen::MatrixXd want0(3, 2);
  want0 << 1, 0, 0, 1, -1, -1;
  CHECK(d0 == want0);

  Eigen::MatrixXd d1 = basis.dr_matrix(1);
  Eigen::MatrixXd want1(2, 1);
  want1 << 1, -1;
  CHECK(d1 == want1);

  // v = (1, 2) expands to (1, 2, -3) on the first object
  Eigen::VectorXd v(3);
  v << 1, 2, 0.5;
  Eigen::VectorXd phi_a(2);
  phi_a << 0, 0;
  const Eigen::VectorXd phi = basis.expand(v, phi_a);
  CHECK(phi(0) == 1.0);
  CHECK(phi(1) == 2.0);
  CHECK(phi(2) == -3.0);
  CHECK(phi(3) == 0.5);
  CHECK(phi(4) == -0.5);

  // global block-diagonal structure: 5x3
  const Eigen::MatrixXd g = basis.global_dr();
  REQUIRE(g.rows() == 5);
  REQUIRE(g.cols() == 3);
  CHECK(g.block(0, 0, 3, 2) == want0);
  CHECK(g.block(3, 2, 2, 1) == want1);
  CHECK(g.block(0, 2, 3, 1).isZero(0.0));
  CHECK(g.block(3, 0, 2, 2).isZero(0.0));
}

TEST_CASE("zero-mean reproduction is exact for any v_r") {
  const SurfaceMesh mesh = two_tets();
  const ReducedBasis basis = build_reduced_basis(mesh);
  std::mt19937 rng(99);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  for (int trial = 0; trial < 50; ++trial) {
    Eigen::VectorXd v(basis.n_vr);
    for (int i = 0; i < v.size(); ++i) v(i) = u(rng);
    const Eigen::VectorXd phi =
        basis.expand(v, Eigen::VectorXd::Zero(mesh.n_objects()));
    for (const auto& blk : basis.blocks) {
      double sum = 0.0;
      for (int t = blk.tri_begin; t < blk.tri_end; ++t) sum += phi(t);
      CHECK(std::abs(sum) <= 1e-12 * phi.cwiseAbs().maxCoeff());
    }
  }
}

TEST_CASE("expand matches explicit D_r multiplication") {
  const SurfaceMesh mesh = two_tets();
  const ReducedBasis basis = build_reduced_basis(mesh);
  Eigen::VectorXd v = Eigen::VectorXd::LinSpaced(basis.n_vr, -1.0, 2.0);
  Eigen::VectorXd phi_a(2);
  phi_a << 3.0, -7.0;
  Eigen::VectorXd ones_phi = Eigen::VectorXd::Zero(basis.n_tri);
  for (const auto& blk : basis.blocks)
    for (int t = blk.tri_begin; t < blk.tri_end; ++t)
      ones_phi(t) = phi_a(basis.object_of(t));
  const Eigen::VectorXd direct = basis.global_dr() * v + ones_phi;
  CHECK((basis.expand(v, phi_a) - direct).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("apply_dr_right / apply_drT_left agree with explicit products") {
  const SurfaceMesh mesh = two_tets();
  const ReducedBasis basis = build_reduced_basis(mesh);
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Eigen::MatrixXd m(basis.n_tri, basis.n_tri);
  for (int i = 0; i < m.size(); ++i) m(i) = u(rng);
  const Eigen::MatrixXd d = basis.global_dr();
  CHECK(((basis.apply_dr_right(m) - m * d).cwiseAbs().maxCoeff()) < 1e-13);
  CHECK(((basis.apply_drT_left(m) - d.transpose() * m).cwiseAbs().maxCoeff()) <
        1e-13);
}

TEST_CASE("accumulate_phi_row spells out D_r rows") {
  const SurfaceMesh mesh = two_tets();
  const ReducedBasis basis = build_reduced_basis(mesh);
  // triangle 2 (not last of object 0): coefficient lands at its v_r slot
  Eigen::RowVectorXd row = Eigen::RowVectorXd::Zero(basis.n_vr);
  basis.accumulate_phi_row(row, 2, 2.5);
  CHECK(row(2) == 2.5);
  CHECK(row.cwiseAbs().sum() == 2.5);
  // last triangle of object 0: -coeff over the whole block
  row.setZero();
  basis.accumulate_phi_row(row, 3, 1.0);
  CHECK(row.head(3) == Eigen::RowVector3d(-1, -1, -1));
  CHECK(row.tail(3).isZero(0.0));
}

TEST_CASE("single-triangle objects are rejected") {
  // fabricate a mesh with a 1-triangle object record
  SurfaceMesh mesh = two_tets();
  mesh.objects[1].tri_begin = 7;  // pretend object b has one triangle
  CHECK_THROWS_AS(build_reduced_basis(mesh), InputError);
}
