#include "spie/system.hpp"

#include <algorithm>
#include <string>

#include "spie/constants.hpp"

namespace spie {

ChargeRows build_charge_rows(const SurfaceMesh& mesh,
                             const ExcitationSpec& spec) {
  std::vector<bool> applied(mesh.n_objects(), false);
  for (const auto& ap : spec.applied_potentials) {
    if (ap.object < 0 || ap.object >= mesh.n_objects())
      throw InputError("applied potential references unknown object");
    applied[ap.object] = true;
  }

  ChargeRows rows;
  rows.S = Eigen::MatrixXd::Zero(spec.charges.size(), mesh.n_triangles());
  rows.Q.resize(spec.charges.size());
  for (size_t r = 0; r < spec.charges.size(); ++r) {
    const auto& ch = spec.charges[r];
    for (int q : ch.objects) {
      if (q < 0 || q >= mesh.n_objects())
        throw InputError("charge specification references unknown object");
      if (applied[q])
        throw InputError("object '" + mesh.objects[q].name +
                         "' has both a total charge and an applied potential");
      const auto& obj = mesh.objects[q];
      for (int t = obj.tri_begin; t < obj.tri_end; ++t)
        rows.S(r, t) = -eps0 * mesh.triangles[t].area;
    }
    rows.Q(r) = ch.coulombs;
    rows.sets.push_back(ch.objects);
  }
  return rows;
}

PotentialRows build_potential_rows(const SurfaceMesh& mesh,
                                   const ExcitationSpec& spec,
                                   const ReducedBasis& basis) {
  const int n = static_cast<int>(spec.applied_potentials.size());
  PotentialRows rows;
  rows.vr = Eigen::MatrixXd::Zero(n, basis.n_vr);
  rows.phia = Eigen::MatrixXd::Zero(n, mesh.n_objects());
  rows.rhs.resize(n);
  for (int r = 0; r < n; ++r) {
    const auto& ap = spec.applied_potentials[r];
    const int tri = nearest_triangle(mesh, ap.object, ap.anchor);
    basis.accumulate_phi_row(rows.vr.row(r), tri, 1.0);
    rows.phia(r, ap.object) += 1.0;
    rows.rhs(r) = ap.volts;
    rows.pinned_triangle.push_back(tri);
  }
  return rows;
}

CircuitRows build_circuit_rows(const SurfaceMesh& mesh,
                               const ExcitationSpec& spec,
                               const ReducedBasis& basis) {
  const int n_term = mesh.n_terminals();
  const int n_kvl = 2 * static_cast<int>(spec.ports.size());

  CircuitRows rows;
  rows.kvl_vr = Eigen::MatrixXd::Zero(n_kvl, basis.n_vr);
  rows.kvl_phia = Eigen::MatrixXd::Zero(n_kvl, mesh.n_objects());
  rows.kvl_jt = Eigen::MatrixXd::Zero(n_kvl, n_term);
  rows.v_src.resize(n_kvl);

  for (size_t p = 0; p < spec.ports.size(); ++p) {
    const auto& port = spec.ports[p];
    if (port.positive_terminal < 0 || port.positive_terminal >= n_term ||
        port.negative_terminal < 0 || port.negative_terminal >= n_term)
      throw InputError("port " + std::to_string(p) +
                       " references an untagged terminal");
    const Terminal& tp = mesh.terminals[port.positive_terminal];
    const Terminal& tn = mesh.terminals[port.negative_terminal];
    if (tp.triangle_id == tn.triangle_id)
      throw InputError("port " + std::to_string(p) +
                       ": both terminals on the same triangle (dangling)");

    // One KVL row per terminal current (Eq. 34/35 pattern):
    //   phi_pos - phi_neg - R * s_t * A_t * J_t = V_src,
    // with I_p = -s_t A_t J_t the port current entering the positive side.
    const Terminal* terms[2] = {&tp, &tn};
    for (int k = 0; k < 2; ++k) {
      const int r = 2 * static_cast<int>(p) + k;
      basis.accumulate_phi_row(rows.kvl_vr.row(r), tp.triangle_id, +1.0);
      basis.accumulate_phi_row(rows.kvl_vr.row(r), tn.triangle_id, -1.0);
      rows.kvl_phia(r, tp.object_id) += 1.0;
      rows.kvl_phia(r, tn.object_id) -= 1.0;
      const Terminal& t = *terms[k];
      rows.kvl_jt(r, t.id) =
          -port.resistance * t.orientation_sign * mesh.triangles[t.triangle_id].area;
      rows.v_src(r) = port.v_src;
    }
  }

  // KCL per object node of each multi-object connected set, dropping the last
  // object's row (implied by the KVL pairs). Entries are the terminal areas:
  // the net outward current of a node vanishes.
  const auto sets = connected_sets(mesh, spec);
  int n_kcl = 0;
  for (const auto& s : sets)
    if (s.size() > 1) n_kcl += static_cast<int>(s.size()) - 1;
  rows.kcl_jt = Eigen::MatrixXd::Zero(n_kcl, n_term);
  int r = 0;
  for (const auto& s : sets) {
    if (s.size() < 2) continue;
    for (size_t i = 0; i + 1 < s.size(); ++i, ++r)
      for (const auto& t : mesh.terminals)
        if (t.object_id == s[i])
          rows.kcl_jt(r, t.id) = mesh.triangles[t.triangle_id].area;
  }
  return rows;
}

AssembledSystem assemble_system(const SurfaceMesh& mesh,
                                const OperatorSet& ops,
                                const ReducedBasis& basis,
                                const ExcitationSpec& spec) {
  validate_excitations(mesh, spec);

  const int n = mesh.n_triangles();
  const int n_vr = basis.n_vr;
  const int n_obj = mesh.n_objects();
  const int n_term = mesh.n_terminals();

  const ChargeRows charge = build_charge_rows(mesh, spec);
  const PotentialRows pot = build_potential_rows(mesh, spec, basis);
  const CircuitRows circ = build_circuit_rows(mesh, spec, basis);

  AssembledSystem sys;
  sys.n_tri = n;
  sys.n_vr = n_vr;
  sys.n_obj = n_obj;
  sys.n_term = n_term;
  sys.n_charge_rows = static_cast<int>(charge.S.rows());
  sys.n_potential_rows = static_cast<int>(pot.vr.rows());
  sys.n_kvl_rows = static_cast<int>(circ.kvl_vr.rows());
  sys.n_kcl_rows = static_cast<int>(circ.kcl_jt.rows());

  const int dim = sys.dimension();
  const int row_total = n + n_vr + sys.n_charge_rows + sys.n_potential_rows +
                        sys.n_kvl_rows + sys.n_kcl_rows;
  if (row_total != dim)
    throw Error("assemble_system: row/column mismatch (" +
                std::to_string(row_total) + " rows vs " + std::to_string(dim) +
                " unknowns); excitation validation should have caught this");

  sys.matrix = Eigen::MatrixXd::Zero(dim, dim);
  sys.rhs = Eigen::VectorXd::Zero(dim);

  // External SPIE rows: L ndg + (M' + I_A/2) D_r v_r + 1_A Phi_a = -Phi_im,
  // all scaled by the observation area through the testing convention.
  sys.matrix.block(0, sys.col_ndg(), n, n) = ops.L;
  {
    Eigen::MatrixXd m_ext = ops.Mpv;
    m_ext.diagonal() += 0.5 * ops.area;
    sys.matrix.block(0, sys.col_vr(), n, n_vr) = basis.apply_dr_right(m_ext);
  }
  for (int t = 0; t < n; ++t)
    sys.matrix(t, sys.col_phia() + mesh.triangles[t].object_id) = ops.area(t);
  if (!spec.point_charges.empty()) {
    std::vector<Vec3> centroids(n);
    for (int t = 0; t < n; ++t) centroids[t] = mesh.triangles[t].centroid;
    const Eigen::VectorXd phi_im =
        impressed_potential(centroids, spec.point_charges);
    sys.rhs.head(n) = -(ops.area.array() * phi_im.array());
  }

  // Projected internal SPIE rows per object:
  //   D_r^T (M'_in - I_A/2) D_r v_r - D_r^T L_in D_T J_T / sigma = 0.
  for (int q = 0; q < n_obj; ++q) {
    const auto& blk = basis.blocks[q];
    const int nq = blk.tri_end - blk.tri_begin;
    const int k = nq - 1;

    Eigen::MatrixXd m_in = ops.Mpv.block(blk.tri_begin, blk.tri_begin, nq, nq);
    m_in.diagonal() -= 0.5 * ops.area.segment(blk.tri_begin, nq);
    Eigen::MatrixXd md = (m_in.leftCols(k).colwise() - m_in.col(nq - 1));
    sys.matrix.block(n + blk.vr_begin, sys.col_vr() + blk.vr_begin, k, k) =
        md.topRows(k).rowwise() - md.row(nq - 1);

    const double sigma = mesh.objects[q].conductivity;
    for (const auto& term : mesh.terminals) {
      if (term.object_id != q) continue;
      const Eigen::VectorXd lcol = ops.L.block(
          blk.tri_begin, term.triangle_id, nq, 1);
      sys.matrix.block(n + blk.vr_begin, sys.col_jt() + term.id, k, 1) =
          -(lcol.head(k).array() - lcol(nq - 1)).matrix() / sigma;
    }
  }

  int row = sys.row_charge();
  sys.matrix.block(row, sys.col_ndg(), sys.n_charge_rows, n) = charge.S;
  sys.rhs.segment(row, sys.n_charge_rows) = charge.Q;

  row = sys.row_potential();
  sys.matrix.block(row, sys.col_vr(), sys.n_potential_rows, n_vr) = pot.vr;
  sys.matrix.block(row, sys.col_phia(), sys.n_potential_rows, n_obj) = pot.phia;
  sys.rhs.segment(row, sys.n_potential_rows) = pot.rhs;

  row = sys.row_kvl();
  sys.matrix.block(row, sys.col_vr(), sys.n_kvl_rows, n_vr) = circ.kvl_vr;
  sys.matrix.block(row, sys.col_phia(), sys.n_kvl_rows, n_obj) = circ.kvl_phia;
  sys.matrix.block(row, sys.col_jt(), sys.n_kvl_rows, n_term) = circ.kvl_jt;
  sys.rhs.segment(row, sys.n_kvl_rows) = circ.v_src;

  row = sys.row_kcl();
  sys.matrix.block(row, sys.col_jt(), sys.n_kcl_rows, n_term) = circ.kcl_jt;

  return sys;
}

}  // namespace spie
