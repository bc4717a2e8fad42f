#pragma once

#include "spie/mesh.hpp"

namespace spie {

/// Static Green's function 1/(4*pi*|r - rp|) [1/m]. Throws InputError on
/// coincident points; singular self terms go through the analytic integrals.
double greens_function(const Vec3& r, const Vec3& rp);

/// Per-panel geometry cached once per assembly.
struct Panel {
  Vec3 v0, v1, v2;
  Vec3 centroid;
  Vec3 unit_normal;
  double area = 0.0;
  double max_edge = 0.0;

  static Panel from_vertices(const Vec3& a, const Vec3& b, const Vec3& c);
  static Panel from_triangle(const SurfaceMesh& mesh, int tri);
};

/// Integral of G(obs, r') over the panel [m]. Uses the closed-form flat-
/// polygon result when dist(obs, centroid)/max_edge < 2 (exact on and near
/// the panel, including obs at a vertex), Gauss quadrature otherwise.
double single_layer_integral(const Vec3& obs, const Panel& tri);

/// The two branches of single_layer_integral, exposed for continuity checks.
double single_layer_analytic(const Vec3& obs, const Panel& tri);
double single_layer_gauss(const Vec3& obs, const Panel& tri);

/// Principal-value integral of the double-layer kernel n̂'·∇_r G(obs, r')
/// over the panel: the signed solid angle subtended at obs divided by 4*pi.
/// Exactly 0 when obs lies in the panel's plane (flat-triangle PV, which
/// covers the self term).
double double_layer_integral(const Vec3& obs, const Panel& tri);

/// Signed solid angle of triangle (v0, v1, v2) at obs (van Oosterom and
/// Strackee); positive when the winding normal faces away from obs.
double solid_angle(const Vec3& obs, const Vec3& v0, const Vec3& v1,
                   const Vec3& v2);

}  // namespace spie
