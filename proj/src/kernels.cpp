#include "spie/kernels.hpp"

#include <cmath>

#include "spie/quadrature.hpp"

namespace spie {

namespace {
constexpr double four_pi = 4.0 * M_PI;
constexpr double near_switch = 2.0;  // dist/max_edge below this -> analytic
}  // namespace

double greens_function(const Vec3& r, const Vec3& rp) {
  const double d = (r - rp).norm();
  if (d == 0.0)
    throw InputError("greens_function: coincident points (singular)");
  return 1.0 / (four_pi * d);
}

Panel Panel::from_vertices(const Vec3& a, const Vec3& b, const Vec3& c) {
  Panel p;
  p.v0 = a;
  p.v1 = b;
  p.v2 = c;
  const auto g = triangle_geometry(a, b, c);
  p.centroid = g.centroid;
  p.unit_normal = g.unit_normal;
  p.area = g.area;
  p.max_edge = std::sqrt(std::max(
      {(b - a).squaredNorm(), (c - b).squaredNorm(), (a - c).squaredNorm()}));
  return p;
}

Panel Panel::from_triangle(const SurfaceMesh& mesh, int tri) {
  const Triangle& t = mesh.triangles[tri];
  Panel p;
  p.v0 = mesh.vertices[t.vertex_ids[0]];
  p.v1 = mesh.vertices[t.vertex_ids[1]];
  p.v2 = mesh.vertices[t.vertex_ids[2]];
  p.centroid = t.centroid;
  p.unit_normal = t.unit_normal;
  p.area = t.area;
  p.max_edge = std::sqrt(std::max({(p.v1 - p.v0).squaredNorm(),
                                   (p.v2 - p.v1).squaredNorm(),
                                   (p.v0 - p.v2).squaredNorm()}));
  return p;
}

// Closed-form edge-contribution formula for the 1/R potential of a flat
// polygon (Wilton et al. style). Finite for any observation point, including
// points on the panel and at its vertices.
double single_layer_analytic(const Vec3& obs, const Panel& tri) {
  const Vec3& n = tri.unit_normal;
  const double h = n.dot(obs - tri.v0);  // signed height above the plane
  const Vec3 rho = obs - h * n;          // in-plane projection
  const double abs_h = std::abs(h);
  const double tiny = 1e-14 * tri.max_edge;

  const Vec3* verts[4] = {&tri.v0, &tri.v1, &tri.v2, &tri.v0};
  double sum = 0.0;
  for (int e = 0; e < 3; ++e) {
    const Vec3& a = *verts[e];
    const Vec3& b = *verts[e + 1];
    const Vec3 tdir = (b - a).normalized();
    const Vec3 u = tdir.cross(n);  // in-plane outward edge normal
    const double p0 = u.dot(a - rho);  // signed distance to the edge line
    const double lm = tdir.dot(a - rho);
    const double lp = tdir.dot(b - rho);
    const double r0sq = p0 * p0 + h * h;
    if (r0sq < tiny * tiny) continue;  // obs on the edge line: zero fan
    const double rm = std::sqrt(lm * lm + r0sq);
    const double rp = std::sqrt(lp * lp + r0sq);

    double log_term;
    if (lm >= 0.0)
      log_term = std::log((rp + lp) / (rm + lm));
    else if (lp <= 0.0)
      log_term = std::log((rm - lm) / (rp - lp));
    else
      log_term = std::log((rp + lp) * (rm - lm) / r0sq);
    sum += p0 * log_term;

    if (abs_h > 0.0) {
      const double at_p = std::atan(p0 * lp / (r0sq + abs_h * rp));
      const double at_m = std::atan(p0 * lm / (r0sq + abs_h * rm));
      sum -= abs_h * (at_p - at_m);
    }
  }
  return sum / four_pi;
}

double single_layer_gauss(const Vec3& obs, const Panel& tri) {
  // Degree 6 keeps the two branches within 1e-6 of each other at the switch
  // distance; the 7-point degree-5 rule misses that by a factor ~1.5.
  const auto& rule = QuadratureRule::gauss12();
  double sum = 0.0;
  for (const auto& node : rule.nodes) {
    const Vec3 p = node.b0 * tri.v0 + node.b1 * tri.v1 + node.b2 * tri.v2;
    sum += node.w / (obs - p).norm();
  }
  return tri.area * sum / four_pi;
}

double single_layer_integral(const Vec3& obs, const Panel& tri) {
  const double dist = (obs - tri.centroid).norm();
  if (dist < near_switch * tri.max_edge) return single_layer_analytic(obs, tri);
  return single_layer_gauss(obs, tri);
}

double solid_angle(const Vec3& obs, const Vec3& v0, const Vec3& v1,
                   const Vec3& v2) {
  const Vec3 r1 = v0 - obs;
  const Vec3 r2 = v1 - obs;
  const Vec3 r3 = v2 - obs;
  const double n1 = r1.norm();
  const double n2 = r2.norm();
  const double n3 = r3.norm();
  const double num = r1.dot(r2.cross(r3));
  const double den = n1 * n2 * n3 + r1.dot(r2) * n3 + r1.dot(r3) * n2 +
                     r2.dot(r3) * n1;
  return 2.0 * std::atan2(num, den);
}

double double_layer_integral(const Vec3& obs, const Panel& tri) {
  // The kernel is parallel to the panel plane for in-plane observation, so
  // the flat-panel PV (self term included) is exactly zero.
  const double h = tri.unit_normal.dot(obs - tri.v0);
  if (std::abs(h) < 1e-12 * tri.max_edge) return 0.0;
  return solid_angle(obs, tri.v0, tri.v1, tri.v2) / four_pi;
}

}  // namespace spie
