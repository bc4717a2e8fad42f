#include "reference_integrals.hpp"

#include <cmath>
#include <functional>

#include "spie/quadrature.hpp"

namespace spie::testing {

namespace {

double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double fa, double fm, double fb, double whole,
                        double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  if (depth <= 0 || std::abs(left + right - whole) < 15.0 * tol)
    return left + right + (left + right - whole) / 15.0;
  return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

double integrate(const std::function<double(double)>& f, double a, double b,
                 double tol) {
  const double fa = f(a);
  const double fb = f(b);
  const double fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return adaptive_simpson(f, a, b, fa, fm, fb, whole, tol, 48);
}

}  // namespace

double oracle_single_layer(const Vec3& obs, const Vec3& v0, const Vec3& v1,
                           const Vec3& v2, double rel_tol) {
  const Vec3 nvec = (v1 - v0).cross(v2 - v0);
  const Vec3 n = nvec.normalized();
  const double h = n.dot(obs - v0);
  const Vec3 rho = obs - h * n;
  const double abs_h = std::abs(h);
  const double scale =
      std::sqrt(std::max({(v1 - v0).squaredNorm(), (v2 - v1).squaredNorm(),
                          (v0 - v2).squaredNorm()}));

  // Signed fan over each edge: point p(t) = a + t (b - a) traces the edge,
  // and the fan (rho, a, b) integrates 1/R with the exact radial result.
  const Vec3* verts[4] = {&v0, &v1, &v2, &v0};
  double total = 0.0;
  for (int e = 0; e < 3; ++e) {
    const Vec3 a = *verts[e];
    const Vec3 b = *verts[e + 1];
    const double c_signed = ((a - rho).cross(b - a)).dot(n);
    if (std::abs(c_signed) < 1e-14 * scale * scale) continue;  // rho on edge line
    auto integrand = [&](double t) {
      const Vec3 p = a + t * (b - a);
      const double l2 = (p - rho).squaredNorm();
      return (std::sqrt(l2 + h * h) - abs_h) / l2;
    };
    const double tol = rel_tol * std::abs(c_signed) / scale;
    total += c_signed * integrate(integrand, 0.0, 1.0, tol);
  }
  return total / (4.0 * M_PI);
}

double oracle_double_layer(const Vec3& obs, const Vec3& v0, const Vec3& v1,
                           const Vec3& v2, int levels) {
  struct Tri {
    Vec3 a, b, c;
  };
  std::vector<Tri> tris{{v0, v1, v2}};
  for (int l = 0; l < levels; ++l) {
    std::vector<Tri> next;
    next.reserve(4 * tris.size());
    for (const auto& t : tris) {
      const Vec3 mab = 0.5 * (t.a + t.b);
      const Vec3 mbc = 0.5 * (t.b + t.c);
      const Vec3 mca = 0.5 * (t.c + t.a);
      next.push_back({t.a, mab, mca});
      next.push_back({t.b, mbc, mab});
      next.push_back({t.c, mca, mbc});
      next.push_back({mab, mbc, mca});
    }
    tris = std::move(next);
  }

  const Vec3 n = ((v1 - v0).cross(v2 - v0)).normalized();
  const auto& rule = QuadratureRule::gauss12();
  double sum = 0.0;
  for (const auto& t : tris) {
    const double area = 0.5 * ((t.b - t.a).cross(t.c - t.a)).norm();
    for (const auto& node : rule.nodes) {
      const Vec3 p = node.b0 * t.a + node.b1 * t.b + node.b2 * t.c;
      const Vec3 d = p - obs;
      sum += area * node.w * n.dot(d) / std::pow(d.norm(), 3);
    }
  }
  return sum / (4.0 * M_PI);
}

}  // namespace spie::testing
