#pragma once

#include <vector>

namespace spie {

/// Symmetric quadrature rule on the reference triangle, in barycentric
/// coordinates. Weights are area-normalized (they sum to 1).
struct QuadratureRule {
  struct Node {
    double b0, b1, b2;
    double w;
  };
  std::vector<Node> nodes;

  /// 7-point rule, degree 5 (Strang-Fix / Stroud T2:5-1).
  static const QuadratureRule& gauss7();
  /// 12-point rule, degree 6, used by test oracles.
  static const QuadratureRule& gauss12();
};

}  // namespace spie
