#include "spie/quadrature.hpp"

namespace spie {

const QuadratureRule& QuadratureRule::gauss7() {
  // Degree-5 symmetric rule (Strang-Fix #7 / Stroud T2:5-1).
  static const QuadratureRule rule = [] {
    QuadratureRule r;
    const double a1 = 0.0597158717897698;
    const double b1 = 0.4701420641051151;
    const double w1 = 0.1323941527885062;
    const double a2 = 0.7974269853530873;
    const double b2 = 0.1012865073234563;
    const double w2 = 0.1259391805448271;
    r.nodes = {
        {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0, 0.225},
        {a1, b1, b1, w1},
        {b1, a1, b1, w1},
        {b1, b1, a1, w1},
        {a2, b2, b2, w2},
        {b2, a2, b2, w2},
        {b2, b2, a2, w2},
    };
    return r;
  }();
  return rule;
}

const QuadratureRule& QuadratureRule::gauss12() {
  // Degree-6 symmetric rule (Strang-Fix #9).
  static const QuadratureRule rule = [] {
    QuadratureRule r;
    const double a1 = 0.873821971016996;
    const double b1 = 0.063089014491502;
    const double w1 = 0.050844906370207;
    const double a2 = 0.501426509658179;
    const double b2 = 0.249286745170910;
    const double w2 = 0.116786275726379;
    const double a3 = 0.636502499121399;
    const double b3 = 0.310352451033785;
    const double c3 = 0.053145049844816;
    const double w3 = 0.082851075618374;
    r.nodes = {
        {a1, b1, b1, w1}, {b1, a1, b1, w1}, {b1, b1, a1, w1},
        {a2, b2, b2, w2}, {b2, a2, b2, w2}, {b2, b2, a2, w2},
        {a3, b3, c3, w3}, {a3, c3, b3, w3}, {b3, a3, c3, w3},
        {b3, c3, a3, w3}, {c3, a3, b3, w3}, {c3, b3, a3, w3},
    };
    return r;
  }();
  return rule;
}

}  // namespace spie
