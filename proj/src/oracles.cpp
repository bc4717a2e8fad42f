#include "spie/oracles.hpp"

#include <cmath>

#include "spie/constants.hpp"
#include "spie/errors.hpp"

namespace spie::oracles {

double sphere_capacitance(double radius) {
  if (!(radius > 0.0)) throw InputError("sphere_capacitance: radius must be positive");
  return 4.0 * M_PI * eps0 * radius;
}

double concentric_capacitance(double a, double b) {
  if (!(a > 0.0) || !(b > a))
    throw InputError("concentric_capacitance: need 0 < a < b");
  return 4.0 * M_PI * eps0 * a * b / (b - a);
}

double pouillet_resistance(double length, double sigma, double area) {
  if (!(length > 0.0) || !(sigma > 0.0) || !(area > 0.0))
    throw InputError("pouillet_resistance: inputs must be positive");
  return length / (sigma * area);
}

double parallel_plate_capacitance(double area, double spacing) {
  if (!(area > 0.0) || !(spacing > 0.0))
    throw InputError("parallel_plate_capacitance: inputs must be positive");
  return eps0 * area / spacing;
}

}  // namespace spie::oracles
