#pragma once

namespace spie::oracles {

/// 4*pi*eps0*radius [F].
double sphere_capacitance(double radius);

/// Concentric spheres, inner radius a, outer radius b: 4*pi*eps0*a*b/(b-a).
double concentric_capacitance(double a, double b);

/// Pouillet's law l/(sigma*area) [ohm] for a uniform prism.
double pouillet_resistance(double length, double sigma, double area);

/// Infinite parallel plate eps0*area/spacing [F], fringing neglected.
double parallel_plate_capacitance(double area, double spacing);

}  // namespace spie::oracles
