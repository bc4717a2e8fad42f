#pragma once

#include <Eigen/Dense>

#include <vector>

#include "spie/mesh.hpp"

namespace spie {

/// Known total charge on a set of objects. For port-connected objects the set
/// must cover exactly one connected set; otherwise a single isolated object.
struct ChargeSpec {
  std::vector<int> objects;
  double coulombs = 0.0;
};

/// Fixed potential with respect to infinity, pinned at the triangle nearest
/// to `anchor`.
struct AppliedPotential {
  int object = -1;
  Vec3 anchor = Vec3::Zero();
  double volts = 0.0;
};

/// Thevenin equivalent circuit between two tagged terminals. Positive port
/// current enters the positive terminal's object.
struct Port {
  int positive_terminal = -1;
  int negative_terminal = -1;
  double resistance = 0.0;  // [ohm], must be > 0
  double v_src = 0.0;       // [V]
};

struct PointCharge {
  Vec3 position = Vec3::Zero();
  double coulombs = 0.0;
};

struct ExcitationSpec {
  std::vector<ChargeSpec> charges;
  std::vector<AppliedPotential> applied_potentials;
  std::vector<Port> ports;
  std::vector<PointCharge> point_charges;
};

/// Objects connected to each other through ports (union-find closure), plus
/// singletons for portless objects. Sets are ordered by smallest member,
/// members ascending.
std::vector<std::vector<int>> connected_sets(const SurfaceMesh& mesh,
                                             const ExcitationSpec& spec);

/// Enforces the one-governance rule: every object is excited by exactly one
/// of {charge spec, applied potential, membership of a port-connected set
/// carrying one charge spec}, ports reference valid distinct terminals, and
/// every tagged terminal is used by exactly one port.
void validate_excitations(const SurfaceMesh& mesh, const ExcitationSpec& spec);

/// Impressed potential phi_im at each point [V]. Throws InputError when a
/// point coincides with a charge location.
Eigen::VectorXd impressed_potential(const std::vector<Vec3>& points,
                                    const std::vector<PointCharge>& charges);

}  // namespace spie
