#include "spie/excitation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "spie/constants.hpp"

namespace spie {

namespace {

const Terminal& checked_terminal(const SurfaceMesh& mesh, int id,
                                 const char* role) {
  if (id < 0 || id >= mesh.n_terminals())
    throw InputError(std::string("port references unknown ") + role +
                     " terminal " + std::to_string(id));
  return mesh.terminals[id];
}

}  // namespace

std::vector<std::vector<int>> connected_sets(const SurfaceMesh& mesh,
                                             const ExcitationSpec& spec) {
  const int n = mesh.n_objects();
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& port : spec.ports) {
    const auto& tp = checked_terminal(mesh, port.positive_terminal, "positive");
    const auto& tn = checked_terminal(mesh, port.negative_terminal, "negative");
    parent[find(tp.object_id)] = find(tn.object_id);
  }
  std::vector<std::vector<int>> sets;
  std::vector<int> set_of_root(n, -1);
  for (int q = 0; q < n; ++q) {
    const int r = find(q);
    if (set_of_root[r] < 0) {
      set_of_root[r] = static_cast<int>(sets.size());
      sets.emplace_back();
    }
    sets[set_of_root[r]].push_back(q);
  }
  // Objects were scanned in ascending order, so each set is sorted and sets
  // are ordered by smallest member already.
  return sets;
}

void validate_excitations(const SurfaceMesh& mesh, const ExcitationSpec& spec) {
  const int n_obj = mesh.n_objects();

  std::vector<int> port_uses(mesh.n_terminals(), 0);
  for (size_t p = 0; p < spec.ports.size(); ++p) {
    const auto& port = spec.ports[p];
    const auto& tp = checked_terminal(mesh, port.positive_terminal, "positive");
    const auto& tn = checked_terminal(mesh, port.negative_terminal, "negative");
    if (tp.triangle_id == tn.triangle_id)
      throw InputError("port " + std::to_string(p) +
                       ": both terminals resolve to the same triangle "
                       "(dangling port)");
    if (!(port.resistance > 0.0))
      throw InputError("port " + std::to_string(p) +
                       ": Thevenin resistance must be positive");
    ++port_uses[port.positive_terminal];
    ++port_uses[port.negative_terminal];
  }
  for (int t = 0; t < mesh.n_terminals(); ++t)
    if (port_uses[t] != 1)
      throw InputError("terminal " + std::to_string(t) + " is used by " +
                       std::to_string(port_uses[t]) +
                       " ports (each tagged terminal must serve exactly one)");

  std::vector<int> applied_count(n_obj, 0);
  for (const auto& ap : spec.applied_potentials) {
    if (ap.object < 0 || ap.object >= n_obj)
      throw InputError("applied potential references unknown object " +
                       std::to_string(ap.object));
    ++applied_count[ap.object];
  }
  for (int q = 0; q < n_obj; ++q)
    if (applied_count[q] > 1)
      throw InputError("object '" + mesh.objects[q].name +
                       "' has more than one applied potential");

  const auto sets = connected_sets(mesh, spec);
  std::vector<int> set_of_object(n_obj, -1);
  for (size_t s = 0; s < sets.size(); ++s)
    for (int q : sets[s]) set_of_object[q] = static_cast<int>(s);

  std::vector<int> charge_count(sets.size(), 0);
  for (const auto& ch : spec.charges) {
    if (ch.objects.empty())
      throw InputError("charge specification lists no objects");
    for (int q : ch.objects) {
      if (q < 0 || q >= n_obj)
        throw InputError("charge specification references unknown object " +
                         std::to_string(q));
      if (applied_count[q] > 0)
        throw InputError("object '" + mesh.objects[q].name +
                         "' has both a total charge and an applied potential");
    }
    std::vector<int> sorted = ch.objects;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    const int s = set_of_object[sorted.front()];
    if (sorted != sets[s])
      throw InputError(
          "charge specification must cover exactly one port-connected set "
          "(object '" + mesh.objects[sorted.front()].name +
          "' belongs to a different set than listed)");
    ++charge_count[s];
  }

  for (size_t s = 0; s < sets.size(); ++s) {
    const bool single = sets[s].size() == 1;
    const bool applied = single && applied_count[sets[s].front()] > 0;
    if (applied) {
      if (charge_count[s] > 0)
        throw InputError("object '" + mesh.objects[sets[s].front()].name +
                         "' has both a total charge and an applied potential");
      // An applied-potential object may not sit inside a port-connected set;
      // single-object sets with ports still need a charge row instead.
      bool has_port_terminal = false;
      for (const auto& t : mesh.terminals)
        if (t.object_id == sets[s].front()) has_port_terminal = true;
      if (has_port_terminal)
        throw InputError("object '" + mesh.objects[sets[s].front()].name +
                         "' mixes an applied potential with port terminals");
      continue;
    }
    if (charge_count[s] == 0) {
      if (!single)
        throw InputError("port-connected set containing object '" +
                         mesh.objects[sets[s].front()].name +
                         "' has no total-charge specification");
      throw InputError("object '" + mesh.objects[sets[s].front()].name +
                       "' is unconstrained: it needs a total charge or an "
                       "applied potential");
    }
    if (charge_count[s] > 1)
      throw InputError("multiple charge specifications cover the set "
                       "containing object '" +
                       mesh.objects[sets[s].front()].name + "'");
    for (int q : sets[s])
      if (applied_count[q] > 0)
        throw InputError("object '" + mesh.objects[q].name +
                         "' mixes an applied potential with a port-connected "
                         "charge set");
  }

  for (const auto& obj : mesh.objects)
    if (!(obj.conductivity > 0.0))
      throw InputError("object '" + obj.name +
                       "' has non-positive conductivity");
}

Eigen::VectorXd impressed_potential(const std::vector<Vec3>& points,
                                    const std::vector<PointCharge>& charges) {
  Eigen::VectorXd phi = Eigen::VectorXd::Zero(points.size());
  for (size_t i = 0; i < points.size(); ++i) {
    for (const auto& pc : charges) {
      const double d = (points[i] - pc.position).norm();
      if (d == 0.0)
        throw InputError(
            "impressed potential evaluated at a point-charge location");
      phi(i) += pc.coulombs / (4.0 * M_PI * eps0 * d);
    }
  }
  return phi;
}

}  // namespace spie
