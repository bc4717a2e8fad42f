#include "spie/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace spie {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw InputError("config: " + where + ": " + what);
}

const json& require(const json& j, const char* key, const std::string& where) {
  auto it = j.find(key);
  if (it == j.end()) fail(where, std::string("missing field '") + key + "'");
  return *it;
}

double number_at(const json& j, const std::string& where) {
  if (!j.is_number()) fail(where, "expected a number");
  return j.get<double>();
}

std::string string_at(const json& j, const std::string& where) {
  if (!j.is_string()) fail(where, "expected a string");
  return j.get<std::string>();
}

Vec3 vec3_at(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 3) fail(where, "expected [x, y, z]");
  return Vec3(number_at(j[0], where + "[0]"), number_at(j[1], where + "[1]"),
              number_at(j[2], where + "[2]"));
}

void check_keys(const json& j, const std::set<std::string>& allowed,
                const std::string& where) {
  if (!j.is_object()) fail(where, "expected an object");
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!allowed.count(it.key()))
      fail(where, "unknown field '" + it.key() + "'");
}

TerminalConfig terminal_at(const json& j, const std::string& where) {
  check_keys(j, {"object", "anchor"}, where);
  TerminalConfig t;
  t.object = string_at(require(j, "object", where), where + ".object");
  t.anchor = vec3_at(require(j, "anchor", where), where + ".anchor");
  return t;
}

}  // namespace

RunConfig parse_config_text(const std::string& text,
                            const std::string& source_name) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(source_name + ": " + e.what());
  }

  check_keys(j,
             {"command", "mesh", "objects", "excitations", "outputs",
              "capmatrix", "sweep"},
             source_name);

  RunConfig cfg;

  const std::string cmd =
      j.contains("command") ? string_at(j["command"], "command") : "solve";
  if (cmd == "solve")
    cfg.command = Command::Solve;
  else if (cmd == "capmatrix")
    cfg.command = Command::CapMatrix;
  else if (cmd == "sweep")
    cfg.command = Command::Sweep;
  else
    fail("command", "must be one of solve, capmatrix, sweep (got '" + cmd + "')");

  {
    const json& m = require(j, "mesh", source_name);
    check_keys(m, {"path", "format", "unit_scale"}, "mesh");
    cfg.mesh.path = string_at(require(m, "path", "mesh"), "mesh.path");
    if (m.contains("format")) {
      const std::string f = string_at(m["format"], "mesh.format");
      if (f == "obj")
        cfg.mesh.format = MeshFormat::Obj;
      else if (f == "gmsh-msh-ascii")
        cfg.mesh.format = MeshFormat::GmshMshAscii;
      else
        fail("mesh.format", "must be 'obj' or 'gmsh-msh-ascii'");
    }
    if (m.contains("unit_scale")) {
      cfg.mesh.unit_scale = number_at(m["unit_scale"], "mesh.unit_scale");
      if (!(cfg.mesh.unit_scale > 0.0))
        fail("mesh.unit_scale", "must be positive");
    }
  }

  if (j.contains("objects")) {
    if (!j["objects"].is_array()) fail("objects", "expected an array");
    std::set<std::string> seen;
    for (size_t i = 0; i < j["objects"].size(); ++i) {
      const std::string where = "objects[" + std::to_string(i) + "]";
      const json& o = j["objects"][i];
      check_keys(o, {"name", "conductivity", "permittivity"}, where);
      ObjectConfig oc;
      oc.name = string_at(require(o, "name", where), where + ".name");
      if (!seen.insert(oc.name).second)
        fail(where, "duplicate object '" + oc.name + "'");
      if (o.contains("conductivity")) {
        oc.conductivity = number_at(o["conductivity"], where + ".conductivity");
        if (!(oc.conductivity > 0.0))
          fail(where + ".conductivity", "must be positive");
      }
      if (o.contains("permittivity"))
        oc.permittivity = number_at(o["permittivity"], where + ".permittivity");
      cfg.objects.push_back(oc);
    }
  }

  if (j.contains("excitations")) {
    const json& e = j["excitations"];
    check_keys(e, {"charges", "applied_potentials", "ports", "point_charges"},
               "excitations");
    if (e.contains("charges")) {
      for (size_t i = 0; i < e["charges"].size(); ++i) {
        const std::string where = "excitations.charges[" + std::to_string(i) + "]";
        const json& c = e["charges"][i];
        check_keys(c, {"objects", "coulombs"}, where);
        ChargeConfig cc;
        const json& objs = require(c, "objects", where);
        if (!objs.is_array() || objs.empty())
          fail(where + ".objects", "expected a non-empty array of names");
        for (size_t k = 0; k < objs.size(); ++k)
          cc.objects.push_back(
              string_at(objs[k], where + ".objects[" + std::to_string(k) + "]"));
        cc.coulombs = number_at(require(c, "coulombs", where), where + ".coulombs");
        cfg.charges.push_back(cc);
      }
    }
    if (e.contains("applied_potentials")) {
      for (size_t i = 0; i < e["applied_potentials"].size(); ++i) {
        const std::string where =
            "excitations.applied_potentials[" + std::to_string(i) + "]";
        const json& a = e["applied_potentials"][i];
        check_keys(a, {"object", "anchor", "volts"}, where);
        AppliedConfig ac;
        ac.object = string_at(require(a, "object", where), where + ".object");
        ac.anchor = vec3_at(require(a, "anchor", where), where + ".anchor");
        ac.volts = number_at(require(a, "volts", where), where + ".volts");
        cfg.applied_potentials.push_back(ac);
      }
    }
    if (e.contains("ports")) {
      for (size_t i = 0; i < e["ports"].size(); ++i) {
        const std::string where = "excitations.ports[" + std::to_string(i) + "]";
        const json& p = e["ports"][i];
        check_keys(p, {"positive", "negative", "resistance", "v_src"}, where);
        PortConfig pc;
        pc.positive = terminal_at(require(p, "positive", where), where + ".positive");
        pc.negative = terminal_at(require(p, "negative", where), where + ".negative");
        pc.resistance =
            number_at(require(p, "resistance", where), where + ".resistance");
        if (!(pc.resistance > 0.0)) fail(where + ".resistance", "must be positive");
        pc.v_src = number_at(require(p, "v_src", where), where + ".v_src");
        cfg.ports.push_back(pc);
      }
    }
    if (e.contains("point_charges")) {
      for (size_t i = 0; i < e["point_charges"].size(); ++i) {
        const std::string where =
            "excitations.point_charges[" + std::to_string(i) + "]";
        const json& p = e["point_charges"][i];
        check_keys(p, {"position", "coulombs"}, where);
        PointChargeConfig pc;
        pc.position = vec3_at(require(p, "position", where), where + ".position");
        pc.coulombs = number_at(require(p, "coulombs", where), where + ".coulombs");
        cfg.point_charges.push_back(pc);
      }
    }
  }

  if (j.contains("outputs")) {
    const json& o = j["outputs"];
    check_keys(o, {"summary", "vtk", "csv"}, "outputs");
    if (o.contains("summary"))
      cfg.outputs.summary = string_at(o["summary"], "outputs.summary");
    if (o.contains("vtk")) cfg.outputs.vtk = string_at(o["vtk"], "outputs.vtk");
    if (o.contains("csv")) cfg.outputs.csv = string_at(o["csv"], "outputs.csv");
  }

  if (j.contains("capmatrix")) {
    const json& c = j["capmatrix"];
    check_keys(c, {"objects"}, "capmatrix");
    if (c.contains("objects"))
      for (size_t i = 0; i < c["objects"].size(); ++i)
        cfg.capmatrix_objects.push_back(string_at(
            c["objects"][i], "capmatrix.objects[" + std::to_string(i) + "]"));
  }

  if (j.contains("sweep")) {
    const json& s = j["sweep"];
    check_keys(s, {"parameter", "object", "values"}, "sweep");
    if (s.contains("parameter"))
      cfg.sweep.parameter = string_at(s["parameter"], "sweep.parameter");
    if (cfg.sweep.parameter != "conductivity")
      fail("sweep.parameter", "only 'conductivity' can be swept");
    cfg.sweep.object = string_at(require(s, "object", "sweep"), "sweep.object");
    const json& vals = require(s, "values", "sweep");
    if (!vals.is_array() || vals.empty())
      fail("sweep.values", "expected a non-empty array");
    for (size_t i = 0; i < vals.size(); ++i) {
      const double v = number_at(vals[i], "sweep.values[" + std::to_string(i) + "]");
      if (!(v > 0.0)) fail("sweep.values", "conductivities must be positive");
      cfg.sweep.values.push_back(v);
    }
  } else if (cfg.command == Command::Sweep) {
    fail("sweep", "command is 'sweep' but no sweep section is present");
  }

  // Cross-field checks that do not need the mesh.
  {
    std::set<std::string> applied;
    for (const auto& a : cfg.applied_potentials)
      if (!applied.insert(a.object).second)
        fail("excitations.applied_potentials",
             "object '" + a.object + "' appears more than once");
    for (const auto& c : cfg.charges)
      for (const auto& name : c.objects)
        if (applied.count(name))
          fail("excitations",
               "object '" + name +
                   "' has both a total charge and an applied potential");
  }

  return cfg;
}

RunConfig parse_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open config file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  RunConfig cfg = parse_config_text(buf.str(), path.string());
  // Relative mesh paths resolve against the config file location.
  if (cfg.mesh.path.is_relative())
    cfg.mesh.path = path.parent_path() / cfg.mesh.path;
  return cfg;
}

}  // namespace spie
