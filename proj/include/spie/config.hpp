#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "spie/excitation.hpp"
#include "spie/mesh.hpp"

namespace spie {

enum class Command { Solve, CapMatrix, Sweep };

struct MeshConfig {
  std::filesystem::path path;
  MeshFormat format = MeshFormat::Auto;
  double unit_scale = 1.0;
};

struct ObjectConfig {
  std::string name;
  double conductivity = 5.8e7;
  double permittivity = eps0;
};

struct TerminalConfig {
  std::string object;
  Vec3 anchor = Vec3::Zero();
};

struct PortConfig {
  TerminalConfig positive;
  TerminalConfig negative;
  double resistance = 0.0;
  double v_src = 0.0;
};

struct ChargeConfig {
  std::vector<std::string> objects;
  double coulombs = 0.0;
};

struct AppliedConfig {
  std::string object;
  Vec3 anchor = Vec3::Zero();
  double volts = 0.0;
};

struct PointChargeConfig {
  Vec3 position = Vec3::Zero();
  double coulombs = 0.0;
};

struct OutputConfig {
  std::optional<std::filesystem::path> summary;  // stdout when unset
  std::optional<std::filesystem::path> vtk;
  std::optional<std::filesystem::path> csv;
};

struct SweepConfig {
  std::string parameter = "conductivity";
  std::string object;
  std::vector<double> values;
};

struct RunConfig {
  Command command = Command::Solve;
  MeshConfig mesh;
  std::vector<ObjectConfig> objects;
  std::vector<ChargeConfig> charges;
  std::vector<AppliedConfig> applied_potentials;
  std::vector<PortConfig> ports;
  std::vector<PointChargeConfig> point_charges;
  OutputConfig outputs;
  std::vector<std::string> capmatrix_objects;  // all objects when empty
  SweepConfig sweep;
};

/// Parses and validates the JSON run configuration. Schema violations raise
/// InputError with the offending field path (and the parser's line/column for
/// syntax errors).
RunConfig parse_config(const std::filesystem::path& path);
RunConfig parse_config_text(const std::string& text,
                            const std::string& source_name);

}  // namespace spie
