#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "spie/runner.hpp"

int main(int argc, char** argv) {
  CLI::App app{
      "spie: boundary-element DC solver for conductors.\n"
      "Computes surface charge, surface potential, capacitance matrices and\n"
      "DC resistances from one scalar-potential formulation. The command\n"
      "(solve, capmatrix, sweep), mesh, excitations and outputs come from a\n"
      "JSON config file; exit codes are 0 (ok), 1 (input error), 2\n"
      "(numerical failure)."};

  std::string config_path;
  spie::RunOptions options;
  std::string dump_path;

  app.add_option("--config", config_path, "run configuration (JSON)")
      ->required();
  app.add_option("--threads", options.threads,
                 "worker threads for operator assembly")
      ->check(CLI::PositiveNumber);
  app.add_flag("--no-timestamp", options.no_timestamp,
               "omit the timestamp from the summary (byte-stable output)");
  app.add_option("--dump-matrix", dump_path,
                 "dump the assembled system matrix (raw int32 rows/cols "
                 "header + row-major float64)");

  CLI11_PARSE(app, argc, argv);

  if (!dump_path.empty()) options.dump_matrix = dump_path;
  return spie::run_cli(config_path, options, std::cerr);
}
