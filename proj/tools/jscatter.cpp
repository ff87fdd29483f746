#include <iostream>

#include "CLI11.hpp"
#include "jscatter/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"jscatter: J-matrix scattering off a regularised inverse-square potential"};
  app.set_version_flag("--version", JSCATTER_VERSION);

  std::string command, config;
  jscatter::cli::RunOptions opt;
  std::string out;
  app.add_option("command", command, "validate | reference | wavefunction | convergence | smatrix | oracle-check")
      ->required()
      ->check(CLI::IsMember(jscatter::cli::command_names()));
  app.add_option("--config", config, "JSON run configuration")->required();
  app.add_option("--jobs", opt.jobs, "worker threads for sweeps (default: all cores)")->check(CLI::NonNegativeNumber);
  app.add_option("--out", out, "output directory (overrides output.directory)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : jscatter::cli::config_error;
  }
  if (!out.empty()) opt.out_dir = out;
  return jscatter::cli::run(command, config, opt, std::cerr);
}
