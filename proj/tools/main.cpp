#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "speccol/cli.hpp"

namespace {

void add_grid_options(CLI::App* sub, speccol::CliConfig& cfg) {
  sub->add_option("--N", cfg.degree, "spatial degree N (grid has N+1 nodes)")
      ->capture_default_str();
  sub->add_option("--alpha", cfg.alpha, "Gegenbauer grid parameter")->capture_default_str();
}

void add_scheme_options(CLI::App* sub, speccol::CliConfig& cfg) {
  sub->add_option("--theta", cfg.theta, "time weighting (0 explicit, 1 implicit)")
      ->capture_default_str();
  sub->add_option("--dt", cfg.dt, "time step")->capture_default_str();
  sub->add_option("--t-final", cfg.t_final, "final time")->capture_default_str();
}

int dispatch(const std::string& name, const speccol::CliConfig& cfg, const std::string& output) {
  std::ofstream file;
  std::ostream* out = &std::cout;
  if (!output.empty()) {
    file.open(output);
    if (!file) {
      std::cerr << "error: cannot open output file '" << output << "'\n";
      return speccol::cli_exit::usage;
    }
    out = &file;
  }
  if (name == "nodes") return speccol::cmd_nodes(cfg, *out, std::cerr);
  if (name == "diffmat") return speccol::cmd_diffmat(cfg, *out, std::cerr);
  if (name == "solve-fp") return speccol::cmd_solve_fp(cfg, *out, std::cerr);
  return speccol::cmd_converge(cfg, *out, std::cerr);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral collocation toolkit: Gegenbauer-Gauss-Lobatto grids, "
               "differentiation matrices, and a theta-scheme Fokker-Planck solver"};
  app.require_subcommand(1);

  speccol::CliConfig cfg;
  std::string output;

  CLI::App* nodes = app.add_subcommand("nodes", "print the collocation grid as CSV");
  add_grid_options(nodes, cfg);
  nodes->add_option("--output", output, "write CSV here instead of standard output");

  CLI::App* diffmat = app.add_subcommand("diffmat", "print a differentiation matrix as CSV");
  add_grid_options(diffmat, cfg);
  diffmat->add_option("--order", cfg.order, "derivative order (1 or 2)")->capture_default_str();
  diffmat->add_option("--output", output, "write CSV here instead of standard output");

  CLI::App* solve = app.add_subcommand("solve-fp", "solve the Fokker-Planck problem, CSV trajectory");
  add_grid_options(solve, cfg);
  add_scheme_options(solve, cfg);
  solve->add_option("--output", output, "write CSV here instead of standard output");

  CLI::App* converge = app.add_subcommand("converge", "time-step convergence study, CSV");
  add_grid_options(converge, cfg);
  add_scheme_options(converge, cfg);
  converge->add_option("--output", output, "write CSV here instead of standard output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);  // prints the message to the error stream
    return speccol::cli_exit::usage;
  }

  return dispatch(app.get_subcommands().front()->get_name(), cfg, output);
}
