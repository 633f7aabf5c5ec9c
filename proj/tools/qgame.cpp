// qgame: analyze two-qubit gates as strictly competitive two-player games.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qgame/cli.hpp"

namespace {

using qgame::cli::RunConfig;

struct ConfigFlags {
  std::optional<double> tol;
  std::optional<int> grid_theta;
  std::optional<int> grid_phi;
  std::optional<int> threads;
  std::optional<std::string> prefs;
  bool csv = false;

  void attach(CLI::App* cmd) {
    cmd->add_option("--tol", tol, "Equilibrium tolerance on target amplitudes");
    cmd->add_option("--grid-theta", grid_theta, "Search grid points in theta");
    cmd->add_option("--grid-phi", grid_phi, "Search grid points in phi");
    cmd->add_option("--threads", threads, "Worker threads for grid sweeps");
    cmd->add_option("--prefs", prefs, "Preferred basis indices i,j for Players I and II");
    cmd->add_flag("--csv", csv, "Emit CSV instead of JSON");
  }

  RunConfig resolve() const {
    RunConfig config;
    if (const char* path = std::getenv("QGAME_CONFIG"); path && *path) {
      config = qgame::cli::load_run_config(path, config);
    }
    if (tol) config.tolerance = *tol;
    if (grid_theta) config.grid_theta = *grid_theta;
    if (grid_phi) config.grid_phi = *grid_phi;
    if (threads) config.threads = *threads;
    if (prefs) config.prefs = qgame::cli::parse_prefs(*prefs);
    if (csv) config.output_format = qgame::cli::OutputFormat::kCsv;
    config.validate();
    return config;
  }
};

void attach_play(CLI::App* cmd, qgame::cli::PlayArgs& play) {
  cmd->add_option("--play", play.labels, "Strategies as labels a,b from {0,1,+,-}");
  cmd->add_option("--theta", play.theta, "Bloch theta per player: t1,t2")->delimiter(',');
  cmd->add_option("--phi", play.phi, "Bloch phi per player: p1,p2")->delimiter(',');
  cmd->add_option("--amps", play.amps, "Raw amplitudes x1re,x1im,y1re,y1im,x2re,x2im,y2re,y2im")
      ->delimiter(',');
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-qubit gates as strictly competitive quantum games"};
  app.require_subcommand(1);

  ConfigFlags flags;
  std::string gate;
  std::optional<std::string> out_path;

  auto* analyze = app.add_subcommand("analyze", "Payoffs, coefficients and equilibria of a gate");
  analyze->add_option("gate", gate, "Library gate name or gate file")->required();
  analyze->add_option("--out", out_path, "Write the report to a file");
  flags.attach(analyze);

  qgame::cli::PlayArgs verify_play;
  auto* verify = app.add_subcommand("verify", "Certify whether a play is an equilibrium");
  verify->add_option("gate", gate, "Library gate name or gate file")->required();
  attach_play(verify, verify_play);
  flags.attach(verify);

  qgame::cli::RegionArgs region_args;
  std::string region_player = "both";
  auto* region = app.add_subcommand("region", "Export feasibility-region boundary samples");
  region->add_option("gate", region_args.gate, "Library gate name or gate file")->required();
  attach_play(region, region_args.play);
  region->add_option("--cases", region_args.cases, "Case pair, e.g. 31,33")->delimiter(',');
  region->add_option("--deviation", region_args.deviation, "Deviation as theta,phi")->delimiter(',');
  region->add_option("--resolution", region_args.resolution, "Samples along h");
  region->add_option("--player", region_player, "1, 2 or both");
  region->add_option("--out", region_args.out_path, "Output file");
  flags.attach(region);

  qgame::cli::MechanismArgs mech_args;
  auto* mechanism = app.add_subcommand("mechanism", "Synthesize and certify a gate for a target output");
  mechanism->add_option("target", mech_args.target, "bell, b1..b4, or an amplitude file");
  mechanism->add_option("--mode", mech_args.mode, "paper_bound or strict");
  mechanism->add_option("--deviation", mech_args.deviation, "Player I deviation as theta,phi")
      ->delimiter(',');
  mechanism->add_option("--out", mech_args.out_path, "Write the synthesized gate file");
  attach_play(mechanism, mech_args.play);
  flags.attach(mechanism);

  std::string show_name;
  auto* gates = app.add_subcommand("gates", "Gate library");
  gates->require_subcommand(1);
  auto* gates_list = gates->add_subcommand("list", "List library gates");
  auto* gates_show = gates->add_subcommand("show", "Print a library gate as a gate file");
  gates_show->add_option("name", show_name)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (gates_list->parsed()) return qgame::cli::cmd_gates_list(std::cout);
    if (gates_show->parsed()) return qgame::cli::cmd_gates_show(show_name, std::cout, std::cerr);

    const RunConfig config = flags.resolve();
    if (analyze->parsed()) return qgame::cli::cmd_analyze(gate, config, out_path, std::cout, std::cerr);
    if (verify->parsed()) return qgame::cli::cmd_verify(gate, verify_play, config, std::cout, std::cerr);
    if (region->parsed()) {
      if (region_player == "both") {
        region_args.player = 0;
      } else if (region_player == "1" || region_player == "2") {
        region_args.player = std::stoi(region_player);
      } else {
        throw qgame::cli::InputError("--player must be 1, 2 or both");
      }
      return qgame::cli::cmd_region(region_args, config, std::cout, std::cerr);
    }
    if (mechanism->parsed()) return qgame::cli::cmd_mechanism(mech_args, config, std::cout, std::cerr);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
