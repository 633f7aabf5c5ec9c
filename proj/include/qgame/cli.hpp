#pragma once

// Command implementations behind the `qgame` executable. Each command writes
// its report to `out`, diagnostics to `err`, and returns the process exit
// status: 0 success, 1 a negative verdict (not an equilibrium, mechanism not
// certified), 2 invalid input.

#include <cmath>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "qgame/equilibria.hpp"
#include "qgame/game.hpp"
#include "qgame/qcore.hpp"

namespace qgame::cli {

/// Bad user input; reported with exit status 2.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class OutputFormat { kJson, kCsv };

struct RunConfig {
  double tolerance = 1e-9;
  int grid_theta = 61;
  int grid_phi = 120;
  int oracle_theta = 181;
  int oracle_phi = 360;
  PreferenceProfile prefs{};
  OutputFormat output_format = OutputFormat::kJson;
  int threads = 1;

  void validate() const;
  GridSpec search_grid() const { return {grid_theta, grid_phi}; }
  GridSpec oracle_grid() const { return {oracle_theta, oracle_phi}; }
};

/// Overlays the keys present in `j` onto `base`.
RunConfig run_config_from_json(const nlohmann::json& j, RunConfig base = {});
RunConfig load_run_config(const std::string& path, RunConfig base = {});
nlohmann::json to_json(const RunConfig& c);

PreferenceProfile parse_prefs(const std::string& text);  // "i,j"

// ---------------------------------------------------------------------------
// Gate files: {"name": str, "matrix": [[[re, im] x4] x4]}, row-major.

struct NamedGate {
  std::string name;
  GameUnitary unitary;
};

nlohmann::json gate_to_json(const std::string& name, const GameUnitary& u);
NamedGate gate_from_json(const nlohmann::json& j, double tol = kDefaultTolerances.unitarity);
void write_gate_file(const std::string& path, const std::string& name, const GameUnitary& u);
NamedGate read_gate_file(const std::string& path);
/// Library name first, then a gate file path.
NamedGate resolve_gate(const std::string& name_or_path);

/// Amplitude file: {"amplitudes": [[re, im] x4]} or a bare [[re, im] x4].
TwoQubitState read_target_file(const std::string& path);

// ---------------------------------------------------------------------------
// Plays on the command line.

struct PlayArgs {
  std::optional<std::string> labels;           // "a,b" with a, b in {0, 1, +, -}
  std::optional<std::vector<double>> theta;    // theta1, theta2
  std::optional<std::vector<double>> phi;      // phi1, phi2
  std::optional<std::vector<double>> amps;     // x1re, x1im, y1re, y1im, x2re, x2im, y2re, y2im
};

/// Raw amplitudes off unit norm by at most 1e-6 are renormalized with a
/// warning on `err`; anything further off is an InputError.
Play parse_play(const PlayArgs& args, std::ostream& err);
QubitState parse_bloch(const std::vector<double>& theta_phi);  // "theta,phi"

// ---------------------------------------------------------------------------
// Commands.

int cmd_analyze(const std::string& gate, const RunConfig& config,
                const std::optional<std::string>& out_path, std::ostream& out,
                std::ostream& err);

int cmd_verify(const std::string& gate, const PlayArgs& play, const RunConfig& config,
               std::ostream& out, std::ostream& err);

struct RegionArgs {
  std::string gate;
  PlayArgs play;
  std::vector<int> cases{31, 33};
  std::vector<double> deviation{0.0, 0.0};  // theta, phi
  int resolution = 101;
  int player = 0;  // 0 = both
  std::optional<std::string> out_path;
};

int cmd_region(const RegionArgs& args, const RunConfig& config, std::ostream& out,
               std::ostream& err);

struct MechanismArgs {
  std::string target = "bell";  // bell | b1..b4 | amplitude file
  std::string mode = "strict";  // strict | paper_bound
  std::vector<double> deviation{M_PI, 0.0};  // Player I deviation for paper_bound
  PlayArgs play;                             // input play, default (|0>, |0>)
  std::optional<std::string> out_path;       // gate file
};

int cmd_mechanism(const MechanismArgs& args, const RunConfig& config, std::ostream& out,
                  std::ostream& err);

int cmd_gates_list(std::ostream& out);
int cmd_gates_show(const std::string& name, std::ostream& out, std::ostream& err);

}  // namespace qgame::cli
