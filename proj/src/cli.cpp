#include "qgame/cli.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "qgame/gate_library.hpp"
#include "qgame/mechanism.hpp"

namespace qgame::cli {

using nlohmann::json;

namespace {

// Angles and derived reals are reported with 12 significant digits.
json r12(double x) {
  if (!std::isfinite(x)) return nullptr;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return std::strtod(buf, nullptr);
}

std::string fmt12(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

// Region coordinates keep full precision so exported samples still satisfy
// the disc and inequality checks when read back.
std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

json complex_json(const Complex& z) { return json::array({r12(z.real()), r12(z.imag())}); }

json qubit_json(const QubitState& s) {
  const StrategyParams p = StrategyParams::from_state(s);
  return {{"amplitudes", json::array({complex_json(s.x()), complex_json(s.y())})},
          {"theta", r12(p.theta)},
          {"phi", r12(p.phi)}};
}

json state_json(const TwoQubitState& s) {
  json a = json::array();
  for (int k = 0; k < 4; ++k) a.push_back(complex_json(s[k]));
  return a;
}

json matrix_json(const Matrix4& m) {
  json rows = json::array();
  for (const auto& row : m) {
    json r = json::array();
    for (const auto& z : row) r.push_back(complex_json(z));
    rows.push_back(r);
  }
  return rows;
}

json coefficients_json(const ResponseCoefficients& c) {
  return {{"P", r12(c.p)}, {"Q", r12(c.q)}, {"P_prime", r12(c.p_prime)}, {"Q_prime", r12(c.q_prime)}};
}

int player_number(Player p) { return p == Player::one ? 1 : 2; }

std::string coeffs_summary(const ResponseCoefficients& c) {
  return "P=" + fmt12(c.p) + " Q=" + fmt12(c.q) + " P'=" + fmt12(c.p_prime) + " Q'=" +
         fmt12(c.q_prime);
}

json certificate_json(const QuantumGame& g, const EquilibriumCertificate& c) {
  json j{{"a", qubit_json(c.play.a)},
         {"b", qubit_json(c.play.b)},
         {"payoffs", json::array({r12(c.payoff1), r12(c.payoff2)})},
         {"target_amplitudes", json::array({r12(c.amplitude1), r12(c.amplitude2)})},
         {"best_responses", json::array({r12(c.best1), r12(c.best2)})},
         {"is_equilibrium", c.is_equilibrium},
         {"witness", nullptr}};
  if (c.witness) {
    const Player p = *c.witness_player;
    const Play deviated = p == Player::one ? Play{*c.witness, c.play.b} : Play{c.play.a, *c.witness};
    const double improved = std::abs(outcome(g, deviated)[g.prefs().target(p)]);
    j["witness"] = {{"player", player_number(p)},
                    {"strategy", qubit_json(*c.witness)},
                    {"target_amplitude", r12(improved)}};
  }
  return j;
}

void emit(const std::string& text, const std::optional<std::string>& path, std::ostream& out) {
  if (!path) {
    out << text;
    return;
  }
  std::ofstream f(*path);
  if (!f) throw InputError("cannot open output file " + *path);
  f << text;
}

json parse_json_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw InputError("cannot read " + path);
  try {
    return json::parse(f);
  } catch (const json::parse_error& e) {
    throw InputError(path + ": malformed JSON: " + e.what());
  }
}

Complex complex_from_json(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw InputError(where + ": expected [re, im]");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

QubitState label_state(const std::string& label) {
  if (label == "0") return QubitState::zero();
  if (label == "1") return QubitState::one();
  if (label == "+") return QubitState::plus();
  if (label == "-") return QubitState::minus();
  throw InputError("unknown strategy label '" + label + "' (expected 0, 1, + or -)");
}

QubitState checked_amplitudes(Complex x, Complex y, const char* who, std::ostream& err) {
  if (!std::isfinite(x.real()) || !std::isfinite(x.imag()) || !std::isfinite(y.real()) ||
      !std::isfinite(y.imag())) {
    throw InputError(std::string(who) + " amplitudes must be finite");
  }
  const double n = std::sqrt(std::norm(x) + std::norm(y));
  if (std::abs(n - 1.0) > kDefaultTolerances.input_renormalize) {
    throw InputError(std::string(who) + " strategy has norm " + fmt12(n) +
                     ", more than 1e-6 from 1");
  }
  if (std::abs(n * n - 1.0) > kDefaultTolerances.normalization) {
    err << "warning: renormalized " << who << " strategy (norm " << fmt12(n) << ")\n";
  }
  return QubitState::normalized(x, y);
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) parts.push_back(item);
  return parts;
}

}  // namespace

// ---------------------------------------------------------------------------
// RunConfig

void RunConfig::validate() const {
  if (!(tolerance > 0.0 && tolerance <= 1e-2)) {
    throw InputError("tolerance must lie in (0, 1e-2], got " + fmt12(tolerance));
  }
  if (grid_theta < 2 || grid_phi < 2 || oracle_theta < 2 || oracle_phi < 2) {
    throw InputError("grid sizes must be at least 2");
  }
  if (threads < 1) throw InputError("threads must be at least 1");
}

RunConfig run_config_from_json(const json& j, RunConfig base) {
  if (!j.is_object()) throw InputError("run config must be a JSON object");
  try {
    if (j.contains("tolerance")) base.tolerance = j.at("tolerance").get<double>();
    if (j.contains("grid_theta")) base.grid_theta = j.at("grid_theta").get<int>();
    if (j.contains("grid_phi")) base.grid_phi = j.at("grid_phi").get<int>();
    if (j.contains("oracle_theta")) base.oracle_theta = j.at("oracle_theta").get<int>();
    if (j.contains("oracle_phi")) base.oracle_phi = j.at("oracle_phi").get<int>();
    if (j.contains("threads")) base.threads = j.at("threads").get<int>();
    if (j.contains("prefs")) {
      const auto p = j.at("prefs").get<std::vector<int>>();
      if (p.size() != 2) throw InputError("prefs must have two entries");
      base.prefs = PreferenceProfile(p[0], p[1]);
    }
    if (j.contains("output_format")) {
      const auto f = j.at("output_format").get<std::string>();
      if (f == "json") {
        base.output_format = OutputFormat::kJson;
      } else if (f == "csv") {
        base.output_format = OutputFormat::kCsv;
      } else {
        throw InputError("output_format must be json or csv");
      }
    }
  } catch (const json::exception& e) {
    throw InputError(std::string("run config: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw InputError(std::string("run config: ") + e.what());
  }
  base.validate();
  return base;
}

RunConfig load_run_config(const std::string& path, RunConfig base) {
  return run_config_from_json(parse_json_file(path), base);
}

json to_json(const RunConfig& c) {
  return {{"tolerance", c.tolerance},
          {"grid_theta", c.grid_theta},
          {"grid_phi", c.grid_phi},
          {"oracle_theta", c.oracle_theta},
          {"oracle_phi", c.oracle_phi},
          {"prefs", json::array({c.prefs.player1_target(), c.prefs.player2_target()})},
          {"output_format", c.output_format == OutputFormat::kJson ? "json" : "csv"}};
}

PreferenceProfile parse_prefs(const std::string& text) {
  const auto parts = split(text, ',');
  if (parts.size() != 2) throw InputError("--prefs expects i,j");
  try {
    return PreferenceProfile(std::stoi(parts[0]), std::stoi(parts[1]));
  } catch (const std::logic_error& e) {
    throw InputError(std::string("--prefs: ") + e.what());
  }
}

// ---------------------------------------------------------------------------
// Gate files

json gate_to_json(const std::string& name, const GameUnitary& u) {
  json rows = json::array();
  for (const auto& row : u.matrix()) {
    json r = json::array();
    for (const auto& z : row) r.push_back(json::array({z.real(), z.imag()}));
    rows.push_back(r);
  }
  return {{"name", name}, {"matrix", rows}};
}

NamedGate gate_from_json(const json& j, double tol) {
  if (!j.is_object() || !j.contains("matrix")) throw InputError("gate file needs a \"matrix\" field");
  const json& rows = j.at("matrix");
  if (!rows.is_array() || rows.size() != 4) throw InputError("gate matrix must have 4 rows");
  Matrix4 m{};
  for (std::size_t r = 0; r < 4; ++r) {
    if (!rows[r].is_array() || rows[r].size() != 4) throw InputError("gate matrix rows must have 4 entries");
    for (std::size_t c = 0; c < 4; ++c) {
      m[r][c] = complex_from_json(rows[r][c], "matrix[" + std::to_string(r) + "][" +
                                                  std::to_string(c) + "]");
    }
  }
  const std::string name = j.contains("name") && j.at("name").is_string()
                               ? j.at("name").get<std::string>()
                               : std::string("unnamed");
  const double defect = unitarity_defect(m);
  if (!(defect <= tol)) {
    throw InputError("gate '" + name + "' violates unitarity (U^dagger U = I): max deviation " +
                     fmt12(defect) + " exceeds tolerance " + fmt12(tol));
  }
  return {name, GameUnitary(m, tol)};
}

void write_gate_file(const std::string& path, const std::string& name, const GameUnitary& u) {
  std::ofstream f(path);
  if (!f) throw InputError("cannot write gate file " + path);
  f << gate_to_json(name, u).dump(2) << "\n";
}

NamedGate read_gate_file(const std::string& path) { return gate_from_json(parse_json_file(path)); }

NamedGate resolve_gate(const std::string& name_or_path) {
  if (auto entry = find_gate(name_or_path)) return {entry->name, entry->unitary};
  std::ifstream probe(name_or_path);
  if (!probe) {
    throw InputError("'" + name_or_path + "' is neither a library gate nor a readable file");
  }
  return read_gate_file(name_or_path);
}

TwoQubitState read_target_file(const std::string& path) {
  const json j = parse_json_file(path);
  const json& arr = j.is_object() && j.contains("amplitudes") ? j.at("amplitudes") : j;
  if (!arr.is_array() || arr.size() != 4) throw InputError(path + ": expected 4 amplitudes");
  Vector4 v{};
  for (std::size_t k = 0; k < 4; ++k) {
    v[k] = complex_from_json(arr[k], path + " amplitude " + std::to_string(k));
  }
  try {
    return TwoQubitState(v);
  } catch (const std::invalid_argument& e) {
    throw InputError(path + ": " + e.what());
  }
}

// ---------------------------------------------------------------------------
// Plays

QubitState parse_bloch(const std::vector<double>& theta_phi) {
  if (theta_phi.size() != 2) throw InputError("expected theta,phi");
  if (!std::isfinite(theta_phi[0]) || !std::isfinite(theta_phi[1])) {
    throw InputError("Bloch angles must be finite");
  }
  return StrategyParams{theta_phi[0], theta_phi[1]}.to_state();
}

Play parse_play(const PlayArgs& args, std::ostream& err) {
  const int given = (args.labels ? 1 : 0) + (args.amps ? 1 : 0) + ((args.theta || args.phi) ? 1 : 0);
  if (given == 0) throw InputError("a play is required: --play, --theta/--phi or --amps");
  if (given > 1) throw InputError("give the play exactly one way: --play, --theta/--phi or --amps");

  if (args.labels) {
    const auto parts = split(*args.labels, ',');
    if (parts.size() != 2) throw InputError("--play expects two labels, e.g. 0,1");
    return {label_state(parts[0]), label_state(parts[1])};
  }
  if (args.amps) {
    const auto& v = *args.amps;
    if (v.size() != 8) throw InputError("--amps expects 8 numbers: x1re,x1im,y1re,y1im,x2re,x2im,y2re,y2im");
    return {checked_amplitudes({v[0], v[1]}, {v[2], v[3]}, "Player I", err),
            checked_amplitudes({v[4], v[5]}, {v[6], v[7]}, "Player II", err)};
  }
  if (!args.theta || !args.phi || args.theta->size() != 2 || args.phi->size() != 2) {
    throw InputError("--theta and --phi each expect two values, one per player");
  }
  return {parse_bloch({(*args.theta)[0], (*args.phi)[0]}),
          parse_bloch({(*args.theta)[1], (*args.phi)[1]})};
}

// ---------------------------------------------------------------------------
// Commands

namespace {

const char* const kLabels[] = {"0", "1", "+", "-"};

template <typename F>
int guarded(std::ostream& err, F&& body) {
  try {
    return body();
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
  } catch (const NotUnitaryError& e) {
    err << "error: unitarity violated: " << e.what() << "\n";
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
  }
  return 2;
}

std::string csv_row(std::initializer_list<std::string> cells) {
  std::string line;
  for (const auto& c : cells) {
    if (!line.empty()) line += ',';
    line += c;
  }
  return line + "\n";
}

std::string play_cells_header() { return "a_theta,a_phi,b_theta,b_phi"; }

std::string play_cells(const Play& p) {
  const StrategyParams a = StrategyParams::from_state(p.a);
  const StrategyParams b = StrategyParams::from_state(p.b);
  return fmt12(a.theta) + "," + fmt12(a.phi) + "," + fmt12(b.theta) + "," + fmt12(b.phi);
}

}  // namespace

int cmd_analyze(const std::string& gate_name, const RunConfig& config,
                const std::optional<std::string>& out_path, std::ostream& out,
                std::ostream& err) {
  return guarded(err, [&] {
    config.validate();
    const NamedGate gate = resolve_gate(gate_name);
    const QuantumGame g(gate.unitary, config.prefs);

    struct Row {
      std::string section;
      Play play;
      Payoffs pay;
      ResponseCoefficients coeffs;
      bool equilibrium;
    };
    std::vector<Row> rows;
    json canonical = json::array();
    for (const char* la : kLabels) {
      for (const char* lb : kLabels) {
        const Play play{label_state(la), label_state(lb)};
        const auto cert = verify_equilibrium(g, play, config.tolerance);
        const auto coeffs = response_coefficients(g, play);
        canonical.push_back({{"play", std::string("|") + la + ">,|" + lb + ">"},
                             {"payoffs", json::array({r12(cert.payoff1), r12(cert.payoff2)})},
                             {"coefficients", coefficients_json(coeffs)},
                             {"is_equilibrium", cert.is_equilibrium}});
        rows.push_back({"canonical", play, {cert.payoff1, cert.payoff2}, coeffs, cert.is_equilibrium});
      }
    }

    const auto found = search_equilibria(g, config.search_grid(),
                                         {config.tolerance, kDefaultTolerances.payoff_dedup,
                                          config.threads});
    const std::vector<QubitState> oracle_states = config.oracle_grid().states();
    json equilibria = json::array();
    for (const auto& cert : found) {
      const auto coeffs = response_coefficients(g, cert.play);
      const DeviationForm f1 = deviation_form(g, Player::one, cert.play.b);
      const DeviationForm f2 = deviation_form(g, Player::two, cert.play.a);
      double grid1 = 0.0, grid2 = 0.0;
      for (const auto& s : oracle_states) {
        grid1 = std::max(grid1, std::abs(f1.evaluate(s)));
        grid2 = std::max(grid2, std::abs(f2.evaluate(s)));
      }
      json j = certificate_json(g, cert);
      j["coefficients"] = coefficients_json(coeffs);
      j["minimax_gap"] = json::array(
          {r12(std::abs(cert.amplitude1 - std::hypot(coeffs.p, coeffs.q))),
           r12(std::abs(cert.amplitude2 - std::hypot(coeffs.p_prime, coeffs.q_prime)))});
      j["oracle_best_responses"] = json::array({r12(grid1), r12(grid2)});
      equilibria.push_back(j);
      rows.push_back({"equilibrium", cert.play, {cert.payoff1, cert.payoff2}, coeffs, true});
    }

    const auto alt = alternating_best_response(g, {QubitState::zero(), QubitState::zero()}, 100,
                                               config.tolerance);

    std::string text;
    if (config.output_format == OutputFormat::kCsv) {
      text = "# gate: " + gate.name + "\n";
      text += "section," + play_cells_header() + ",payoff1,payoff2,P,Q,P_prime,Q_prime,is_equilibrium\n";
      for (const auto& r : rows) {
        text += csv_row({r.section, play_cells(r.play), fmt12(r.pay.player1), fmt12(r.pay.player2),
                         fmt12(r.coeffs.p), fmt12(r.coeffs.q), fmt12(r.coeffs.p_prime),
                         fmt12(r.coeffs.q_prime), r.equilibrium ? "true" : "false"});
      }
    } else {
      json report{{"gate", gate.name},
                  {"matrix", matrix_json(gate.unitary.matrix())},
                  {"unitarity_defect", r12(unitarity_defect(gate.unitary.matrix()))},
                  {"config", to_json(config)},
                  {"canonical_plays", canonical},
                  {"search", {{"grid", json::array({config.grid_theta, config.grid_phi})},
                              {"oracle_grid", json::array({config.oracle_theta, config.oracle_phi})},
                              {"equilibria_found", found.size()}}},
                  {"equilibria", equilibria},
                  {"alternating_best_response",
                   {{"start", "|0>,|0>"},
                    {"converged", alt.converged},
                    {"rounds", alt.rounds},
                    {"certificate", certificate_json(g, verify_equilibrium(g, alt.play, config.tolerance))}}}};
      text = report.dump(2) + "\n";
    }
    emit(text, out_path, out);
    return 0;
  });
}

int cmd_verify(const std::string& gate_name, const PlayArgs& play_args, const RunConfig& config,
               std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    config.validate();
    const NamedGate gate = resolve_gate(gate_name);
    const QuantumGame g(gate.unitary, config.prefs);
    const Play play = parse_play(play_args, err);
    const auto cert = verify_equilibrium(g, play, config.tolerance);
    const auto coeffs = response_coefficients(g, play);

    if (config.output_format == OutputFormat::kCsv) {
      std::string witness_cells = ",,";
      if (cert.witness) {
        const StrategyParams w = StrategyParams::from_state(*cert.witness);
        witness_cells = std::to_string(player_number(*cert.witness_player)) + "," + fmt12(w.theta) +
                        "," + fmt12(w.phi);
      }
      out << play_cells_header()
          << ",payoff1,payoff2,amplitude1,amplitude2,best1,best2,is_equilibrium,"
             "witness_player,witness_theta,witness_phi\n";
      out << csv_row({play_cells(play), fmt12(cert.payoff1), fmt12(cert.payoff2),
                      fmt12(cert.amplitude1), fmt12(cert.amplitude2), fmt12(cert.best1),
                      fmt12(cert.best2), cert.is_equilibrium ? "true" : "false", witness_cells});
    } else {
      json j = certificate_json(g, cert);
      j["gate"] = gate.name;
      j["tolerance"] = config.tolerance;
      j["coefficients"] = coefficients_json(coeffs);
      out << j.dump(2) << "\n";
    }
    return cert.is_equilibrium ? 0 : 1;
  });
}

int cmd_region(const RegionArgs& args, const RunConfig& config, std::ostream& out,
               std::ostream& err) {
  return guarded(err, [&] {
    config.validate();
    if (args.cases.size() != 2) throw InputError("--cases expects two ids, e.g. 31,33");
    const CasePair cases = CasePair::parse(args.cases[0], args.cases[1]);
    if (args.player < 0 || args.player > 2) throw InputError("--player must be 1, 2 or both");
    const NamedGate gate = resolve_gate(args.gate);
    const QuantumGame g(gate.unitary, config.prefs);
    const Play play = parse_play(args.play, err);
    const QubitState deviation = parse_bloch(args.deviation);
    const ResponseCoefficients coeffs = response_coefficients(g, play);

    std::vector<Player> players;
    if (args.player != 2) players.push_back(Player::one);
    if (args.player != 1) players.push_back(Player::two);

    std::vector<std::string> notes;
    std::vector<RegionSpec> regions;
    for (Player p : players) {
      const bool first = p == Player::one;
      const double pside = first ? coeffs.p : coeffs.p_prime;
      const double qside = first ? coeffs.q : coeffs.q_prime;
      const std::string who = "player " + std::to_string(player_number(p));
      const double eps = kDefaultTolerances.degenerate_coefficient;
      if (pside >= eps) {
        regions.push_back(feasibility_region(coeffs, p, deviation, args.resolution, cases));
        notes.push_back(who + ": primary form (h = |y*|, v = |x*|), slope " + fmt12(regions.back().slope));
      } else if (qside >= eps) {
        regions.push_back(feasibility_region_swapped(coeffs, p, deviation, args.resolution, cases));
        notes.push_back(who + ": swapped form (h = |x*|, v = |y*|) since the P-side coefficient vanishes, slope " +
                        fmt12(regions.back().slope));
      } else {
        notes.push_back(who + ": fully degenerate (P-side and Q-side coefficients vanish); "
                              "the inequality holds for every strategy, no boundary emitted");
      }
    }
    if (regions.empty()) {
      throw InputError("fully degenerate coefficients: both P-side and Q-side coefficients vanish (" +
                       coeffs_summary(coeffs) + ")");
    }

    std::string text;
    if (config.output_format == OutputFormat::kCsv) {
      text += "# gate: " + gate.name + ", case pair " + cases.to_string() + "\n";
      for (const auto& n : notes) text += "# " + n + "\n";
      text += "h,v,case_pair,slope\n";
      for (const auto& r : regions) {
        for (const auto& s : r.samples) {
          text += csv_row({fmt17(s.h), fmt17(s.v), cases.to_string(), fmt12(r.slope)});
        }
      }
    } else {
      json samples = json::array();
      for (const auto& r : regions) {
        for (const auto& s : r.samples) {
          samples.push_back({{"h", s.h},
                             {"v", s.v},
                             {"case_pair", cases.to_string()},
                             {"slope", r12(r.slope)},
                             {"player", player_number(r.player)},
                             {"form", r.form == RegionForm::kPrimary ? "primary" : "swapped"}});
        }
      }
      text = samples.dump(2) + "\n";
    }
    for (const auto& n : notes) err << "note: " << n << "\n";
    emit(text, args.out_path, out);
    return 0;
  });
}

int cmd_mechanism(const MechanismArgs& args, const RunConfig& config, std::ostream& out,
                  std::ostream& err) {
  return guarded(err, [&] {
    config.validate();
    TwoQubitState target = TwoQubitState::bell();
    if (args.target == "bell") {
      target = TwoQubitState::bell();
    } else if (args.target.size() == 2 && args.target[0] == 'b' && args.target[1] >= '1' &&
               args.target[1] <= '4') {
      target = TwoQubitState::basis(args.target[1] - '1');
    } else {
      target = read_target_file(args.target);
    }

    const bool any_play = args.play.labels || args.play.amps || args.play.theta || args.play.phi;
    const Play input = any_play ? parse_play(args.play, err)
                                : Play{QubitState::zero(), QubitState::zero()};
    const MechanismTarget t{target, input, config.prefs};

    const QubitState deviation = parse_bloch(args.deviation);
    SynthesisStrategy strategy;
    if (args.mode == "strict") {
      strategy = StrictAllDeviations{};
    } else if (args.mode == "paper_bound") {
      strategy = PaperBoundAtDeviation{deviation};
    } else {
      throw InputError("--mode must be paper_bound or strict");
    }

    const GameUnitary u = synthesize_mechanism(t, strategy);
    const MechanismCertificate mc = certify_mechanism(u, t, config.tolerance);
    const QuantumGame g(u, config.prefs);
    const DeviationSweep sweep = deviation_sweep(g, input, kSweepGrid);

    // Player I deviation moduli in the input-adapted frame.
    const QubitState ao = input.a.orthogonal();
    const double dx = std::abs(std::conj(input.a.x()) * deviation.x() + std::conj(input.a.y()) * deviation.y());
    const double dy = std::abs(std::conj(ao.x()) * deviation.x() + std::conj(ao.y()) * deviation.y());
    const Matrix4 adapted = multiply(u.matrix(), input_frame(input));

    json constraints = json::array();
    for (const auto& c : derive_constraints(t)) {
      json jc{{"entry", c.label()},
              {"description", c.description},
              {"satisfied", c.satisfied_by(adapted, dx, dy, 1e-12)}};
      switch (c.kind) {
        case ConstraintKind::kEqualsValue:
          jc["kind"] = "equals_value";
          jc["value"] = complex_json(c.value);
          break;
        case ConstraintKind::kEqualsZero:
          jc["kind"] = "equals_zero";
          break;
        case ConstraintKind::kModulusBound:
          jc["kind"] = "modulus_bound";
          jc["bound_at_deviation"] = r12(c.bound(dx, dy));
          jc["modulus"] = r12(std::abs(adapted[static_cast<std::size_t>(c.row)][static_cast<std::size_t>(c.col)]));
          break;
      }
      constraints.push_back(jc);
    }

    json report{{"target", state_json(target)},
                {"mode", args.mode},
                {"input_play", {{"a", qubit_json(input.a)}, {"b", qubit_json(input.b)}}},
                {"deviation", {{"strategy", qubit_json(deviation)},
                               {"frame_moduli", json::array({r12(dx), r12(dy)})}}},
                {"constraints", constraints},
                {"matrix", matrix_json(u.matrix())},
                {"unitarity_defect", r12(unitarity_defect(u.matrix()))},
                {"fidelity", r12(mc.fidelity)},
                {"certificate", certificate_json(g, mc.certificate)},
                {"deviation_sweep",
                 {{"grid", json::array({kSweepGrid.theta_points, kSweepGrid.phi_points})},
                  {"max_improvement", json::array({r12(sweep.max_improvement1), r12(sweep.max_improvement2)})}}},
                {"certified", mc.certified}};
    if (!mc.certified) {
      json why = json::array();
      if (mc.fidelity < 1.0 - config.tolerance) why.push_back("the input play misses the target output");
      if (!mc.certificate.is_equilibrium) {
        why.push_back("Player " + std::to_string(player_number(*mc.certificate.witness_player)) +
                      " improves by deviating, so the input play is not an equilibrium even though "
                      "the per-deviation entry bound holds");
      }
      report["discrepancy"] = why;
    }
    if (args.out_path) {
      const std::string name = "mechanism_" + (args.target.find('/') == std::string::npos ? args.target : std::string("file")) + "_" + args.mode;
      write_gate_file(*args.out_path, name, u);
      report["gate_file"] = *args.out_path;
    }
    out << report.dump(2) << "\n";
    return mc.certified ? 0 : 1;
  });
}

int cmd_gates_list(std::ostream& out) {
  for (const auto& e : gate_library()) out << e.name << "\t" << e.description << "\n";
  return 0;
}

int cmd_gates_show(const std::string& name, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto entry = find_gate(name);
    if (!entry) throw InputError("no library gate named '" + name + "'");
    json j = gate_to_json(entry->name, entry->unitary);
    j["description"] = entry->description;
    out << j.dump(2) << "\n";
    return 0;
  });
}

}  // namespace qgame::cli
