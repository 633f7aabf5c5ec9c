#include "qgame/mechanism.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qgame/gate_library.hpp"

namespace qgame {

namespace {

Vector4 basis_vector(int k) {
  Vector4 e{};
  e[static_cast<std::size_t>(k)] = 1.0;
  return e;
}

Matrix4 from_columns(const std::array<Vector4, 4>& cols) {
  Matrix4 m{};
  for (std::size_t c = 0; c < 4; ++c) {
    for (std::size_t r = 0; r < 4; ++r) m[r][c] = cols[c][r];
  }
  return m;
}

Vector4 require_seed(std::initializer_list<Vector4> against) {
  const std::vector<Vector4> v(against);
  auto seed = orthogonal_seed(v);
  if (!seed) throw SynthesisError("entry constraints leave no admissible completion column");
  return *seed;
}

// Moduli of `d` in the frame (s, s.orthogonal()).
std::pair<double, double> frame_moduli(const QubitState& s, const QubitState& d) {
  const QubitState o = s.orthogonal();
  const Complex along = std::conj(s.x()) * d.x() + std::conj(s.y()) * d.y();
  const Complex across = std::conj(o.x()) * d.x() + std::conj(o.y()) * d.y();
  return {std::abs(along), std::abs(across)};
}

// Largest |U_t,col| compatible with a Player I deviation of frame moduli
// (x, y) when the target amplitude at t has modulus p.
double player1_bound(double p, double x, double y) {
  if (y <= 0.0) return std::numeric_limits<double>::infinity();
  return std::max(0.0, p * (1.0 - x) / y);
}

}  // namespace

std::string EntryConstraint::label() const {
  return "U" + std::to_string(row + 1) + std::to_string(col + 1);
}

bool EntryConstraint::satisfied_by(const Matrix4& adapted, double x_mod, double y_mod,
                                   double tol) const {
  const Complex entry = adapted[static_cast<std::size_t>(row)][static_cast<std::size_t>(col)];
  switch (kind) {
    case ConstraintKind::kEqualsValue:
    case ConstraintKind::kEqualsZero:
      return std::abs(entry - value) <= tol;
    case ConstraintKind::kModulusBound:
      return std::abs(entry) <= bound(x_mod, y_mod) + tol;
  }
  return false;
}

Matrix4 input_frame(const Play& input) {
  const QubitState& a = input.a;
  const QubitState& b = input.b;
  const QubitState ao = a.orthogonal();
  const QubitState bo = b.orthogonal();
  return from_columns({tensor(a, b).amplitudes(), tensor(a, bo).amplitudes(),
                       tensor(ao, b).amplitudes(), tensor(ao, bo).amplitudes()});
}

std::vector<EntryConstraint> derive_constraints(const MechanismTarget& t) {
  std::vector<EntryConstraint> out;
  for (int r = 0; r < 4; ++r) {
    EntryConstraint c;
    c.row = r;
    c.col = 0;
    c.value = t.target_output[r];
    c.kind = c.value == Complex(0.0) ? ConstraintKind::kEqualsZero : ConstraintKind::kEqualsValue;
    c.description = "input play must map to target amplitude " + to_string(c.value);
    out.push_back(std::move(c));
  }

  // Player I's upper case at the input play, with its orthogonal deviation
  // direction routed through column 2 of the adapted frame:
  //   P|x| + Q|y| <= P,  P = |target_t1|,  Q = |X_t1,2|.
  const int t1 = t.prefs.player1_target();
  const double p = std::abs(t.target_output[t1]);
  EntryConstraint bound;
  bound.row = t1;
  bound.col = 2;
  bound.kind = ConstraintKind::kModulusBound;
  bound.description = "|" + bound.label() + "| <= " + std::to_string(p) +
                      " (1 - |x1|) / |y1| for Player I deviation (x1, y1)";
  bound.bound = [p](double x, double y) { return player1_bound(p, x, y); };
  out.push_back(std::move(bound));
  return out;
}

GameUnitary synthesize_mechanism(const MechanismTarget& t, const SynthesisStrategy& strategy) {
  const Vector4 target = t.target_output.amplitudes();
  const Vector4 e1 = basis_vector(t.prefs.player1_target());
  const Vector4 e2 = basis_vector(t.prefs.player2_target());

  std::array<Vector4, 4> cols{};
  cols[0] = target;
  if (std::holds_alternative<StrictAllDeviations>(strategy)) {
    cols[1] = require_seed({target, e2});
    cols[2] = require_seed({target, cols[1], e1});
  } else {
    const QubitState& d = std::get<PaperBoundAtDeviation>(strategy).deviation;
    const auto [x, y] = frame_moduli(t.input_play.a, d);
    cols[1] = require_seed({target});
    cols[2] = require_seed({target, cols[1]});
    const double limit = player1_bound(std::abs(target[static_cast<std::size_t>(t.prefs.player1_target())]), x, y);
    if (std::abs(cols[2][static_cast<std::size_t>(t.prefs.player1_target())]) > limit) {
      cols[2] = require_seed({target, cols[1], e1});
    }
  }
  cols[3] = require_seed({target, cols[1], cols[2]});

  const Matrix4 adapted = from_columns(cols);
  const Matrix4 u = multiply(adapted, adjoint(input_frame(t.input_play)));
  try {
    return GameUnitary(u);
  } catch (const NotUnitaryError& e) {
    throw SynthesisError(std::string("synthesized matrix failed the unitarity check: ") +
                         e.what());
  }
}

MechanismCertificate certify_mechanism(const GameUnitary& u, const MechanismTarget& t,
                                       double tol) {
  const QuantumGame g(u, t.prefs);
  MechanismCertificate out{.certificate = verify_equilibrium(g, t.input_play, tol)};
  out.fidelity = fidelity(t.target_output, outcome(g, t.input_play));
  out.certified = out.fidelity >= 1.0 - tol && out.certificate.is_equilibrium;
  return out;
}

DeviationSweep deviation_sweep(const QuantumGame& g, const Play& play, const GridSpec& grid) {
  grid.validate();
  const int t1 = g.prefs().player1_target();
  const int t2 = g.prefs().player2_target();
  const TwoQubitState base = outcome(g, play);
  const double base1 = std::abs(base[t1]);
  const double base2 = std::abs(base[t2]);

  DeviationSweep sweep;
  sweep.samples = grid.size();
  sweep.max_improvement1 = -std::numeric_limits<double>::infinity();
  sweep.max_improvement2 = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < grid.size(); ++i) {
    const StrategyParams params = grid.params(i);
    const QubitState d = params.to_state();
    const double gain1 = std::abs(outcome(g, {d, play.b})[t1]) - base1;
    const double gain2 = std::abs(outcome(g, {play.a, d})[t2]) - base2;
    if (gain1 > sweep.max_improvement1) {
      sweep.max_improvement1 = gain1;
      sweep.worst1 = params;
    }
    if (gain2 > sweep.max_improvement2) {
      sweep.max_improvement2 = gain2;
      sweep.worst2 = params;
    }
  }
  return sweep;
}

CnotReport analyze_cnot() {
  const QuantumGame g(gates::cnot());
  CnotReport report{.ground_play = verify_equilibrium(g, {QubitState::zero(), QubitState::zero()})};
  report.coefficients_at_equilibrium =
      response_coefficients(g, {QubitState::zero(), QubitState::one()});

  // Closed forms over a deterministic sample of plays.
  std::mt19937_64 rng(0x5eed);
  report.coefficient_formulas_hold = true;
  for (int k = 0; k < 64; ++k) {
    const Play play{random_qubit(rng), random_qubit(rng)};
    const ResponseCoefficients c = response_coefficients(g, play);
    const bool ok = std::abs(c.p - std::abs(play.b.x())) <= 1e-12 && c.q <= 1e-12 &&
                    c.p_prime <= 1e-12 && std::abs(c.q_prime - std::abs(play.a.x())) <= 1e-12;
    report.coefficient_formulas_hold = report.coefficient_formulas_hold && ok;
  }

  const std::vector<QubitState> deviations = kSweepGrid.states();
  report.family_certified = true;
  report.player1_condition_holds = true;
  report.player2_condition_holds = true;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      const Complex alpha = std::polar(1.0, M_PI / 2.0 * i);
      const Complex beta = std::polar(1.0, M_PI / 2.0 * j);
      const Play play{QubitState(alpha, 0.0), QubitState(0.0, beta)};
      EquilibriumCertificate cert = verify_equilibrium(g, play);
      report.family_certified = report.family_certified && cert.is_equilibrium;
      report.max_output_concurrence =
          std::max(report.max_output_concurrence, concurrence(outcome(g, play)));
      for (const QubitState& d : deviations) {
        report.player1_condition_holds = report.player1_condition_holds &&
                                         std::abs(d.x()) <= std::abs(play.a.x()) + 1e-12;
        report.player2_condition_holds = report.player2_condition_holds &&
                                         std::abs(d.y()) <= std::abs(play.b.y()) + 1e-12;
      }
      report.phase_family.push_back(std::move(cert));
    }
  }
  return report;
}

}  // namespace qgame
