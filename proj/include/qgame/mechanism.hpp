#pragma once

// Mechanism design: choose a gate so that a prescribed two-qubit state is
// the equilibrium output of a prescribed input play.
//
// Constraints and synthesis work in the input-adapted frame
//   W = [A(x)B, A(x)B', A'(x)B, A'(x)B']       (A' = A.orthogonal())
// and are stated on X = U W. For the ground-state input (|0>, |0>), W = I
// and X = U, so entry labels coincide with those of U itself.

#include <functional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "qgame/equilibria.hpp"
#include "qgame/game.hpp"
#include "qgame/qcore.hpp"

namespace qgame {

struct MechanismTarget {
  TwoQubitState target_output;
  Play input_play{QubitState::zero(), QubitState::zero()};
  PreferenceProfile prefs{};
};

enum class ConstraintKind { kEqualsValue, kEqualsZero, kModulusBound };

struct EntryConstraint {
  int row = 0;  // 0-based, in the input-adapted frame
  int col = 0;
  ConstraintKind kind = ConstraintKind::kEqualsZero;
  Complex value{};  // required entry for kEqualsValue / kEqualsZero
  std::string description;
  // kModulusBound only: upper bound on |X_row,col| given the deviating
  // player's frame moduli (|x|, |y|). Infinite at |y| = 0.
  std::function<double(double, double)> bound;

  std::string label() const;  // 1-based, e.g. "U13"
  bool satisfied_by(const Matrix4& adapted, double x_mod, double y_mod, double tol) const;
};

/// Columns of W for the given input play.
Matrix4 input_frame(const Play& input);

std::vector<EntryConstraint> derive_constraints(const MechanismTarget& t);

struct PaperBoundAtDeviation {
  QubitState deviation;  // Player I's deviation, computational amplitudes
};
struct StrictAllDeviations {};
using SynthesisStrategy = std::variant<StrictAllDeviations, PaperBoundAtDeviation>;

class SynthesisError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// paper_bound: orthonormal completion of the target column, with the image
/// of A'(x)B rotated to zero Player I's target entry if it violates the
/// bound at the supplied deviation. strict: additionally zeroes Player II's
/// target entry in the image of A(x)B', which makes every deviation by
/// either player non-improving.
GameUnitary synthesize_mechanism(const MechanismTarget& t, const SynthesisStrategy& strategy);

struct MechanismCertificate {
  EquilibriumCertificate certificate;
  double fidelity = 0.0;
  bool certified = false;
};

MechanismCertificate certify_mechanism(const GameUnitary& u, const MechanismTarget& t,
                                       double tol = kDefaultTolerances.equilibrium);

/// Brute-force unilateral deviations over a strategy grid, each scored by
/// the full outcome U (d (x) B) rather than the closed-form linear form.
struct DeviationSweep {
  int samples = 0;
  double max_improvement1 = 0.0;  // max over deviations of |amp| - |amp at play|
  double max_improvement2 = 0.0;
  StrategyParams worst1;
  StrategyParams worst2;
};

DeviationSweep deviation_sweep(const QuantumGame& g, const Play& play,
                               const GridSpec& grid = kSweepGrid);

struct CnotReport {
  ResponseCoefficients coefficients_at_equilibrium;  // at (|0>, |1>)
  bool coefficient_formulas_hold = false;  // P = |x2*|, Q = 0 = P', Q' = |x1*|
  std::vector<EquilibriumCertificate> phase_family;  // (alpha|0>, beta|1>)
  bool family_certified = false;
  EquilibriumCertificate ground_play;  // (|0>, |0>)
  bool player1_condition_holds = false;  // |x1| <= |x1*| over sampled deviations
  bool player2_condition_holds = false;  // |y2| <= |y2*|
  double max_output_concurrence = 0.0;  // over the certified family
};

CnotReport analyze_cnot();

}  // namespace qgame
