#pragma once

// Best responses, equilibrium certification and search, the response
// coefficient algebra and the feasibility regions built from it.
//
// With the opponent's strategy held fixed, the deviator's amplitude at its
// preferred basis outcome is a linear form a*x + b*y in the deviator's own
// amplitudes (x, y). Cauchy-Schwarz bounds it by sqrt(|a|^2 + |b|^2), with
// equality at (conj a, conj b) / norm. Every deviation check below uses this
// closed form; the grid sweeps are kept for cross-validation only.

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qgame/game.hpp"
#include "qgame/tolerances.hpp"

namespace qgame {

/// The deviator's target amplitude as a*x + b*y, opponent fixed.
struct DeviationForm {
  Complex a;
  Complex b;

  Complex evaluate(const QubitState& s) const { return a * s.x() + b * s.y(); }
  double max_modulus() const;
};

DeviationForm deviation_form(const QuantumGame& g, Player deviator, const QubitState& opponent);

/// Moduli of the partial contractions of the preferred rows against each
/// opponent's strategy at a play. (p, q) belong to Player I, (p', q') to
/// Player II.
struct ResponseCoefficients {
  double p = 0.0;
  double q = 0.0;
  double p_prime = 0.0;
  double q_prime = 0.0;
};

ResponseCoefficients response_coefficients(const QuantumGame& g, const Play& play);

double best_response_value(const QuantumGame& g, Player player, const QubitState& opponent);

/// Argmax of best_response_value. Returns |0> when every strategy ties.
QubitState best_response_strategy(const QuantumGame& g, Player player,
                                   const QubitState& opponent);

struct EquilibriumCertificate {
  Play play;
  double payoff1 = 0.0;
  double payoff2 = 0.0;
  double amplitude1 = 0.0;  // achieved |amp| at Player I's target
  double amplitude2 = 0.0;
  double best1 = 0.0;       // Player I's best achievable |amp| against play.b
  double best2 = 0.0;
  bool is_equilibrium = false;
  // The first player (I before II) able to improve by more than tol, and
  // that player's best response. Present iff !is_equilibrium.
  std::optional<Player> witness_player;
  std::optional<QubitState> witness;
};

EquilibriumCertificate verify_equilibrium(const QuantumGame& g, const Play& play,
                                          double tol = kDefaultTolerances.equilibrium);

/// Strategy grid: theta_points values of theta spanning [0, pi] inclusive,
/// phi_points values of phi spanning [0, 2 pi) exclusive. Index order is
/// theta-major.
struct GridSpec {
  int theta_points = 61;
  int phi_points = 120;

  int size() const { return theta_points * phi_points; }
  StrategyParams params(int index) const;
  std::vector<QubitState> states() const;
  void validate() const;
};

inline constexpr GridSpec kSearchGrid{61, 120};
inline constexpr GridSpec kOracleGrid{181, 360};
inline constexpr GridSpec kSweepGrid{37, 72};

struct SearchOptions {
  double tol = kDefaultTolerances.equilibrium;
  double dedup = kDefaultTolerances.payoff_dedup;
  int threads = 1;
};

/// Every grid play (A, B) passing verify_equilibrium, keeping the first play
/// in grid order for each payoff vector (Chebyshev proximity `dedup`).
/// Output is independent of `threads`.
std::vector<EquilibriumCertificate> search_equilibria(const QuantumGame& g, const GridSpec& grid,
                                                      const SearchOptions& options = {});

struct AlternationResult {
  Play play;
  bool converged = false;
  int rounds = 0;
};

/// Alternately replaces Player I then Player II with a best response. Stops
/// once a round moves neither target amplitude by tol or more and the play
/// certifies as an equilibrium at tol.
AlternationResult alternating_best_response(const QuantumGame& g, const Play& start,
                                            int max_iters, double tol);

/// Max of the deviator's target amplitude modulus over a strategy grid.
double grid_best_response_value(const QuantumGame& g, Player player, const QubitState& opponent,
                                const GridSpec& grid);

// ---------------------------------------------------------------------------
// Case inequalities and feasibility regions.
//
// For Player I, with deviation (|x|, |y|) and the play's moduli (|x*|, |y*|):
//   31:  P|x| + Q|y| <= P|x*| + Q|y*|
//   32:  P|x| + Q|y| >= P|x*| + Q|y*|
// and for Player II with primed coefficients, 33 (<=) and 34 (>=).

enum class CaseId : int { kPlayer1Upper = 31, kPlayer1Lower = 32, kPlayer2Upper = 33, kPlayer2Lower = 34 };

CaseId case_id_from_int(int id);
Player case_player(CaseId id);
bool case_is_upper(CaseId id);  // "<=" direction

struct CasePair {
  CaseId player1 = CaseId::kPlayer1Upper;
  CaseId player2 = CaseId::kPlayer2Upper;

  CaseId for_player(Player p) const { return p == Player::one ? player1 : player2; }
  std::string to_string() const;  // e.g. "31/33"
  static CasePair parse(int first, int second);
};

bool case_inequality_holds(CaseId id, const ResponseCoefficients& coeffs, const Play& play,
                           const QubitState& deviation,
                           double slack = kDefaultTolerances.inequality);

class DegenerateCoefficientError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

enum class RegionForm {
  kPrimary,  // h = |y*|, v = |x*|, divides by the P-side coefficient
  kSwapped,  // h = |x*|, v = |y*|, divides by the Q-side coefficient
};

struct RegionSample {
  double h = 0.0;
  double v = 0.0;
};

struct RegionSpec {
  CasePair case_pair;
  Player player = Player::one;
  RegionForm form = RegionForm::kPrimary;
  double slope1 = 0.0;  // Q / P   (infinite when P vanishes)
  double slope2 = 0.0;  // Q' / P'
  double slope = 0.0;   // slope of this region's boundary line, in its own axes
  double intercept = 0.0;  // line value at h = 0
  std::vector<RegionSample> samples;
};

/// Boundary samples of the region cut out by the player's case inequality,
/// solved for v = |x*| as a line in h = |y*| and confined to the unit disc.
/// For an upper case (31, 33) the region lies on or above the line and each
/// sample is (h, max(line, 0)); for a lower case it lies on or below it and
/// each sample is (h, min(line, sqrt(1 - h^2))). Throws
/// DegenerateCoefficientError when the P-side coefficient is below 1e-10.
RegionSpec feasibility_region(const ResponseCoefficients& coeffs, Player player,
                              const QubitState& deviation, int resolution,
                              CasePair cases = {});

/// As feasibility_region with |x*| and |y*| exchanged; needs the Q-side
/// coefficient instead.
RegionSpec feasibility_region_swapped(const ResponseCoefficients& coeffs, Player player,
                                      const QubitState& deviation, int resolution,
                                      CasePair cases = {});

}  // namespace qgame
