#pragma once

#include <utility>

#include "qgame/qcore.hpp"

namespace qgame {

enum class Player { one = 1, two = 2 };

inline Player opponent(Player p) { return p == Player::one ? Player::two : Player::one; }

/// Each player strictly prefers one computational basis outcome and is
/// indifferent among the rest. The two preferred outcomes must differ.
class PreferenceProfile {
 public:
  PreferenceProfile() = default;
  PreferenceProfile(int player1_target, int player2_target);

  int player1_target() const noexcept { return player1_target_; }
  int player2_target() const noexcept { return player2_target_; }
  int target(Player p) const noexcept {
    return p == Player::one ? player1_target_ : player2_target_;
  }

  friend bool operator==(const PreferenceProfile&, const PreferenceProfile&) = default;

 private:
  int player1_target_ = 0;
  int player2_target_ = 1;
};

/// Bloch-sphere coordinates of a strategy, global phase quotiented out:
/// (cos(theta/2), e^{i phi} sin(theta/2)).
struct StrategyParams {
  double theta = 0.0;  // [0, pi]
  double phi = 0.0;    // [0, 2 pi)

  QubitState to_state() const;
  static StrategyParams from_state(const QubitState& s);
};

struct Play {
  QubitState a;  // Player I
  QubitState b;  // Player II

  const QubitState& strategy(Player p) const { return p == Player::one ? a : b; }
};

class QuantumGame {
 public:
  explicit QuantumGame(GameUnitary u, PreferenceProfile prefs = {})
      : u_(std::move(u)), prefs_(prefs) {}

  const GameUnitary& unitary() const noexcept { return u_; }
  const PreferenceProfile& prefs() const noexcept { return prefs_; }

 private:
  GameUnitary u_;
  PreferenceProfile prefs_;
};

struct Payoffs {
  double player1 = 0.0;
  double player2 = 0.0;
};

/// U applied to a (x) b.
TwoQubitState outcome(const QuantumGame& g, const Play& p);

/// Angle arccos(|amp_target|^2) between `s` and the target basis vector, in
/// [0, pi/2]. Smaller is better for the player who prefers `target`.
double payoff_angle(const TwoQubitState& s, int target);

Payoffs payoffs(const QuantumGame& g, const Play& p);

}  // namespace qgame
