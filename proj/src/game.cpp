#include "qgame/game.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace qgame {

PreferenceProfile::PreferenceProfile(int player1_target, int player2_target)
    : player1_target_(player1_target), player2_target_(player2_target) {
  if (player1_target < 0 || player1_target > 3 || player2_target < 0 || player2_target > 3) {
    throw std::invalid_argument("preferred basis indices must lie in [0, 3]");
  }
  if (player1_target == player2_target) {
    throw std::invalid_argument("players must prefer different basis outcomes, got " +
                                std::to_string(player1_target) + " for both");
  }
}

QubitState StrategyParams::to_state() const {
  return QubitState::normalized(std::cos(theta / 2.0), std::polar(1.0, phi) * std::sin(theta / 2.0));
}

StrategyParams StrategyParams::from_state(const QubitState& s) {
  const double ax = std::abs(s.x());
  const double ay = std::abs(s.y());
  StrategyParams p;
  p.theta = 2.0 * std::atan2(ay, ax);
  if (ax > 0.0 && ay > 0.0) {
    p.phi = std::arg(s.y()) - std::arg(s.x());
    p.phi = std::fmod(p.phi, 2.0 * M_PI);
    if (p.phi < 0.0) p.phi += 2.0 * M_PI;
  }
  return p;
}

TwoQubitState outcome(const QuantumGame& g, const Play& p) {
  return g.unitary().apply(tensor(p.a, p.b));
}

double payoff_angle(const TwoQubitState& s, int target) {
  if (target < 0 || target > 3) throw std::out_of_range("target must be in [0, 3]");
  // arccos(p) evaluated as atan2(sqrt((1-p)(1+p)), p), with 1-p taken from
  // the off-target mass so the angle stays accurate near 0.
  double on = 0.0;
  double off = 0.0;
  for (int k = 0; k < 4; ++k) (k == target ? on : off) += std::norm(s[k]);
  const double total = on + off;
  const double p = on / total;
  const double q = off / total;
  return std::atan2(std::sqrt(q * (1.0 + p)), p);
}

Payoffs payoffs(const QuantumGame& g, const Play& p) {
  const TwoQubitState s = outcome(g, p);
  return {payoff_angle(s, g.prefs().player1_target()),
          payoff_angle(s, g.prefs().player2_target())};
}

}  // namespace qgame
