#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "qgame/game.hpp"
#include "qgame/gate_library.hpp"

using namespace qgame;

namespace {

const double kR = 1.0 / std::sqrt(2.0);

QuantumGame cnot_game() { return QuantumGame(gates::cnot()); }
QuantumGame identity_game() { return QuantumGame(GameUnitary::identity()); }

}  // namespace

TEST_CASE("PreferenceProfile") {
  const PreferenceProfile d;
  CHECK(d.player1_target() == 0);
  CHECK(d.player2_target() == 1);
  CHECK_THROWS_AS(PreferenceProfile(2, 2), std::invalid_argument);
  CHECK_THROWS_AS(PreferenceProfile(0, 4), std::invalid_argument);
  CHECK(PreferenceProfile(3, 0).target(Player::two) == 0);
}

TEST_CASE("StrategyParams decode to normalized states and recover from them") {
  const QubitState s = StrategyParams{M_PI / 2.0, M_PI / 2.0}.to_state();
  CHECK(std::abs(s.x() - kR) <= 1e-15);
  CHECK(std::abs(s.y() - Complex(0.0, kR)) <= 1e-15);

  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 200; ++trial) {
    const QubitState q = random_qubit(rng);
    const QubitState back = StrategyParams::from_state(q).to_state();
    // Equal up to a global phase: |<q|back>| = 1.
    const Complex overlap = std::conj(q.x()) * back.x() + std::conj(q.y()) * back.y();
    CHECK(std::abs(overlap) == doctest::Approx(1.0).epsilon(1e-12));
    const StrategyParams p = StrategyParams::from_state(q);
    CHECK(p.theta >= 0.0);
    CHECK(p.theta <= M_PI);
    CHECK(p.phi >= 0.0);
    CHECK(p.phi < 2.0 * M_PI);
  }
}

TEST_CASE("outcome examples") {
  SUBCASE("CNOT on (|0>, |1>)") {
    const TwoQubitState s = outcome(cnot_game(), {QubitState::zero(), QubitState::one()});
    CHECK(std::abs(s[1] - 1.0) == 0.0);
    CHECK(std::abs(s[0]) + std::abs(s[2]) + std::abs(s[3]) == 0.0);
  }
  SUBCASE("identity on (|0>, |0>)") {
    const TwoQubitState s = outcome(identity_game(), {QubitState::zero(), QubitState::zero()});
    CHECK(std::abs(s[0] - 1.0) == 0.0);
  }
  SUBCASE("CNOT on (|+>, |0>) is the Bell state") {
    const TwoQubitState s = outcome(cnot_game(), {QubitState::plus(), QubitState::zero()});
    CHECK(std::abs(s[0] - kR) <= 1e-15);
    CHECK(std::abs(s[1]) <= 1e-15);
    CHECK(std::abs(s[2]) <= 1e-15);
    CHECK(std::abs(s[3] - kR) <= 1e-15);
  }
}

TEST_CASE("outcome matches the written-out row expansion and stays normalized") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 300; ++trial) {
    const QuantumGame g(random_unitary(rng));
    const Play p{random_qubit(rng), random_qubit(rng)};
    const TwoQubitState s = outcome(g, p);
    const auto ref = oracle::outcome(g.unitary().matrix(), oracle::from(p.a), oracle::from(p.b));
    for (int k = 0; k < 4; ++k) CHECK(std::abs(s[k] - ref[static_cast<std::size_t>(k)]) <= 1e-14);
    CHECK(std::abs(s.norm_squared() - 1.0) <= 1e-10);
  }
}

TEST_CASE("payoff_angle examples") {
  CHECK(payoff_angle(TwoQubitState::basis(0), 0) == 0.0);
  CHECK(payoff_angle(TwoQubitState::basis(1), 0) == doctest::Approx(M_PI / 2.0).epsilon(1e-15));
  // arccos(|1/sqrt(2)|^2) = arccos(1/2)
  CHECK(payoff_angle(TwoQubitState::bell(), 0) == doctest::Approx(M_PI / 3.0).epsilon(1e-14));
  CHECK_THROWS_AS(payoff_angle(TwoQubitState::bell(), 7), std::out_of_range);
}

TEST_CASE("payoff_angle agrees with arccos away from the endpoints") {
  std::mt19937_64 rng(123);
  for (int trial = 0; trial < 500; ++trial) {
    const QuantumGame g(random_unitary(rng));
    const TwoQubitState s = outcome(g, {random_qubit(rng), random_qubit(rng)});
    for (int t = 0; t < 4; ++t) {
      const double p = std::norm(s[t]);
      if (p < 1e-6 || p > 1.0 - 1e-6) continue;
      CHECK(payoff_angle(s, t) == doctest::Approx(std::acos(p)).epsilon(1e-9));
    }
  }
}

TEST_CASE("payoff angle stays accurate for near-perfect alignment") {
  // |amp|^2 rounds to 1 - 1e-16 here; a naive arccos would report ~1.5e-8.
  const Complex alpha = std::polar(1.0, 0.3);
  const Complex beta = std::polar(1.0, 1.1);
  const Payoffs pay = payoffs(cnot_game(), {QubitState(alpha, 0.0), QubitState(0.0, beta)});
  CHECK(std::abs(pay.player1 - M_PI / 2.0) <= 1e-15);
  CHECK(pay.player2 <= 1e-15);
}

TEST_CASE("payoffs examples") {
  const Payoffs a = payoffs(cnot_game(), {QubitState::zero(), QubitState::one()});
  CHECK(a.player1 == doctest::Approx(M_PI / 2.0).epsilon(1e-15));
  CHECK(a.player2 == 0.0);
  const Payoffs b = payoffs(identity_game(), {QubitState::zero(), QubitState::zero()});
  CHECK(b.player1 == 0.0);
  CHECK(b.player2 == M_PI / 2.0);
  const Payoffs c = payoffs(cnot_game(), {QubitState::plus(), QubitState::zero()});
  CHECK(c.player1 == doctest::Approx(M_PI / 3.0).epsilon(1e-14));
  CHECK(c.player2 == doctest::Approx(M_PI / 2.0).epsilon(1e-15));
}

TEST_CASE("payoffs are invariant under global phases of either strategy") {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 300; ++trial) {
    const QuantumGame g(random_unitary(rng));
    const Play p{random_qubit(rng), random_qubit(rng)};
    const Play q{p.a.with_phase(random_phase(rng)), p.b.with_phase(random_phase(rng))};
    const Payoffs x = payoffs(g, p);
    const Payoffs y = payoffs(g, q);
    CHECK(std::abs(x.player1 - y.player1) <= 1e-12);
    CHECK(std::abs(x.player2 - y.player2) <= 1e-12);
    CHECK(x.player1 >= 0.0);
    CHECK(x.player1 <= M_PI / 2.0);
    CHECK(x.player2 >= 0.0);
    CHECK(x.player2 <= M_PI / 2.0);
  }
}

TEST_CASE("strict competitiveness at the targets") {
  // Any game and play landing exactly on Player I's target.
  for (int t1 = 0; t1 < 4; ++t1) {
    for (int t2 = 0; t2 < 4; ++t2) {
      if (t1 == t2) continue;
      const PreferenceProfile prefs(t1, t2);
      const Payoffs pay{payoff_angle(TwoQubitState::basis(t1), prefs.player1_target()),
                        payoff_angle(TwoQubitState::basis(t1), prefs.player2_target())};
      CHECK(pay.player1 == 0.0);
      CHECK(pay.player2 == M_PI / 2.0);
    }
  }
}
