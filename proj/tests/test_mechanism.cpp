#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "qgame/gate_library.hpp"
#include "qgame/mechanism.hpp"

using namespace qgame;

namespace {

const double kR = 1.0 / std::sqrt(2.0);

MechanismTarget bell_target() { return {TwoQubitState::bell()}; }

const EntryConstraint* find_constraint(const std::vector<EntryConstraint>& cs, int row, int col) {
  for (const auto& c : cs) {
    if (c.row == row && c.col == col) return &c;
  }
  return nullptr;
}

double overlap(const QubitState& s, const QubitState& t) {
  return std::abs(std::conj(s.x()) * t.x() + std::conj(s.y()) * t.y());
}

}  // namespace

TEST_CASE("analyze_cnot") {
  const CnotReport r = analyze_cnot();
  CHECK(r.phase_family.size() == 16);
  CHECK(r.family_certified);
  for (const auto& c : r.phase_family) {
    CHECK(c.is_equilibrium);
    CHECK(std::abs(c.payoff1 - M_PI / 2.0) <= 1e-9);
    CHECK(std::abs(c.payoff2) <= 1e-9);
  }
  CHECK_FALSE(r.ground_play.is_equilibrium);
  REQUIRE(r.ground_play.witness_player);
  CHECK(*r.ground_play.witness_player == Player::two);
  CHECK(r.coefficient_formulas_hold);
  const auto& c = r.coefficients_at_equilibrium;
  CHECK(c.p == 0.0);
  CHECK(c.q == 0.0);
  CHECK(c.p_prime == 0.0);
  CHECK(c.q_prime == 1.0);
  CHECK(r.player1_condition_holds);
  CHECK(r.player2_condition_holds);
  // Equilibrium outputs are product states.
  CHECK(r.max_output_concurrence <= 1e-15);
}

TEST_CASE("derive_constraints for the Bell target") {
  const auto cs = derive_constraints(bell_target());
  const EntryConstraint* zero = find_constraint(cs, 1, 0);
  REQUIRE(zero);
  CHECK(zero->kind == ConstraintKind::kEqualsZero);
  CHECK(zero->label() == "U21");
  const EntryConstraint* first = find_constraint(cs, 0, 0);
  REQUIRE(first);
  CHECK(first->kind == ConstraintKind::kEqualsValue);
  CHECK(std::abs(first->value - kR) <= 1e-15);
  const EntryConstraint* last = find_constraint(cs, 3, 0);
  REQUIRE(last);
  CHECK(std::abs(last->value - kR) <= 1e-15);

  const EntryConstraint* bound = find_constraint(cs, 0, 2);
  REQUIRE(bound);
  CHECK(bound->kind == ConstraintKind::kModulusBound);
  CHECK(bound->label() == "U13");
  CHECK(bound->bound(0.0, 1.0) == doctest::Approx(kR).epsilon(1e-15));
  CHECK(std::isinf(bound->bound(1.0, 0.0)));
}

TEST_CASE("derive_constraints for a basis target fixes column 1 to (1, 0, 0, 0)") {
  const auto cs = derive_constraints({TwoQubitState::basis(0)});
  for (int r = 0; r < 4; ++r) {
    const EntryConstraint* c = find_constraint(cs, r, 0);
    REQUIRE(c);
    CHECK(c->value == Complex(r == 0 ? 1.0 : 0.0, 0.0));
    CHECK(c->kind == (r == 0 ? ConstraintKind::kEqualsValue : ConstraintKind::kEqualsZero));
  }
}

TEST_CASE("the modulus bound is nonnegative and nonincreasing in both moduli") {
  const auto cs = derive_constraints(bell_target());
  const EntryConstraint* bound = find_constraint(cs, 0, 2);
  REQUIRE(bound);
  for (int i = 1; i < 40; ++i) {
    for (int j = 1; j < 40; ++j) {
      const double x = i / 40.0;
      const double y = j / 40.0;
      if (x * x + y * y >= 1.0) continue;
      const double b = bound->bound(x, y);
      CHECK(b >= 0.0);
      CHECK(bound->bound(x + 0.01, y) <= b);
      CHECK(bound->bound(x, y + 0.01) <= b);
    }
  }
}

TEST_CASE("strict synthesis for the Bell target") {
  const GameUnitary u = synthesize_mechanism(bell_target(), StrictAllDeviations{});
  CHECK(check_unitary(u.matrix(), 1e-10));
  CHECK(std::abs(u(0, 0) - kR) <= 1e-15);
  CHECK(std::abs(u(1, 0)) <= 1e-15);
  CHECK(std::abs(u(2, 0)) <= 1e-15);
  CHECK(std::abs(u(3, 0) - kR) <= 1e-15);
  CHECK(std::abs(u(0, 2)) <= 1e-15);  // U13
  CHECK(std::abs(u(1, 1)) <= 1e-15);  // U22

  const MechanismCertificate m = certify_mechanism(u, bell_target());
  CHECK(m.certified);
  CHECK(m.fidelity >= 1.0 - 1e-12);
  CHECK(m.certificate.is_equilibrium);

  const DeviationSweep sweep = deviation_sweep(QuantumGame(u), {QubitState::zero(), QubitState::zero()});
  CHECK(sweep.samples == 37 * 72);
  CHECK(sweep.max_improvement1 <= 1e-9);
  CHECK(sweep.max_improvement2 <= 1e-9);
}

TEST_CASE("the hand-written strict Bell mechanism certifies") {
  Matrix4 m{};
  m[0] = {kR, kR, 0.0, 0.0};
  m[1] = {0.0, 0.0, 1.0, 0.0};
  m[2] = {0.0, 0.0, 0.0, 1.0};
  m[3] = {kR, -kR, 0.0, 0.0};
  const GameUnitary u(m);
  const MechanismCertificate c = certify_mechanism(u, bell_target());
  CHECK(c.fidelity == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(c.certified);
}

TEST_CASE("strict synthesis for a basis target") {
  // The identity reproduces |00> but lets Player II move to |1> and land on
  // |01>; strict synthesis must route that deviation elsewhere.
  const MechanismTarget t{TwoQubitState::basis(0)};
  CHECK_FALSE(certify_mechanism(GameUnitary::identity(), t).certified);
  const GameUnitary u = synthesize_mechanism(t, StrictAllDeviations{});
  CHECK(std::abs(u(0, 0) - 1.0) <= 1e-15);
  CHECK(std::abs(u(1, 1)) <= 1e-15);
  CHECK(certify_mechanism(u, t).certified);
}

TEST_CASE("paper_bound synthesis respects the bound at its deviation") {
  SUBCASE("Bell target, deviation |1>") {
    const MechanismTarget t = bell_target();
    const GameUnitary u = synthesize_mechanism(t, PaperBoundAtDeviation{QubitState::one()});
    CHECK(check_unitary(u.matrix(), 1e-10));
    CHECK(std::abs(u(0, 2)) <= kR + 1e-12);
    const MechanismCertificate c = certify_mechanism(u, t);
    CHECK(c.fidelity >= 1.0 - 1e-12);
    // Whatever the verdict, it must agree with brute-force deviations.
    const DeviationSweep sweep = deviation_sweep(QuantumGame(u), t.input_play);
    const bool sweep_clean = sweep.max_improvement1 <= 1e-9 && sweep.max_improvement2 <= 1e-9;
    CHECK(sweep_clean == c.certificate.is_equilibrium);
  }
  SUBCASE("random targets, inputs and deviations") {
    std::mt19937_64 rng(55);
    for (int trial = 0; trial < 200; ++trial) {
      const MechanismTarget t{apply(random_unitary(rng), TwoQubitState::basis(0)),
                              {random_qubit(rng), random_qubit(rng)}};
      const QubitState d = random_qubit(rng);
      const GameUnitary u = synthesize_mechanism(t, PaperBoundAtDeviation{d});
      CHECK(check_unitary(u.matrix(), 1e-10));
      CHECK(fidelity(t.target_output, outcome(QuantumGame(u), t.input_play)) >= 1.0 - 1e-12);

      const Matrix4 adapted = multiply(u.matrix(), input_frame(t.input_play));
      const QubitState& a = t.input_play.a;
      const double x = overlap(a, d);
      const double y = overlap(a.orthogonal(), d);
      for (const auto& c : derive_constraints(t)) CHECK(c.satisfied_by(adapted, x, y, 1e-10));
    }
  }
}

TEST_CASE("strict synthesis always certifies") {
  std::mt19937_64 rng(303);
  for (int trial = 0; trial < 300; ++trial) {
    const int t1 = trial % 4;
    const int t2 = (t1 + 1 + trial / 4 % 3) % 4;
    const MechanismTarget t{apply(random_unitary(rng), TwoQubitState::basis(0)),
                            {random_qubit(rng), random_qubit(rng)},
                            PreferenceProfile(t1, t2)};
    const GameUnitary u = synthesize_mechanism(t, StrictAllDeviations{});
    CHECK(check_unitary(u.matrix(), 1e-10));
    const MechanismCertificate c = certify_mechanism(u, t);
    CHECK(c.fidelity >= 1.0 - 1e-12);
    CHECK(c.certified);
  }
}

TEST_CASE("strict Bell mechanisms certify for every Player I deviation the sweep can find") {
  const GameUnitary u = synthesize_mechanism(bell_target(), StrictAllDeviations{});
  const QuantumGame g(u);
  const Play play{QubitState::zero(), QubitState::zero()};
  // Closed-form bound for Player I: sqrt(|U11|^2 + |U13|^2) = 1/sqrt(2).
  CHECK(std::hypot(std::abs(u(0, 0)), std::abs(u(0, 2))) == doctest::Approx(kR).epsilon(1e-15));
  CHECK(best_response_value(g, Player::two, play.a) <= 1e-15);
  const DeviationSweep fine = deviation_sweep(g, play, GridSpec{91, 180});
  CHECK(fine.max_improvement1 <= 1e-12);
  CHECK(fine.max_improvement2 <= 1e-12);
}

TEST_CASE("certify_mechanism examples") {
  SUBCASE("bell_circuit reproduces the Bell state but is not an equilibrium") {
    const MechanismCertificate c = certify_mechanism(gates::bell_circuit(), bell_target());
    CHECK(c.fidelity == doctest::Approx(1.0).epsilon(1e-15));
    CHECK_FALSE(c.certificate.is_equilibrium);
    CHECK_FALSE(c.certified);
    REQUIRE(c.certificate.witness_player);
    CHECK(*c.certificate.witness_player == Player::one);
    REQUIRE(c.certificate.witness);
    CHECK(overlap(*c.certificate.witness, QubitState::plus()) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(c.certificate.best1 == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(c.certificate.amplitude1 == doctest::Approx(kR).epsilon(1e-15));
  }
  SUBCASE("identity misses the Bell state") {
    const MechanismCertificate c = certify_mechanism(GameUnitary::identity(), bell_target());
    CHECK(c.fidelity == doctest::Approx(0.5).epsilon(1e-15));
    CHECK_FALSE(c.certified);
  }
}

TEST_CASE("violating a zero constraint of the Bell target fails certification") {
  std::mt19937_64 rng(20);
  std::uniform_real_distribution<double> size(0.01, 0.5);
  const TwoQubitState m = TwoQubitState::bell();
  for (int trial = 0; trial < 20; ++trial) {
    // Leak some weight into a row the target requires to vanish.
    const int row = 1 + trial % 2;
    Vector4 col = m.amplitudes();
    col[static_cast<std::size_t>(row)] = size(rng) * random_phase(rng);
    const TwoQubitState c = TwoQubitState::normalized(col);
    const GameUnitary base = complete_unitary(c);
    // Rotate the last two completion columns so violators vary.
    Matrix4 block = identity_matrix();
    const QubitState s = random_qubit(rng);
    block[2][2] = s.x();
    block[3][2] = s.y();
    block[2][3] = -std::conj(s.y());
    block[3][3] = std::conj(s.x());
    const GameUnitary u(multiply(base.matrix(), block));

    const auto cs = derive_constraints(bell_target());
    const EntryConstraint* zero = find_constraint(cs, row, 0);
    REQUIRE(zero);
    CHECK_FALSE(zero->satisfied_by(u.matrix(), 1.0, 0.0, 1e-12));
    CHECK_FALSE(certify_mechanism(u, bell_target()).certified);
  }
}

TEST_CASE("input_frame is unitary and sends the ground state to the input play") {
  std::mt19937_64 rng(91);
  for (int trial = 0; trial < 50; ++trial) {
    const Play p{random_qubit(rng), random_qubit(rng)};
    const Matrix4 w = input_frame(p);
    CHECK(unitarity_defect(w) <= 1e-13);
    const TwoQubitState ab = tensor(p.a, p.b);
    for (std::size_t k = 0; k < 4; ++k) CHECK(std::abs(w[k][0] - ab[static_cast<int>(k)]) <= 1e-15);
  }
}
