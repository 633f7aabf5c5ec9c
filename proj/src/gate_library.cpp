#include "qgame/gate_library.hpp"

#include <cmath>

#include "qgame/mechanism.hpp"

namespace qgame {

namespace gates {

namespace {

GameUnitary permutation(const std::array<int, 4>& image) {
  Matrix4 m{};
  for (std::size_t c = 0; c < 4; ++c) m[static_cast<std::size_t>(image[c])][c] = 1.0;
  return GameUnitary(m);
}

}  // namespace

GameUnitary cnot() { return permutation({0, 1, 3, 2}); }
GameUnitary swap() { return permutation({0, 2, 1, 3}); }

GameUnitary cz() {
  Matrix4 m = identity_matrix();
  m[3][3] = -1.0;
  return GameUnitary(m);
}

GameUnitary hadamard_on_first() {
  const double r = 1.0 / std::sqrt(2.0);
  return GameUnitary(Matrix4{{{r, 0, r, 0}, {0, r, 0, r}, {r, 0, -r, 0}, {0, r, 0, -r}}});
}

GameUnitary bell_circuit() {
  return GameUnitary(multiply(cnot().matrix(), hadamard_on_first().matrix()));
}

GameUnitary bell_mechanism() {
  return synthesize_mechanism({TwoQubitState::bell()}, StrictAllDeviations{});
}

}  // namespace gates

const std::vector<GateLibraryEntry>& gate_library() {
  static const std::vector<GateLibraryEntry> library{
      {"identity", GameUnitary::identity(), "I (x) I; the outcome is the product of the strategies"},
      {"cnot", gates::cnot(), "controlled-NOT, control on the first qubit"},
      {"swap", gates::swap(), "exchanges the two qubits"},
      {"cz", gates::cz(), "controlled-Z, diag(1, 1, 1, -1)"},
      {"bell_circuit", gates::bell_circuit(), "CNOT . (H (x) I); maps |00> to (|00> + |11>)/sqrt(2)"},
      {"bell_mechanism", gates::bell_mechanism(),
       "strict-mode mechanism with (|00> + |11>)/sqrt(2) as equilibrium output of (|0>, |0>)"},
  };
  return library;
}

std::optional<GateLibraryEntry> find_gate(std::string_view name) {
  for (const auto& entry : gate_library()) {
    if (entry.name == name) return entry;
  }
  return std::nullopt;
}

}  // namespace qgame
