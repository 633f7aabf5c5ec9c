#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qgame/qcore.hpp"

namespace qgame {

namespace gates {

GameUnitary cnot();
GameUnitary swap();
GameUnitary cz();
GameUnitary hadamard_on_first();  // H (x) I
/// CNOT . (H (x) I): maps |00> to the Bell state.
GameUnitary bell_circuit();
/// Strict-mode mechanism whose equilibrium output from (|0>, |0>) is the
/// Bell state.
GameUnitary bell_mechanism();

}  // namespace gates

struct GateLibraryEntry {
  std::string name;
  GameUnitary unitary;
  std::string description;
};

const std::vector<GateLibraryEntry>& gate_library();
std::optional<GateLibraryEntry> find_gate(std::string_view name);

}  // namespace qgame
