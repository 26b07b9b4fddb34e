// Copyright 2026 The STQFT Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "stqft/linalg.hpp"
#include "stqft/statevector.hpp"

namespace stqft {

enum class GateKind { RY, RZ, H, CNOT, SWAP };

struct Gate {
  GateKind kind;
  /// Target for RY/RZ/H; control for CNOT; first qubit for SWAP.
  Qubit q0 = 0;
  /// Target for CNOT; second qubit for SWAP; unused otherwise.
  Qubit q1 = 0;
  /// Radians, RY/RZ only.
  double angle = 0.0;

  static Gate ry(Qubit q, double angle) { return {GateKind::RY, q, 0, angle}; }
  static Gate rz(Qubit q, double angle) { return {GateKind::RZ, q, 0, angle}; }
  static Gate h(Qubit q) { return {GateKind::H, q, 0, 0.0}; }
  static Gate cnot(Qubit control, Qubit target) { return {GateKind::CNOT, control, target, 0.0}; }
  static Gate swap(Qubit a, Qubit b) { return {GateKind::SWAP, a, b, 0.0}; }

  bool is_rotation() const noexcept { return kind == GateKind::RY || kind == GateKind::RZ; }
  bool operator==(const Gate&) const = default;
};

/// Gates in application order (gates.front() acts first).
using GateList = std::vector<Gate>;

QuantumState apply_gate(QuantumState state, const Gate& gate);
QuantumState apply_gates(QuantumState state, const GateList& gates);

/// Dense matrix of the whole circuit on `num_qubits` qubits.
CMatrix compose_gates(const GateList& gates, unsigned num_qubits);

std::size_t rotation_count(const GateList& gates);

/// Line-oriented text: `RY q angle`, `RZ q angle`, `H q`, `CNOT c t`,
/// `SWAP a b`. Blank lines and lines starting with '#' are ignored.
void write_gate_list(std::ostream& out, const GateList& gates);
GateList read_gate_list(std::istream& in);
std::string to_text(const GateList& gates);
GateList gate_list_from_text(const std::string& text);

}  // namespace stqft
