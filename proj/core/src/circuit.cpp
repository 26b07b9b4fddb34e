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

#include "stqft/circuit.hpp"

#include <algorithm>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "stqft/error.hpp"

namespace stqft {

QuantumState apply_gate(QuantumState state, const Gate& gate) {
  switch (gate.kind) {
    case GateKind::RY: return apply_ry(std::move(state), gate.q0, gate.angle);
    case GateKind::RZ: return apply_rz(std::move(state), gate.q0, gate.angle);
    case GateKind::H: return apply_hadamard(std::move(state), gate.q0);
    case GateKind::CNOT: return apply_cnot(std::move(state), gate.q0, gate.q1);
    case GateKind::SWAP: return apply_swap(std::move(state), gate.q0, gate.q1);
  }
  return state;
}

QuantumState apply_gates(QuantumState state, const GateList& gates) {
  for (const auto& g : gates) state = apply_gate(std::move(state), g);
  return state;
}

CMatrix compose_gates(const GateList& gates, unsigned num_qubits) {
  const std::size_t dim = std::size_t{1} << num_qubits;
  CMatrix out(dim);
  for (std::size_t col = 0; col < dim; ++col) {
    const auto column = apply_gates(QuantumState::basis(num_qubits, col), gates);
    const auto amps = column.amplitudes();
    for (std::size_t row = 0; row < dim; ++row) out(row, col) = amps[row];
  }
  return out;
}

std::size_t rotation_count(const GateList& gates) {
  return static_cast<std::size_t>(
      std::count_if(gates.begin(), gates.end(), [](const Gate& g) { return g.is_rotation(); }));
}

void write_gate_list(std::ostream& out, const GateList& gates) {
  const auto flags = out.flags();
  const auto precision = out.precision();
  out << std::setprecision(std::numeric_limits<double>::max_digits10);
  for (const auto& g : gates) {
    switch (g.kind) {
      case GateKind::RY: out << "RY " << g.q0 << ' ' << g.angle << '\n'; break;
      case GateKind::RZ: out << "RZ " << g.q0 << ' ' << g.angle << '\n'; break;
      case GateKind::H: out << "H " << g.q0 << '\n'; break;
      case GateKind::CNOT: out << "CNOT " << g.q0 << ' ' << g.q1 << '\n'; break;
      case GateKind::SWAP: out << "SWAP " << g.q0 << ' ' << g.q1 << '\n'; break;
    }
  }
  out.flags(flags);
  out.precision(precision);
}

GateList read_gate_list(std::istream& in) {
  GateList gates;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream fields(line);
    std::string name;
    fields >> name;
    Gate g{};
    bool ok = true;
    if (name == "RY" || name == "RZ") {
      g.kind = name == "RY" ? GateKind::RY : GateKind::RZ;
      ok = static_cast<bool>(fields >> g.q0 >> g.angle);
    } else if (name == "H") {
      g.kind = GateKind::H;
      ok = static_cast<bool>(fields >> g.q0);
    } else if (name == "CNOT" || name == "SWAP") {
      g.kind = name == "CNOT" ? GateKind::CNOT : GateKind::SWAP;
      ok = static_cast<bool>(fields >> g.q0 >> g.q1);
    } else {
      ok = false;
    }
    std::string trailing;
    if (!ok || (fields >> trailing))
      throw Error(ErrorCode::MalformedFile,
                  "gate list line " + std::to_string(line_no) + ": '" + line + "'");
    gates.push_back(g);
  }
  return gates;
}

std::string to_text(const GateList& gates) {
  std::ostringstream out;
  write_gate_list(out, gates);
  return out.str();
}

GateList gate_list_from_text(const std::string& text) {
  std::istringstream in(text);
  return read_gate_list(in);
}

}  // namespace stqft
