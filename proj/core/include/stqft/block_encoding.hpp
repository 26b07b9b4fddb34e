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

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>

#include "stqft/circuit.hpp"
#include "stqft/linalg.hpp"

namespace stqft {

/// Unitary whose top-left 2^n x 2^n block is diag(encoded_diagonal) / alpha.
///
/// System qubits are 0..n-1 and the ancillas sit above them, so the
/// top-left block is the ancilla = |0...0> subspace.
struct BlockEncoding {
  CMatrix unitary;
  unsigned num_system_qubits = 0;
  unsigned ancilla_count = 0;
  double subnormalization = 1.0;
  ComplexVector encoded_diagonal;

  unsigned total_qubits() const { return num_system_qubits + ancilla_count; }
  /// The 2^n x 2^n block the encoding exposes.
  CMatrix top_left_block() const;
};

/// One-ancilla completion: per diagonal entry d the (system i, ancilla)
/// 2x2 block is [[d, s], [s, -conj(d)]] with s = sqrt(1 - |d|^2).
/// Throws EntryMagnitudeExceedsOne when some |d| > 1.
BlockEncoding build_diagonal_block_encoding(std::span<const Complex> diagonal);

/// Multiplexed-rotation circuit for a diagonal one-ancilla block encoding.
struct FableCircuit {
  GateList gates;
  unsigned num_qubits = 0;
  std::size_t kept_rotations = 0;
  std::size_t dropped_rotations = 0;
  /// max |compose(gates) - block.unitary|, always computed.
  double max_error = 0.0;
};

/// Emits Rz-mux, a fixed Z on the ancilla, Ry-mux with angles
/// 2 arccos|d_i|, and a second Rz-mux. The multiplexors use the Gray-code
/// CNOT ladder over the system qubits; transformed angles with magnitude
/// below `compression_threshold` are dropped and the CNOTs around them merged.
FableCircuit fable_decompose_diagonal(const BlockEncoding& block, double compression_threshold);

/// Uniformly controlled rotation: target gets R(angles[i]) when the controls
/// (controls[0] least significant) read i. Appended to `out`. Returns the
/// number of rotations dropped by the threshold.
std::size_t append_multiplexed_rotation(GateList& out, GateKind axis,
                                        std::span<const Qubit> controls, Qubit target,
                                        std::span<const double> angles, double threshold);

/// Cancels CNOTs that meet again with nothing but same-target CNOTs between.
GateList merge_cnot_runs(const GateList& gates);

/// Binary, little-endian: u64 dimension, u64 ancilla_count, f64
/// subnormalization, then dimension^2 (re, im) f64 pairs in row-major order.
void write_block_encoding(std::ostream& out, const BlockEncoding& block);
BlockEncoding read_block_encoding(std::istream& in);
void save_block_encoding(const std::string& path, const BlockEncoding& block);
BlockEncoding load_block_encoding(const std::string& path);

}  // namespace stqft
