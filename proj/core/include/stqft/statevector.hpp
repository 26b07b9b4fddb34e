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

#include <cstdint>
#include <span>
#include <vector>

#include "stqft/linalg.hpp"

namespace stqft {

using Qubit = unsigned;

class QuantumState;
namespace detail {
struct StateAccess;
}  // namespace detail

/// Dense state vector over 2^n basis states, n >= 1.
///
/// Qubit ordering is little-endian: qubit q is bit q of the basis index, so
/// qubit 0 is the least-significant bit. When an operation takes an ordered
/// qubit subset, subset[0] is the least-significant bit of the sub-index the
/// operation acts on.
///
/// States are values. Every operation below takes a state by value and
/// returns the transformed state; pass an rvalue to avoid the copy.
class QuantumState {
 public:
  /// Requires a length 2^n (n >= 1) vector of unit norm within 1e-12.
  static QuantumState from_amplitudes(ComplexVector amplitudes);
  /// Scales an arbitrary nonzero vector of length 2^n onto the unit sphere.
  static QuantumState normalized(ComplexVector amplitudes);
  static QuantumState normalized(std::span<const double> amplitudes);
  static QuantumState basis(unsigned num_qubits, std::uint64_t index);
  /// |high> (x) |low>: low occupies qubits 0..low.num_qubits()-1.
  static QuantumState tensor(const QuantumState& low, const QuantumState& high);

  unsigned num_qubits() const noexcept { return num_qubits_; }
  std::size_t dim() const noexcept { return amplitudes_.size(); }
  std::span<const Complex> amplitudes() const noexcept { return amplitudes_; }
  Complex amplitude(std::uint64_t index) const { return amplitudes_.at(index); }
  double norm() const { return stqft::norm(amplitudes_); }
  /// Real parts of the amplitudes.
  RealVector real_amplitudes() const;

 private:
  explicit QuantumState(ComplexVector amplitudes);

  unsigned num_qubits_ = 0;
  ComplexVector amplitudes_;

  friend struct detail::StateAccess;
};

struct PostselectOutcome {
  /// Renormalized state on the qubits not in the selected subset, in
  /// ascending order of their original indices.
  QuantumState state;
  /// Squared norm of the selected slice before renormalization.
  double probability;
};

/// Unitary DFT with F[k][j] = exp(-2 pi i jk / M) / sqrt(M) on the subset,
/// built from Hadamards, controlled phases and a final bit-reversal.
QuantumState apply_qft(QuantumState state, std::span<const Qubit> qubits);
QuantumState apply_iqft(QuantumState state, std::span<const Qubit> qubits);

QuantumState apply_hadamard(QuantumState state, Qubit qubit);
QuantumState apply_ry(QuantumState state, Qubit qubit, double angle);
QuantumState apply_rz(QuantumState state, Qubit qubit, double angle);
QuantumState apply_single_qubit(QuantumState state, Qubit qubit, const Complex (&gate)[2][2]);
/// Multiplies the amplitude by exp(i angle) when both qubits are |1>.
QuantumState apply_controlled_phase(QuantumState state, Qubit control, Qubit target,
                                    double angle);
QuantumState apply_cnot(QuantumState state, Qubit control, Qubit target);
QuantumState apply_swap(QuantumState state, Qubit a, Qubit b);

/// |i>_c |j>_t -> |i>_c |j xor i>_t, pairing controls[k] with targets[k].
QuantumState apply_transversal_cnot(QuantumState state, std::span<const Qubit> controls,
                                    std::span<const Qubit> targets);

/// Applies a 2^k x 2^k unitary to the ordered subset (k = subset size).
/// The matrix must be unitary within 1e-10.
QuantumState apply_unitary(QuantumState state, const CMatrix& unitary,
                           std::span<const Qubit> qubits);

/// Applies `unitary` to the remaining qubits (ascending order) on the
/// control = |1> branch; identity on the control = |0> branch.
QuantumState apply_controlled_unitary(QuantumState state, Qubit control, const CMatrix& unitary);

/// Conditions the subset on `outcome` (bit b of outcome is qubits[b]).
/// Throws ZeroProbabilityOutcome when the selected slice is empty.
PostselectOutcome postselect(const QuantumState& state, std::span<const Qubit> qubits,
                             std::uint64_t outcome);

/// Probability of observing  on the subset.
double outcome_probability(const QuantumState& state, std::span<const Qubit> qubits,
                           std::uint64_t outcome);

/// Multinomial draw of `shots` full-register measurements. Deterministic for a
/// fixed seed. Returns one count per basis index.
std::vector<std::uint64_t> sample_readout(const QuantumState& state, std::uint64_t shots,
                                          std::uint64_t seed);

/// Convenience: 0, 1, ..., count-1 offset by `first`.
std::vector<Qubit> qubit_range(Qubit first, unsigned count);

}  // namespace stqft
