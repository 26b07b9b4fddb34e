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

#include "stqft/statevector.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>
#include <string>

#include "stqft/error.hpp"

namespace stqft {

namespace detail {

struct StateAccess {
  static ComplexVector& amps(QuantumState& s) { return s.amplitudes_; }
  static QuantumState make(ComplexVector v) { return QuantumState(std::move(v)); }
};

}  // namespace detail

namespace {

using detail::StateAccess;

constexpr double kNormTolerance = 1e-12;
constexpr double kUnitaryTolerance = 1e-10;

void check_qubit(const QuantumState& s, Qubit q) {
  if (q >= s.num_qubits())
    throw Error(ErrorCode::InvalidQubitIndex,
                "qubit " + std::to_string(q) + " out of range for " +
                    std::to_string(s.num_qubits()) + "-qubit state");
}

std::uint64_t subset_mask(const QuantumState& s, std::span<const Qubit> qubits) {
  std::uint64_t mask = 0;
  for (Qubit q : qubits) {
    check_qubit(s, q);
    const std::uint64_t bit = std::uint64_t{1} << q;
    if (mask & bit)
      throw Error(ErrorCode::InvalidQubitIndex, "repeated qubit " + std::to_string(q));
    mask |= bit;
  }
  return mask;
}

// offsets[s] = basis-index contribution of sub-index s scattered over qubits.
std::vector<std::uint64_t> scatter_offsets(std::span<const Qubit> qubits) {
  std::vector<std::uint64_t> offsets(std::size_t{1} << qubits.size());
  for (std::size_t s = 0; s < offsets.size(); ++s) {
    std::uint64_t off = 0;
    for (std::size_t b = 0; b < qubits.size(); ++b)
      if ((s >> b) & 1U) off |= std::uint64_t{1} << qubits[b];
    offsets[s] = off;
  }
  return offsets;
}

unsigned qubits_for_length(std::size_t length) {
  if (length < 2 || !is_power_of_two(length))
    throw Error(ErrorCode::InvalidState,
                "amplitude vector length " + std::to_string(length) +
                    " is not 2^n with n >= 1");
  return log2_exact(length);
}

}  // namespace

QuantumState::QuantumState(ComplexVector amplitudes)
    : num_qubits_(qubits_for_length(amplitudes.size())), amplitudes_(std::move(amplitudes)) {}

QuantumState QuantumState::from_amplitudes(ComplexVector amplitudes) {
  QuantumState s(std::move(amplitudes));
  if (std::abs(s.norm() - 1.0) > kNormTolerance)
    throw Error(ErrorCode::InvalidState, "amplitudes are not unit norm");
  return s;
}

QuantumState QuantumState::normalized(ComplexVector amplitudes) {
  const double n = stqft::norm(amplitudes);
  if (n == 0.0 || !std::isfinite(n))
    throw Error(ErrorCode::InvalidState, "cannot normalize a zero or non-finite vector");
  for (auto& a : amplitudes) a /= n;
  return QuantumState(std::move(amplitudes));
}

QuantumState QuantumState::normalized(std::span<const double> amplitudes) {
  return normalized(ComplexVector(amplitudes.begin(), amplitudes.end()));
}

QuantumState QuantumState::basis(unsigned num_qubits, std::uint64_t index) {
  if (num_qubits == 0 || num_qubits >= 63)
    throw Error(ErrorCode::InvalidState, "unsupported qubit count");
  ComplexVector amps(std::size_t{1} << num_qubits);
  if (index >= amps.size()) throw Error(ErrorCode::InvalidState, "basis index out of range");
  amps[index] = 1.0;
  return QuantumState(std::move(amps));
}

QuantumState QuantumState::tensor(const QuantumState& low, const QuantumState& high) {
  ComplexVector amps(low.dim() * high.dim());
  for (std::size_t h = 0; h < high.dim(); ++h)
    for (std::size_t l = 0; l < low.dim(); ++l)
      amps[h * low.dim() + l] = high.amplitudes_[h] * low.amplitudes_[l];
  return QuantumState(std::move(amps));
}

RealVector QuantumState::real_amplitudes() const {
  RealVector out(amplitudes_.size());
  std::transform(amplitudes_.begin(), amplitudes_.end(), out.begin(),
                 [](const Complex& z) { return z.real(); });
  return out;
}

QuantumState apply_single_qubit(QuantumState state, Qubit qubit, const Complex (&gate)[2][2]) {
  check_qubit(state, qubit);
  auto& amps = StateAccess::amps(state);
  const std::uint64_t bit = std::uint64_t{1} << qubit;
  for (std::uint64_t i = 0; i < amps.size(); ++i) {
    if (i & bit) continue;
    const Complex a0 = amps[i];
    const Complex a1 = amps[i | bit];
    amps[i] = gate[0][0] * a0 + gate[0][1] * a1;
    amps[i | bit] = gate[1][0] * a0 + gate[1][1] * a1;
  }
  return state;
}

QuantumState apply_hadamard(QuantumState state, Qubit qubit) {
  const double h = 1.0 / std::numbers::sqrt2;
  const Complex gate[2][2] = {{h, h}, {h, -h}};
  return apply_single_qubit(std::move(state), qubit, gate);
}

QuantumState apply_ry(QuantumState state, Qubit qubit, double angle) {
  const double c = std::cos(angle / 2.0);
  const double s = std::sin(angle / 2.0);
  const Complex gate[2][2] = {{c, -s}, {s, c}};
  return apply_single_qubit(std::move(state), qubit, gate);
}

QuantumState apply_rz(QuantumState state, Qubit qubit, double angle) {
  const Complex gate[2][2] = {{std::polar(1.0, -angle / 2.0), 0.0},
                              {0.0, std::polar(1.0, angle / 2.0)}};
  return apply_single_qubit(std::move(state), qubit, gate);
}

QuantumState apply_controlled_phase(QuantumState state, Qubit control, Qubit target,
                                    double angle) {
  check_qubit(state, control);
  check_qubit(state, target);
  if (control == target) throw Error(ErrorCode::IndexOverlap, "control equals target");
  auto& amps = StateAccess::amps(state);
  const std::uint64_t both = (std::uint64_t{1} << control) | (std::uint64_t{1} << target);
  const Complex phase = std::polar(1.0, angle);
  for (std::uint64_t i = 0; i < amps.size(); ++i)
    if ((i & both) == both) amps[i] *= phase;
  return state;
}

QuantumState apply_cnot(QuantumState state, Qubit control, Qubit target) {
  check_qubit(state, control);
  check_qubit(state, target);
  if (control == target) throw Error(ErrorCode::IndexOverlap, "control equals target");
  auto& amps = StateAccess::amps(state);
  const std::uint64_t cbit = std::uint64_t{1} << control;
  const std::uint64_t tbit = std::uint64_t{1} << target;
  for (std::uint64_t i = 0; i < amps.size(); ++i)
    if ((i & cbit) && !(i & tbit)) std::swap(amps[i], amps[i | tbit]);
  return state;
}

QuantumState apply_swap(QuantumState state, Qubit a, Qubit b) {
  check_qubit(state, a);
  check_qubit(state, b);
  if (a == b) return state;
  auto& amps = StateAccess::amps(state);
  const std::uint64_t abit = std::uint64_t{1} << a;
  const std::uint64_t bbit = std::uint64_t{1} << b;
  for (std::uint64_t i = 0; i < amps.size(); ++i)
    if ((i & abit) && !(i & bbit)) std::swap(amps[i], amps[(i ^ abit) | bbit]);
  return state;
}

QuantumState apply_qft(QuantumState state, std::span<const Qubit> qubits) {
  subset_mask(state, qubits);
  const std::size_t m = qubits.size();
  for (std::size_t j = m; j-- > 0;) {
    state = apply_hadamard(std::move(state), qubits[j]);
    for (std::size_t k = j; k-- > 0;) {
      const double angle = -std::numbers::pi / static_cast<double>(std::uint64_t{1} << (j - k));
      state = apply_controlled_phase(std::move(state), qubits[k], qubits[j], angle);
    }
  }
  for (std::size_t i = 0; i < m / 2; ++i)
    state = apply_swap(std::move(state), qubits[i], qubits[m - 1 - i]);
  return state;
}

QuantumState apply_iqft(QuantumState state, std::span<const Qubit> qubits) {
  subset_mask(state, qubits);
  const std::size_t m = qubits.size();
  for (std::size_t i = 0; i < m / 2; ++i)
    state = apply_swap(std::move(state), qubits[i], qubits[m - 1 - i]);
  for (std::size_t j = 0; j < m; ++j) {
    for (std::size_t k = 0; k < j; ++k) {
      const double angle = std::numbers::pi / static_cast<double>(std::uint64_t{1} << (j - k));
      state = apply_controlled_phase(std::move(state), qubits[k], qubits[j], angle);
    }
    state = apply_hadamard(std::move(state), qubits[j]);
  }
  return state;
}

QuantumState apply_transversal_cnot(QuantumState state, std::span<const Qubit> controls,
                                    std::span<const Qubit> targets) {
  if (controls.size() != targets.size())
    throw Error(ErrorCode::DimensionMismatch, "control and target lists differ in length");
  const std::uint64_t cmask = subset_mask(state, controls);
  const std::uint64_t tmask = subset_mask(state, targets);
  if (cmask & tmask) throw Error(ErrorCode::IndexOverlap, "controls and targets overlap");
  for (std::size_t k = 0; k < controls.size(); ++k)
    state = apply_cnot(std::move(state), controls[k], targets[k]);
  return state;
}

QuantumState apply_unitary(QuantumState state, const CMatrix& unitary,
                           std::span<const Qubit> qubits) {
  const std::uint64_t mask = subset_mask(state, qubits);
  const std::size_t sub_dim = std::size_t{1} << qubits.size();
  if (unitary.dim() != sub_dim)
    throw Error(ErrorCode::DimensionMismatch,
                "unitary of dimension " + std::to_string(unitary.dim()) + " applied to " +
                    std::to_string(qubits.size()) + " qubits");
  if (unitarity_deviation(unitary) > kUnitaryTolerance)
    throw Error(ErrorCode::NotUnitary, "matrix deviates from unitarity by more than 1e-10");

  const auto offsets = scatter_offsets(qubits);
  auto& amps = StateAccess::amps(state);
  ComplexVector gathered(sub_dim);
  for (std::uint64_t base = 0; base < amps.size(); ++base) {
    if (base & mask) continue;
    for (std::size_t s = 0; s < sub_dim; ++s) gathered[s] = amps[base | offsets[s]];
    for (std::size_t r = 0; r < sub_dim; ++r) {
      Complex acc{};
      for (std::size_t c = 0; c < sub_dim; ++c) acc += unitary(r, c) * gathered[c];
      amps[base | offsets[r]] = acc;
    }
  }
  return state;
}

QuantumState apply_controlled_unitary(QuantumState state, Qubit control, const CMatrix& unitary) {
  check_qubit(state, control);
  const std::size_t n = state.num_qubits();
  // Block-diagonal diag(I, U) over (rest..., control) with control as the
  // most significant sub-index bit.
  std::vector<Qubit> order;
  for (Qubit q = 0; q < n; ++q)
    if (q != control) order.push_back(q);
  order.push_back(control);
  const std::size_t half = std::size_t{1} << (n - 1);
  if (unitary.dim() != half)
    throw Error(ErrorCode::DimensionMismatch,
                "controlled unitary must act on the " + std::to_string(n - 1) +
                    " non-control qubits");
  if (unitarity_deviation(unitary) > kUnitaryTolerance)
    throw Error(ErrorCode::NotUnitary, "matrix deviates from unitarity by more than 1e-10");
  CMatrix full(2 * half);
  for (std::size_t i = 0; i < half; ++i) full(i, i) = 1.0;
  for (std::size_t r = 0; r < half; ++r)
    for (std::size_t c = 0; c < half; ++c) full(half + r, half + c) = unitary(r, c);
  return apply_unitary(std::move(state), full, order);
}

PostselectOutcome postselect(const QuantumState& state, std::span<const Qubit> qubits,
                             std::uint64_t outcome) {
  const std::uint64_t mask = subset_mask(state, qubits);
  if (qubits.size() >= state.num_qubits())
    throw Error(ErrorCode::InvalidQubitIndex, "postselection must leave at least one qubit");
  if (qubits.size() < 64 && (outcome >> qubits.size()) != 0)
    throw Error(ErrorCode::InvalidQubitIndex, "outcome has more bits than the subset");

  std::uint64_t selected = 0;
  for (std::size_t b = 0; b < qubits.size(); ++b)
    if ((outcome >> b) & 1U) selected |= std::uint64_t{1} << qubits[b];

  std::vector<Qubit> rest;
  for (Qubit q = 0; q < state.num_qubits(); ++q)
    if (!(mask & (std::uint64_t{1} << q))) rest.push_back(q);
  const auto offsets = scatter_offsets(rest);

  ComplexVector slice(offsets.size());
  double probability = 0.0;
  const auto amps = state.amplitudes();
  for (std::size_t s = 0; s < offsets.size(); ++s) {
    slice[s] = amps[selected | offsets[s]];
    probability += std::norm(slice[s]);
  }
  if (probability == 0.0)
    throw Error(ErrorCode::ZeroProbabilityOutcome, "selected outcome has zero amplitude");
  const double scale = 1.0 / std::sqrt(probability);
  for (auto& a : slice) a *= scale;
  return {StateAccess::make(std::move(slice)), probability};
}

double outcome_probability(const QuantumState& state, std::span<const Qubit> qubits,
                           std::uint64_t outcome) {
  const std::uint64_t mask = subset_mask(state, qubits);
  std::uint64_t selected = 0;
  for (std::size_t b = 0; b < qubits.size(); ++b)
    if ((outcome >> b) & 1U) selected |= std::uint64_t{1} << qubits[b];
  double probability = 0.0;
  const auto amps = state.amplitudes();
  for (std::uint64_t i = 0; i < amps.size(); ++i)
    if ((i & mask) == selected) probability += std::norm(amps[i]);
  return probability;
}

std::vector<std::uint64_t> sample_readout(const QuantumState& state, std::uint64_t shots,
                                          std::uint64_t seed) {
  if (shots == 0) throw Error(ErrorCode::InvalidShots, "shots must be at least 1");
  std::mt19937_64 rng(seed);
  const auto amps = state.amplitudes();
  std::vector<std::uint64_t> counts(amps.size(), 0);
  // Multinomial as a chain of conditional binomials.
  std::uint64_t remaining = shots;
  double remaining_mass = 1.0;
  for (std::size_t i = 0; i < amps.size() && remaining > 0; ++i) {
    const double p = std::norm(amps[i]);
    if (i + 1 == amps.size() || remaining_mass <= 0.0) {
      counts[i] = remaining;
      break;
    }
    const double conditional = std::clamp(p / remaining_mass, 0.0, 1.0);
    std::binomial_distribution<std::uint64_t> draw(remaining, conditional);
    counts[i] = draw(rng);
    remaining -= counts[i];
    remaining_mass -= p;
  }
  return counts;
}

std::vector<Qubit> qubit_range(Qubit first, unsigned count) {
  std::vector<Qubit> out(count);
  std::iota(out.begin(), out.end(), first);
  return out;
}

}  // namespace stqft
