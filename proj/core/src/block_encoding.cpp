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

#include "stqft/block_encoding.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <istream>
#include <numbers>
#include <ostream>

#include "stqft/error.hpp"

namespace stqft {

namespace {

constexpr double kMagnitudeSlack = 1e-12;

std::uint64_t to_little_endian(std::uint64_t v) {
  if constexpr (std::endian::native == std::endian::big) {
    std::uint64_t r = 0;
    for (int i = 0; i < 8; ++i) r |= ((v >> (8 * i)) & 0xFFU) << (8 * (7 - i));
    return r;
  }
  return v;
}

void put_u64(std::ostream& out, std::uint64_t v) {
  v = to_little_endian(v);
  out.write(reinterpret_cast<const char*>(&v), sizeof v);
}

void put_f64(std::ostream& out, double d) { put_u64(out, std::bit_cast<std::uint64_t>(d)); }

std::uint64_t get_u64(std::istream& in) {
  std::uint64_t v = 0;
  if (!in.read(reinterpret_cast<char*>(&v), sizeof v))
    throw Error(ErrorCode::MalformedFile, "truncated block encoding");
  return to_little_endian(v);
}

double get_f64(std::istream& in) { return std::bit_cast<double>(get_u64(in)); }

unsigned gray_flip_bit(std::size_t step, std::size_t steps, unsigned num_controls) {
  return step + 1 == steps ? num_controls - 1
                           : static_cast<unsigned>(std::countr_zero(step + 1));
}

}  // namespace

CMatrix BlockEncoding::top_left_block() const {
  const std::size_t n = std::size_t{1} << num_system_qubits;
  CMatrix out(n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) out(r, c) = unitary(r, c);
  return out;
}

BlockEncoding build_diagonal_block_encoding(std::span<const Complex> diagonal) {
  if (diagonal.empty() || !is_power_of_two(diagonal.size()))
    throw Error(ErrorCode::DimensionMismatch, "diagonal length must be a power of two");
  BlockEncoding block;
  block.num_system_qubits = log2_exact(diagonal.size());
  block.ancilla_count = 1;
  block.subnormalization = 1.0;
  block.encoded_diagonal.assign(diagonal.begin(), diagonal.end());

  const std::size_t n = diagonal.size();
  block.unitary = CMatrix(2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    const Complex d = diagonal[i];
    const double mag = std::abs(d);
    if (mag > 1.0 + kMagnitudeSlack)
      throw Error(ErrorCode::EntryMagnitudeExceedsOne,
                  "diagonal entry " + std::to_string(i) + " has magnitude " + std::to_string(mag));
    const double s = std::sqrt(std::max(0.0, 1.0 - mag * mag));
    block.unitary(i, i) = d;
    block.unitary(i, n + i) = s;
    block.unitary(n + i, i) = s;
    block.unitary(n + i, n + i) = -std::conj(d);
  }
  return block;
}

std::size_t append_multiplexed_rotation(GateList& out, GateKind axis,
                                        std::span<const Qubit> controls, Qubit target,
                                        std::span<const double> angles, double threshold) {
  const auto k = static_cast<unsigned>(controls.size());
  const std::size_t steps = std::size_t{1} << k;
  if (angles.size() != steps)
    throw Error(ErrorCode::DimensionMismatch, "multiplexor needs 2^k angles");
  if (k == 0) {
    if (std::abs(angles[0]) >= threshold) {
      out.push_back({axis, target, 0, angles[0]});
      return 0;
    }
    return 1;
  }

  // theta_hat[j] = 2^-k sum_i (-1)^{popcount(i & gray(j))} angles[i]
  std::size_t dropped = 0;
  const double scale = 1.0 / static_cast<double>(steps);
  for (std::size_t j = 0; j < steps; ++j) {
    const std::size_t gray = j ^ (j >> 1);
    double theta = 0.0;
    for (std::size_t i = 0; i < steps; ++i)
      theta += (std::popcount(i & gray) & 1U) ? -angles[i] : angles[i];
    theta *= scale;
    if (std::abs(theta) >= threshold)
      out.push_back({axis, target, 0, theta});
    else
      ++dropped;
    out.push_back(Gate::cnot(controls[gray_flip_bit(j, steps, k)], target));
  }
  return dropped;
}

GateList merge_cnot_runs(const GateList& gates) {
  GateList out;
  out.reserve(gates.size());
  std::size_t i = 0;
  while (i < gates.size()) {
    if (gates[i].kind != GateKind::CNOT) {
      out.push_back(gates[i++]);
      continue;
    }
    // CNOTs sharing a target commute; keep controls that appear an odd number
    // of times in the run.
    const Qubit target = gates[i].q1;
    std::vector<Qubit> order;
    std::vector<unsigned> parity;
    for (; i < gates.size() && gates[i].kind == GateKind::CNOT && gates[i].q1 == target; ++i) {
      const auto it = std::find(order.begin(), order.end(), gates[i].q0);
      if (it == order.end()) {
        order.push_back(gates[i].q0);
        parity.push_back(1);
      } else {
        parity[static_cast<std::size_t>(it - order.begin())] ^= 1U;
      }
    }
    for (std::size_t c = 0; c < order.size(); ++c)
      if (parity[c]) out.push_back(Gate::cnot(order[c], target));
  }
  return out;
}

FableCircuit fable_decompose_diagonal(const BlockEncoding& block, double compression_threshold) {
  if (block.ancilla_count != 1 ||
      block.encoded_diagonal.size() != (std::size_t{1} << block.num_system_qubits))
    throw Error(ErrorCode::DimensionMismatch,
                "expected a one-ancilla diagonal block encoding");
  if (!(compression_threshold >= 0.0))
    throw Error(ErrorCode::InvalidState, "compression threshold must be >= 0");

  const unsigned n = block.num_system_qubits;
  const Qubit ancilla = n;
  const auto controls = qubit_range(0, n);

  // W_i = Rz(-phi_i) Ry(theta_i) Z Rz(-phi_i) = [[d, s], [s, -conj(d)]].
  RealVector y_angles;
  RealVector z_angles;
  for (const Complex& d : block.encoded_diagonal) {
    y_angles.push_back(2.0 * std::acos(std::clamp(std::abs(d), 0.0, 1.0)));
    z_angles.push_back(-std::arg(d));
  }

  FableCircuit circuit;
  circuit.num_qubits = n + 1;
  GateList raw;
  std::size_t dropped = 0;
  dropped += append_multiplexed_rotation(raw, GateKind::RZ, controls, ancilla, z_angles,
                                         compression_threshold);
  // Z = H Ry(pi/2) exactly, no global phase.
  raw.push_back(Gate::ry(ancilla, std::numbers::pi / 2.0));
  raw.push_back(Gate::h(ancilla));
  dropped += append_multiplexed_rotation(raw, GateKind::RY, controls, ancilla, y_angles,
                                         compression_threshold);
  dropped += append_multiplexed_rotation(raw, GateKind::RZ, controls, ancilla, z_angles,
                                         compression_threshold);

  circuit.gates = merge_cnot_runs(raw);
  circuit.dropped_rotations = dropped;
  // The Z gadget's fixed rotation is not a data rotation.
  circuit.kept_rotations = rotation_count(circuit.gates) - 1;
  circuit.max_error = max_abs_diff(compose_gates(circuit.gates, circuit.num_qubits), block.unitary);
  return circuit;
}

void write_block_encoding(std::ostream& out, const BlockEncoding& block) {
  const std::size_t dim = block.unitary.dim();
  put_u64(out, dim);
  put_u64(out, block.ancilla_count);
  put_f64(out, block.subnormalization);
  for (const Complex& z : block.unitary.data()) {
    put_f64(out, z.real());
    put_f64(out, z.imag());
  }
  if (!out) throw Error(ErrorCode::FileError, "failed writing block encoding");
}

BlockEncoding read_block_encoding(std::istream& in) {
  const std::uint64_t dim = get_u64(in);
  const std::uint64_t ancillas = get_u64(in);
  if (dim < 2 || !is_power_of_two(dim) || dim > (std::uint64_t{1} << 16))
    throw Error(ErrorCode::MalformedFile, "implausible block encoding dimension");
  const unsigned total = log2_exact(dim);
  if (ancillas == 0 || ancillas > total)
    throw Error(ErrorCode::MalformedFile, "implausible ancilla count");

  BlockEncoding block;
  block.ancilla_count = static_cast<unsigned>(ancillas);
  block.num_system_qubits = total - block.ancilla_count;
  block.subnormalization = get_f64(in);
  block.unitary = CMatrix(dim);
  for (auto& z : block.unitary.data()) {
    const double re = get_f64(in);
    const double im = get_f64(in);
    z = {re, im};
  }
  const std::size_t n = std::size_t{1} << block.num_system_qubits;
  for (std::size_t i = 0; i < n; ++i)
    block.encoded_diagonal.push_back(block.unitary(i, i) * block.subnormalization);
  return block;
}

void save_block_encoding(const std::string& path, const BlockEncoding& block) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::FileError, "cannot open " + path + " for writing");
  write_block_encoding(out, block);
}

BlockEncoding load_block_encoding(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::FileError, "cannot open " + path);
  return read_block_encoding(in);
}

}  // namespace stqft
