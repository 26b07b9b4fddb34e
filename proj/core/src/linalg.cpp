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

#include "stqft/linalg.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "stqft/error.hpp"

namespace stqft {

CMatrix CMatrix::identity(std::size_t dim) {
  CMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

CMatrix CMatrix::adjoint() const {
  CMatrix out(dim_);
  for (std::size_t r = 0; r < dim_; ++r)
    for (std::size_t c = 0; c < dim_; ++c) out(c, r) = std::conj((*this)(r, c));
  return out;
}

CMatrix CMatrix::operator*(const CMatrix& rhs) const {
  if (rhs.dim_ != dim_)
    throw Error(ErrorCode::DimensionMismatch, "matrix product of different dimensions");
  CMatrix out(dim_);
  for (std::size_t r = 0; r < dim_; ++r) {
    for (std::size_t k = 0; k < dim_; ++k) {
      const Complex lhs = (*this)(r, k);
      if (lhs == Complex{}) continue;
      for (std::size_t c = 0; c < dim_; ++c) out(r, c) += lhs * rhs(k, c);
    }
  }
  return out;
}

ComplexVector CMatrix::operator*(std::span<const Complex> vec) const {
  if (vec.size() != dim_)
    throw Error(ErrorCode::DimensionMismatch, "matrix-vector product of different dimensions");
  ComplexVector out(dim_);
  for (std::size_t r = 0; r < dim_; ++r) {
    Complex acc{};
    for (std::size_t c = 0; c < dim_; ++c) acc += (*this)(r, c) * vec[c];
    out[r] = acc;
  }
  return out;
}

double unitarity_deviation(const CMatrix& u) {
  const CMatrix gram = u.adjoint() * u;
  return max_abs_diff(gram, CMatrix::identity(u.dim()));
}

double max_abs_diff(const CMatrix& a, const CMatrix& b) {
  if (a.dim() != b.dim())
    throw Error(ErrorCode::DimensionMismatch, "comparing matrices of different dimensions");
  return max_abs_diff(a.data(), b.data());
}

double max_abs_diff(std::span<const Complex> a, std::span<const Complex> b) {
  if (a.size() != b.size())
    throw Error(ErrorCode::DimensionMismatch, "comparing vectors of different lengths");
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

double max_abs_diff(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size())
    throw Error(ErrorCode::DimensionMismatch, "comparing vectors of different lengths");
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

double norm(std::span<const Complex> v) {
  double acc = 0.0;
  for (const auto& z : v) acc += std::norm(z);
  return std::sqrt(acc);
}

double norm(std::span<const double> v) {
  double acc = 0.0;
  for (double x : v) acc += x * x;
  return std::sqrt(acc);
}

bool is_power_of_two(std::size_t value) noexcept { return std::has_single_bit(value); }

std::size_t next_power_of_two(std::size_t value) noexcept {
  return value <= 1 ? 1 : std::bit_ceil(value);
}

unsigned log2_exact(std::size_t value) noexcept {
  return static_cast<unsigned>(std::countr_zero(value));
}

}  // namespace stqft
