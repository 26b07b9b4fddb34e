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

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace stqft {

using Complex = std::complex<double>;
using ComplexVector = std::vector<Complex>;
using RealVector = std::vector<double>;

/// Dense square complex matrix, row-major.
class CMatrix {
 public:
  CMatrix() = default;
  explicit CMatrix(std::size_t dim) : dim_(dim), data_(dim * dim) {}

  static CMatrix identity(std::size_t dim);

  std::size_t dim() const noexcept { return dim_; }

  Complex& operator()(std::size_t row, std::size_t col) {
    return data_[row * dim_ + col];
  }
  const Complex& operator()(std::size_t row, std::size_t col) const {
    return data_[row * dim_ + col];
  }

  std::span<const Complex> data() const noexcept { return data_; }
  std::span<Complex> data() noexcept { return data_; }

  CMatrix adjoint() const;
  CMatrix operator*(const CMatrix& rhs) const;
  ComplexVector operator*(std::span<const Complex> vec) const;

 private:
  std::size_t dim_ = 0;
  std::vector<Complex> data_;
};

/// max |U^dagger U - I| over all entries.
double unitarity_deviation(const CMatrix& u);

/// max |a - b| over all entries; dimensions must match.
double max_abs_diff(const CMatrix& a, const CMatrix& b);
double max_abs_diff(std::span<const Complex> a, std::span<const Complex> b);
double max_abs_diff(std::span<const double> a, std::span<const double> b);

double norm(std::span<const Complex> v);
double norm(std::span<const double> v);

bool is_power_of_two(std::size_t value) noexcept;
/// Smallest power of two >= value (value >= 1).
std::size_t next_power_of_two(std::size_t value) noexcept;
/// log2 of a power of two.
unsigned log2_exact(std::size_t value) noexcept;

}  // namespace stqft
