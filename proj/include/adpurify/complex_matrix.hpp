// Copyright 2026 The adpurify developers
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
#include <vector>

namespace adpurify::qcore {

using Complex = std::complex<double>;

/// Dense complex matrix with row-major storage. Sized for few-qubit
/// operators (2x2 up to 16x16); clarity over throughput.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols);
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);

  static ComplexMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Complex& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
  const Complex& operator()(std::size_t r, std::size_t c) const {
    return entries_[r * cols_ + c];
  }

  const std::vector<Complex>& entries() const { return entries_; }

  ComplexMatrix adjoint() const;
  bool is_finite() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> entries_;
};

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b);

/// Kronecker product with a's indices major.
ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b);

double max_abs(const ComplexMatrix& m);
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

namespace gates {
ComplexMatrix identity2();
ComplexMatrix pauli_x();
ComplexMatrix pauli_z();
ComplexMatrix hadamard();
ComplexMatrix cz();
}  // namespace gates

}  // namespace adpurify::qcore
