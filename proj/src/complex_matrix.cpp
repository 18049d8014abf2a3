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

#include "adpurify/complex_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace adpurify::qcore {

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols, Complex{0.0, 0.0}) {}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (entries_.size() != rows_ * cols_) {
    throw std::invalid_argument("ComplexMatrix: entry count does not match dimensions");
  }
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    m(i, i) = Complex{1.0, 0.0};
  }
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix out(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) {
      out(c, r) = std::conj((*this)(r, c));
    }
  }
  return out;
}

bool ComplexMatrix::is_finite() const {
  return std::all_of(entries_.begin(), entries_.end(), [](const Complex& z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
  });
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) {
    throw std::invalid_argument("ComplexMatrix: dimension mismatch in product");
  }
  ComplexMatrix out(a.rows(), b.cols());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Complex av = a(r, k);
      if (av == Complex{0.0, 0.0}) continue;
      for (std::size_t c = 0; c < b.cols(); ++c) {
        out(r, c) += av * b(k, c);
      }
    }
  }
  return out;
}

ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw std::invalid_argument("ComplexMatrix: dimension mismatch in sum");
  }
  ComplexMatrix out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.entries().size(); ++i) {
    out(i / a.cols(), i % a.cols()) = a.entries()[i] + b.entries()[i];
  }
  return out;
}

ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw std::invalid_argument("ComplexMatrix: dimension mismatch in difference");
  }
  ComplexMatrix out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.entries().size(); ++i) {
    out(i / a.cols(), i % a.cols()) = a.entries()[i] - b.entries()[i];
  }
  return out;
}

ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t ar = 0; ar < a.rows(); ++ar) {
    for (std::size_t ac = 0; ac < a.cols(); ++ac) {
      const Complex av = a(ar, ac);
      if (av == Complex{0.0, 0.0}) continue;
      for (std::size_t br = 0; br < b.rows(); ++br) {
        for (std::size_t bc = 0; bc < b.cols(); ++bc) {
          out(ar * b.rows() + br, ac * b.cols() + bc) = av * b(br, bc);
        }
      }
    }
  }
  return out;
}

double max_abs(const ComplexMatrix& m) {
  double worst = 0.0;
  for (const Complex& z : m.entries()) {
    worst = std::max(worst, std::abs(z));
  }
  return worst;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  return max_abs(a - b);
}

namespace gates {

ComplexMatrix identity2() { return ComplexMatrix::identity(2); }

ComplexMatrix pauli_x() {
  return ComplexMatrix(2, 2, {{0.0, 0.0}, {1.0, 0.0}, {1.0, 0.0}, {0.0, 0.0}});
}

ComplexMatrix pauli_z() {
  return ComplexMatrix(2, 2, {{1.0, 0.0}, {0.0, 0.0}, {0.0, 0.0}, {-1.0, 0.0}});
}

ComplexMatrix hadamard() {
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  return ComplexMatrix(2, 2,
                       {{inv_sqrt2, 0.0}, {inv_sqrt2, 0.0}, {inv_sqrt2, 0.0}, {-inv_sqrt2, 0.0}});
}

ComplexMatrix cz() {
  ComplexMatrix m = ComplexMatrix::identity(4);
  m(3, 3) = Complex{-1.0, 0.0};
  return m;
}

}  // namespace gates

}  // namespace adpurify::qcore
