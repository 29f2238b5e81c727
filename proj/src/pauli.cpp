// Copyright 2026 The hamtomo Authors - All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "hamtomo/pauli.hpp"

#include <bit>
#include <cctype>
#include <limits>

#include "hamtomo/errors.hpp"

namespace hamtomo {

char to_char(PauliOp op) {
  switch (op) {
    case PauliOp::I: return 'I';
    case PauliOp::X: return 'X';
    case PauliOp::Y: return 'Y';
    case PauliOp::Z: return 'Z';
  }
  return '?';
}

PauliOp pauli_from_char(char c) {
  switch (std::toupper(static_cast<unsigned char>(c))) {
    case 'I': return PauliOp::I;
    case 'X': return PauliOp::X;
    case 'Y': return PauliOp::Y;
    case 'Z': return PauliOp::Z;
    default:
      throw InvalidArgument(std::string("not a Pauli symbol: '") + c + "'");
  }
}

DenseOperator pauli_matrix(PauliOp op) {
  const Complex i1{0.0, 1.0};
  DenseOperator m = DenseOperator::Zero(2, 2);
  switch (op) {
    case PauliOp::I: m(0, 0) = 1.0; m(1, 1) = 1.0; break;
    case PauliOp::X: m(0, 1) = 1.0; m(1, 0) = 1.0; break;
    case PauliOp::Y: m(0, 1) = -i1; m(1, 0) = i1; break;
    case PauliOp::Z: m(0, 0) = 1.0; m(1, 1) = -1.0; break;
  }
  return m;
}

PauliString::PauliString(std::vector<PauliOp> ops) : ops_(std::move(ops)) {
  if (ops_.empty() || length() > kMaxSites) {
    throw InvalidArgument("Pauli string length must be in 1.." +
                          std::to_string(kMaxSites));
  }
  const int n = length();
  int n_y = 0;
  for (int k = 0; k < n; ++k) {
    const std::uint32_t bit = 1u << (n - 1 - k);
    switch (ops_[k]) {
      case PauliOp::I: break;
      case PauliOp::X: flip_mask_ |= bit; break;
      case PauliOp::Y: flip_mask_ |= bit; sign_mask_ |= bit; ++n_y; break;
      case PauliOp::Z: sign_mask_ |= bit; break;
    }
  }
  // i^{n_y}
  static constexpr Complex kPowersOfI[4] = {
      {1.0, 0.0}, {0.0, 1.0}, {-1.0, 0.0}, {0.0, -1.0}};
  y_phase_ = kPowersOfI[n_y % 4];
}

PauliString PauliString::identity(int length) {
  if (length < 1) throw InvalidArgument("Pauli string length must be >= 1");
  return PauliString(std::vector<PauliOp>(length, PauliOp::I));
}

PauliString PauliString::parse(std::string_view text) {
  std::vector<PauliOp> ops;
  ops.reserve(text.size());
  for (char c : text) ops.push_back(pauli_from_char(c));
  return PauliString(std::move(ops));
}

int PauliString::weight() const {
  int w = 0;
  for (PauliOp op : ops_) w += op != PauliOp::I;
  return w;
}

std::string PauliString::label() const {
  std::string s;
  s.reserve(ops_.size());
  for (PauliOp op : ops_) s.push_back(to_char(op));
  return s;
}

StateVector PauliString::apply(const StateVector& v) const {
  const auto dim = static_cast<std::uint32_t>(std::uint64_t{1} << length());
  if (static_cast<std::uint64_t>(v.size()) != dim) {
    throw DimensionMismatch("state dimension does not match Pauli string");
  }
  StateVector out(dim);
  for (std::uint32_t j = 0; j < dim; ++j) out(j ^ flip_mask_) = phase(j) * v(j);
  return out;
}

DenseOperator string_matrix(const PauliString& s) {
  const auto dim = static_cast<std::uint32_t>(std::uint64_t{1} << s.length());
  DenseOperator m = DenseOperator::Zero(dim, dim);
  for (std::uint32_t j = 0; j < dim; ++j) m(j ^ s.flip_mask(), j) = s.phase(j);
  return m;
}

DenseOperator commutator(const DenseOperator& a, const DenseOperator& b) {
  if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows()) {
    throw DimensionMismatch("commutator operands must be square and equal-sized");
  }
  return a * b - b * a;
}

Complex expectation(const DenseOperator& obs, const DenseOperator& rho) {
  if (obs.rows() != obs.cols() || rho.rows() != rho.cols() ||
      obs.rows() != rho.rows()) {
    throw DimensionMismatch("expectation operands must be square and equal-sized");
  }
  // Tr(AB) = sum_ij A_ij B_ji
  return (obs.array() * rho.transpose().array()).sum();
}

double hermiticity_defect(const DenseOperator& m) {
  if (m.rows() != m.cols()) return std::numeric_limits<double>::infinity();
  if (m.size() == 0) return 0.0;
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

}  // namespace hamtomo
