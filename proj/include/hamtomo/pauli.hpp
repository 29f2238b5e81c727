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

#ifndef HAMTOMO_PAULI_HPP
#define HAMTOMO_PAULI_HPP

#include <bit>
#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace hamtomo {

using Complex = std::complex<double>;

/// Dense complex operator on a 2^L dimensional chain Hilbert space.
using DenseOperator = Eigen::MatrixXcd;
using StateVector = Eigen::VectorXcd;

enum class PauliOp : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

char to_char(PauliOp op);
PauliOp pauli_from_char(char c);

/// Exact 2x2 matrix of a single-site Pauli operator.
DenseOperator pauli_matrix(PauliOp op);

/// Tensor product of single-site Pauli operators on an L-site open chain.
///
/// Site 0 is the most significant tensor factor: basis index j encodes the
/// state of site k in bit (L - 1 - k). Every string acts as a signed
/// permutation, h|j> = phase(j) |j ^ flip_mask>, which is what the constraint
/// builders use instead of dense products.
class PauliString {
 public:
  static constexpr int kMaxSites = 30;

  PauliString() = default;
  explicit PauliString(std::vector<PauliOp> ops);
  /// Identity string of the given length.
  static PauliString identity(int length);
  /// Parses "XIZ"-style text (case-insensitive).
  static PauliString parse(std::string_view text);

  int length() const { return static_cast<int>(ops_.size()); }
  int weight() const;
  std::span<const PauliOp> ops() const { return ops_; }
  PauliOp operator[](int site) const { return ops_[site]; }
  std::string label() const;

  std::uint32_t flip_mask() const { return flip_mask_; }
  std::uint32_t sign_mask() const { return sign_mask_; }

  /// Amplitude phase(j) such that h|j> = phase(j) |j ^ flip_mask>.
  Complex phase(std::uint32_t j) const {
    const bool odd = (std::popcount(j & sign_mask_) & 1) != 0;
    return odd ? -y_phase_ : y_phase_;
  }

  /// Computes h * v without forming the dense matrix.
  StateVector apply(const StateVector& v) const;

  friend bool operator==(const PauliString& a, const PauliString& b) {
    return a.ops_ == b.ops_;
  }
  friend bool operator<(const PauliString& a, const PauliString& b) {
    return a.ops_ < b.ops_;
  }

 private:
  std::vector<PauliOp> ops_;
  std::uint32_t flip_mask_ = 0;
  std::uint32_t sign_mask_ = 0;
  Complex y_phase_{1.0, 0.0};
};

/// Dense 2^L x 2^L matrix of a Pauli string (Kronecker product, site 0 first).
DenseOperator string_matrix(const PauliString& s);

/// ab - ba.
DenseOperator commutator(const DenseOperator& a, const DenseOperator& b);

/// Tr(obs * rho).
Complex expectation(const DenseOperator& obs, const DenseOperator& rho);

/// Largest entrywise |M - M^dagger|.
double hermiticity_defect(const DenseOperator& m);

}  // namespace hamtomo

#endif  // HAMTOMO_PAULI_HPP
