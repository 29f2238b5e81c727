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

#ifndef HAMTOMO_MODELS_HPP
#define HAMTOMO_MODELS_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "hamtomo/pauli.hpp"

namespace hamtomo {

/// Spin-chain Hamiltonian families on an open chain.
///
///  - H2:        single-site terms + nearest-neighbour pairs         N = 12L - 9
///  - H2Prime:   H2 + next-nearest pairs s_l s_{l+2}                 N = 21L - 27
///  - H3Literal: H2 + three-site products with all sites non-trivial N = 39L - 63
///  - H3Table:   H3Literal + next-nearest pairs (middle site may be
///               the identity)                                       N = 48L - 81
enum class ModelKind { H2, H2Prime, H3Literal, H3Table };

/// CLI names: h2, h2prime, h3, h3table.
std::string_view model_name(ModelKind kind);
ModelKind parse_model(std::string_view name);

/// Smallest chain length the model is defined on.
int min_length(ModelKind kind);

/// Closed-form number of independent parameters.
int param_count(ModelKind kind, int length);

/// Ordered Hamiltonian terms h_n.
///
/// Canonical order: single-site terms by (site, x<y<z); nearest-neighbour
/// pairs by (site, first, second); next-nearest pairs by (site, first,
/// second); three-site products by (site, first, middle, last).
struct TermBasis {
  ModelKind kind;
  int length;
  std::vector<PauliString> terms;

  int size() const { return static_cast<int>(terms.size()); }
  int dim() const { return 1 << length; }
};

/// Coefficients a_n, one per term of the owning basis.
using ParamVector = Eigen::VectorXd;

TermBasis enumerate_terms(ModelKind kind, int length);

/// N independent standard-normal draws from an mt19937_64 seeded with
/// `seed`. Identical seed gives an identical vector.
ParamVector sample_params(const TermBasis& basis, std::uint64_t seed);

/// sum_n a_n h_n as a dense Hermitian matrix.
DenseOperator assemble(const TermBasis& basis, const ParamVector& a);

}  // namespace hamtomo

#endif  // HAMTOMO_MODELS_HPP
