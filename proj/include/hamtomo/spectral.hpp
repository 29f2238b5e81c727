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

#ifndef HAMTOMO_SPECTRAL_HPP
#define HAMTOMO_SPECTRAL_HPP

#include <cstdint>
#include <string_view>

#include <Eigen/Dense>

#include "hamtomo/pauli.hpp"

namespace hamtomo {

/// Full Hermitian eigendecomposition, eigenvalues ascending.
struct EigDecomposition {
  Eigen::VectorXd eigenvalues;
  Eigen::MatrixXcd eigenvectors;  // column k pairs with eigenvalues(k)
};

enum class SelectionPolicy { Lowest, Random };

std::string_view policy_name(SelectionPolicy policy);
SelectionPolicy parse_policy(std::string_view name);

/// rho = sum_mu p_mu |lambda_mu><lambda_mu| over q eigenstates of H.
///
/// States are stored in ascending-eigenvalue order; probabilities are
/// pairwise distinct.
struct SteadyState {
  Eigen::MatrixXcd states;     // dim x q, orthonormal columns
  Eigen::VectorXd energies;    // eigenvalue of each column
  Eigen::VectorXd probs;       // q positive entries summing to one
  DenseOperator rho;

  int rank() const { return static_cast<int>(states.cols()); }
};

/// Minimum pairwise gap between drawn probabilities.
inline constexpr double kMinProbabilityGap = 1e-3;
/// Selected eigenvalues closer than this times the spectral range are
/// treated as degenerate.
inline constexpr double kDegeneracyTolerance = 1e-10;

/// Throws InvalidArgument for a non-square or non-Hermitian input.
EigDecomposition eig_hermitian(const DenseOperator& h);

/// Picks q eigenstates and draws probabilities uniformly from the simplex,
/// redrawing until every pairwise gap is at least kMinProbabilityGap.
/// Throws InvalidArgument for q outside 1..dim and DegenerateSpectrum when
/// two selected eigenvalues coincide within tolerance.
SteadyState build_steady_state(const EigDecomposition& eig, int q,
                               SelectionPolicy selection, std::uint64_t seed);

}  // namespace hamtomo

#endif  // HAMTOMO_SPECTRAL_HPP
