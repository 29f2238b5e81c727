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

#ifndef HAMTOMO_HOE_HPP
#define HAMTOMO_HOE_HPP

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "hamtomo/linalg.hpp"
#include "hamtomo/models.hpp"
#include "hamtomo/pauli.hpp"

namespace hamtomo {

/// G_mn = <i[K_m, h_n]> in a steady state; G a = 0 for the true couplings.
struct ConstraintMatrixG {
  Eigen::MatrixXd entries;               // M x N
  std::vector<PauliString> observables;  // K_m, M entries
};

struct RecoveryReport {
  Eigen::VectorXd a_recovered;  // unit norm
  int rank = 0;
  int gap = 0;                  // N - (rank + 1)
  double lowest_singular_value = 0.0;
  std::optional<double> delta_error;

  /// True when the nullspace is one-dimensional.
  bool unique() const { return gap == 0; }
};

/// Builds G for the given observables, or the basis terms themselves when
/// none are given (M = N). Requires rho Hermitian, unit trace, dim 2^L.
ConstraintMatrixG build_G(const TermBasis& basis, const DenseOperator& rho,
                          const std::vector<PauliString>& observables = {});

/// Count of singular values above tol_rel * sigma_max.
int numeric_rank(const Eigen::MatrixXd& m, double tol_rel = kDefaultRankTolerance);

/// Minimizes |G a| over unit vectors: the right-singular vector of the
/// smallest singular value. When the gap is positive the vector is an
/// arbitrary unit element of the ambiguous subspace.
RecoveryReport solve_hoe(const ConstraintMatrixG& g,
                         double rank_tol = kDefaultRankTolerance);

/// min over s = +-1 of | a_true/|a_true| - s a_rec/|a_rec| |.
double reconstruction_error(const Eigen::VectorXd& a_true,
                            const Eigen::VectorXd& a_rec);

}  // namespace hamtomo

#endif  // HAMTOMO_HOE_HPP
