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

#ifndef HAMTOMO_EEE_HPP
#define HAMTOMO_EEE_HPP

#include <optional>

#include <Eigen/Dense>

#include "hamtomo/hoe.hpp"
#include "hamtomo/linalg.hpp"
#include "hamtomo/models.hpp"

namespace hamtomo {

/// Real form of sum_n a_n <i|h_n|lambda_mu> - lambda_mu <i|lambda_mu> = 0.
///
/// Unknowns are x = (a_1..a_N, lambda_1..lambda_q). Rows come in blocks of
/// 2^{L+1}, one per state in the given order: first the real parts for all
/// basis indices i, then the imaginary parts. Column N + mu carries
/// -<i|lambda_mu> and is zero outside block mu.
struct ConstraintMatrixQ {
  Eigen::MatrixXd entries;  // q 2^{L+1} x (N + q)
  int n_params = 0;
  int n_states = 0;
};

struct EEEResult {
  Eigen::VectorXd a_recovered;        // unit norm
  Eigen::VectorXd lambdas_recovered;  // on the same scale as a_recovered
  int rank = 0;
  int gap = 0;  // (N + q) - (rank + 1)
  double lowest_singular_value = 0.0;
  std::optional<double> delta_error;

  bool unique() const { return gap == 0; }
};

/// Throws InvalidArgument when states has no columns and DimensionMismatch
/// when its row count is not 2^L.
ConstraintMatrixQ build_Q(const TermBasis& basis, const Eigen::MatrixXcd& states);

/// Right-singular vector of the smallest singular value of Q, rescaled so
/// the coefficient block has unit norm. Throws NumericalFailure when that
/// block is numerically zero.
EEEResult solve_eee(const ConstraintMatrixQ& qm,
                    double rank_tol = kDefaultRankTolerance);

struct EquivalenceCheck {
  bool gaps_equal = false;       // delta' == delta
  bool rank_shift_ok = false;    // r' == r + q
  std::optional<double> angle;   // between recovered vectors, both unique
  bool holds() const { return gaps_equal && rank_shift_ok; }
};

EquivalenceCheck check_equivalence(const RecoveryReport& hoe, const EEEResult& eee,
                                   int q);

}  // namespace hamtomo

#endif  // HAMTOMO_EEE_HPP
