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

#ifndef HAMTOMO_RANK_THEORY_HPP
#define HAMTOMO_RANK_THEORY_HPP

#include <cstdint>
#include <vector>

#include "hamtomo/models.hpp"

namespace hamtomo {

/// Closed-form ranks of G and Q for a generic instance.
///
///   r  = min{ q 2^{L+1} - q^2 - q, N - 1 }
///   r' = min{ q 2^{L+1} - q^2,     N + q - 1 }
///
/// The EEE system has q 2^{L+1} real rows of which q^2 are implied by the
/// Hermiticity of the q x q block <lambda_nu|H|lambda_mu>; the nullspace always
/// contains the true solution. r' - r = q.
struct RankPrediction {
  ModelKind kind;
  int length;
  int q;
  int n_params;
  std::int64_t r_pred;
  std::int64_t r_prime_pred;
  std::int64_t delta_pred;
  bool recoverable;
};

struct CriticalLength {
  ModelKind kind;
  int q;
  int length;  // L_c
};

/// q 2^{L+1} - q^2 - q, the number of independent HOE constraints a rank-q
/// steady state can supply.
std::int64_t constraint_supply(int length, int q);

/// Throws InvalidArgument when L is invalid for the model or q is outside
/// 1..2^L.
RankPrediction predict_ranks(ModelKind kind, int length, int q);

/// Smallest valid L (with q <= 2^L) at which constraint_supply >= N - 1.
/// Throws InvalidArgument when q < 1 or no L up to max_length qualifies.
CriticalLength critical_length(ModelKind kind, int q, int max_length = 64);

/// Rows for the H2, H2' and three-local families in that order, q = 1..q_max.
/// The three-local row counts only the products with all three sites
/// non-trivial (N = 39L - 63).
std::vector<std::vector<CriticalLength>> table5(int q_max = 6);

/// Models used for the rows of table5().
std::vector<ModelKind> table5_models();

}  // namespace hamtomo

#endif  // HAMTOMO_RANK_THEORY_HPP
