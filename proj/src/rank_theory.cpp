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

#include "hamtomo/rank_theory.hpp"

#include <algorithm>
#include <string>

#include "hamtomo/errors.hpp"

namespace hamtomo {

namespace {

// Capped so the shift cannot overflow; beyond this L every model is
// recoverable anyway.
constexpr int kMaxShift = 60;

bool q_fits(int length, int q) {
  return length >= kMaxShift || q <= (std::int64_t{1} << length);
}

}  // namespace

std::int64_t constraint_supply(int length, int q) {
  const std::int64_t qq = q;
  return qq * (std::int64_t{1} << std::min(length + 1, kMaxShift)) - qq * qq - qq;
}

RankPrediction predict_ranks(ModelKind kind, int length, int q) {
  const int n = param_count(kind, length);
  if (q < 1 || !q_fits(length, q)) {
    throw InvalidArgument("q=" + std::to_string(q) + " outside 1..2^L for L=" +
                          std::to_string(length));
  }
  RankPrediction p{kind, length, q, n, 0, 0, 0, false};
  p.r_pred = std::min<std::int64_t>(constraint_supply(length, q), n - 1);
  p.r_prime_pred =
      std::min<std::int64_t>(constraint_supply(length, q) + q, std::int64_t{n} + q - 1);
  p.delta_pred = n - 1 - p.r_pred;
  p.recoverable = p.delta_pred == 0;
  return p;
}

CriticalLength critical_length(ModelKind kind, int q, int max_length) {
  if (q < 1) throw InvalidArgument("q must be >= 1");
  for (int l = min_length(kind); l <= max_length; ++l) {
    if (!q_fits(l, q)) continue;
    if (constraint_supply(l, q) >= param_count(kind, l) - 1) return {kind, q, l};
  }
  throw InvalidArgument("no critical length up to L=" + std::to_string(max_length));
}

std::vector<ModelKind> table5_models() {
  return {ModelKind::H2, ModelKind::H2Prime, ModelKind::H3Literal};
}

std::vector<std::vector<CriticalLength>> table5(int q_max) {
  std::vector<std::vector<CriticalLength>> grid;
  for (ModelKind kind : table5_models()) {
    auto& row = grid.emplace_back();
    for (int q = 1; q <= q_max; ++q) row.push_back(critical_length(kind, q));
  }
  return grid;
}

}  // namespace hamtomo
