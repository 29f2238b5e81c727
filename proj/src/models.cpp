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

#include "hamtomo/models.hpp"

#include <array>
#include <random>

#include "hamtomo/errors.hpp"
#include "hamtomo/rng.hpp"

namespace hamtomo {

namespace {

constexpr std::array<PauliOp, 3> kXYZ = {PauliOp::X, PauliOp::Y, PauliOp::Z};

bool has_next_nearest(ModelKind kind) {
  return kind == ModelKind::H2Prime || kind == ModelKind::H3Table;
}

bool has_three_site(ModelKind kind) {
  return kind == ModelKind::H3Literal || kind == ModelKind::H3Table;
}

void check_length(ModelKind kind, int length) {
  if (length < min_length(kind)) {
    throw InvalidArgument("chain length " + std::to_string(length) +
                          " too short for model " + std::string(model_name(kind)) +
                          " (needs L >= " + std::to_string(min_length(kind)) + ")");
  }
}

}  // namespace

std::string_view model_name(ModelKind kind) {
  switch (kind) {
    case ModelKind::H2: return "h2";
    case ModelKind::H2Prime: return "h2prime";
    case ModelKind::H3Literal: return "h3";
    case ModelKind::H3Table: return "h3table";
  }
  return "?";
}

ModelKind parse_model(std::string_view name) {
  if (name == "h2") return ModelKind::H2;
  if (name == "h2prime") return ModelKind::H2Prime;
  if (name == "h3") return ModelKind::H3Literal;
  if (name == "h3table") return ModelKind::H3Table;
  throw InvalidArgument("unknown model '" + std::string(name) +
                        "' (expected h2, h2prime, h3 or h3table)");
}

int min_length(ModelKind kind) { return kind == ModelKind::H2 ? 2 : 3; }

int param_count(ModelKind kind, int length) {
  check_length(kind, length);
  switch (kind) {
    case ModelKind::H2: return 12 * length - 9;
    case ModelKind::H2Prime: return 21 * length - 27;
    case ModelKind::H3Literal: return 39 * length - 63;
    case ModelKind::H3Table: return 48 * length - 81;
  }
  return 0;
}

TermBasis enumerate_terms(ModelKind kind, int length) {
  check_length(kind, length);
  if (length > PauliString::kMaxSites) {
    throw InvalidArgument("chain length " + std::to_string(length) + " too long");
  }
  TermBasis basis{kind, length, {}};
  basis.terms.reserve(param_count(kind, length));

  auto make = [length](std::initializer_list<std::pair<int, PauliOp>> sites) {
    std::vector<PauliOp> ops(length, PauliOp::I);
    for (auto [site, op] : sites) ops[site] = op;
    return PauliString(std::move(ops));
  };

  for (int l = 0; l < length; ++l)
    for (PauliOp a : kXYZ) basis.terms.push_back(make({{l, a}}));

  for (int l = 0; l + 1 < length; ++l)
    for (PauliOp a : kXYZ)
      for (PauliOp b : kXYZ) basis.terms.push_back(make({{l, a}, {l + 1, b}}));

  if (has_next_nearest(kind)) {
    for (int l = 0; l + 2 < length; ++l)
      for (PauliOp a : kXYZ)
        for (PauliOp b : kXYZ) basis.terms.push_back(make({{l, a}, {l + 2, b}}));
  }

  if (has_three_site(kind)) {
    for (int l = 0; l + 2 < length; ++l)
      for (PauliOp a : kXYZ)
        for (PauliOp b : kXYZ)
          for (PauliOp c : kXYZ)
            basis.terms.push_back(make({{l, a}, {l + 1, b}, {l + 2, c}}));
  }
  return basis;
}

ParamVector sample_params(const TermBasis& basis, std::uint64_t seed) {
  Rng rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  ParamVector a(basis.size());
  for (int n = 0; n < basis.size(); ++n) a(n) = normal(rng);
  return a;
}

DenseOperator assemble(const TermBasis& basis, const ParamVector& a) {
  if (a.size() != basis.size()) {
    throw DimensionMismatch("parameter vector has " + std::to_string(a.size()) +
                            " entries, basis has " + std::to_string(basis.size()));
  }
  const auto dim = static_cast<std::uint32_t>(basis.dim());
  DenseOperator h = DenseOperator::Zero(dim, dim);
  for (int n = 0; n < basis.size(); ++n) {
    const PauliString& s = basis.terms[n];
    if (a(n) == 0.0) continue;
    for (std::uint32_t j = 0; j < dim; ++j) h(j ^ s.flip_mask(), j) += a(n) * s.phase(j);
  }
  return h;
}

}  // namespace hamtomo
