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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <set>

#include "hamtomo/errors.hpp"
#include "hamtomo/models.hpp"
#include "oracles.hpp"

using namespace hamtomo;

namespace {

std::set<std::string> labels(const TermBasis& b) {
  std::set<std::string> out;
  for (const auto& t : b.terms) out.insert(t.label());
  return out;
}

}  // namespace

TEST_CASE("parameter counts") {
  CHECK(param_count(ModelKind::H2, 5) == 51);
  CHECK(param_count(ModelKind::H2, 2) == 15);
  CHECK(param_count(ModelKind::H2Prime, 3) == 36);
  CHECK(param_count(ModelKind::H2Prime, 4) == 57);
  CHECK(param_count(ModelKind::H3Literal, 3) == 54);
  CHECK(param_count(ModelKind::H3Table, 3) == 63);
  CHECK(param_count(ModelKind::H3Table, 7) == 255);
  CHECK(param_count(ModelKind::H3Literal, 4) == 93);
  for (auto kind : {ModelKind::H2, ModelKind::H2Prime, ModelKind::H3Literal,
                    ModelKind::H3Table}) {
    for (int l = min_length(kind); l <= 9; ++l) {
      CHECK(enumerate_terms(kind, l).size() == param_count(kind, l));
    }
  }
}

TEST_CASE("too-short chains are rejected") {
  CHECK_THROWS_AS(enumerate_terms(ModelKind::H2, 1), InvalidArgument);
  CHECK_THROWS_AS(enumerate_terms(ModelKind::H2Prime, 2), InvalidArgument);
  CHECK_THROWS_AS(enumerate_terms(ModelKind::H3Table, 2), InvalidArgument);
  CHECK_THROWS_AS(param_count(ModelKind::H3Literal, 2), InvalidArgument);
  CHECK_THROWS_AS(parse_model("h4"), InvalidArgument);
  CHECK(parse_model("h3table") == ModelKind::H3Table);
  CHECK(model_name(ModelKind::H2Prime) == "h2prime");
}

TEST_CASE("terms are distinct, non-identity, and local") {
  for (auto kind : {ModelKind::H2, ModelKind::H2Prime, ModelKind::H3Literal,
                    ModelKind::H3Table}) {
    for (int l = min_length(kind); l <= 7; ++l) {
      const auto b = enumerate_terms(kind, l);
      CHECK(labels(b).size() == b.terms.size());
      for (const auto& t : b.terms) {
        CHECK(t.length() == l);
        CHECK(t.weight() >= 1);
        CHECK(t.weight() <= 3);
        int first = -1, last = -1;
        for (int k = 0; k < l; ++k) {
          if (t[k] != PauliOp::I) {
            if (first < 0) first = k;
            last = k;
          }
        }
        CHECK(last - first <= (kind == ModelKind::H2 ? 1 : 2));
      }
    }
  }
}

TEST_CASE("term order: single-site, nearest, next-nearest, three-site") {
  const auto b = enumerate_terms(ModelKind::H2, 2);
  CHECK(b.terms[0].label() == "XI");
  CHECK(b.terms[1].label() == "YI");
  CHECK(b.terms[2].label() == "ZI");
  CHECK(b.terms[3].label() == "IX");
  CHECK(b.terms[6].label() == "XX");
  CHECK(b.terms[7].label() == "XY");
  CHECK(b.terms[14].label() == "ZZ");
}

TEST_CASE("three-local table family is the union of its parts") {
  for (int l = 3; l <= 6; ++l) {
    const auto lit = labels(enumerate_terms(ModelKind::H3Literal, l));
    const auto pr = labels(enumerate_terms(ModelKind::H2Prime, l));
    const auto tab = labels(enumerate_terms(ModelKind::H3Table, l));
    std::set<std::string> uni = lit;
    uni.insert(pr.begin(), pr.end());
    CHECK(uni == tab);
  }
}

TEST_CASE("sampling is deterministic and standard normal") {
  const auto b = enumerate_terms(ModelKind::H2, 5);
  CHECK(sample_params(b, 42) == sample_params(b, 42));
  CHECK(sample_params(b, 42) != sample_params(b, 43));

  TermBasis big{ModelKind::H2, 2, {}};
  big.terms.assign(10000, PauliString::parse("XI"));
  const auto a = sample_params(big, 3);
  const double mean = a.mean();
  const double var = (a.array() - mean).square().sum() / (a.size() - 1);
  CHECK(std::abs(mean) < 0.03);
  CHECK(std::abs(std::sqrt(var) - 1.0) < 0.03);
}

TEST_CASE("assembly") {
  SUBCASE("zero couplings give the zero matrix") {
    const auto b = enumerate_terms(ModelKind::H2, 3);
    CHECK(assemble(b, ParamVector::Zero(b.size())).isZero(0.0));
  }
  SUBCASE("single coupling gives that string") {
    const auto b = enumerate_terms(ModelKind::H3Table, 3);
    for (int n : {0, 17, 40, b.size() - 1}) {
      ParamVector a = ParamVector::Zero(b.size());
      a(n) = 1.0;
      CHECK(assemble(b, a) == oracle::dense_by_elements(b.terms[n]));
    }
  }
  SUBCASE("random couplings match an independent Kronecker assembly") {
    for (auto kind : {ModelKind::H2, ModelKind::H2Prime, ModelKind::H3Literal,
                      ModelKind::H3Table}) {
      for (int l = min_length(kind); l <= 5; ++l) {
        const auto b = enumerate_terms(kind, l);
        const auto a = sample_params(b, 100 + l);
        const auto h = assemble(b, a);
        CHECK((h - oracle::kron_assembly(b, a)).cwiseAbs().maxCoeff() < 1e-12);
        CHECK(hermiticity_defect(h) < 1e-14);
      }
    }
  }
  SUBCASE("length mismatch") {
    const auto b = enumerate_terms(ModelKind::H2, 3);
    CHECK_THROWS_AS(assemble(b, ParamVector::Zero(b.size() + 1)), DimensionMismatch);
  }
}
