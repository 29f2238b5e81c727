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

#include <cmath>

#include "hamtomo/eee.hpp"
#include "hamtomo/errors.hpp"
#include "hamtomo/hoe.hpp"
#include "hamtomo/models.hpp"
#include "hamtomo/spectral.hpp"

using namespace hamtomo;

namespace {

struct Instance {
  TermBasis basis;
  ParamVector a;
  SteadyState ss;
};

Instance make(ModelKind kind, int l, int q, std::uint64_t seed) {
  Instance in{enumerate_terms(kind, l), {}, {}};
  in.a = sample_params(in.basis, seed);
  in.ss = build_steady_state(eig_hermitian(assemble(in.basis, in.a)), q,
                             SelectionPolicy::Lowest, seed + 1);
  return in;
}

}  // namespace

TEST_CASE("single-qubit example") {
  const TermBasis b{ModelKind::H2, 1, {PauliString::parse("Z")}};
  Eigen::MatrixXcd up = Eigen::MatrixXcd::Zero(2, 1);
  up(0, 0) = 1.0;
  const auto qm = build_Q(b, up);
  Eigen::MatrixXd expected = Eigen::MatrixXd::Zero(4, 2);
  expected(0, 0) = 1.0;
  expected(0, 1) = -1.0;
  CHECK(qm.entries == expected);

  const auto res = solve_eee(qm);
  CHECK(res.rank == 1);
  CHECK(res.unique());
  CHECK(std::abs(res.a_recovered(0)) == doctest::Approx(1.0));
  CHECK(res.lambdas_recovered(0) == doctest::Approx(res.a_recovered(0)));
}

TEST_CASE("block structure") {
  const auto in = make(ModelKind::H2, 3, 2, 4);
  const auto qm = build_Q(in.basis, in.ss.states);
  const int n = in.basis.size();
  const int dim = in.basis.dim();
  REQUIRE(qm.entries.rows() == 2 * 2 * dim);
  REQUIRE(qm.entries.cols() == n + 2);
  for (int mu = 0; mu < 2; ++mu) {
    const auto v = in.ss.states.col(mu);
    for (int k = 0; k < n; ++k) {
      const StateVector hv = in.basis.terms[k].apply(v);
      CHECK((qm.entries.block(mu * 2 * dim, k, dim, 1) - hv.real()).isZero(0.0));
      CHECK((qm.entries.block(mu * 2 * dim + dim, k, dim, 1) - hv.imag()).isZero(0.0));
    }
    CHECK((qm.entries.block(mu * 2 * dim, n + mu, dim, 1) + v.real()).isZero(0.0));
    CHECK((qm.entries.block(mu * 2 * dim + dim, n + mu, dim, 1) + v.imag()).isZero(0.0));
    CHECK(qm.entries.block(mu * 2 * dim, n + 1 - mu, 2 * dim, 1).isZero(0.0));
  }
}

TEST_CASE("true solution lies in the nullspace") {
  for (int q = 1; q <= 3; ++q) {
    const auto in = make(ModelKind::H3Table, 4, q, 70 + q);
    const auto qm = build_Q(in.basis, in.ss.states);
    Eigen::VectorXd x(in.basis.size() + q);
    x << in.a, in.ss.energies;
    CHECK((qm.entries * x).cwiseAbs().maxCoeff() < 1e-11 * x.norm());
  }
}

TEST_CASE("ranks on small chains") {
  SUBCASE("H2, L=3, q=2") {
    const auto in = make(ModelKind::H2, 3, 2, 6);
    const auto res = solve_eee(build_Q(in.basis, in.ss.states));
    CHECK(res.rank == 28);
    CHECK(res.unique());
    CHECK(res.delta_error.has_value() == false);
  }
  SUBCASE("H3Table, L=4, q=3") {
    const auto in = make(ModelKind::H3Table, 4, 3, 6);
    const auto res = solve_eee(build_Q(in.basis, in.ss.states));
    CHECK(res.rank == 87);
    CHECK(res.gap == 26);
  }
}

TEST_CASE("recovered eigenvalues follow the couplings' scale") {
  const auto in = make(ModelKind::H2, 3, 2, 21);
  const auto res = solve_eee(build_Q(in.basis, in.ss.states));
  REQUIRE(res.unique());
  const double scale = res.a_recovered.dot(in.a) / in.a.squaredNorm();
  CHECK(reconstruction_error(in.a, res.a_recovered) < 1e-8);
  CHECK((res.lambdas_recovered / scale - in.ss.energies).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("vanishing coefficient block is a numerical failure") {
  // The only null vector is pure lambda: (0, 1).
  ConstraintMatrixQ qm;
  qm.n_params = 1;
  qm.n_states = 1;
  qm.entries = Eigen::MatrixXd::Zero(2, 2);
  qm.entries(0, 0) = 1.0;
  CHECK_THROWS_AS(solve_eee(qm), NumericalFailure);
}

TEST_CASE("input validation") {
  const auto b = enumerate_terms(ModelKind::H2, 2);
  CHECK_THROWS_AS(build_Q(b, Eigen::MatrixXcd::Zero(4, 0)), InvalidArgument);
  CHECK_THROWS_AS(build_Q(b, Eigen::MatrixXcd::Zero(8, 1)), DimensionMismatch);
}

TEST_CASE("equivalence check") {
  RecoveryReport hoe;
  hoe.rank = 26;
  hoe.gap = 0;
  hoe.a_recovered = Eigen::VectorXd::Unit(27, 0);
  EEEResult eee;
  eee.rank = 28;
  eee.gap = 0;
  eee.a_recovered = -Eigen::VectorXd::Unit(27, 0);

  auto chk = check_equivalence(hoe, eee, 2);
  CHECK(chk.holds());
  REQUIRE(chk.angle.has_value());
  CHECK(*chk.angle < 1e-15);

  eee.rank = 27;
  eee.gap = 1;
  chk = check_equivalence(hoe, eee, 2);
  CHECK_FALSE(chk.gaps_equal);
  CHECK_FALSE(chk.rank_shift_ok);
  CHECK_FALSE(chk.angle.has_value());

  eee.rank = 28;
  eee.gap = 0;
  eee.a_recovered = Eigen::VectorXd::Unit(27, 1);
  chk = check_equivalence(hoe, eee, 2);
  CHECK(chk.holds());
  CHECK(*chk.angle == doctest::Approx(M_PI / 2));
}

TEST_CASE("HOE and EEE agree on generic instances") {
  for (int l = 2; l <= 5; ++l) {
    for (int q = 1; q <= 3; ++q) {
      const auto in = make(ModelKind::H2, l, q, 300 + 10 * l + q);
      const auto hoe = solve_hoe(build_G(in.basis, in.ss.rho));
      const auto eee = solve_eee(build_Q(in.basis, in.ss.states));
      CAPTURE(l);
      CAPTURE(q);
      const auto chk = check_equivalence(hoe, eee, q);
      CHECK(chk.holds());
      if (hoe.unique()) CHECK(reconstruction_error(hoe.a_recovered, eee.a_recovered) < 1e-8);
    }
  }
}
