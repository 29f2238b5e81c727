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

#include "hamtomo/eee.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hamtomo/errors.hpp"

namespace hamtomo {

ConstraintMatrixQ build_Q(const TermBasis& basis, const Eigen::MatrixXcd& states) {
  const int q = static_cast<int>(states.cols());
  if (q == 0) throw InvalidArgument("EEE needs at least one eigenstate");
  const int dim = basis.dim();
  if (states.rows() != dim) {
    throw DimensionMismatch("eigenstates have dimension " + std::to_string(states.rows()) +
                            ", expected " + std::to_string(dim));
  }
  const int n = basis.size();

  ConstraintMatrixQ qm;
  qm.n_params = n;
  qm.n_states = q;
  qm.entries = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(q) * 2 * dim, n + q);
  for (int mu = 0; mu < q; ++mu) {
    const StateVector v = states.col(mu);
    const Eigen::Index re0 = static_cast<Eigen::Index>(mu) * 2 * dim;
    const Eigen::Index im0 = re0 + dim;
    for (int k = 0; k < n; ++k) {
      const StateVector hv = basis.terms[k].apply(v);
      qm.entries.block(re0, k, dim, 1) = hv.real();
      qm.entries.block(im0, k, dim, 1) = hv.imag();
    }
    qm.entries.block(re0, n + mu, dim, 1) = -v.real();
    qm.entries.block(im0, n + mu, dim, 1) = -v.imag();
  }
  return qm;
}

EEEResult solve_eee(const ConstraintMatrixQ& qm, double rank_tol) {
  const Eigen::MatrixXd& m = qm.entries;
  if (m.size() == 0 || m.cwiseAbs().maxCoeff() == 0.0) {
    throw InvalidArgument("constraint matrix Q is zero");
  }
  const RightSvd svd = right_svd(m, true);
  const auto cols = static_cast<int>(m.cols());
  EEEResult out;
  out.rank = count_nonzero(svd.singular_values, rank_tol);
  out.gap = cols - (out.rank + 1);
  out.lowest_singular_value = m.rows() >= m.cols() ? svd.singular_values(cols - 1) : 0.0;

  const Eigen::VectorXd x = svd.v.col(cols - 1);
  const Eigen::VectorXd a = x.head(qm.n_params);
  const double a_norm = a.norm();
  if (!(a_norm > 1e-12 * x.norm())) {
    throw NumericalFailure("nullspace vector of Q has a vanishing coefficient block");
  }
  out.a_recovered = a / a_norm;
  out.lambdas_recovered = x.tail(qm.n_states) / a_norm;
  return out;
}

EquivalenceCheck check_equivalence(const RecoveryReport& hoe, const EEEResult& eee,
                                   int q) {
  EquivalenceCheck c;
  c.gaps_equal = hoe.gap == eee.gap;
  c.rank_shift_ok = eee.rank == hoe.rank + q;
  if (hoe.unique() && eee.unique() &&
      hoe.a_recovered.size() == eee.a_recovered.size()) {
    const Eigen::VectorXd u = hoe.a_recovered.normalized();
    const Eigen::VectorXd w = eee.a_recovered.normalized();
    // Stable for nearly parallel vectors, unlike acos of the dot product.
    const double diff = std::min((u - w).norm(), (u + w).norm());
    const double sum = std::max((u - w).norm(), (u + w).norm());
    c.angle = 2.0 * std::atan2(diff, sum);
  }
  return c;
}

}  // namespace hamtomo
