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

#include "hamtomo/hoe.hpp"

#include <bit>
#include <cmath>
#include <string>

#include "hamtomo/errors.hpp"

namespace hamtomo {

namespace {

void check_state(const DenseOperator& rho, int dim) {
  if (rho.rows() != dim || rho.cols() != dim) {
    throw DimensionMismatch("density matrix is " + std::to_string(rho.rows()) + "x" +
                            std::to_string(rho.cols()) + ", expected dimension " +
                            std::to_string(dim));
  }
  if (std::abs(rho.trace() - Complex{1.0, 0.0}) > 1e-10) {
    throw InvalidArgument("density matrix does not have unit trace");
  }
  if (hermiticity_defect(rho) > 1e-12) {
    throw InvalidArgument("density matrix is not Hermitian");
  }
}

// Tr(A B rho) for Pauli strings A, B. With x = xa^xb and j the row index of
// rho, (A B rho)_{kk} collapses to phase(j) rho(j, j^x) where the sign only
// depends on the parity of j & (sa ^ sb).
Complex trace_product(const PauliString& a, const PauliString& b,
                      const DenseOperator& rho) {
  const std::uint32_t x = a.flip_mask() ^ b.flip_mask();
  const std::uint32_t s = a.sign_mask() ^ b.sign_mask();
  const auto dim = static_cast<std::uint32_t>(rho.rows());
  Complex sum{0.0, 0.0};
  for (std::uint32_t j = 0; j < dim; ++j) {
    const Complex v = rho(j, j ^ x);
    if (std::popcount(j & s) & 1) sum -= v; else sum += v;
  }
  // phase_a(j ^ xb) phase_b(j) = prefactor * (-1)^{parity(j & s)}
  Complex prefactor = a.phase(b.flip_mask()) * b.phase(0);
  return prefactor * sum;
}

}  // namespace

ConstraintMatrixG build_G(const TermBasis& basis, const DenseOperator& rho,
                          const std::vector<PauliString>& observables) {
  check_state(rho, basis.dim());
  const bool self = observables.empty();
  ConstraintMatrixG g;
  g.observables = self ? basis.terms : observables;
  for (const auto& k : g.observables) {
    if (k.length() != basis.length) {
      throw DimensionMismatch("observable " + k.label() + " has wrong chain length");
    }
  }

  const int m_count = static_cast<int>(g.observables.size());
  const int n_count = basis.size();
  g.entries = Eigen::MatrixXd::Zero(m_count, n_count);
  // <i[K, h]> = i Tr(K h rho) - i conj(Tr(K h rho)) = -2 Im Tr(K h rho)
  for (int m = 0; m < m_count; ++m) {
    const int n_begin = self ? m + 1 : 0;
    for (int n = n_begin; n < n_count; ++n) {
      const double value =
          -2.0 * trace_product(g.observables[m], basis.terms[n], rho).imag();
      g.entries(m, n) = value;
      if (self) g.entries(n, m) = -value;
    }
  }
  return g;
}

int numeric_rank(const Eigen::MatrixXd& m, double tol_rel) {
  if (!(tol_rel > 0.0)) throw InvalidArgument("rank tolerance must be positive");
  return count_nonzero(right_svd(m, false).singular_values, tol_rel);
}

RecoveryReport solve_hoe(const ConstraintMatrixG& g, double rank_tol) {
  const Eigen::MatrixXd& m = g.entries;
  if (m.size() == 0 || m.cwiseAbs().maxCoeff() == 0.0) {
    throw InvalidArgument("constraint matrix G is zero");
  }
  const RightSvd svd = right_svd(m, true);
  const auto n = static_cast<int>(m.cols());
  RecoveryReport report;
  report.rank = count_nonzero(svd.singular_values, rank_tol);
  report.gap = n - (report.rank + 1);
  report.lowest_singular_value =
      m.rows() >= m.cols() ? svd.singular_values(n - 1) : 0.0;
  report.a_recovered = svd.v.col(n - 1).normalized();
  return report;
}

double reconstruction_error(const Eigen::VectorXd& a_true,
                            const Eigen::VectorXd& a_rec) {
  if (a_true.size() != a_rec.size()) {
    throw DimensionMismatch("coefficient vectors differ in length");
  }
  const double nt = a_true.norm();
  const double nr = a_rec.norm();
  if (nt == 0.0 || nr == 0.0) throw InvalidArgument("zero coefficient vector");
  const Eigen::VectorXd u = a_true / nt;
  const Eigen::VectorXd w = a_rec / nr;
  return std::min((u - w).norm(), (u + w).norm());
}

}  // namespace hamtomo
