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

#include "hamtomo/linalg.hpp"

#include <algorithm>
#include <string>

#include <lapacke.h>

#include "hamtomo/errors.hpp"

namespace hamtomo {

RightSvd right_svd(const Eigen::MatrixXd& m, bool compute_v) {
  if (!m.allFinite()) throw NumericalFailure("SVD input has non-finite entries");
  const auto rows = static_cast<lapack_int>(m.rows());
  const auto cols = static_cast<lapack_int>(m.cols());
  RightSvd out;
  out.singular_values.resize(std::min(rows, cols));
  if (rows == 0 || cols == 0) {
    if (compute_v) out.v = Eigen::MatrixXd::Identity(cols, cols);
    return out;
  }
  // dgesvd overwrites its input; it reduces tall matrices by QR internally.
  Eigen::MatrixXd a = m;
  Eigen::MatrixXd vt;
  if (compute_v) vt.resize(cols, cols);
  Eigen::VectorXd superb(std::max<lapack_int>(1, std::min(rows, cols) - 1));
  double dummy = 0.0;
  const lapack_int info = LAPACKE_dgesvd(
      LAPACK_COL_MAJOR, 'N', compute_v ? 'A' : 'N', rows, cols, a.data(), rows,
      out.singular_values.data(), &dummy, 1, compute_v ? vt.data() : &dummy,
      compute_v ? cols : 1, superb.data());
  if (info != 0) {
    throw NumericalFailure("dgesvd failed (info=" + std::to_string(info) + ")");
  }
  if (compute_v) out.v = vt.transpose();
  return out;
}

int count_nonzero(const Eigen::VectorXd& singular_values, double tol_rel) {
  if (singular_values.size() == 0) return 0;
  const double cutoff = tol_rel * singular_values.maxCoeff();
  int rank = 0;
  for (double s : singular_values) rank += s > cutoff;
  return rank;
}

}  // namespace hamtomo
