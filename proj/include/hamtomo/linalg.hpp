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

#ifndef HAMTOMO_LINALG_HPP
#define HAMTOMO_LINALG_HPP

#include <Eigen/Dense>

namespace hamtomo {

/// Default relative threshold for counting singular values as nonzero.
inline constexpr double kDefaultRankTolerance = 1e-10;

struct RightSvd {
  Eigen::VectorXd singular_values;  // descending, min(rows, cols) entries
  Eigen::MatrixXd v;                // cols x cols, empty unless requested
};

/// Singular values (and optionally the full right-singular basis) of a real
/// matrix, via LAPACK dgesvd.
RightSvd right_svd(const Eigen::MatrixXd& m, bool compute_v);

/// Number of singular values strictly above tol_rel * sigma_max.
int count_nonzero(const Eigen::VectorXd& singular_values, double tol_rel);

}  // namespace hamtomo

#endif  // HAMTOMO_LINALG_HPP
