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

#include "hamtomo/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "hamtomo/errors.hpp"
#include "hamtomo/rng.hpp"

namespace hamtomo {

std::string_view policy_name(SelectionPolicy policy) {
  return policy == SelectionPolicy::Lowest ? "lowest" : "random";
}

SelectionPolicy parse_policy(std::string_view name) {
  if (name == "lowest") return SelectionPolicy::Lowest;
  if (name == "random") return SelectionPolicy::Random;
  throw InvalidArgument("unknown selection policy '" + std::string(name) +
                        "' (expected lowest or random)");
}

EigDecomposition eig_hermitian(const DenseOperator& h) {
  if (h.rows() != h.cols() || h.rows() == 0) {
    throw InvalidArgument("eigendecomposition needs a non-empty square matrix");
  }
  const double scale = std::max(1.0, h.cwiseAbs().maxCoeff());
  if (hermiticity_defect(h) > 1e-12 * scale) {
    throw InvalidArgument("matrix is not Hermitian");
  }
  Eigen::SelfAdjointEigenSolver<DenseOperator> solver(h);
  if (solver.info() != Eigen::Success) {
    throw NumericalFailure("Hermitian eigensolver did not converge");
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

SteadyState build_steady_state(const EigDecomposition& eig, int q,
                               SelectionPolicy selection, std::uint64_t seed) {
  const auto dim = static_cast<int>(eig.eigenvalues.size());
  if (q < 1 || q > dim) {
    throw InvalidArgument("steady-state rank q=" + std::to_string(q) +
                          " outside 1.." + std::to_string(dim));
  }
  Rng rng(seed);

  std::vector<int> picked(q);
  if (selection == SelectionPolicy::Lowest) {
    std::iota(picked.begin(), picked.end(), 0);
  } else {
    std::vector<int> all(dim);
    std::iota(all.begin(), all.end(), 0);
    std::shuffle(all.begin(), all.end(), rng);
    std::copy_n(all.begin(), q, picked.begin());
    std::sort(picked.begin(), picked.end());
  }

  const double range = eig.eigenvalues(dim - 1) - eig.eigenvalues(0);
  for (int i = 1; i < q; ++i) {
    const double gap = eig.eigenvalues(picked[i]) - eig.eigenvalues(picked[i - 1]);
    if (!(gap >= kDegeneracyTolerance * range) || range == 0.0) {
      throw DegenerateSpectrum("selected eigenvalues " + std::to_string(picked[i - 1]) +
                               " and " + std::to_string(picked[i]) + " are degenerate");
    }
  }

  // Uniform on the simplex via normalized exponentials; redraw near-ties.
  Eigen::VectorXd probs(q);
  std::exponential_distribution<double> expo(1.0);
  for (int attempt = 0;; ++attempt) {
    if (attempt == 100000) {
      throw InvalidArgument("cannot draw " + std::to_string(q) +
                            " probabilities with pairwise gap >= 1e-3");
    }
    for (int i = 0; i < q; ++i) probs(i) = expo(rng);
    probs /= probs.sum();
    bool distinct = true;
    for (int i = 0; i < q && distinct; ++i)
      for (int j = i + 1; j < q && distinct; ++j)
        distinct = std::abs(probs(i) - probs(j)) >= kMinProbabilityGap;
    if (distinct) break;
  }

  SteadyState st;
  st.states.resize(dim, q);
  st.energies.resize(q);
  for (int i = 0; i < q; ++i) {
    st.states.col(i) = eig.eigenvectors.col(picked[i]);
    st.energies(i) = eig.eigenvalues(picked[i]);
  }
  st.probs = probs;
  st.rho = st.states * probs.cast<Complex>().asDiagonal() * st.states.adjoint();
  return st;
}

}  // namespace hamtomo
