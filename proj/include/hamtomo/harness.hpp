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

#ifndef HAMTOMO_HARNESS_HPP
#define HAMTOMO_HARNESS_HPP

#include <cstdint>
#include <filesystem>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "hamtomo/eee.hpp"
#include "hamtomo/hoe.hpp"
#include "hamtomo/models.hpp"
#include "hamtomo/spectral.hpp"

namespace hamtomo {

/// One sweep over chain lengths and steady-state ranks for a single model.
///
/// JSON keys match the field names (L_min, L_max, q_list, trials, seed,
/// selection_policy, rank_tol, success_threshold, methods, threads,
/// record_wall_time, output_dir); "model" and "selection_policy" take the CLI
/// names and "methods" is a list drawn from {"hoe", "eee"}.
struct ExperimentConfig {
  ModelKind model = ModelKind::H2;
  int l_min = 2;
  int l_max = 9;
  std::vector<int> q_list{1, 2, 3};
  int trials = 200;
  std::uint64_t seed = 20220607;
  SelectionPolicy selection = SelectionPolicy::Lowest;
  double rank_tol = kDefaultRankTolerance;
  double success_threshold = 1e-6;
  bool run_hoe = true;
  bool run_eee = true;
  int threads = 0;  // 0: hardware concurrency
  /// Off by default so repeated runs produce byte-identical CSV.
  bool record_wall_time = false;
  std::string output_dir;  // empty: nothing is written

  /// Throws ConfigError.
  void validate() const;
};

ExperimentConfig parse_config(const std::string& json_text);
ExperimentConfig load_config(const std::filesystem::path& path);
std::string config_to_json(const ExperimentConfig& cfg);

inline constexpr int kMaxDegenerateRetries = 16;

/// Everything a trial needs before any recovery method runs.
struct TrialInstance {
  TermBasis basis;
  Eigen::VectorXd a_true;
  DenseOperator hamiltonian;
  SteadyState state;
  int retries = 0;
};

/// Stream seeds. Couplings depend on (seed, model, L, trial, retry) so the
/// q = 1, 2, 3 states of one trial share a Hamiltonian; probabilities and
/// random selections additionally depend on q.
std::uint64_t param_stream(const ExperimentConfig& cfg, ModelKind model, int length,
                           int trial, int retry);
std::uint64_t state_stream(const ExperimentConfig& cfg, ModelKind model, int length,
                           int q, int trial, int retry);

/// Samples couplings and builds the steady state, resampling on degenerate
/// picks. Returns nullopt once kMaxDegenerateRetries resamples all failed.
std::optional<TrialInstance> prepare_instance(const ExperimentConfig& cfg,
                                              ModelKind model, int length, int q,
                                              int trial);

inline constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

/// Checks that are not part of the CSV but back the property suite.
struct TrialDiagnostics {
  double g_residual = kNaN;          // |G a|_inf / (max(1, max|G|) |a|)
  double q_residual = kNaN;          // |Q x|_inf / (max(1, max|Q|) |x|)
  double commutator_residual = kNaN; // max |[H, rho]|
  double hoe_eee_distance = kNaN;    // sign-aligned, when both unique
  double eigenvalue_rel_error = kNaN;  // after common rescaling, EEE unique
  double hermitian_block_defect = kNaN;  // off-diagonal <l_nu|H_rec|l_mu>
};

struct TrialRecord {
  ModelKind model = ModelKind::H2;
  int length = 0;
  int q = 0;
  int trial = 0;
  int retries = 0;
  int n_params = 0;
  double delta_hoe = kNaN;
  double delta_eee = kNaN;
  int r = -1;
  int r_prime = -1;
  int gap = -1;
  int gap_prime = -1;
  bool relations_ok = true;
  bool rejected = false;
  double wall_time_s = 0.0;
  TrialDiagnostics diag;
};

TrialRecord run_trial(const ExperimentConfig& cfg, ModelKind model, int length, int q,
                      int trial);

/// Runs every q in cfg.q_list for one (L, trial) on a shared Hamiltonian.
/// Each record equals what run_trial returns for that q.
std::vector<TrialRecord> run_trial_group(const ExperimentConfig& cfg, ModelKind model,
                                         int length, int trial);

struct AggregateRow {
  ModelKind model = ModelKind::H2;
  int length = 0;
  int q = 0;
  std::string method;  // "hoe" or "eee"
  int n_unknowns = 0;  // N for HOE, N + q for EEE
  int trials = 0;      // non-rejected trials aggregated
  int rejected = 0;
  double median_delta = kNaN;
  double upper_dev = kNaN;  // max - median
  double lower_dev = kNaN;  // median - min
  int rank_mode = -1;
  bool rank_consistent = true;
  int gap_mode = -1;
  double success_rate = kNaN;
};

std::vector<AggregateRow> aggregate(const ExperimentConfig& cfg,
                                    const std::vector<TrialRecord>& records);

struct ExperimentResult {
  std::vector<TrialRecord> records;  // ordered by (L, q, trial)
  std::vector<AggregateRow> rows;
};

/// Runs all cells on a bounded worker pool. When cfg.output_dir is set,
/// writes trials.csv and aggregate.json there; on failure the completed
/// records are flushed before the exception propagates.
ExperimentResult run_experiment(const ExperimentConfig& cfg);

std::string trials_csv(const std::vector<TrialRecord>& records);
std::string aggregate_json(const std::vector<AggregateRow>& rows);

}  // namespace hamtomo

#endif  // HAMTOMO_HARNESS_HPP
