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
#include <filesystem>
#include <fstream>
#include <sstream>

#include "hamtomo/errors.hpp"
#include "hamtomo/harness.hpp"
#include "hamtomo/report.hpp"

using namespace hamtomo;
namespace fs = std::filesystem;

namespace {

ExperimentConfig small_config() {
  ExperimentConfig cfg;
  cfg.model = ModelKind::H2;
  cfg.l_min = 2;
  cfg.l_max = 4;
  cfg.trials = 3;
  cfg.threads = 1;
  return cfg;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("hamtomo_test_" + name);
  fs::remove_all(dir);
  return dir;
}

TrialRecord synthetic(int trial, double delta, int r) {
  TrialRecord rec;
  rec.model = ModelKind::H2;
  rec.length = 3;
  rec.q = 1;
  rec.trial = trial;
  rec.n_params = 27;
  rec.delta_hoe = delta;
  rec.delta_eee = delta;
  rec.r = r;
  rec.r_prime = r + 1;
  rec.gap = 26 - r;
  rec.gap_prime = 26 - r;
  return rec;
}

}  // namespace

TEST_CASE("config parsing") {
  const auto cfg = parse_config(R"({"model": "h3table", "L_min": 3, "L_max": 5,
      "q_list": [1, 2], "trials": 4, "seed": 9, "selection_policy": "random",
      "methods": ["eee"], "threads": 2})");
  CHECK(cfg.model == ModelKind::H3Table);
  CHECK(cfg.l_min == 3);
  CHECK(cfg.l_max == 5);
  CHECK(cfg.q_list == std::vector<int>{1, 2});
  CHECK(cfg.trials == 4);
  CHECK(cfg.seed == 9);
  CHECK(cfg.selection == SelectionPolicy::Random);
  CHECK_FALSE(cfg.run_hoe);
  CHECK(cfg.run_eee);

  const auto back = parse_config(config_to_json(cfg));
  CHECK(config_to_json(back) == config_to_json(cfg));

  const auto defaults = parse_config("{}");
  CHECK(defaults.trials == 200);
  CHECK(defaults.q_list == std::vector<int>{1, 2, 3});
}

TEST_CASE("config validation errors") {
  CHECK_THROWS_AS(parse_config("not json"), ConfigError);
  CHECK_THROWS_AS(parse_config("[]"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"trails": 3})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"model": "h4"})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"trials": 0})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"trials": "many"})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"L_min": 5, "L_max": 4})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"model": "h3table", "L_min": 2})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"L_min": 2, "q_list": [5]})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"q_list": []})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"methods": []})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"methods": ["svd"]})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"rank_tol": -1})"), ConfigError);
  CHECK_THROWS_AS(load_config("/nonexistent/config.json"), ConfigError);
}

TEST_CASE("trials are deterministic and independent of grouping") {
  const auto cfg = small_config();
  const auto a = run_trial(cfg, ModelKind::H2, 3, 2, 1);
  const auto b = run_trial(cfg, ModelKind::H2, 3, 2, 1);
  CHECK(a.delta_hoe == b.delta_hoe);
  CHECK(a.delta_eee == b.delta_eee);

  const auto group = run_trial_group(cfg, ModelKind::H2, 3, 1);
  REQUIRE(group.size() == 3);
  CHECK(group[1].q == 2);
  CHECK(group[1].delta_hoe == a.delta_hoe);
  CHECK(group[1].delta_eee == a.delta_eee);
  CHECK(group[1].r == a.r);

  const auto other = run_trial(cfg, ModelKind::H2, 3, 2, 2);
  CHECK(other.delta_hoe != a.delta_hoe);
}

TEST_CASE("prepared instances share couplings across q") {
  const auto cfg = small_config();
  const auto i1 = prepare_instance(cfg, ModelKind::H2, 4, 1, 0);
  const auto i3 = prepare_instance(cfg, ModelKind::H2, 4, 3, 0);
  REQUIRE(i1);
  REQUIRE(i3);
  CHECK(i1->a_true == i3->a_true);
  CHECK(i1->state.rank() == 1);
  CHECK(i3->state.rank() == 3);
}

TEST_CASE("trial diagnostics") {
  const auto cfg = small_config();
  for (int q = 1; q <= 3; ++q) {
    const auto rec = run_trial(cfg, ModelKind::H2, 4, q, 0);
    CHECK(rec.relations_ok);
    CHECK_FALSE(rec.rejected);
    CHECK(rec.diag.g_residual < 1e-12);
    CHECK(rec.diag.q_residual < 1e-12);
    CHECK(rec.diag.commutator_residual < 1e-10);
    CHECK(rec.gap == rec.gap_prime);
    CHECK(rec.r_prime == rec.r + q);
  }
  const auto rec = run_trial(cfg, ModelKind::H2, 4, 2, 0);
  CHECK(rec.diag.hoe_eee_distance < 1e-8);
  CHECK(rec.diag.eigenvalue_rel_error < 1e-8);
  CHECK(rec.diag.hermitian_block_defect < 1e-8);
}

TEST_CASE("aggregation statistics") {
  ExperimentConfig cfg = small_config();
  cfg.run_eee = false;
  std::vector<TrialRecord> recs{synthetic(0, 0.5, 14), synthetic(1, 0.1, 14),
                                synthetic(2, 0.9, 13), synthetic(3, 0.3, 14)};
  auto rejected = synthetic(4, kNaN, -1);
  rejected.rejected = true;
  recs.push_back(rejected);

  const auto rows = aggregate(cfg, recs);
  REQUIRE(rows.size() == 1);
  const auto& row = rows.front();
  CHECK(row.method == "hoe");
  CHECK(row.trials == 4);
  CHECK(row.rejected == 1);
  CHECK(row.median_delta == doctest::Approx(0.4));
  CHECK(row.upper_dev == doctest::Approx(0.5));
  CHECK(row.lower_dev == doctest::Approx(0.3));
  CHECK(row.rank_mode == 14);
  CHECK_FALSE(row.rank_consistent);
  CHECK(row.success_rate == 0.0);
  CHECK(row.n_unknowns == 27);

  // ties go to the smaller rank
  const auto tie = aggregate(cfg, {synthetic(0, 0.1, 14), synthetic(1, 0.1, 13)});
  CHECK(tie.front().rank_mode == 13);
}

TEST_CASE("CSV layout") {
  auto rec = synthetic(7, 0.25, 14);
  rec.delta_eee = kNaN;
  rec.r_prime = -1;
  const std::string csv = trials_csv({rec});
  CHECK(csv ==
        "model,L,q,trial,delta_hoe,delta_eee,r,r_prime,delta_gap,delta_gap_prime,"
        "relations_ok,rejected,wall_time_s\n"
        "h2,3,1,7,0.25,,14,,12,,1,0,0\n");
}

TEST_CASE("experiment output is byte-identical across runs and thread counts") {
  auto cfg = small_config();
  const fs::path a = scratch("a");
  const fs::path b = scratch("b");
  cfg.output_dir = a.string();
  const auto first = run_experiment(cfg);
  cfg.output_dir = b.string();
  cfg.threads = 3;
  const auto second = run_experiment(cfg);

  REQUIRE(first.records.size() == 3u * 3u * 3u);
  CHECK(first.records.front().length == 2);
  CHECK(first.records.back().length == 4);
  const std::string csv = slurp(a / "trials.csv");
  CHECK(csv == trials_csv(first.records));
  CHECK(csv == slurp(b / "trials.csv"));
  CHECK(slurp(a / "aggregate.json") == slurp(b / "aggregate.json"));
  CHECK(slurp(a / "aggregate.json") == aggregate_json(first.rows));
  fs::remove_all(a);
  fs::remove_all(b);
}

TEST_CASE("rank tables need the full grid") {
  auto cfg = small_config();
  const auto res = run_experiment(cfg);
  CHECK_THROWS_AS(render_table(1, res.rows), IncompleteGrid);
  CHECK_THROWS_AS(render_table(2, res.rows), IncompleteGrid);
  CHECK_THROWS_AS(figure_series(1, res.rows), IncompleteGrid);
  CHECK_THROWS_AS(render_table(6, res.rows), InvalidArgument);
}

TEST_CASE("critical length table renders without data") {
  const auto t = render_table(5, {});
  CHECK(t.csv == "model,q1,q2,q3,q4,q5,q6\n"
                 "h2,5,3,3,3,3,3\n"
                 "h2prime,6,4,3,3,3,3\n"
                 "h3,7,6,5,4,4,3\n");
}

TEST_CASE("full H2 grid renders tables and figures") {
  auto cfg = small_config();
  cfg.l_max = 9;
  cfg.trials = 1;
  cfg.threads = 1;
  const auto res = run_experiment(cfg);

  const auto t1 = render_table(1, res.rows);
  std::istringstream lines(t1.csv);
  std::string header, row2;
  std::getline(lines, header);
  std::getline(lines, row2);
  CHECK(header == "L,N,r_q1,delta_q1,r_q2,delta_q2,r_q3,delta_q3");
  CHECK(row2 == "2,15,6,8,10,4,12,2");

  const auto t3 = render_table(3, res.rows);
  std::istringstream lines3(t3.csv);
  std::getline(lines3, header);
  std::getline(lines3, row2);
  CHECK(row2 == "2,16,7,8,17,12,4,18,15,2");

  CHECK_THROWS_AS(render_table(2, res.rows), IncompleteGrid);

  std::vector<AggregateRow> both = res.rows;
  cfg.model = ModelKind::H3Table;
  cfg.l_min = 3;
  const auto h3 = run_experiment(cfg);
  both.insert(both.end(), h3.rows.begin(), h3.rows.end());
  const auto series = figure_series(1, both);
  REQUIRE(series.size() == 6);
  CHECK(series[0].name == "fig1a_h2_q1");
  CHECK(series[5].name == "fig1b_h3table_q3");
  CHECK(series[0].lengths.front() == 2);
  CHECK(series[5].lengths.front() == 3);
  CHECK(series[0].lengths.back() == 9);

  const fs::path dir = scratch("fig");
  const auto files = emit_figure_data(2, both, dir);
  REQUIRE(files.size() == 6);
  const std::string first = slurp(files.front());
  CHECK(first.rfind("L,median_delta,lower_dev,upper_dev\n2,", 0) == 0);
  fs::remove_all(dir);
}
