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

#ifndef HAMTOMO_REPORT_HPP
#define HAMTOMO_REPORT_HPP

#include <filesystem>
#include <string>
#include <vector>

#include "hamtomo/harness.hpp"

namespace hamtomo {

/// Grid behind a numbered table or figure panel.
struct GridSpec {
  ModelKind model;
  std::string method;  // "hoe" or "eee"
  int l_min;
  int l_max;
  std::vector<int> q_list;
};

/// Tables 1-4: rank tables (1: H2/HOE, 2: H3/HOE, 3: H2/EEE, 4: H3/EEE).
/// The three-local tables use the H3Table family.
GridSpec table_grid(int which);

/// Figure 1 (HOE) or 2 (EEE): panel a is H2, panel b is H3Table.
std::vector<GridSpec> figure_grids(int which);

struct RenderedTable {
  std::string text;
  std::string csv;
};

/// Renders table 1-5. Tables 1-4 read their cells from `rows` and throw
/// IncompleteGrid when one is missing; table 5 is computed analytically.
RenderedTable render_table(int which, const std::vector<AggregateRow>& rows);

struct FigureSeries {
  std::string name;  // file stem, e.g. fig1a_h2_q1
  ModelKind model;
  int q;
  std::vector<int> lengths;
  std::vector<double> median;
  std::vector<double> lower_dev;
  std::vector<double> upper_dev;
};

std::vector<FigureSeries> figure_series(int which, const std::vector<AggregateRow>& rows);

/// Writes one CSV per series (columns L, median_delta, lower_dev, upper_dev)
/// and returns the paths written.
std::vector<std::filesystem::path> emit_figure_data(
    int which, const std::vector<AggregateRow>& rows, const std::filesystem::path& dir);

}  // namespace hamtomo

#endif  // HAMTOMO_REPORT_HPP
