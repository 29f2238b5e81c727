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

#include "hamtomo/report.hpp"

#include <fstream>
#include <iomanip>
#include <locale>
#include <sstream>

#include "hamtomo/errors.hpp"
#include "hamtomo/rank_theory.hpp"

namespace hamtomo {

namespace {

const AggregateRow& find_cell(const std::vector<AggregateRow>& rows, ModelKind model,
                              const std::string& method, int length, int q) {
  for (const auto& r : rows) {
    if (r.model == model && r.method == method && r.length == length && r.q == q &&
        r.trials > 0) {
      return r;
    }
  }
  throw IncompleteGrid("missing " + std::string(model_name(model)) + "/" + method +
                       " cell L=" + std::to_string(length) + " q=" + std::to_string(q));
}

std::string fmt(double v) {
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os.precision(17);
  os << v;
  return os.str();
}

RenderedTable render_rank_table(int which, const std::vector<AggregateRow>& rows) {
  const GridSpec grid = table_grid(which);
  const bool eee = grid.method == "eee";
  std::ostringstream text;
  std::ostringstream csv;

  text << "Table " << which << ": " << model_name(grid.model) << " by "
       << (eee ? "EEE" : "HOE") << " (N" << (eee ? "'" : "") << ", r"
       << (eee ? "'" : "") << ", delta" << (eee ? "'" : "") << ")\n";
  text << std::setw(4) << "L";
  csv << "L";
  if (!eee) {
    text << std::setw(6) << "N";
    csv << ",N";
  }
  for (int q : grid.q_list) {
    text << " | q=" << q << ":";
    if (eee) {
      text << std::setw(6) << "N'" << std::setw(6) << "r'" << std::setw(6) << "d'";
      csv << ",Nprime_q" << q << ",rprime_q" << q << ",deltaprime_q" << q;
    } else {
      text << std::setw(6) << "r" << std::setw(6) << "d";
      csv << ",r_q" << q << ",delta_q" << q;
    }
  }
  text << '\n';
  csv << '\n';

  for (int l = grid.l_min; l <= grid.l_max; ++l) {
    text << std::setw(4) << l;
    csv << l;
    if (!eee) {
      const int n = find_cell(rows, grid.model, grid.method, l, grid.q_list.front()).n_unknowns;
      text << std::setw(6) << n;
      csv << ',' << n;
    }
    for (int q : grid.q_list) {
      const AggregateRow& cell = find_cell(rows, grid.model, grid.method, l, q);
      text << " |     ";
      if (eee) {
        text << std::setw(6) << cell.n_unknowns;
        csv << ',' << cell.n_unknowns;
      }
      text << std::setw(6) << cell.rank_mode << std::setw(6) << cell.gap_mode;
      if (!cell.rank_consistent) text << '*';
      csv << ',' << cell.rank_mode << ',' << cell.gap_mode;
    }
    text << '\n';
    csv << '\n';
  }
  return {text.str(), csv.str()};
}

RenderedTable render_critical_lengths() {
  const auto grid = table5();
  std::ostringstream text;
  std::ostringstream csv;
  text << "Table 5: critical chain length L_c\n" << std::setw(8) << "model";
  csv << "model";
  for (std::size_t q = 1; q <= grid.front().size(); ++q) {
    text << std::setw(4) << ("q" + std::to_string(q));
    csv << ",q" << q;
  }
  text << '\n';
  csv << '\n';
  for (const auto& row : grid) {
    text << std::setw(8) << model_name(row.front().kind);
    csv << model_name(row.front().kind);
    for (const auto& cell : row) {
      text << std::setw(4) << cell.length;
      csv << ',' << cell.length;
    }
    text << '\n';
    csv << '\n';
  }
  return {text.str(), csv.str()};
}

}  // namespace

GridSpec table_grid(int which) {
  switch (which) {
    case 1: return {ModelKind::H2, "hoe", 2, 9, {1, 2, 3}};
    case 2: return {ModelKind::H3Table, "hoe", 3, 9, {1, 2, 3}};
    case 3: return {ModelKind::H2, "eee", 2, 9, {1, 2, 3}};
    case 4: return {ModelKind::H3Table, "eee", 3, 9, {1, 2, 3}};
    default: throw InvalidArgument("rank tables are numbered 1-4");
  }
}

std::vector<GridSpec> figure_grids(int which) {
  if (which != 1 && which != 2) throw InvalidArgument("figures are numbered 1-2");
  const std::string method = which == 1 ? "hoe" : "eee";
  return {{ModelKind::H2, method, 2, 9, {1, 2, 3}},
          {ModelKind::H3Table, method, 3, 9, {1, 2, 3}}};
}

RenderedTable render_table(int which, const std::vector<AggregateRow>& rows) {
  if (which == 5) return render_critical_lengths();
  return render_rank_table(which, rows);
}

std::vector<FigureSeries> figure_series(int which, const std::vector<AggregateRow>& rows) {
  std::vector<FigureSeries> out;
  const auto grids = figure_grids(which);
  for (std::size_t panel = 0; panel < grids.size(); ++panel) {
    const GridSpec& g = grids[panel];
    for (int q : g.q_list) {
      FigureSeries s;
      s.name = "fig" + std::to_string(which) + static_cast<char>('a' + panel) + "_" +
               std::string(model_name(g.model)) + "_q" + std::to_string(q);
      s.model = g.model;
      s.q = q;
      for (int l = g.l_min; l <= g.l_max; ++l) {
        const AggregateRow& cell = find_cell(rows, g.model, g.method, l, q);
        s.lengths.push_back(l);
        s.median.push_back(cell.median_delta);
        s.lower_dev.push_back(cell.lower_dev);
        s.upper_dev.push_back(cell.upper_dev);
      }
      out.push_back(std::move(s));
    }
  }
  return out;
}

std::vector<std::filesystem::path> emit_figure_data(int which,
                                                    const std::vector<AggregateRow>& rows,
                                                    const std::filesystem::path& dir) {
  const auto series = figure_series(which, rows);
  std::filesystem::create_directories(dir);
  std::vector<std::filesystem::path> written;
  for (const auto& s : series) {
    const auto path = dir / (s.name + ".csv");
    std::ofstream out(path, std::ios::binary);
    out << "L,median_delta,lower_dev,upper_dev\n";
    for (std::size_t i = 0; i < s.lengths.size(); ++i) {
      out << s.lengths[i] << ',' << fmt(s.median[i]) << ',' << fmt(s.lower_dev[i]) << ','
          << fmt(s.upper_dev[i]) << '\n';
    }
    if (!out) throw Error("cannot write " + path.string());
    written.push_back(path);
  }
  return written;
}

}  // namespace hamtomo
