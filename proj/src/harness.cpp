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

#include "hamtomo/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "hamtomo/errors.hpp"
#include "hamtomo/rng.hpp"

namespace hamtomo {

using nlohmann::json;

// ---------------------------------------------------------------------------
// Configuration

void ExperimentConfig::validate() const {
  if (trials < 1) throw ConfigError("trials must be >= 1");
  if (l_min < min_length(model)) {
    throw ConfigError("L_min=" + std::to_string(l_min) + " below the minimum " +
                      std::to_string(min_length(model)) + " for model " +
                      std::string(model_name(model)));
  }
  if (l_max < l_min) throw ConfigError("L_max must be >= L_min");
  if (l_max > 14) throw ConfigError("L_max above 14 is outside dense range");
  if (q_list.empty()) throw ConfigError("q_list is empty");
  for (int q : q_list) {
    if (q < 1) throw ConfigError("every q must be >= 1");
    if (q > (1 << l_min)) {
      throw ConfigError("q=" + std::to_string(q) + " exceeds 2^L_min");
    }
  }
  if (!(rank_tol > 0.0)) throw ConfigError("rank_tol must be positive");
  if (!(success_threshold > 0.0)) throw ConfigError("success_threshold must be positive");
  if (!run_hoe && !run_eee) throw ConfigError("methods must include hoe or eee");
  if (threads < 0) throw ConfigError("threads must be >= 0");
}

ExperimentConfig parse_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config must be a JSON object");

  static const char* kKnown[] = {"model",   "L_min",       "L_max",     "q_list",
                                 "trials",  "seed",        "selection_policy",
                                 "rank_tol", "success_threshold", "methods",
                                 "threads", "record_wall_time", "output_dir"};
  for (const auto& item : j.items()) {
    if (std::find_if(std::begin(kKnown), std::end(kKnown), [&](const char* k) {
          return item.key() == k;
        }) == std::end(kKnown)) {
      throw ConfigError("unknown config key '" + item.key() + "'");
    }
  }

  ExperimentConfig cfg;
  try {
    if (j.contains("model")) cfg.model = parse_model(j.at("model").get<std::string>());
    cfg.l_min = j.value("L_min", min_length(cfg.model));
    cfg.l_max = j.value("L_max", cfg.l_max);
    cfg.q_list = j.value("q_list", cfg.q_list);
    cfg.trials = j.value("trials", cfg.trials);
    cfg.seed = j.value("seed", cfg.seed);
    if (j.contains("selection_policy")) {
      cfg.selection = parse_policy(j.at("selection_policy").get<std::string>());
    }
    cfg.rank_tol = j.value("rank_tol", cfg.rank_tol);
    cfg.success_threshold = j.value("success_threshold", cfg.success_threshold);
    if (j.contains("methods")) {
      cfg.run_hoe = cfg.run_eee = false;
      for (const auto& m : j.at("methods")) {
        const auto name = m.get<std::string>();
        if (name == "hoe") cfg.run_hoe = true;
        else if (name == "eee") cfg.run_eee = true;
        else throw ConfigError("unknown method '" + name + "'");
      }
    }
    cfg.threads = j.value("threads", cfg.threads);
    cfg.record_wall_time = j.value("record_wall_time", cfg.record_wall_time);
    cfg.output_dir = j.value("output_dir", cfg.output_dir);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bad config value: ") + e.what());
  } catch (const InvalidArgument& e) {
    throw ConfigError(e.what());
  }
  cfg.validate();
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string config_to_json(const ExperimentConfig& cfg) {
  json methods = json::array();
  if (cfg.run_hoe) methods.push_back("hoe");
  if (cfg.run_eee) methods.push_back("eee");
  json j = {{"model", model_name(cfg.model)},
            {"L_min", cfg.l_min},
            {"L_max", cfg.l_max},
            {"q_list", cfg.q_list},
            {"trials", cfg.trials},
            {"seed", cfg.seed},
            {"selection_policy", policy_name(cfg.selection)},
            {"rank_tol", cfg.rank_tol},
            {"success_threshold", cfg.success_threshold},
            {"methods", methods},
            {"threads", cfg.threads},
            {"record_wall_time", cfg.record_wall_time},
            {"output_dir", cfg.output_dir}};
  return j.dump(2);
}

// ---------------------------------------------------------------------------
// Trials

namespace {

constexpr std::uint64_t kParamDomain = 0x70617261ULL;  // "para"
constexpr std::uint64_t kStateDomain = 0x73746174ULL;  // "stat"

struct Hamiltonian {
  Eigen::VectorXd a_true;
  DenseOperator h;
  EigDecomposition eig;
};

// Lazily built Hamiltonians for one (model, L, trial), indexed by retry.
class HamiltonianCache {
 public:
  HamiltonianCache(const ExperimentConfig& cfg, ModelKind model, int length, int trial)
      : cfg_(cfg), model_(model), length_(length), trial_(trial),
        basis_(enumerate_terms(model, length)) {}

  const TermBasis& basis() const { return basis_; }

  const Hamiltonian& get(int retry) {
    auto it = cache_.find(retry);
    if (it != cache_.end()) return it->second;
    Hamiltonian ham;
    ham.a_true = sample_params(basis_, param_stream(cfg_, model_, length_, trial_, retry));
    ham.h = assemble(basis_, ham.a_true);
    ham.eig = eig_hermitian(ham.h);
    return cache_.emplace(retry, std::move(ham)).first->second;
  }

 private:
  const ExperimentConfig& cfg_;
  ModelKind model_;
  int length_;
  int trial_;
  TermBasis basis_;
  std::map<int, Hamiltonian> cache_;
};

std::optional<TrialInstance> prepare_from_cache(const ExperimentConfig& cfg,
                                                HamiltonianCache& cache, ModelKind model,
                                                int length, int q, int trial) {
  for (int retry = 0; retry <= kMaxDegenerateRetries; ++retry) {
    const Hamiltonian& ham = cache.get(retry);
    try {
      SteadyState st = build_steady_state(ham.eig, q, cfg.selection,
                                          state_stream(cfg, model, length, q, trial, retry));
      return TrialInstance{cache.basis(), ham.a_true, ham.h, std::move(st), retry};
    } catch (const DegenerateSpectrum&) {
      continue;
    }
  }
  return std::nullopt;
}

double inf_norm(const Eigen::VectorXd& v) {
  return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff();
}

double max_abs(const Eigen::MatrixXd& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

TrialRecord evaluate(const ExperimentConfig& cfg, const TrialInstance& inst, int q,
                     int trial) {
  TrialRecord rec;
  rec.model = inst.basis.kind;
  rec.length = inst.basis.length;
  rec.q = q;
  rec.trial = trial;
  rec.retries = inst.retries;
  rec.n_params = inst.basis.size();

  const SteadyState& st = inst.state;
  const DenseOperator hv = inst.hamiltonian * st.states;
  const DenseOperator h_rho = hv * st.probs.cast<Complex>().asDiagonal() * st.states.adjoint();
  // rho H = (H rho)^dagger for Hermitian H and rho
  rec.diag.commutator_residual = (h_rho - h_rho.adjoint()).cwiseAbs().maxCoeff();

  std::optional<RecoveryReport> hoe;
  if (cfg.run_hoe) {
    const ConstraintMatrixG g = build_G(inst.basis, st.rho);
    rec.diag.g_residual = inf_norm(g.entries * inst.a_true) /
                          (std::max(1.0, max_abs(g.entries)) * inst.a_true.norm());
    hoe = solve_hoe(g, cfg.rank_tol);
    hoe->delta_error = reconstruction_error(inst.a_true, hoe->a_recovered);
    rec.delta_hoe = *hoe->delta_error;
    rec.r = hoe->rank;
    rec.gap = hoe->gap;
  }

  std::optional<EEEResult> eee;
  if (cfg.run_eee) {
    const ConstraintMatrixQ qm = build_Q(inst.basis, st.states);
    Eigen::VectorXd x_true(rec.n_params + q);
    x_true << inst.a_true, st.energies;
    rec.diag.q_residual = inf_norm(qm.entries * x_true) /
                          (std::max(1.0, max_abs(qm.entries)) * x_true.norm());
    eee = solve_eee(qm, cfg.rank_tol);
    eee->delta_error = reconstruction_error(inst.a_true, eee->a_recovered);
    rec.delta_eee = *eee->delta_error;
    rec.r_prime = eee->rank;
    rec.gap_prime = eee->gap;

    if (eee->unique()) {
      // x_rec = c x_true with c = <a_rec, a_true> / |a_true|^2
      const double c = eee->a_recovered.dot(inst.a_true) / inst.a_true.squaredNorm();
      const Eigen::VectorXd lambdas = eee->lambdas_recovered / c;
      const double scale = std::max(inf_norm(st.energies), 1e-300);
      rec.diag.eigenvalue_rel_error = inf_norm(lambdas - st.energies) / scale;

      const DenseOperator h_rec = assemble(inst.basis, eee->a_recovered);
      const DenseOperator block = st.states.adjoint() * h_rec * st.states;
      double off = 0.0;
      for (int i = 0; i < q; ++i)
        for (int j = 0; j < q; ++j)
          if (i != j) off = std::max(off, std::abs(block(i, j)));
      rec.diag.hermitian_block_defect = off;
    }
  }

  if (hoe && eee) {
    const EquivalenceCheck check = check_equivalence(*hoe, *eee, q);
    rec.relations_ok = check.holds();
    if (check.angle) {
      const Eigen::VectorXd& u = hoe->a_recovered;
      const Eigen::VectorXd& w = eee->a_recovered;
      rec.diag.hoe_eee_distance = std::min((u - w).norm(), (u + w).norm());
    }
  }
  return rec;
}

TrialRecord rejected_record(const TermBasis& basis, int q, int trial) {
  TrialRecord rec;
  rec.model = basis.kind;
  rec.length = basis.length;
  rec.q = q;
  rec.trial = trial;
  rec.retries = kMaxDegenerateRetries;
  rec.n_params = basis.size();
  rec.rejected = true;
  rec.relations_ok = false;
  return rec;
}

std::vector<TrialRecord> run_group(const ExperimentConfig& cfg, ModelKind model,
                                   int length, int trial, const std::vector<int>& qs) {
  using clock = std::chrono::steady_clock;
  HamiltonianCache cache(cfg, model, length, trial);
  std::vector<TrialRecord> out;
  out.reserve(qs.size());
  double shared_seconds = 0.0;
  for (int q : qs) {
    const auto t0 = clock::now();
    const auto inst = prepare_from_cache(cfg, cache, model, length, q, trial);
    const auto t1 = clock::now();
    if (out.empty()) shared_seconds = std::chrono::duration<double>(t1 - t0).count();
    if (!inst) {
      out.push_back(rejected_record(cache.basis(), q, trial));
      continue;
    }
    TrialRecord rec = evaluate(cfg, *inst, q, trial);
    if (cfg.record_wall_time) {
      // includes the eigendecomposition shared by all q of this trial
      rec.wall_time_s = shared_seconds +
                        std::chrono::duration<double>(clock::now() - t1).count();
    }
    out.push_back(std::move(rec));
  }
  return out;
}

}  // namespace

std::uint64_t param_stream(const ExperimentConfig& cfg, ModelKind model, int length,
                           int trial, int retry) {
  return derive_seed(cfg.seed, {kParamDomain, static_cast<std::uint64_t>(model),
                                static_cast<std::uint64_t>(length),
                                static_cast<std::uint64_t>(trial),
                                static_cast<std::uint64_t>(retry)});
}

std::uint64_t state_stream(const ExperimentConfig& cfg, ModelKind model, int length,
                           int q, int trial, int retry) {
  return derive_seed(cfg.seed, {kStateDomain, static_cast<std::uint64_t>(model),
                                static_cast<std::uint64_t>(length),
                                static_cast<std::uint64_t>(q),
                                static_cast<std::uint64_t>(trial),
                                static_cast<std::uint64_t>(retry)});
}

std::optional<TrialInstance> prepare_instance(const ExperimentConfig& cfg,
                                              ModelKind model, int length, int q,
                                              int trial) {
  HamiltonianCache cache(cfg, model, length, trial);
  return prepare_from_cache(cfg, cache, model, length, q, trial);
}

TrialRecord run_trial(const ExperimentConfig& cfg, ModelKind model, int length, int q,
                      int trial) {
  return run_group(cfg, model, length, trial, {q}).front();
}

std::vector<TrialRecord> run_trial_group(const ExperimentConfig& cfg, ModelKind model,
                                         int length, int trial) {
  return run_group(cfg, model, length, trial, cfg.q_list);
}

// ---------------------------------------------------------------------------
// Aggregation

namespace {

struct Summary {
  double median = kNaN;
  double min = kNaN;
  double max = kNaN;
};

Summary summarize(std::vector<double> values) {
  Summary s;
  if (values.empty()) return s;
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  s.median = n % 2 == 1 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
  s.min = values.front();
  s.max = values.back();
  return s;
}

int mode(const std::vector<int>& values, bool& consistent) {
  consistent = true;
  if (values.empty()) return -1;
  std::map<int, int> counts;
  for (int v : values) ++counts[v];
  consistent = counts.size() == 1;
  // ties resolve to the smaller value
  return std::max_element(counts.begin(), counts.end(), [](const auto& a, const auto& b) {
           return a.second < b.second;
         })->first;
}

}  // namespace

std::vector<AggregateRow> aggregate(const ExperimentConfig& cfg,
                                    const std::vector<TrialRecord>& records) {
  std::map<std::pair<int, int>, std::vector<const TrialRecord*>> cells;
  for (const auto& rec : records) cells[{rec.length, rec.q}].push_back(&rec);

  std::vector<AggregateRow> rows;
  for (const auto& [key, recs] : cells) {
    for (const bool is_hoe : {true, false}) {
      if (is_hoe ? !cfg.run_hoe : !cfg.run_eee) continue;
      AggregateRow row;
      row.model = recs.front()->model;
      row.length = key.first;
      row.q = key.second;
      row.method = is_hoe ? "hoe" : "eee";
      row.n_unknowns = recs.front()->n_params + (is_hoe ? 0 : row.q);
      std::vector<double> deltas;
      std::vector<int> ranks;
      std::vector<int> gaps;
      int successes = 0;
      for (const TrialRecord* rec : recs) {
        if (rec->rejected) {
          ++row.rejected;
          continue;
        }
        const double d = is_hoe ? rec->delta_hoe : rec->delta_eee;
        deltas.push_back(d);
        ranks.push_back(is_hoe ? rec->r : rec->r_prime);
        gaps.push_back(is_hoe ? rec->gap : rec->gap_prime);
        successes += d < cfg.success_threshold;
      }
      row.trials = static_cast<int>(deltas.size());
      const Summary s = summarize(deltas);
      row.median_delta = s.median;
      row.upper_dev = s.max - s.median;
      row.lower_dev = s.median - s.min;
      bool gaps_consistent = true;
      row.rank_mode = mode(ranks, row.rank_consistent);
      row.gap_mode = mode(gaps, gaps_consistent);
      row.success_rate = row.trials > 0 ? static_cast<double>(successes) / row.trials : kNaN;
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

// ---------------------------------------------------------------------------
// Output

namespace {

std::string fmt_double(double v) {
  if (std::isnan(v)) return "";
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os.precision(17);
  os << v;
  return os.str();
}

std::string fmt_int(int v) { return v < 0 ? "" : std::to_string(v); }

json double_or_null(double v) { return std::isnan(v) ? json(nullptr) : json(v); }

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) throw Error("cannot write " + path.string());
}

}  // namespace

std::string trials_csv(const std::vector<TrialRecord>& records) {
  std::ostringstream os;
  os << "model,L,q,trial,delta_hoe,delta_eee,r,r_prime,delta_gap,delta_gap_prime,"
        "relations_ok,rejected,wall_time_s\n";
  for (const auto& r : records) {
    os << model_name(r.model) << ',' << r.length << ',' << r.q << ',' << r.trial << ','
       << fmt_double(r.delta_hoe) << ',' << fmt_double(r.delta_eee) << ','
       << fmt_int(r.r) << ',' << fmt_int(r.r_prime) << ','
       << (r.r < 0 ? "" : std::to_string(r.gap)) << ','
       << (r.r_prime < 0 ? "" : std::to_string(r.gap_prime)) << ','
       << (r.relations_ok ? 1 : 0) << ',' << (r.rejected ? 1 : 0) << ','
       << fmt_double(r.wall_time_s) << '\n';
  }
  return os.str();
}

std::string aggregate_json(const std::vector<AggregateRow>& rows) {
  json arr = json::array();
  for (const auto& r : rows) {
    arr.push_back({{"model", model_name(r.model)},
                   {"L", r.length},
                   {"q", r.q},
                   {"method", r.method},
                   {"n_unknowns", r.n_unknowns},
                   {"trials", r.trials},
                   {"rejected", r.rejected},
                   {"median_delta", double_or_null(r.median_delta)},
                   {"upper_dev", double_or_null(r.upper_dev)},
                   {"lower_dev", double_or_null(r.lower_dev)},
                   {"rank_mode", r.rank_mode},
                   {"rank_consistent", r.rank_consistent},
                   {"gap_mode", r.gap_mode},
                   {"success_rate", double_or_null(r.success_rate)}});
  }
  return arr.dump(2) + "\n";
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  struct Unit {
    int length;
    int trial;
  };
  std::vector<Unit> units;
  for (int l = cfg.l_min; l <= cfg.l_max; ++l)
    for (int t = 0; t < cfg.trials; ++t) units.push_back({l, t});

  std::vector<std::vector<TrialRecord>> slots(units.size());
  std::vector<char> done(units.size(), 0);
  std::atomic<std::size_t> next{0};
  std::atomic<bool> abort{false};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto worker = [&] {
    for (;;) {
      if (abort.load()) return;
      const std::size_t i = next.fetch_add(1);
      if (i >= units.size()) return;
      try {
        slots[i] = run_trial_group(cfg, cfg.model, units[i].length, units[i].trial);
        done[i] = 1;
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        abort = true;
        return;
      }
    }
  };

  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const unsigned n_threads = std::min<std::size_t>(
      cfg.threads > 0 ? static_cast<unsigned>(cfg.threads) : hw, units.size());
  if (n_threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned k = 0; k < n_threads; ++k) pool.emplace_back(worker);
  }

  ExperimentResult result;
  // (L, q, trial) order regardless of completion order
  for (int l = cfg.l_min; l <= cfg.l_max; ++l) {
    for (std::size_t qi = 0; qi < cfg.q_list.size(); ++qi) {
      for (std::size_t i = 0; i < units.size(); ++i) {
        if (units[i].length == l && done[i]) result.records.push_back(slots[i][qi]);
      }
    }
  }
  result.rows = aggregate(cfg, result.records);

  if (!cfg.output_dir.empty()) {
    const std::filesystem::path dir(cfg.output_dir);
    std::filesystem::create_directories(dir);
    write_file(dir / "trials.csv", trials_csv(result.records));
    write_file(dir / "aggregate.json", aggregate_json(result.rows));
  }
  if (failure) std::rethrow_exception(failure);
  return result;
}

}  // namespace hamtomo
