// Copyright 2026 The ClusterLP Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Experiment orchestration: run configuration, repeated trials of one task,
// summary statistics, and alpha/beta grid sweeps.

#ifndef CLUSTERLP_EXPERIMENT_HPP_
#define CLUSTERLP_EXPERIMENT_HPP_

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <future>
#include <iomanip>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "clusterlp/io.hpp"
#include "clusterlp/louvain.hpp"
#include "clusterlp/metrics.hpp"
#include "clusterlp/split.hpp"
#include "clusterlp/train.hpp"

namespace clusterlp {

enum class Task { kUndirectedLp, kReconstruction, kBns, kBidirectional };

inline std::string_view to_string(Task t) {
  switch (t) {
    case Task::kUndirectedLp: return "undirected_lp";
    case Task::kReconstruction: return "reconstruction";
    case Task::kBns: return "bns";
    case Task::kBidirectional: return "bidirectional";
  }
  return "?";
}

inline Task parse_task(std::string_view s) {
  if (s == "undirected_lp") return Task::kUndirectedLp;
  if (s == "reconstruction") return Task::kReconstruction;
  if (s == "bns") return Task::kBns;
  if (s == "bidirectional") return Task::kBidirectional;
  throw ConfigError("unknown task '" + std::string(s) +
                    "' (expected undirected_lp, reconstruction, bns or bidirectional)");
}

inline constexpr const char* kOutputDirEnv = "CLUSTERLP_OUTPUT_DIR";

struct RunConfig {
  std::filesystem::path dataset;
  Task task = Task::kUndirectedLp;
  HyperParams hp;             // hp.seed is the base seed
  bool auto_k = false;        // K chosen by Louvain on each training graph
  double train_frac = 0.9;
  double neg_ratio = 4.0;
  double remove_frac = 0.1;
  int trials = 1;
  int jobs = 1;               // trials run concurrently
  std::filesystem::path output_dir = "clusterlp_out";
  bool save_artifacts = true;  // per-trial split, parameters and loss trace

  void validate() const {
    if (dataset.empty()) throw ConfigError("config needs a dataset");
    if (trials < 1) throw ConfigError("trials must be at least 1");
    if (jobs < 1) throw ConfigError("jobs must be at least 1");
    const bool needs_directed = task == Task::kBns || task == Task::kBidirectional;
    if (needs_directed && !hp.directed) {
      throw ConfigError("task " + std::string(to_string(task)) + " requires directed=true");
    }
    if (task == Task::kUndirectedLp && hp.directed) {
      throw ConfigError("task undirected_lp requires directed=false");
    }
    if (task == Task::kUndirectedLp && !(train_frac > 0 && train_frac < 1)) {
      throw ConfigError("train_frac must lie in (0, 1)");
    }
    if (!(neg_ratio >= 0)) throw ConfigError("neg_ratio must be non-negative");
    if (task == Task::kBns && !(remove_frac > 0 && remove_frac < 1)) {
      throw ConfigError("remove_frac must lie in (0, 1)");
    }
  }
};

namespace detail {

inline double config_number(const std::string& key, const std::string& value) {
  try {
    return parse_double(value, 0);
  } catch (const ParseError&) {
    throw ConfigError("config key '" + key + "' expects a number, got '" + value + "'");
  }
}

inline int config_int(const std::string& key, const std::string& value) {
  const double v = config_number(key, value);
  if (v != std::floor(v) || std::abs(v) > 1e9) {
    throw ConfigError("config key '" + key + "' expects an integer, got '" + value + "'");
  }
  return static_cast<int>(v);
}

inline bool config_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  throw ConfigError("config key '" + key + "' expects true or false, got '" + value + "'");
}

}  // namespace detail

// Applies one key=value setting. Unknown keys are errors.
inline void apply_setting(RunConfig& c, const std::string& key, const std::string& value) {
  auto& hp = c.hp;
  if (key == "dataset") {
    c.dataset = value;
  } else if (key == "directed") {
    hp.directed = detail::config_bool(key, value);
  } else if (key == "task") {
    c.task = parse_task(value);
  } else if (key == "K") {
    c.auto_k = value == "auto";
    if (!c.auto_k) hp.clusters = detail::config_int(key, value);
  } else if (key == "d") {
    hp.dim = detail::config_int(key, value);
  } else if (key == "alpha") {
    hp.alpha = detail::config_number(key, value);
  } else if (key == "beta") {
    hp.beta = detail::config_number(key, value);
  } else if (key == "eta") {
    hp.eta = detail::config_number(key, value);
  } else if (key == "delta") {
    hp.delta = detail::config_number(key, value);
  } else if (key == "epochs_per_stage") {
    hp.epochs_per_stage = detail::config_int(key, value);
  } else if (key == "outer_loops") {
    hp.outer_loops = detail::config_int(key, value);
  } else if (key == "tolerance") {
    hp.tolerance = detail::config_number(key, value);
  } else if (key == "seed") {
    const int s = detail::config_int(key, value);
    if (s < 0) throw ConfigError("seed must be non-negative");
    hp.seed = static_cast<std::uint64_t>(s);
  } else if (key == "threshold") {
    hp.threshold = detail::config_number(key, value);
  } else if (key == "train_frac") {
    c.train_frac = detail::config_number(key, value);
  } else if (key == "neg_ratio") {
    c.neg_ratio = detail::config_number(key, value);
  } else if (key == "remove_frac") {
    c.remove_frac = detail::config_number(key, value);
  } else if (key == "trials") {
    c.trials = detail::config_int(key, value);
  } else if (key == "jobs") {
    c.jobs = detail::config_int(key, value);
  } else if (key == "output_dir") {
    c.output_dir = value;
  } else if (key == "save_artifacts") {
    c.save_artifacts = detail::config_bool(key, value);
  } else {
    throw ConfigError("unknown config key '" + key + "'");
  }
}

// "key=value" override as given on the command line.
inline void apply_override(RunConfig& c, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0) {
    throw ConfigError("override '" + assignment + "' is not key=value");
  }
  apply_setting(c, assignment.substr(0, eq), assignment.substr(eq + 1));
}

inline RunConfig parse_config(std::istream& in) {
  RunConfig c;
  std::map<std::string, std::string> kv;
  try {
    kv = read_key_values(in);
  } catch (const ParseError& e) {
    throw ConfigError(std::string("config ") + e.what());
  }
  for (const auto& [k, v] : kv) apply_setting(c, k, v);
  return c;
}

inline RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config " + path.string());
  return parse_config(in);
}

// Output directory after the environment override.
inline std::filesystem::path resolve_output_dir(const RunConfig& c) {
  if (const char* env = std::getenv(kOutputDirEnv); env && *env) return env;
  return c.output_dir;
}

struct TrialResult {
  int trial = 0;
  std::uint64_t seed = 0;
  int clusters = 0;
  EvalReport report;
  double loss_final = NAN;
};

struct TrialArtifacts {
  LinkSplit split;
  TrainedModel model;
};

inline LinkSplit make_split(const Graph& g, const RunConfig& c, std::uint64_t seed) {
  switch (c.task) {
    case Task::kUndirectedLp: return split_undirected(g, c.train_frac, c.neg_ratio, seed);
    case Task::kReconstruction: return split_reconstruction(g);
    case Task::kBns: return split_bns(g, c.remove_frac, seed, c.neg_ratio);
    case Task::kBidirectional: return split_bidirectional(g, seed, c.neg_ratio);
  }
  throw ConfigError("unknown task");
}

// One trial: split, optional Louvain K, train, score the evaluation pairs.
// Reconstruction evaluates on the training pairs (the whole matrix).
inline TrialResult run_trial(const Graph& g, const RunConfig& c, int trial,
                             TrialArtifacts* artifacts = nullptr) {
  TrialResult r;
  r.trial = trial;
  r.seed = c.hp.seed + static_cast<std::uint64_t>(trial);
  LinkSplit split = make_split(g, c, r.seed);
  HyperParams hp = c.hp;
  hp.seed = r.seed;
  if (c.auto_k) {
    hp.clusters = louvain_auto_k(training_graph(g, split), r.seed).k;
  }
  r.clusters = hp.clusters;
  TrainedModel model = train(split, g.num_nodes(), hp);
  const auto& eval_pairs = c.task == Task::kReconstruction ? split.train : split.test;
  const auto scores = predict(model, eval_pairs);
  std::vector<std::uint8_t> labels;
  labels.reserve(eval_pairs.size());
  for (const auto& p : eval_pairs) labels.push_back(p.label);
  r.report = evaluate(scores, labels, hp.threshold);
  r.loss_final = model.final_loss();
  if (artifacts) *artifacts = {std::move(split), std::move(model)};
  return r;
}

struct MetricSummary {
  std::string name;
  double mean = NAN;
  double stddev = NAN;  // sample standard deviation; NaN for one trial
};

inline std::vector<double> metric_values(const TrialResult& r) {
  const auto& e = r.report;
  return {e.auc,       e.ap,   e.accuracy, e.precision, e.recall, e.f1,
          static_cast<double>(e.predicted_link_count), r.loss_final};
}

inline const std::vector<std::string>& metric_names() {
  static const std::vector<std::string> names = {"auc",    "ap", "accuracy", "precision",
                                                 "recall", "f1", "links",    "loss_final"};
  return names;
}

inline std::vector<MetricSummary> summarize(std::span<const TrialResult> results) {
  const auto& names = metric_names();
  std::vector<MetricSummary> out;
  for (std::size_t m = 0; m < names.size(); ++m) {
    MetricSummary s{names[m]};
    if (!results.empty()) {
      double sum = 0.0;
      for (const auto& r : results) sum += metric_values(r)[m];
      s.mean = sum / static_cast<double>(results.size());
      if (results.size() > 1) {
        double sq = 0.0;
        for (const auto& r : results) {
          const double dv = metric_values(r)[m] - s.mean;
          sq += dv * dv;
        }
        s.stddev = std::sqrt(sq / static_cast<double>(results.size() - 1));
      }
    }
    out.push_back(s);
  }
  return out;
}

inline void write_trials_csv(std::ostream& out, std::span<const TrialResult> results) {
  out << "trial,seed,auc,ap,accuracy,precision,recall,f1,links,loss_final\n"
      << std::setprecision(17);
  for (const auto& r : results) {
    out << r.trial << ',' << r.seed;
    for (double v : metric_values(r)) out << ',' << v;
    out << '\n';
  }
  out << "mean,";
  for (const auto& s : summarize(results)) out << ',' << s.mean;
  out << '\n';
}

inline void write_summary_csv(std::ostream& out, std::span<const MetricSummary> summary) {
  out << "metric,mean,std\n" << std::setprecision(17);
  for (const auto& s : summary) out << s.name << ',' << s.mean << ',' << s.stddev << '\n';
}

inline Graph load_dataset(const RunConfig& c) {
  return load_edge_list(c.dataset, c.hp.directed);
}

// Runs all trials, in parallel when jobs > 1, returning results in trial order.
inline std::vector<TrialResult> run_trials(const Graph& g, const RunConfig& c,
                                           const std::filesystem::path* artifact_dir = nullptr) {
  auto one = [&](int t) {
    TrialArtifacts art;
    TrialResult r = run_trial(g, c, t, artifact_dir ? &art : nullptr);
    if (artifact_dir) {
      const auto dir = *artifact_dir / ("trial_" + std::to_string(t));
      save_model(dir, g.labels(), art.model);
      auto train_out = detail::open_out(dir / "split_train.tsv");
      write_pairs_tsv(train_out, g, art.split.train);
      auto test_out = detail::open_out(dir / "split_test.tsv");
      write_pairs_tsv(test_out, g, art.split.test);
    }
    return r;
  };
  std::vector<TrialResult> results(c.trials);
  for (int start = 0; start < c.trials; start += c.jobs) {
    const int stop = std::min(c.trials, start + c.jobs);
    std::vector<std::future<TrialResult>> running;
    for (int t = start; t < stop; ++t) {
      running.push_back(std::async(c.jobs > 1 ? std::launch::async : std::launch::deferred, one, t));
    }
    for (int t = start; t < stop; ++t) results[t] = running[t - start].get();
  }
  return results;
}

struct RunOutcome {
  std::vector<TrialResult> trials;
  std::vector<MetricSummary> summary;
  std::filesystem::path output_dir;
};

// Writes trials.csv and summary.csv (plus per-trial artifacts) under the
// resolved output directory.
inline RunOutcome cmd_run(const RunConfig& c) {
  c.validate();
  const Graph g = load_dataset(c);
  RunOutcome out;
  out.output_dir = resolve_output_dir(c);
  std::filesystem::create_directories(out.output_dir);
  out.trials = run_trials(g, c, c.save_artifacts ? &out.output_dir : nullptr);
  out.summary = summarize(out.trials);
  auto trials_out = detail::open_out(out.output_dir / "trials.csv");
  write_trials_csv(trials_out, out.trials);
  auto summary_out = detail::open_out(out.output_dir / "summary.csv");
  write_summary_csv(summary_out, out.summary);
  return out;
}

struct SweepCell {
  double alpha = NAN;
  double beta = NAN;
  double auc = NAN;
  double ap = NAN;
  std::string error;  // empty on success
};

// Parses "4.0,4.2,4.4" or "start:stop:step" (inclusive of stop).
inline std::vector<double> parse_grid(const std::string& text) {
  std::vector<double> values;
  if (text.find(':') != std::string::npos) {
    std::vector<double> parts;
    std::istringstream in(text);
    for (std::string tok; std::getline(in, tok, ':');) {
      parts.push_back(detail::config_number("grid", tok));
    }
    if (parts.size() != 3 || !(parts[2] > 0) || parts[1] < parts[0]) {
      throw ConfigError("grid range must be start:stop:step with step > 0");
    }
    const auto n = static_cast<long>(std::floor((parts[1] - parts[0]) / parts[2] + 1e-9));
    for (long k = 0; k <= n; ++k) values.push_back(parts[0] + static_cast<double>(k) * parts[2]);
  } else {
    std::istringstream in(text);
    for (std::string tok; std::getline(in, tok, ',');) {
      if (!tok.empty()) values.push_back(detail::config_number("grid", tok));
    }
  }
  if (values.empty()) throw ConfigError("empty parameter grid '" + text + "'");
  return values;
}

// Mean AUC and AP per (alpha, beta) cell. A failing cell becomes a NaN row
// and the sweep continues. Writes sweep.csv under the output directory.
inline std::vector<SweepCell> cmd_sweep(const RunConfig& c, std::span<const double> alphas,
                                        std::span<const double> betas) {
  c.validate();
  if (alphas.empty() || betas.empty()) throw ConfigError("sweep grid is empty");
  const Graph g = load_dataset(c);
  std::vector<SweepCell> cells;
  for (double a : alphas) {
    for (double b : betas) {
      SweepCell cell;
      cell.alpha = a;
      cell.beta = b;
      RunConfig cc = c;
      cc.hp.alpha = a;
      cc.hp.beta = b;
      try {
        const auto results = run_trials(g, cc);
        const auto summary = summarize(results);
        cell.auc = summary[0].mean;
        cell.ap = summary[1].mean;
      } catch (const DataError&) {
        throw;
      } catch (const Error& e) {
        cell.error = e.what();
        warn("sweep cell alpha=" + std::to_string(a) + " beta=" + std::to_string(b) +
             " failed: " + e.what());
      }
      cells.push_back(cell);
    }
  }
  const auto dir = resolve_output_dir(c);
  auto out = detail::open_out(dir / "sweep.csv");
  out << "alpha,beta,auc,ap\n" << std::setprecision(17);
  for (const auto& cell : cells) {
    out << cell.alpha << ',' << cell.beta << ',' << cell.auc << ',' << cell.ap << '\n';
  }
  return cells;
}

// Exit status for an error escaping a command: 1 config, 2 data, 3 numeric.
inline int exit_code(const std::exception& e) {
  if (dynamic_cast<const ConfigError*>(&e)) return 1;
  if (dynamic_cast<const DataError*>(&e)) return 2;
  if (dynamic_cast<const NumericError*>(&e)) return 3;
  return 1;
}

}  // namespace clusterlp

#endif  // CLUSTERLP_EXPERIMENT_HPP_
