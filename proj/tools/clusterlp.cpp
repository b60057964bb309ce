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

// Command-line front end: run, sweep, auto-k, predict, heuristics.
// Exit status: 0 success, 1 configuration error, 2 data error,
// 3 training divergence or numerical failure.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "clusterlp/clusterlp.hpp"

namespace {

using namespace clusterlp;

RunConfig build_config(const std::string& config_path, const std::vector<std::string>& settings) {
  RunConfig c = config_path.empty() ? RunConfig{} : load_config(config_path);
  for (const auto& s : settings) apply_override(c, s);
  return c;
}

void print_summary(std::ostream& out, const RunOutcome& r) {
  out << std::left << std::setw(12) << "metric" << std::right << std::setw(12) << "mean"
      << std::setw(12) << "std" << '\n';
  for (const auto& s : r.summary) {
    out << std::left << std::setw(12) << s.name << std::right << std::fixed
        << std::setprecision(4) << std::setw(12) << s.mean << std::setw(12) << s.stddev << '\n';
  }
  out << std::defaultfloat << "results written to " << r.output_dir.string() << '\n';
}

// Writes to `path`, or to stdout when it is empty or "-".
template <class F>
void with_output(const std::string& path, F&& write) {
  if (path.empty() || path == "-") {
    write(std::cout);
    return;
  }
  auto out = detail::open_out(path);
  write(out);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cluster-aware link prediction"};
  app.require_subcommand(1);

  std::string config_path;
  std::vector<std::string> settings;

  auto* run = app.add_subcommand("run", "Train and evaluate over repeated trials");
  run->add_option("-c,--config", config_path, "key=value configuration file");
  run->add_option("settings", settings, "key=value overrides applied after the file");

  std::string alpha_grid = "4.0:5.4:0.2";
  std::string beta_grid = "4.0:5.4:0.2";
  auto* sweep = app.add_subcommand("sweep", "Grid search over alpha and beta");
  sweep->add_option("-c,--config", config_path, "key=value configuration file");
  sweep->add_option("--alpha", alpha_grid, "alpha values: a,b,c or start:stop:step")
      ->capture_default_str();
  sweep->add_option("--beta", beta_grid, "beta values: a,b,c or start:stop:step")
      ->capture_default_str();
  sweep->add_option("settings", settings, "key=value overrides applied after the file");

  std::string dataset;
  bool directed = false;
  std::uint64_t seed = 0;
  std::string partition_path;
  auto* auto_k = app.add_subcommand("auto-k", "Choose K by Louvain modularity maximization");
  auto_k->add_option("dataset", dataset, "edge list")->required();
  auto_k->add_flag("--directed", directed, "read the edge list as directed");
  auto_k->add_option("--seed", seed, "node visit order seed");
  auto_k->add_option("-o,--output", partition_path,
                     "partition TSV (default: <output dir>/partition.tsv)");

  std::string model_dir;
  std::string pairs_path;
  std::string scores_path;
  auto* predict_cmd = app.add_subcommand("predict", "Score a pair file with a saved model");
  predict_cmd->add_option("-m,--model", model_dir, "directory written by run")->required();
  predict_cmd->add_option("-p,--pairs", pairs_path, "pair file, two labels per line")->required();
  predict_cmd->add_option("-o,--output", scores_path, "scores CSV (default: stdout)");

  std::string method = "all";
  auto* heur = app.add_subcommand("heuristics", "Jaccard, Adamic-Adar and degree-product scores");
  heur->add_option("dataset", dataset, "undirected edge list")->required();
  heur->add_option("-p,--pairs", pairs_path, "pair file, two labels per line")->required();
  heur->add_option("--method", method, "jc, aa, pa or all")->capture_default_str();
  heur->add_option("-o,--output", scores_path, "scores CSV (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (*run) {
      const RunOutcome r = cmd_run(build_config(config_path, settings));
      print_summary(std::cout, r);
    } else if (*sweep) {
      const RunConfig c = build_config(config_path, settings);
      const auto alphas = parse_grid(alpha_grid);
      const auto betas = parse_grid(beta_grid);
      const auto cells = cmd_sweep(c, alphas, betas);
      std::cout << "alpha,beta,auc,ap\n";
      for (const auto& cell : cells) {
        std::cout << cell.alpha << ',' << cell.beta << ',' << cell.auc << ',' << cell.ap << '\n';
      }
    } else if (*auto_k) {
      const Graph g = load_edge_list(dataset, directed);
      const Partition p = louvain_auto_k(g, seed);
      if (partition_path.empty()) {
        RunConfig defaults;
        partition_path = (resolve_output_dir(defaults) / "partition.tsv").string();
      }
      with_output(partition_path, [&](std::ostream& out) { write_partition_tsv(out, g, p); });
      std::cout << p.k << '\n';
    } else if (*predict_cmd) {
      const SavedModel saved = load_model(model_dir);
      auto in = detail::open_in(pairs_path);
      const auto labels = read_pair_labels(in);
      const auto pairs = resolve_pairs(labels, saved.labels);
      const auto scores = predict(saved.model, pairs);
      with_output(scores_path, [&](std::ostream& out) {
        write_scores_header(out);
        write_scores_csv(out, saved.labels, pairs, "clusterlp", scores);
      });
    } else if (*heur) {
      const Graph g = load_edge_list(dataset, false);
      auto in = detail::open_in(pairs_path);
      const auto labels = read_pair_labels(in);
      const auto pairs = resolve_pairs(labels, g.labels());
      std::vector<Heuristic> methods;
      if (method == "all") {
        methods = {Heuristic::kJaccard, Heuristic::kAdamicAdar,
                   Heuristic::kPreferentialAttachment};
      } else {
        methods = {parse_heuristic(method)};
      }
      with_output(scores_path, [&](std::ostream& out) {
        write_scores_header(out);
        for (Heuristic h : methods) {
          write_scores_csv(out, g.labels(), pairs, to_string(h), heuristic_scores(g, pairs, h));
        }
      });
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code(e);
  }
  return 0;
}
