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

// Text serialization of splits, parameters, loss traces, partitions and
// scores, plus saving and loading trained models.

#ifndef CLUSTERLP_IO_HPP_
#define CLUSTERLP_IO_HPP_

#include <charconv>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "clusterlp/graph.hpp"
#include "clusterlp/heuristics.hpp"
#include "clusterlp/louvain.hpp"
#include "clusterlp/split.hpp"
#include "clusterlp/train.hpp"

namespace clusterlp {

namespace detail {

inline std::vector<std::string> tokenize(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  for (std::string tok; in >> tok;) out.push_back(tok);
  return out;
}

inline bool skippable(const std::string& line) {
  const auto first = line.find_first_not_of(" \t\r\n");
  return first == std::string::npos || line[first] == '#';
}

inline double parse_double(const std::string& s, std::size_t line_no) {
  double v = 0.0;
  const auto* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || ptr != end) throw ParseError(line_no, "bad number '" + s + "'");
  return v;
}

inline std::ofstream open_out(const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw DataError("cannot write " + path.string());
  return out;
}

inline std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot read " + path.string());
  return in;
}

}  // namespace detail

inline Graph load_edge_list(const std::filesystem::path& path, bool directed,
                            IngestStats* stats = nullptr) {
  auto in = detail::open_in(path);
  return load_edge_list(in, directed, stats);
}

// src<TAB>dst<TAB>label<TAB>provenance, with node labels.
inline void write_pairs_tsv(std::ostream& out, const Graph& g,
                            std::span<const LabeledPair> pairs) {
  for (const auto& p : pairs) {
    out << g.label(p.src) << '\t' << g.label(p.dst) << '\t' << int{p.label} << '\t'
        << to_string(p.provenance) << '\n';
  }
}

inline std::vector<LabeledPair> read_pairs_tsv(std::istream& in, const Graph& g) {
  std::vector<LabeledPair> pairs;
  std::string line;
  for (std::size_t line_no = 1; std::getline(in, line); ++line_no) {
    if (detail::skippable(line)) continue;
    const auto tok = detail::tokenize(line);
    if (tok.size() != 4) throw ParseError(line_no, "expected src, dst, label, provenance");
    const auto i = g.index_of(tok[0]);
    const auto j = g.index_of(tok[1]);
    if (!i || !j) throw ParseError(line_no, "unknown node label");
    if (tok[2] != "0" && tok[2] != "1") throw ParseError(line_no, "label must be 0 or 1");
    pairs.push_back({*i, *j, static_cast<std::uint8_t>(tok[2] == "1"),
                     parse_provenance(tok[3])});
  }
  return pairs;
}

// Pair file for scoring: two node labels per line; extra columns ignored.
inline std::vector<std::pair<std::string, std::string>> read_pair_labels(std::istream& in) {
  std::vector<std::pair<std::string, std::string>> pairs;
  std::string line;
  for (std::size_t line_no = 1; std::getline(in, line); ++line_no) {
    if (detail::skippable(line)) continue;
    const auto tok = detail::tokenize(line);
    if (tok.size() < 2) throw ParseError(line_no, "expected two node labels");
    pairs.emplace_back(tok[0], tok[1]);
  }
  return pairs;
}

inline std::vector<Edge> resolve_pairs(
    std::span<const std::pair<std::string, std::string>> pairs,
    std::span<const std::string> labels) {
  std::unordered_map<std::string_view, NodeId> index;
  for (std::size_t i = 0; i < labels.size(); ++i) index.emplace(labels[i], static_cast<NodeId>(i));
  std::vector<Edge> out;
  out.reserve(pairs.size());
  for (const auto& [a, b] : pairs) {
    const auto ia = index.find(a);
    const auto ib = index.find(b);
    if (ia == index.end()) throw DataError("unknown node label '" + a + "'");
    if (ib == index.end()) throw DataError("unknown node label '" + b + "'");
    out.push_back({ia->second, ib->second});
  }
  return out;
}

// One row per matrix row: label then the values, tab separated.
inline void write_matrix_tsv(std::ostream& out, std::span<const std::string> labels,
                             const Matrix& m) {
  if (static_cast<Eigen::Index>(labels.size()) != m.rows()) {
    throw ConfigError("label count does not match matrix rows");
  }
  out << std::setprecision(17);
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    out << labels[i];
    for (Eigen::Index c = 0; c < m.cols(); ++c) out << '\t' << m(i, c);
    out << '\n';
  }
}

struct LabeledMatrix {
  std::vector<std::string> labels;
  Matrix matrix;
};

inline LabeledMatrix read_matrix_tsv(std::istream& in) {
  LabeledMatrix result;
  std::vector<std::vector<double>> rows;
  std::string line;
  for (std::size_t line_no = 1; std::getline(in, line); ++line_no) {
    if (detail::skippable(line)) continue;
    const auto tok = detail::tokenize(line);
    if (tok.size() < 2) throw ParseError(line_no, "expected a label and at least one value");
    if (!rows.empty() && tok.size() - 1 != rows.front().size()) {
      throw ParseError(line_no, "row width differs from the first row");
    }
    result.labels.push_back(tok[0]);
    auto& row = rows.emplace_back();
    for (std::size_t k = 1; k < tok.size(); ++k) row.push_back(detail::parse_double(tok[k], line_no));
  }
  if (rows.empty()) throw DataError("matrix file is empty");
  result.matrix.resize(static_cast<Eigen::Index>(rows.size()),
                       static_cast<Eigen::Index>(rows.front().size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t k = 0; k < rows[i].size(); ++k) result.matrix(i, k) = rows[i][k];
  }
  return result;
}

inline void write_loss_trace_csv(std::ostream& out, std::span<const LossRecord> trace) {
  out << "outer_loop,stage,epoch,loss\n" << std::setprecision(17);
  for (const auto& r : trace) {
    out << r.outer_loop << ',' << to_string(r.stage) << ',' << r.epoch << ',' << r.loss << '\n';
  }
}

inline void write_partition_tsv(std::ostream& out, const Graph& g, const Partition& p) {
  for (std::size_t i = 0; i < p.community_of.size(); ++i) {
    out << g.label(static_cast<NodeId>(i)) << '\t' << p.community_of[i] << '\n';
  }
}

inline void write_scores_header(std::ostream& out) { out << "src,dst,method,score\n"; }

inline void write_scores_csv(std::ostream& out, std::span<const std::string> labels,
                             std::span<const Edge> pairs, std::string_view method,
                             std::span<const double> scores) {
  out << std::setprecision(17);
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    out << labels[pairs[k].src] << ',' << labels[pairs[k].dst] << ',' << method << ','
        << scores[k] << '\n';
  }
}

// key=value lines; '#' comments and blank lines skipped. Later keys win.
inline std::map<std::string, std::string> read_key_values(std::istream& in) {
  std::map<std::string, std::string> kv;
  std::string line;
  for (std::size_t line_no = 1; std::getline(in, line); ++line_no) {
    if (detail::skippable(line)) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError(line_no, "expected key=value");
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      const auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    const std::string key = trim(line.substr(0, eq));
    if (key.empty()) throw ParseError(line_no, "empty key");
    kv[key] = trim(line.substr(eq + 1));
  }
  return kv;
}

inline void write_hyperparams(std::ostream& out, const HyperParams& hp) {
  out << std::setprecision(17) << "K=" << hp.clusters << "\nd=" << hp.dim
      << "\nalpha=" << hp.alpha << "\nbeta=" << hp.beta << "\neta=" << hp.eta
      << "\ndelta=" << hp.delta << "\nepochs_per_stage=" << hp.epochs_per_stage
      << "\nouter_loops=" << hp.outer_loops << "\ntolerance=" << hp.tolerance
      << "\nseed=" << hp.seed << "\ndirected=" << (hp.directed ? "true" : "false")
      << "\nthreshold=" << hp.threshold << '\n';
}

// Writes model.cfg, embeddings.tsv, centroids.tsv and loss.csv into `dir`.
inline void save_model(const std::filesystem::path& dir, std::span<const std::string> labels,
                       const TrainedModel& model) {
  {
    auto out = detail::open_out(dir / "model.cfg");
    write_hyperparams(out, model.hyperparams);
  }
  {
    auto out = detail::open_out(dir / "embeddings.tsv");
    write_matrix_tsv(out, labels, model.embeddings.matrix);
  }
  {
    std::vector<std::string> ids;
    for (Eigen::Index k = 0; k < model.centroids.size(); ++k) ids.push_back(std::to_string(k));
    auto out = detail::open_out(dir / "centroids.tsv");
    write_matrix_tsv(out, ids, model.centroids.matrix);
  }
  {
    auto out = detail::open_out(dir / "loss.csv");
    write_loss_trace_csv(out, model.loss_trace);
  }
}

struct SavedModel {
  std::vector<std::string> labels;
  TrainedModel model;
};

inline SavedModel load_model(const std::filesystem::path& dir) {
  SavedModel saved;
  auto& hp = saved.model.hyperparams;
  {
    auto in = detail::open_in(dir / "model.cfg");
    const auto kv = read_key_values(in);
    auto get = [&](const std::string& key) -> const std::string& {
      const auto it = kv.find(key);
      if (it == kv.end()) throw DataError("model.cfg lacks '" + key + "'");
      return it->second;
    };
    auto num = [&](const std::string& key) { return detail::parse_double(get(key), 0); };
    hp.clusters = static_cast<int>(num("K"));
    hp.dim = static_cast<int>(num("d"));
    hp.alpha = num("alpha");
    hp.beta = num("beta");
    hp.eta = num("eta");
    hp.delta = num("delta");
    hp.epochs_per_stage = static_cast<int>(num("epochs_per_stage"));
    hp.outer_loops = static_cast<int>(num("outer_loops"));
    hp.tolerance = num("tolerance");
    hp.seed = std::stoull(get("seed"));
    hp.directed = get("directed") == "true";
    hp.threshold = num("threshold");
  }
  {
    auto in = detail::open_in(dir / "embeddings.tsv");
    auto m = read_matrix_tsv(in);
    saved.labels = std::move(m.labels);
    saved.model.embeddings.matrix = std::move(m.matrix);
  }
  {
    auto in = detail::open_in(dir / "centroids.tsv");
    saved.model.centroids.matrix = read_matrix_tsv(in).matrix;
  }
  const auto& h = saved.model.embeddings;
  const auto& u = saved.model.centroids;
  if (h.dim() != hp.dim || u.dim() != hp.dim || u.size() != hp.clusters) {
    throw DataError("saved model shapes do not match model.cfg");
  }
  if (!h.matrix.allFinite() || !u.matrix.allFinite()) {
    throw DataError("saved model contains non-finite values");
  }
  return saved;
}

}  // namespace clusterlp

#endif  // CLUSTERLP_IO_HPP_
