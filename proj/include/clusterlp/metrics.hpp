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

#ifndef CLUSTERLP_METRICS_HPP_
#define CLUSTERLP_METRICS_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <iomanip>
#include <numeric>
#include <ostream>
#include <span>
#include <vector>

#include "clusterlp/error.hpp"

namespace clusterlp {

namespace detail {

inline void check_inputs(std::span<const double> scores, std::span<const std::uint8_t> labels) {
  if (scores.size() != labels.size()) throw ConfigError("scores and labels differ in length");
  for (auto l : labels) {
    if (l > 1) throw ConfigError("labels must be 0 or 1");
  }
}

}  // namespace detail

// Probability that a random positive outranks a random negative, ties
// counting one half (Mann-Whitney U over mid-ranks).
inline double roc_auc(std::span<const double> scores, std::span<const std::uint8_t> labels) {
  detail::check_inputs(scores, labels);
  const auto n = scores.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });

  double rank_sum = 0.0;
  std::size_t positives = 0;
  for (std::size_t lo = 0; lo < n;) {
    std::size_t hi = lo;
    while (hi < n && scores[order[hi]] == scores[order[lo]]) ++hi;
    const double mid_rank = 0.5 * static_cast<double>(lo + 1 + hi);
    for (std::size_t k = lo; k < hi; ++k) {
      if (labels[order[k]] == 1) {
        rank_sum += mid_rank;
        ++positives;
      }
    }
    lo = hi;
  }
  const std::size_t negatives = n - positives;
  if (positives == 0 || negatives == 0) throw ConfigError("AUC needs both classes");
  const double p = static_cast<double>(positives);
  const double u = rank_sum - p * (p + 1.0) / 2.0;
  return u / (p * static_cast<double>(negatives));
}

// Mean of precision@rank over the ranks of positives in descending score
// order; equal scores keep their input order.
inline double average_precision(std::span<const double> scores,
                                std::span<const std::uint8_t> labels) {
  detail::check_inputs(scores, labels);
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });
  double sum = 0.0;
  std::size_t hits = 0;
  for (std::size_t r = 0; r < order.size(); ++r) {
    if (labels[order[r]] == 1) {
      ++hits;
      sum += static_cast<double>(hits) / static_cast<double>(r + 1);
    }
  }
  if (hits == 0) throw ConfigError("average precision needs at least one positive");
  return sum / static_cast<double>(hits);
}

struct EvalReport {
  double auc = NAN;
  double ap = NAN;
  double accuracy = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  std::size_t predicted_link_count = 0;
  double threshold = 0.5;
  bool degenerate = false;  // precision or recall had a zero denominator
};

// Thresholded confusion-matrix metrics; a pair is predicted as a link iff
// score >= threshold. AUC and AP are left as NaN.
inline EvalReport classification_report(std::span<const double> scores,
                                         std::span<const std::uint8_t> labels, double threshold) {
  detail::check_inputs(scores, labels);
  if (scores.empty()) throw ConfigError("classification report over no pairs");
  std::size_t tp = 0, fp = 0, tn = 0, fn = 0;
  for (std::size_t k = 0; k < scores.size(); ++k) {
    const bool predicted = scores[k] >= threshold;
    const bool actual = labels[k] == 1;
    if (predicted && actual) ++tp;
    else if (predicted) ++fp;
    else if (actual) ++fn;
    else ++tn;
  }
  EvalReport r;
  r.threshold = threshold;
  r.predicted_link_count = tp + fp;
  r.accuracy = static_cast<double>(tp + tn) / static_cast<double>(scores.size());
  if (tp + fp > 0) {
    r.precision = static_cast<double>(tp) / static_cast<double>(tp + fp);
  } else {
    r.degenerate = true;
  }
  if (tp + fn > 0) {
    r.recall = static_cast<double>(tp) / static_cast<double>(tp + fn);
  } else {
    r.degenerate = true;
  }
  if (r.precision > 0 && r.recall > 0) {
    r.f1 = 2.0 * r.precision * r.recall / (r.precision + r.recall);
  }
  return r;
}

// Classification metrics plus AUC/AP when both classes are present.
inline EvalReport evaluate(std::span<const double> scores, std::span<const std::uint8_t> labels,
                           double threshold) {
  EvalReport r = classification_report(scores, labels, threshold);
  const auto positives = std::count(labels.begin(), labels.end(), std::uint8_t{1});
  if (positives > 0) r.ap = average_precision(scores, labels);
  if (positives > 0 && static_cast<std::size_t>(positives) < labels.size()) {
    r.auc = roc_auc(scores, labels);
  }
  return r;
}

inline void write_csv_header(std::ostream& out, const EvalReport&) {
  out << "auc,ap,accuracy,precision,recall,f1,links,threshold\n";
}

inline void write_csv_row(std::ostream& out, const EvalReport& r) {
  out << std::setprecision(10) << r.auc << ',' << r.ap << ',' << r.accuracy << ','
      << r.precision << ',' << r.recall << ',' << r.f1 << ',' << r.predicted_link_count << ','
      << r.threshold << '\n';
}

inline void write_text(std::ostream& out, const EvalReport& r) {
  auto line = [&](const char* name, double v) {
    out << std::left << std::setw(12) << name << std::right << std::fixed << std::setprecision(4)
        << std::setw(10) << v << '\n';
  };
  line("AUC", r.auc);
  line("AP", r.ap);
  line("accuracy", r.accuracy);
  line("precision", r.precision);
  line("recall", r.recall);
  line("F1", r.f1);
  out << std::left << std::setw(12) << "links" << std::right << std::setw(10)
      << r.predicted_link_count << '\n';
  line("threshold", r.threshold);
  if (r.degenerate) out << "(precision or recall undefined; reported as 0)\n";
  out << std::defaultfloat;
}

}  // namespace clusterlp

#endif  // CLUSTERLP_METRICS_HPP_
