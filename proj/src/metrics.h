// Copyright 2026 The evtgen Authors.
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

#ifndef EVTGEN_SRC_METRICS_H_
#define EVTGEN_SRC_METRICS_H_

#include <array>
#include <iosfwd>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "corpus.h"
#include "decoder.h"

namespace evtgen {

// Decoded events for one sentence, as stored in prediction files.
struct PredictionRecord {
  std::string doc_id;
  std::string sent_id;
  std::vector<EventPrediction> events;
  std::vector<Diagnostic> diagnostics;

  bool operator==(const PredictionRecord &) const = default;
};

void WritePredictions(std::ostream &out, const std::vector<PredictionRecord> &records);
std::vector<PredictionRecord> ReadPredictions(std::istream &in,
                                              const std::string &source = "<stream>");

enum class Metric { kTriI, kTriC, kArgI, kArgC };
inline constexpr std::array<Metric, 4> kAllMetrics = {Metric::kTriI, Metric::kTriC, Metric::kArgI,
                                                      Metric::kArgC};
const char *MetricName(Metric metric);

struct PrfCounts {
  size_t tp = 0;
  size_t fp = 0;
  size_t fn = 0;

  // tp / (tp + fp); with no predictions: 1 if there is no gold either, else 0.
  double precision() const;
  // tp / (tp + fn); with no gold: 1 if there are no predictions either, else 0.
  double recall() const;
  double f1() const;

  PrfCounts &operator+=(const PrfCounts &other) {
    tp += other.tp;
    fp += other.fp;
    fn += other.fn;
    return *this;
  }
  bool operator==(const PrfCounts &) const = default;
};

struct ScoreReport {
  std::array<PrfCounts, 4> counts;
  // Prediction records whose (doc_id, sent_id) is not in the gold corpus;
  // their items are counted as false positives.
  size_t unknown_sentences = 0;
  // Predicted spans outside their sentence; counted as false positives.
  size_t invalid_spans = 0;
  std::vector<std::string> errors;

  const PrfCounts &operator[](Metric m) const { return counts[static_cast<size_t>(m)]; }
  PrfCounts &operator[](Metric m) { return counts[static_cast<size_t>(m)]; }
  bool structural_errors() const { return unknown_sentences > 0 || invalid_spans > 0; }
};

// Micro-averaged Tri-I/Tri-C/Arg-I/Arg-C over exact-offset keys:
//   Tri-I (trigger span), Tri-C (+ event type),
//   Arg-I (argument span, event type), Arg-C (+ role).
// Items are matched one-to-one per sentence as multisets. With
// restrict_types, both sides keep only events of those types.
ScoreReport Score(const std::vector<PredictionRecord> &predictions, const Corpus &gold,
                  const std::set<std::string> *restrict_types = nullptr);

// Per-sentence multiset tally for one metric; exposed for testing.
PrfCounts TallyItems(std::vector<std::vector<std::string>> predicted,
                     std::vector<std::vector<std::string>> gold);

struct ScoreTable {
  std::vector<std::string> labels;
  std::vector<ScoreReport> rows;

  std::string ToText() const;
  std::string ToCsv() const;
};

ScoreTable ScoreMatrix(const std::vector<std::pair<std::string, std::vector<PredictionRecord>>> &runs,
                       const Corpus &gold, const std::set<std::string> *restrict_types = nullptr);

}  // namespace evtgen

#endif  // EVTGEN_SRC_METRICS_H_
