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

#ifndef EVTGEN_SRC_SPLITTER_H_
#define EVTGEN_SRC_SPLITTER_H_

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "corpus.h"

namespace evtgen {

struct SplitConfig {
  double proportion = 1.0;  // fraction of documents, in (0, 1]
  uint64_t seed = 0;
  bool coverage_greedy = true;
};

struct SplitResult {
  Corpus corpus;
  // Selected documents in selection order.
  std::vector<std::string> doc_ids;
  // Number of covered event types after each selection step.
  std::vector<size_t> coverage_trace;
};

// Number of documents a split of proportion p keeps out of `num_docs`:
// round(p * D) clamped to [1, D].
size_t SplitSize(double proportion, size_t num_docs);

// Document-level low-resource split. With coverage_greedy the next document
// is always the one adding the most uncovered event types, ties broken by
// event count (desc) and then doc_id (asc); once nothing new can be covered
// the same order fills the remainder. Otherwise documents are drawn by a
// seeded shuffle. Sentences keep their input order.
SplitResult MakeSplit(const Corpus &corpus, const SplitConfig &config);

struct FewShotConfig {
  size_t n_common = 5;
  size_t k = 0;  // shots per unseen type; 0 means zero-shot
  uint64_t seed = 0;
};

struct FewShotResult {
  Corpus train;
  std::vector<std::string> seen_types;  // by frequency rank
  std::set<std::string> unseen_types;
};

// Top n_common types by event frequency (ties by name) stay intact; every
// other type keeps a seeded sample of min(k, available) mentions. Sentences
// that lose all events are kept as negatives. If an ontology is supplied,
// unseen types also include ontology types absent from the corpus.
FewShotResult FewShotFilter(const Corpus &corpus, const FewShotConfig &config,
                            const Ontology *ontology = nullptr);

// Keeps only gold events of the given types.
Corpus EvalFilter(const Corpus &corpus, const std::set<std::string> &unseen_types);

}  // namespace evtgen

#endif  // EVTGEN_SRC_SPLITTER_H_
