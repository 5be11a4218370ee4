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

#ifndef EVTGEN_SRC_BASELINES_H_
#define EVTGEN_SRC_BASELINES_H_

#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "corpus.h"
#include "metrics.h"
#include "ontology.h"

namespace evtgen {

// Surface form -> lemma, keyed case-folded.
class LemmaTable {
 public:
  LemmaTable() = default;

  void Add(std::string_view surface, std::string_view lemma);
  // Two-column TSV (surface, lemma). Blank lines and lines starting with
  // '#' are skipped.
  static LemmaTable Read(std::istream &in, const std::string &source = "<stream>");
  static LemmaTable Load(const std::string &path);

  // Table lookup, else strip the longest of {ing, es, ed, s} that leaves at
  // least three characters, else the folded word itself.
  std::string Lemma(std::string_view word) const;

  size_t size() const { return table_.size(); }

 private:
  std::map<std::string, std::string, std::less<>> table_;
};

// Zero-shot ED: every case-folded, token-aligned keyword occurrence becomes a
// trigger of the keyword's event type. No arguments.
std::vector<EventPrediction> MatchingED(const SentenceRecord &sentence, const Ontology &ontology);

// As MatchingED, comparing lemma(token) with lemma(keyword token).
std::vector<EventPrediction> LemmaED(const SentenceRecord &sentence, const Ontology &ontology,
                                     const LemmaTable &lemmas);

enum class BaselineMethod { kMatching, kLemma };

std::vector<PredictionRecord> RunBaseline(const Corpus &corpus, const Ontology &ontology,
                                          BaselineMethod method, const LemmaTable &lemmas = {});

}  // namespace evtgen

#endif  // EVTGEN_SRC_BASELINES_H_
