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

#ifndef EVTGEN_SRC_CORPUS_H_
#define EVTGEN_SRC_CORPUS_H_

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "common.h"
#include "ontology.h"

namespace evtgen {

struct ArgumentMention {
  TokenSpan span;
  std::string role;
  std::string text;

  friend auto operator<=>(const ArgumentMention &, const ArgumentMention &) = default;
};

// Also used for predictions: a decoded event has the same shape as a gold one.
struct EventMention {
  std::string event_type;
  TokenSpan trigger;
  std::string trigger_text;
  std::vector<ArgumentMention> arguments;

  friend auto operator<=>(const EventMention &, const EventMention &) = default;
};
using EventPrediction = EventMention;

struct SentenceRecord {
  std::string doc_id;
  std::string sent_id;
  Tokens tokens;
  std::vector<EventMention> events;

  bool operator==(const SentenceRecord &) const = default;
};

struct Corpus {
  std::vector<SentenceRecord> sentences;
  std::string ontology_id;

  bool operator==(const Corpus &) const = default;
};

// Key used to join predictions, instances and gold records.
std::string SentenceKey(std::string_view doc_id, std::string_view sent_id);

// JSON Lines, one SentenceRecord per line. Blank lines are skipped. Every
// record is validated against the ontology; errors name the line and the
// (doc_id, sent_id) of the offending record.
Corpus ReadCorpus(std::istream &in, const Ontology &ontology,
                  const std::string &source = "<stream>");
Corpus LoadCorpus(const std::string &path, const Ontology &ontology);
void WriteCorpus(std::ostream &out, const Corpus &corpus);
void SaveCorpus(const std::string &path, const Corpus &corpus);

// Checks all record invariants. Throws Error(kValidation).
void ValidateSentence(const SentenceRecord &sentence, const Ontology &ontology);

// OneIE-style preprocessed records: arguments point at entity mentions by id.
// Fields are renamed and entity ids resolved to spans; tokens are kept as-is.
Corpus ConvertOneIE(std::istream &in, const Ontology &ontology,
                    const std::string &source = "<stream>");

struct StatsReport {
  size_t docs = 0;
  size_t sents = 0;
  size_t events = 0;
  size_t event_types = 0;
  size_t args = 0;
  size_t arg_types = 0;

  bool operator==(const StatsReport &) const = default;
};

StatsReport CorpusStats(const Corpus &corpus);

enum class CaseMode { kExact, kFold };

// All token-aligned occurrences of the whitespace-tokenized query, ordered
// by start. Fold compares ASCII case-insensitively.
std::vector<TokenSpan> FindOccurrences(const Tokens &tokens, std::string_view query,
                                       CaseMode mode);

}  // namespace evtgen

#endif  // EVTGEN_SRC_CORPUS_H_
