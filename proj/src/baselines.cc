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

#include "baselines.h"

#include <algorithm>
#include <array>
#include <fstream>
#include <functional>
#include <istream>

namespace evtgen {

void LemmaTable::Add(std::string_view surface, std::string_view lemma) {
  std::string key = AsciiLower(Trim(surface));
  std::string value = AsciiLower(Trim(lemma));
  if (key.empty() || value.empty()) {
    throw Error(ErrorCode::kValidation, "lemma table entries must be non-empty");
  }
  table_[key] = value;
}

LemmaTable LemmaTable::Read(std::istream &in, const std::string &source) {
  LemmaTable table;
  std::string line;
  for (size_t line_no = 1; std::getline(in, line); ++line_no) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (Trim(line).empty() || line[0] == '#') continue;
    size_t tab = line.find('\t');
    if (tab == std::string::npos || line.find('\t', tab + 1) != std::string::npos) {
      throw Error(ErrorCode::kParse,
                  source + ":" + std::to_string(line_no) + ": expected two tab-separated columns");
    }
    try {
      table.Add(std::string_view(line).substr(0, tab), std::string_view(line).substr(tab + 1));
    } catch (const Error &e) {
      throw Error(e.code(), source + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
  return table;
}

LemmaTable LemmaTable::Load(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open lemma table " + path);
  return Read(in, path);
}

std::string LemmaTable::Lemma(std::string_view word) const {
  std::string folded = AsciiLower(word);
  if (auto it = table_.find(folded); it != table_.end()) return it->second;
  static constexpr std::array<std::string_view, 4> kSuffixes = {"ing", "es", "ed", "s"};
  for (std::string_view suffix : kSuffixes) {
    if (folded.size() >= suffix.size() + 3 && folded.ends_with(suffix)) {
      return folded.substr(0, folded.size() - suffix.size());
    }
  }
  return folded;
}

namespace {

using Normalizer = std::function<std::string(std::string_view)>;

std::vector<EventPrediction> KeywordMatch(const SentenceRecord &sentence, const Ontology &ontology,
                                          const Normalizer &normalize) {
  std::vector<std::string> norm;
  norm.reserve(sentence.tokens.size());
  for (const std::string &t : sentence.tokens) norm.push_back(normalize(t));

  std::vector<EventPrediction> out;
  for (const EventSchema &schema : ontology.schemas()) {
    std::vector<TokenSpan> spans;
    for (const std::string &keyword : schema.keywords) {
      std::vector<std::string> needle = SplitWhitespace(keyword);
      for (std::string &n : needle) n = normalize(n);
      if (needle.empty() || needle.size() > norm.size()) continue;
      for (size_t i = 0; i + needle.size() <= norm.size(); ++i) {
        if (std::equal(needle.begin(), needle.end(), norm.begin() + i)) {
          TokenSpan span{static_cast<int>(i), static_cast<int>(i + needle.size())};
          // Two keywords of one type hitting the same span are one trigger.
          if (std::find(spans.begin(), spans.end(), span) == spans.end()) spans.push_back(span);
        }
      }
    }
    std::sort(spans.begin(), spans.end());
    for (TokenSpan span : spans) {
      out.push_back({schema.event_type, span, JoinTokens(sentence.tokens, span), {}});
    }
  }
  return out;
}

}  // namespace

std::vector<EventPrediction> MatchingED(const SentenceRecord &sentence, const Ontology &ontology) {
  return KeywordMatch(sentence, ontology, [](std::string_view w) { return AsciiLower(w); });
}

std::vector<EventPrediction> LemmaED(const SentenceRecord &sentence, const Ontology &ontology,
                                     const LemmaTable &lemmas) {
  return KeywordMatch(sentence, ontology, [&](std::string_view w) { return lemmas.Lemma(w); });
}

std::vector<PredictionRecord> RunBaseline(const Corpus &corpus, const Ontology &ontology,
                                          BaselineMethod method, const LemmaTable &lemmas) {
  std::vector<PredictionRecord> out;
  for (const SentenceRecord &s : corpus.sentences) {
    PredictionRecord r{s.doc_id, s.sent_id, {}, {}};
    r.events = method == BaselineMethod::kMatching ? MatchingED(s, ontology)
                                                   : LemmaED(s, ontology, lemmas);
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace evtgen
