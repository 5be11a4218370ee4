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

#include "splitter.h"

#include <algorithm>
#include <cmath>
#include <map>

#include "rng.h"

namespace evtgen {

namespace {

struct DocInfo {
  std::string doc_id;
  std::set<std::string> types;
  size_t events = 0;
};

std::vector<DocInfo> CollectDocs(const Corpus &corpus) {
  std::vector<DocInfo> docs;
  std::map<std::string, size_t> index;
  for (const SentenceRecord &s : corpus.sentences) {
    auto [it, inserted] = index.emplace(s.doc_id, docs.size());
    if (inserted) docs.push_back({s.doc_id, {}, 0});
    DocInfo &doc = docs[it->second];
    for (const EventMention &e : s.events) {
      doc.types.insert(e.event_type);
      ++doc.events;
    }
  }
  return docs;
}

}  // namespace

size_t SplitSize(double proportion, size_t num_docs) {
  if (!(proportion > 0.0 && proportion <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "split proportion must be in (0, 1]");
  }
  if (num_docs == 0) return 0;
  double target = std::round(proportion * static_cast<double>(num_docs));
  return std::clamp<size_t>(static_cast<size_t>(target), 1, num_docs);
}

SplitResult MakeSplit(const Corpus &corpus, const SplitConfig &config) {
  std::vector<DocInfo> docs = CollectDocs(corpus);
  if (docs.empty()) throw Error(ErrorCode::kInvalidArgument, "corpus has no documents");
  size_t want = SplitSize(config.proportion, docs.size());

  SplitResult result;
  std::set<std::string> covered;
  std::vector<bool> taken(docs.size(), false);

  if (config.coverage_greedy) {
    // Doc ids are unique, so the (gain, events, doc_id) order is total and
    // the seed never has to break a tie.
    for (size_t step = 0; step < want; ++step) {
      size_t best = docs.size();
      size_t best_gain = 0;
      for (size_t i = 0; i < docs.size(); ++i) {
        if (taken[i]) continue;
        size_t gain = 0;
        for (const std::string &t : docs[i].types) gain += !covered.count(t);
        bool better = best == docs.size() || gain > best_gain ||
                      (gain == best_gain && docs[i].events > docs[best].events) ||
                      (gain == best_gain && docs[i].events == docs[best].events &&
                       docs[i].doc_id < docs[best].doc_id);
        if (better) {
          best = i;
          best_gain = gain;
        }
      }
      taken[best] = true;
      covered.insert(docs[best].types.begin(), docs[best].types.end());
      result.doc_ids.push_back(docs[best].doc_id);
      result.coverage_trace.push_back(covered.size());
    }
  } else {
    std::vector<size_t> order(docs.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    Rng rng = Rng::ForKey(config.seed, {"split"});
    rng.Shuffle(order);
    for (size_t i = 0; i < want; ++i) {
      taken[order[i]] = true;
      covered.insert(docs[order[i]].types.begin(), docs[order[i]].types.end());
      result.doc_ids.push_back(docs[order[i]].doc_id);
      result.coverage_trace.push_back(covered.size());
    }
  }

  std::set<std::string> selected(result.doc_ids.begin(), result.doc_ids.end());
  result.corpus.ontology_id = corpus.ontology_id;
  for (const SentenceRecord &s : corpus.sentences) {
    if (selected.count(s.doc_id)) result.corpus.sentences.push_back(s);
  }
  return result;
}

FewShotResult FewShotFilter(const Corpus &corpus, const FewShotConfig &config,
                            const Ontology *ontology) {
  std::map<std::string, size_t> freq;
  for (const SentenceRecord &s : corpus.sentences) {
    for (const EventMention &e : s.events) ++freq[e.event_type];
  }
  std::vector<std::pair<std::string, size_t>> ranked(freq.begin(), freq.end());
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const auto &a, const auto &b) { return a.second > b.second; });

  FewShotResult result;
  std::set<std::string> seen;
  for (size_t i = 0; i < ranked.size() && i < config.n_common; ++i) {
    result.seen_types.push_back(ranked[i].first);
    seen.insert(ranked[i].first);
  }
  for (const auto &[type, count] : freq) {
    if (!seen.count(type)) result.unseen_types.insert(type);
  }
  if (ontology) {
    for (const EventSchema &schema : ontology->schemas()) {
      if (!seen.count(schema.event_type)) result.unseen_types.insert(schema.event_type);
    }
  }

  // (sentence index, event index) of every unseen-type mention, per type.
  std::map<std::string, std::vector<std::pair<size_t, size_t>>> mentions;
  for (size_t si = 0; si < corpus.sentences.size(); ++si) {
    const auto &events = corpus.sentences[si].events;
    for (size_t ei = 0; ei < events.size(); ++ei) {
      if (!seen.count(events[ei].event_type)) {
        mentions[events[ei].event_type].emplace_back(si, ei);
      }
    }
  }
  std::set<std::pair<size_t, size_t>> keep;
  for (auto &[type, list] : mentions) {
    Rng rng = Rng::ForKey(config.seed, {"few-shot", type});
    for (const auto &m : rng.Sample(list, config.k)) keep.insert(m);
  }

  result.train.ontology_id = corpus.ontology_id;
  for (size_t si = 0; si < corpus.sentences.size(); ++si) {
    SentenceRecord s = corpus.sentences[si];
    s.events.clear();
    const auto &events = corpus.sentences[si].events;
    for (size_t ei = 0; ei < events.size(); ++ei) {
      if (seen.count(events[ei].event_type) || keep.count({si, ei})) {
        s.events.push_back(events[ei]);
      }
    }
    result.train.sentences.push_back(std::move(s));
  }
  return result;
}

Corpus EvalFilter(const Corpus &corpus, const std::set<std::string> &unseen_types) {
  Corpus out;
  out.ontology_id = corpus.ontology_id;
  for (const SentenceRecord &s : corpus.sentences) {
    SentenceRecord copy = s;
    std::erase_if(copy.events, [&](const EventMention &e) {
      return !unseen_types.count(e.event_type);
    });
    out.sentences.push_back(std::move(copy));
  }
  return out;
}

}  // namespace evtgen
