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

#ifndef EVTGEN_SRC_PROMPTGEN_H_
#define EVTGEN_SRC_PROMPTGEN_H_

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "corpus.h"
#include "ontology.h"

namespace evtgen {

struct PromptConfig {
  TemplateKind task = TemplateKind::kE2E;
  bool include_definition = true;
  bool include_keywords = true;  // ignored for EAE
  bool include_template = true;
  TemplateVariant template_variant = TemplateVariant::kNatural;
  std::string segment_separator = " \n ";
  std::string multi_event_separator = " <sep> ";
  std::string and_joiner = " and ";
};

struct TrainingConfig {
  size_t m = 13;  // negative event types per sentence
  uint64_t seed = 0;
  bool resample_each_epoch = true;
  size_t epoch = 0;
};

struct QueryTrigger {
  TokenSpan span;
  std::string text;

  bool operator==(const QueryTrigger &) const = default;
};

struct PromptInstance {
  TemplateKind task = TemplateKind::kE2E;
  std::string event_type;
  std::string input;
  std::optional<std::string> target;
  std::string doc_id;
  std::string sent_id;
  std::optional<QueryTrigger> trigger;

  bool operator==(const PromptInstance &) const = default;
};

// Prompt = passage, then definition, keywords sentence (ED/E2E) or query
// trigger sentence (EAE), then the task template, joined by the segment
// separator. Disabled components are left out.
std::string BuildPrompt(const SentenceRecord &sentence, const EventSchema &schema,
                        const PromptConfig &config,
                        std::optional<TokenSpan> query_trigger = std::nullopt);

// Optional rewrite of each value written into a slot; returning nullopt
// leaves the placeholder instead. Used by the corrupting oracle.
using FillTransform = std::function<std::optional<std::string>(const std::string &)>;

// Gold-filled output: one filled template per gold event of the schema's
// type (EAE: only events on the query trigger), ordered by trigger start
// and joined by the multi-event separator. No matching events gives the
// bare template. Gold roles without a slot are skipped with a warning.
std::string BuildTarget(const SentenceRecord &sentence, const EventSchema &schema,
                        const PromptConfig &config,
                        std::optional<TokenSpan> query_trigger = std::nullopt,
                        const FillTransform &transform = nullptr);

// Per sentence: one positive per event type present (EAE: one per gold
// trigger), then for ED/E2E up to m sampled negative types whose target is
// the bare template. Sampling is keyed by (seed, doc_id, sent_id, epoch).
std::vector<PromptInstance> BuildTrainingSet(const Corpus &corpus, const Ontology &ontology,
                                             const PromptConfig &prompt,
                                             const TrainingConfig &training);

// (event_type, trigger) pairs per sentence key, used to drive EAE inference.
using TriggerTable = std::map<std::string, std::vector<std::pair<std::string, QueryTrigger>>>;

TriggerTable GoldTriggers(const Corpus &corpus);

// ED/E2E: one instance per (sentence, event type) in ontology order.
// EAE: one per (sentence, trigger) from `triggers`, which is required.
std::vector<PromptInstance> BuildInferenceSet(const Corpus &corpus, const Ontology &ontology,
                                              const PromptConfig &prompt,
                                              const TriggerTable *triggers = nullptr);

// Instance file: JSON Lines {task, event_type, input, target?, doc_id,
// sent_id, trigger?}.
void WriteInstances(std::ostream &out, const std::vector<PromptInstance> &instances);
std::vector<PromptInstance> ReadInstances(std::istream &in, const std::string &source = "<stream>");

std::optional<TemplateKind> ParseTask(std::string_view name);

}  // namespace evtgen

#endif  // EVTGEN_SRC_PROMPTGEN_H_
