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

#include "promptgen.h"

#include <algorithm>
#include <istream>
#include <ostream>
#include <set>

#include "json.hpp"
#include "rng.h"

namespace evtgen {

using json = nlohmann::ordered_json;

std::optional<TemplateKind> ParseTask(std::string_view name) {
  if (name == "ed") return TemplateKind::kED;
  if (name == "eae") return TemplateKind::kEAE;
  if (name == "e2e") return TemplateKind::kE2E;
  return std::nullopt;
}

namespace {

void CheckTrigger(const SentenceRecord &sentence, const PromptConfig &config,
                  std::optional<TokenSpan> query_trigger) {
  if (config.task != TemplateKind::kEAE) return;
  if (!query_trigger) {
    throw Error(ErrorCode::kInvalidArgument, "EAE prompt requires a query trigger");
  }
  if (!query_trigger->ValidFor(sentence.tokens.size())) {
    throw Error(ErrorCode::kInvalidArgument,
                "query trigger span [" + std::to_string(query_trigger->start) + "," +
                    std::to_string(query_trigger->end) + ") invalid for (doc_id=" +
                    sentence.doc_id + ", sent_id=" + sentence.sent_id + ")");
  }
}

}  // namespace

std::string BuildPrompt(const SentenceRecord &sentence, const EventSchema &schema,
                        const PromptConfig &config, std::optional<TokenSpan> query_trigger) {
  CheckTrigger(sentence, config, query_trigger);
  std::vector<std::string> parts;
  parts.push_back(Join(sentence.tokens, " "));
  if (config.include_definition) parts.push_back(schema.definition);
  if (config.task == TemplateKind::kEAE) {
    parts.push_back("The event trigger word is " + JoinTokens(sentence.tokens, *query_trigger) + ".");
  } else if (config.include_keywords) {
    parts.push_back("Similar triggers such as " + Join(schema.keywords, ", ") + ".");
  }
  if (config.include_template) {
    parts.push_back(TaskTemplate(schema, config.task, config.template_variant).text());
  }
  return Join(parts, config.segment_separator);
}

std::string BuildTarget(const SentenceRecord &sentence, const EventSchema &schema,
                        const PromptConfig &config, std::optional<TokenSpan> query_trigger,
                        const FillTransform &transform) {
  CheckTrigger(sentence, config, query_trigger);
  TemplateSpec spec = TaskTemplate(schema, config.task, config.template_variant);

  std::vector<const EventMention *> events;
  for (const EventMention &e : sentence.events) {
    if (e.event_type != schema.event_type) continue;
    if (config.task == TemplateKind::kEAE && e.trigger != *query_trigger) continue;
    events.push_back(&e);
  }
  std::stable_sort(events.begin(), events.end(), [](const EventMention *a, const EventMention *b) {
    return a->trigger.start < b->trigger.start;
  });
  if (events.empty()) return spec.text();

  auto fill_values = [&](const std::vector<std::string> &values) -> std::optional<std::string> {
    std::vector<std::string> kept;
    for (const std::string &v : values) {
      if (!transform) {
        kept.push_back(v);
      } else if (auto t = transform(v)) {
        kept.push_back(*t);
      }
    }
    if (kept.empty()) return std::nullopt;
    return Join(kept, config.and_joiner);
  };

  std::vector<std::string> chunks;
  std::set<std::string> unslotted;
  for (const EventMention *e : events) {
    std::vector<std::optional<std::string>> fills;
    std::set<std::string> slotted;
    for (const TemplateSlot &slot : spec.slots()) {
      if (slot.is_trigger) {
        fills.push_back(fill_values({e->trigger_text}));
        continue;
      }
      slotted.insert(slot.role);
      std::vector<std::string> values;
      for (const ArgumentMention &a : e->arguments) {
        if (a.role == slot.role) values.push_back(a.text);
      }
      fills.push_back(values.empty() ? std::nullopt : fill_values(values));
    }
    if (config.task != TemplateKind::kED) {
      for (const ArgumentMention &a : e->arguments) {
        if (!slotted.count(a.role)) unslotted.insert(a.role);
      }
    }
    chunks.push_back(spec.Fill(fills));
  }
  for (const std::string &role : unslotted) {
    Warn("(doc_id=" + sentence.doc_id + ", sent_id=" + sentence.sent_id + "): role " + role +
         " has no slot in the " + schema.event_type + " template; argument skipped");
  }
  return Join(chunks, config.multi_event_separator);
}

std::vector<PromptInstance> BuildTrainingSet(const Corpus &corpus, const Ontology &ontology,
                                             const PromptConfig &prompt,
                                             const TrainingConfig &training) {
  std::vector<PromptInstance> out;
  bool clamped = false;
  for (const SentenceRecord &s : corpus.sentences) {
    auto make = [&](const EventSchema &schema, std::optional<QueryTrigger> trigger) {
      PromptInstance inst;
      inst.task = prompt.task;
      inst.event_type = schema.event_type;
      std::optional<TokenSpan> span;
      if (trigger) span = trigger->span;
      inst.input = BuildPrompt(s, schema, prompt, span);
      inst.target = BuildTarget(s, schema, prompt, span);
      inst.doc_id = s.doc_id;
      inst.sent_id = s.sent_id;
      inst.trigger = std::move(trigger);
      out.push_back(std::move(inst));
    };

    std::set<std::string> present;
    for (const EventMention &e : s.events) present.insert(e.event_type);

    if (prompt.task == TemplateKind::kEAE) {
      std::set<std::pair<std::string, TokenSpan>> done;
      for (const EventMention &e : s.events) {
        if (!done.insert({e.event_type, e.trigger}).second) continue;
        make(ontology.Get(e.event_type), QueryTrigger{e.trigger, e.trigger_text});
      }
      continue;
    }

    std::vector<const EventSchema *> negatives;
    for (const EventSchema &schema : ontology.schemas()) {
      if (present.count(schema.event_type)) {
        make(schema, std::nullopt);
      } else {
        negatives.push_back(&schema);
      }
    }
    if (training.m > negatives.size()) clamped = true;
    size_t epoch = training.resample_each_epoch ? training.epoch : 0;
    Rng rng = Rng::ForKey(training.seed, {"negatives", s.doc_id, s.sent_id, std::to_string(epoch)});
    for (const EventSchema *schema : rng.Sample(negatives, training.m)) make(*schema, std::nullopt);
  }
  if (clamped) {
    Warn("m = " + std::to_string(training.m) +
         " exceeds the negative event types available for some sentences; clamped");
  }
  return out;
}

TriggerTable GoldTriggers(const Corpus &corpus) {
  TriggerTable table;
  for (const SentenceRecord &s : corpus.sentences) {
    auto &list = table[SentenceKey(s.doc_id, s.sent_id)];
    for (const EventMention &e : s.events) {
      std::pair<std::string, QueryTrigger> item{e.event_type, {e.trigger, e.trigger_text}};
      if (std::find(list.begin(), list.end(), item) == list.end()) list.push_back(std::move(item));
    }
  }
  return table;
}

std::vector<PromptInstance> BuildInferenceSet(const Corpus &corpus, const Ontology &ontology,
                                              const PromptConfig &prompt,
                                              const TriggerTable *triggers) {
  if (prompt.task == TemplateKind::kEAE && !triggers) {
    throw Error(ErrorCode::kInvalidArgument, "EAE inference requires a trigger table");
  }
  std::vector<PromptInstance> out;
  for (const SentenceRecord &s : corpus.sentences) {
    auto make = [&](const EventSchema &schema, std::optional<QueryTrigger> trigger) {
      PromptInstance inst;
      inst.task = prompt.task;
      inst.event_type = schema.event_type;
      std::optional<TokenSpan> span;
      if (trigger) span = trigger->span;
      inst.input = BuildPrompt(s, schema, prompt, span);
      inst.doc_id = s.doc_id;
      inst.sent_id = s.sent_id;
      inst.trigger = std::move(trigger);
      out.push_back(std::move(inst));
    };
    if (prompt.task == TemplateKind::kEAE) {
      auto it = triggers->find(SentenceKey(s.doc_id, s.sent_id));
      if (it == triggers->end()) continue;
      for (const auto &[type, trigger] : it->second) make(ontology.Get(type), trigger);
    } else {
      for (const EventSchema &schema : ontology.schemas()) make(schema, std::nullopt);
    }
  }
  return out;
}

void WriteInstances(std::ostream &out, const std::vector<PromptInstance> &instances) {
  for (const PromptInstance &inst : instances) {
    json doc;
    doc["task"] = TemplateKindName(inst.task);
    doc["event_type"] = inst.event_type;
    doc["input"] = inst.input;
    if (inst.target) doc["target"] = *inst.target;
    doc["doc_id"] = inst.doc_id;
    doc["sent_id"] = inst.sent_id;
    if (inst.trigger) {
      doc["trigger"] = {{"start", inst.trigger->span.start},
                        {"end", inst.trigger->span.end},
                        {"text", inst.trigger->text}};
    }
    out << doc.dump() << "\n";
  }
}

std::vector<PromptInstance> ReadInstances(std::istream &in, const std::string &source) {
  std::vector<PromptInstance> out;
  std::string line;
  for (size_t line_no = 1; std::getline(in, line); ++line_no) {
    if (Trim(line).empty()) continue;
    std::string where = source + ":" + std::to_string(line_no);
    try {
      json doc = json::parse(line);
      PromptInstance inst;
      auto task = ParseTask(doc.at("task").get<std::string>());
      if (!task) throw Error(ErrorCode::kParse, where + ": unknown task");
      inst.task = *task;
      inst.event_type = doc.at("event_type").get<std::string>();
      inst.input = doc.at("input").get<std::string>();
      if (doc.contains("target") && !doc["target"].is_null()) inst.target = doc["target"].get<std::string>();
      inst.doc_id = doc.at("doc_id").get<std::string>();
      inst.sent_id = doc.at("sent_id").get<std::string>();
      if (doc.contains("trigger") && !doc["trigger"].is_null()) {
        const json &t = doc["trigger"];
        inst.trigger = QueryTrigger{{t.at("start").get<int>(), t.at("end").get<int>()},
                                    t.value("text", std::string())};
      }
      out.push_back(std::move(inst));
    } catch (const json::exception &e) {
      throw Error(ErrorCode::kParse, where + ": " + e.what());
    }
  }
  return out;
}

}  // namespace evtgen
