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

#include "pipeline.h"

#include <algorithm>
#include <atomic>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <thread>

#include "decoder.h"
#include "json.hpp"

namespace evtgen {

using json = nlohmann::ordered_json;

std::optional<PipelineMode> ParsePipelineMode(std::string_view name) {
  if (name == "e2e") return PipelineMode::kE2E;
  if (name == "pipeline") return PipelineMode::kPipeline;
  if (name == "gold-eae") return PipelineMode::kGoldTriggerEAE;
  return std::nullopt;
}

const char *PipelineModeName(PipelineMode mode) {
  switch (mode) {
    case PipelineMode::kE2E: return "e2e";
    case PipelineMode::kPipeline: return "pipeline";
    case PipelineMode::kGoldTriggerEAE: return "gold-eae";
  }
  return "?";
}

void WriteRawGenerations(std::ostream &out, const std::vector<RawGeneration> &records) {
  for (const RawGeneration &r : records) {
    std::ostringstream inst;
    WriteInstances(inst, {r.instance});
    json doc = json::parse(inst.str());
    doc["output"] = r.output;
    if (r.error) doc["error"] = *r.error;
    out << doc.dump(-1, ' ', false, json::error_handler_t::replace) << "\n";
  }
}

std::vector<RawGeneration> ReadRawGenerations(std::istream &in, const std::string &source) {
  std::vector<RawGeneration> out;
  std::string line;
  for (size_t line_no = 1; std::getline(in, line); ++line_no) {
    if (Trim(line).empty()) continue;
    std::string where = source + ":" + std::to_string(line_no);
    try {
      json doc = json::parse(line);
      RawGeneration r;
      r.output = doc.at("output").get<std::string>();
      if (doc.contains("error") && doc["error"].is_string()) r.error = doc["error"].get<std::string>();
      std::istringstream inst(line);
      auto instances = ReadInstances(inst, where);
      r.instance = std::move(instances.at(0));
      out.push_back(std::move(r));
    } catch (const json::exception &e) {
      throw Error(ErrorCode::kParse, where + ": " + e.what());
    }
  }
  return out;
}

namespace {

template <typename Fn>
void ParallelFor(size_t n, size_t jobs, Fn fn) {
  jobs = std::max<size_t>(1, std::min(jobs, n));
  if (jobs == 1) {
    for (size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<size_t> next{0};
  std::vector<std::thread> threads;
  for (size_t t = 0; t < jobs; ++t) {
    threads.emplace_back([&] {
      for (size_t i = next++; i < n; i = next++) fn(i);
    });
  }
  for (std::thread &t : threads) t.join();
}

std::vector<RawGeneration> Generate(Generator &generator, std::vector<PromptInstance> instances,
                                    const PipelineConfig &config) {
  std::vector<GenerationOutput> outputs = generator.Generate(instances);
  if (outputs.size() != instances.size()) {
    throw Error(ErrorCode::kProtocol, "generator returned " + std::to_string(outputs.size()) +
                                          " outputs for " + std::to_string(instances.size()) + " inputs");
  }
  std::vector<RawGeneration> raw;
  raw.reserve(instances.size());
  for (size_t i = 0; i < instances.size(); ++i) {
    raw.push_back({std::move(instances[i]), std::move(outputs[i].text), std::move(outputs[i].error)});
  }
  if (config.on_generated) config.on_generated(raw);
  return raw;
}

struct Decoded {
  DecodeResult result;
  std::string sentence_key;
};

std::vector<Decoded> DecodeAll(const std::vector<RawGeneration> &raw,
                               const std::map<std::string, const SentenceRecord *> &sentences,
                               const Ontology &ontology, const PromptConfig &prompt, size_t jobs) {
  std::vector<Decoded> out(raw.size());
  ParallelFor(raw.size(), jobs, [&](size_t i) {
    const RawGeneration &r = raw[i];
    const PromptInstance &inst = r.instance;
    Decoded &d = out[i];
    d.sentence_key = SentenceKey(inst.doc_id, inst.sent_id);
    std::string tag = std::string("[") + TemplateKindName(inst.task) + " " + inst.event_type + "] ";
    auto sit = sentences.find(d.sentence_key);
    const EventSchema *schema = ontology.Find(inst.event_type);
    if (sit == sentences.end() || !schema) {
      d.result.diagnostics.push_back({"UnknownInstance", tag + "instance does not match corpus/ontology"});
      return;
    }
    if (r.error) d.result.diagnostics.push_back({std::string(kGenerationError), tag + *r.error});
    PromptConfig cfg = prompt;
    cfg.task = inst.task;
    std::optional<TokenSpan> anchor;
    if (inst.trigger) anchor = inst.trigger->span;
    DecodeResult decoded = Decode(r.output, *sit->second, *schema, cfg, anchor);
    for (Diagnostic &diag : decoded.diagnostics) diag.detail = tag + diag.detail;
    d.result.events = std::move(decoded.events);
    d.result.diagnostics.insert(d.result.diagnostics.end(), decoded.diagnostics.begin(),
                                decoded.diagnostics.end());
  });
  return out;
}

std::map<std::string, const SentenceRecord *> IndexSentences(const Corpus &corpus) {
  std::map<std::string, const SentenceRecord *> index;
  for (const SentenceRecord &s : corpus.sentences) index.emplace(SentenceKey(s.doc_id, s.sent_id), &s);
  return index;
}

}  // namespace

std::vector<PredictionRecord> DecodeGenerations(const std::vector<RawGeneration> &raw,
                                                const Corpus &corpus, const Ontology &ontology,
                                                const PromptConfig &prompt, size_t jobs) {
  auto sentences = IndexSentences(corpus);
  std::vector<Decoded> decoded = DecodeAll(raw, sentences, ontology, prompt, jobs);

  // (sentence, type, trigger) anchors that an EAE record already covers.
  std::set<std::tuple<std::string, std::string, TokenSpan>> expanded;
  for (const RawGeneration &r : raw) {
    if (r.instance.task == TemplateKind::kEAE && r.instance.trigger) {
      expanded.insert({SentenceKey(r.instance.doc_id, r.instance.sent_id), r.instance.event_type,
                       r.instance.trigger->span});
    }
  }

  std::map<std::string, size_t> slot;
  std::vector<PredictionRecord> out;
  for (const SentenceRecord &s : corpus.sentences) {
    slot.emplace(SentenceKey(s.doc_id, s.sent_id), out.size());
    out.push_back({s.doc_id, s.sent_id, {}, {}});
  }
  std::vector<std::set<EventPrediction>> seen(out.size());
  for (size_t i = 0; i < raw.size(); ++i) {
    auto it = slot.find(decoded[i].sentence_key);
    if (it == slot.end()) continue;
    PredictionRecord &record = out[it->second];
    for (Diagnostic &diag : decoded[i].result.diagnostics) record.diagnostics.push_back(std::move(diag));
    for (EventPrediction &e : decoded[i].result.events) {
      if (raw[i].instance.task == TemplateKind::kED &&
          expanded.count({decoded[i].sentence_key, e.event_type, e.trigger})) {
        continue;
      }
      if (!seen[it->second].insert(e).second) continue;
      record.events.push_back(std::move(e));
    }
  }
  return out;
}

PipelineResult RunPipeline(const Corpus &corpus, const Ontology &ontology, Generator &generator,
                           const PipelineConfig &config) {
  PipelineResult result;
  PromptConfig prompt = config.prompt;
  auto append = [&](std::vector<RawGeneration> stage) {
    for (RawGeneration &r : stage) result.raw.push_back(std::move(r));
  };

  switch (config.mode) {
    case PipelineMode::kE2E: {
      prompt.task = TemplateKind::kE2E;
      append(Generate(generator, BuildInferenceSet(corpus, ontology, prompt), config));
      break;
    }
    case PipelineMode::kGoldTriggerEAE: {
      prompt.task = TemplateKind::kEAE;
      TriggerTable gold = GoldTriggers(corpus);
      append(Generate(generator, BuildInferenceSet(corpus, ontology, prompt, &gold), config));
      break;
    }
    case PipelineMode::kPipeline: {
      prompt.task = TemplateKind::kED;
      std::vector<RawGeneration> ed = Generate(generator, BuildInferenceSet(corpus, ontology, prompt), config);
      std::vector<PredictionRecord> ed_pred = DecodeGenerations(ed, corpus, ontology, prompt, config.jobs);
      TriggerTable triggers;
      for (const PredictionRecord &r : ed_pred) {
        auto &list = triggers[SentenceKey(r.doc_id, r.sent_id)];
        for (const EventPrediction &e : r.events) {
          list.push_back({e.event_type, QueryTrigger{e.trigger, e.trigger_text}});
        }
      }
      append(std::move(ed));
      prompt.task = TemplateKind::kEAE;
      append(Generate(generator, BuildInferenceSet(corpus, ontology, prompt, &triggers), config));
      break;
    }
  }
  result.predictions = DecodeGenerations(result.raw, corpus, ontology, config.prompt, config.jobs);
  return result;
}

}  // namespace evtgen
