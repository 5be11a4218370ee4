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

#include "evtgen/evtgen.h"

#include <openssl/evp.h>

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <memory>
#include <mutex>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "baselines.h"
#include "common.h"
#include "corpus.h"
#include "genio.h"
#include "json.hpp"
#include "metrics.h"
#include "ontology.h"
#include "pipeline.h"
#include "promptgen.h"
#include "splitter.h"

struct evtgen_ontology {
  evtgen::Ontology value;
  std::vector<std::string> types;
};
struct evtgen_corpus {
  evtgen::Corpus value;
};
struct evtgen_instances {
  std::vector<evtgen::PromptInstance> value;
};
struct evtgen_generator {
  std::unique_ptr<evtgen::Generator> value;
  evtgen::RemoteGenerator *remote = nullptr;
};
struct evtgen_predictions {
  std::vector<evtgen::PredictionRecord> value;
};
struct evtgen_score_report {
  evtgen::ScoreReport value;
};
struct evtgen_outputs {
  std::vector<std::string> texts;
  std::string failure;
};

namespace {

using evtgen::Error;
using evtgen::ErrorCode;
using json = nlohmann::ordered_json;

thread_local std::string g_last_error;

evtgen_status ToStatus(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return EVTGEN_ERR_INVALID_ARGUMENT;
    case ErrorCode::kIo: return EVTGEN_ERR_IO;
    case ErrorCode::kParse: return EVTGEN_ERR_PARSE;
    case ErrorCode::kValidation: return EVTGEN_ERR_VALIDATION;
    case ErrorCode::kProtocol: return EVTGEN_ERR_PROTOCOL;
    case ErrorCode::kTimeout: return EVTGEN_ERR_TIMEOUT;
    case ErrorCode::kInternal: return EVTGEN_ERR_INTERNAL;
  }
  return EVTGEN_ERR_INTERNAL;
}

template <typename Fn>
evtgen_status Guard(Fn fn) {
  g_last_error.clear();
  try {
    fn();
    return EVTGEN_OK;
  } catch (const Error &e) {
    g_last_error = e.what();
    return ToStatus(e.code());
  } catch (const std::bad_alloc &) {
    g_last_error = "out of memory";
    return EVTGEN_ERR_INTERNAL;
  } catch (const std::exception &e) {
    g_last_error = e.what();
    return EVTGEN_ERR_INTERNAL;
  }
}

void Require(bool ok, const char *what) {
  if (!ok) throw Error(ErrorCode::kInvalidArgument, std::string(what) + " must not be NULL");
}

char *CopyString(const std::string &s) {
  char *out = static_cast<char *>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.data(), s.size() + 1);
  return out;
}

void SetOut(char **out, const std::string &s) {
  if (out) *out = CopyString(s);
}

std::ifstream OpenIn(const char *path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, std::string("cannot open ") + path);
  return in;
}

template <typename Fn>
void WriteFile(const char *path, Fn write) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, std::string("cannot write ") + path);
  write(out);
  out.flush();
  if (!out) throw Error(ErrorCode::kIo, std::string("write failed: ") + path);
}

evtgen_ontology *WrapOntology(evtgen::Ontology o) {
  auto *h = new evtgen_ontology{std::move(o), {}};
  for (const auto &s : h->value.schemas()) h->types.push_back(s.event_type);
  return h;
}

evtgen::PromptConfig ToPrompt(const evtgen_prompt_config *c) {
  evtgen::PromptConfig p;
  if (!c) return p;
  switch (c->task) {
    case EVTGEN_TASK_ED: p.task = evtgen::TemplateKind::kED; break;
    case EVTGEN_TASK_EAE: p.task = evtgen::TemplateKind::kEAE; break;
    case EVTGEN_TASK_E2E: p.task = evtgen::TemplateKind::kE2E; break;
    default: throw Error(ErrorCode::kInvalidArgument, "unknown task");
  }
  switch (c->variant) {
    case EVTGEN_VARIANT_NATURAL: p.template_variant = evtgen::TemplateVariant::kNatural; break;
    case EVTGEN_VARIANT_SPECIAL: p.template_variant = evtgen::TemplateVariant::kSpecialToken; break;
    case EVTGEN_VARIANT_HTML: p.template_variant = evtgen::TemplateVariant::kHtmlLike; break;
    default: throw Error(ErrorCode::kInvalidArgument, "unknown template variant");
  }
  p.include_definition = c->include_definition != 0;
  p.include_keywords = c->include_keywords != 0;
  p.include_template = c->include_template != 0;
  if (c->segment_separator) p.segment_separator = c->segment_separator;
  if (c->multi_event_separator) p.multi_event_separator = c->multi_event_separator;
  if (c->and_joiner) p.and_joiner = c->and_joiner;
  if (evtgen::Trim(p.multi_event_separator).empty()) {
    throw Error(ErrorCode::kInvalidArgument, "multi-event separator must contain non-space text");
  }
  if (evtgen::Trim(p.and_joiner).empty()) {
    throw Error(ErrorCode::kInvalidArgument, "and-joiner must contain non-space text");
  }
  return p;
}

std::set<std::string> ToTypeSet(const char *const *types, size_t n) {
  std::set<std::string> out;
  for (size_t i = 0; i < n; ++i) {
    Require(types[i] != nullptr, "type name");
    out.insert(types[i]);
  }
  return out;
}

class CallbackGenerator : public evtgen::Generator {
 public:
  CallbackGenerator(evtgen_generate_fn fn, void *user) : fn_(fn), user_(user) {}

  std::vector<evtgen::GenerationOutput> Generate(
      std::span<const evtgen::PromptInstance> batch) override {
    std::vector<const char *> inputs;
    inputs.reserve(batch.size());
    for (const auto &inst : batch) inputs.push_back(inst.input.c_str());
    evtgen_outputs outputs;
    outputs.texts.resize(batch.size());
    evtgen_status status = fn_(user_, inputs.data(), inputs.size(), &outputs);
    std::vector<evtgen::GenerationOutput> out(batch.size());
    for (size_t i = 0; i < batch.size(); ++i) {
      if (status == EVTGEN_OK) {
        out[i].text = std::move(outputs.texts[i]);
      } else {
        out[i].error = outputs.failure.empty() ? "callback failed" : outputs.failure;
      }
    }
    return out;
  }

 private:
  evtgen_generate_fn fn_;
  void *user_;
};

std::mutex g_warning_mutex;

}  // namespace

extern "C" {

const char *evtgen_last_error(void) { return g_last_error.c_str(); }

const char *evtgen_version(void) { return EVTGEN_VERSION; }

void evtgen_free_string(char *s) { std::free(s); }

void evtgen_set_warning_handler(evtgen_warning_fn fn, void *user) {
  std::lock_guard<std::mutex> lock(g_warning_mutex);
  if (!fn) {
    evtgen::SetWarningSink(nullptr);
    return;
  }
  evtgen::SetWarningSink([fn, user](const std::string &msg) { fn(msg.c_str(), user); });
}

evtgen_status evtgen_sha256_file(const char *path, char **out_hex) {
  return Guard([&] {
    Require(path && out_hex, "path and out_hex");
    std::ifstream in = OpenIn(path);
    std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
    if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1) {
      throw Error(ErrorCode::kInternal, "sha256 init failed");
    }
    std::vector<char> buf(1 << 16);
    while (in) {
      in.read(buf.data(), static_cast<std::streamsize>(buf.size()));
      if (in.gcount() > 0) EVP_DigestUpdate(ctx.get(), buf.data(), static_cast<size_t>(in.gcount()));
    }
    if (in.bad()) throw Error(ErrorCode::kIo, std::string("read failed: ") + path);
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_DigestFinal_ex(ctx.get(), md, &len);
    std::string hex;
    static const char kDigits[] = "0123456789abcdef";
    for (unsigned int i = 0; i < len; ++i) {
      hex.push_back(kDigits[md[i] >> 4]);
      hex.push_back(kDigits[md[i] & 15]);
    }
    *out_hex = CopyString(hex);
  });
}

evtgen_status evtgen_ontology_load(const char *path, evtgen_ontology **out) {
  return Guard([&] {
    Require(path && out, "path and out");
    *out = WrapOntology(evtgen::LoadOntology(path));
  });
}

evtgen_status evtgen_ontology_parse(const char *text, const char *name, evtgen_ontology **out) {
  return Guard([&] {
    Require(text && out, "json and out");
    *out = WrapOntology(evtgen::ParseOntology(text, name ? name : "ontology"));
  });
}

void evtgen_ontology_free(evtgen_ontology *ontology) { delete ontology; }

const char *evtgen_ontology_name(const evtgen_ontology *ontology) {
  return ontology ? ontology->value.name().c_str() : nullptr;
}

size_t evtgen_ontology_size(const evtgen_ontology *ontology) {
  return ontology ? ontology->value.size() : 0;
}

const char *evtgen_ontology_event_type(const evtgen_ontology *ontology, size_t index) {
  if (!ontology || index >= ontology->types.size()) return nullptr;
  return ontology->types[index].c_str();
}

evtgen_status evtgen_ontology_to_json(const evtgen_ontology *ontology, char **out_json) {
  return Guard([&] {
    Require(ontology && out_json, "ontology and out_json");
    *out_json = CopyString(evtgen::SerializeOntology(ontology->value));
  });
}

evtgen_status evtgen_corpus_load(const char *path, const evtgen_ontology *ontology,
                                 evtgen_corpus **out) {
  return Guard([&] {
    Require(path && ontology && out, "path, ontology and out");
    *out = new evtgen_corpus{evtgen::LoadCorpus(path, ontology->value)};
  });
}

evtgen_status evtgen_corpus_parse(const char *jsonl, const evtgen_ontology *ontology,
                                  evtgen_corpus **out) {
  return Guard([&] {
    Require(jsonl && ontology && out, "jsonl, ontology and out");
    std::istringstream in(jsonl);
    *out = new evtgen_corpus{evtgen::ReadCorpus(in, ontology->value)};
  });
}

evtgen_status evtgen_corpus_convert_oneie(const char *path, const evtgen_ontology *ontology,
                                          evtgen_corpus **out) {
  return Guard([&] {
    Require(path && ontology && out, "path, ontology and out");
    std::ifstream in = OpenIn(path);
    *out = new evtgen_corpus{evtgen::ConvertOneIE(in, ontology->value, path)};
  });
}

evtgen_status evtgen_corpus_save(const evtgen_corpus *corpus, const char *path) {
  return Guard([&] {
    Require(corpus && path, "corpus and path");
    WriteFile(path, [&](std::ostream &out) { evtgen::WriteCorpus(out, corpus->value); });
  });
}

void evtgen_corpus_free(evtgen_corpus *corpus) { delete corpus; }

size_t evtgen_corpus_size(const evtgen_corpus *corpus) {
  return corpus ? corpus->value.sentences.size() : 0;
}

evtgen_status evtgen_corpus_stats(const evtgen_corpus *corpus, evtgen_stats *out) {
  return Guard([&] {
    Require(corpus && out, "corpus and out");
    evtgen::StatsReport r = evtgen::CorpusStats(corpus->value);
    *out = {r.docs, r.sents, r.events, r.event_types, r.args, r.arg_types};
  });
}

evtgen_status evtgen_split(const evtgen_corpus *corpus, const evtgen_split_config *config,
                           evtgen_corpus **out, char **out_report) {
  return Guard([&] {
    Require(corpus && config && out, "corpus, config and out");
    evtgen::SplitConfig cfg{config->proportion, config->seed, config->coverage_greedy != 0};
    evtgen::SplitResult r = evtgen::MakeSplit(corpus->value, cfg);
    json report = {{"doc_ids", r.doc_ids}, {"coverage_trace", r.coverage_trace}};
    SetOut(out_report, report.dump());
    *out = new evtgen_corpus{std::move(r.corpus)};
  });
}

evtgen_status evtgen_fewshot(const evtgen_corpus *corpus, const evtgen_ontology *ontology,
                             const evtgen_fewshot_config *config, evtgen_corpus **out,
                             char **out_report) {
  return Guard([&] {
    Require(corpus && config && out, "corpus, config and out");
    evtgen::FewShotConfig cfg{config->n_common, config->k, config->seed};
    evtgen::FewShotResult r =
        evtgen::FewShotFilter(corpus->value, cfg, ontology ? &ontology->value : nullptr);
    json report = {{"seen_types", r.seen_types}, {"unseen_types", r.unseen_types}};
    SetOut(out_report, report.dump());
    *out = new evtgen_corpus{std::move(r.train)};
  });
}

evtgen_status evtgen_eval_filter(const evtgen_corpus *corpus, const char *const *types,
                                 size_t num_types, evtgen_corpus **out) {
  return Guard([&] {
    Require(corpus && out && (types || num_types == 0), "corpus, types and out");
    *out = new evtgen_corpus{evtgen::EvalFilter(corpus->value, ToTypeSet(types, num_types))};
  });
}

void evtgen_prompt_config_init(evtgen_prompt_config *config) {
  if (!config) return;
  *config = {EVTGEN_TASK_E2E, 1, 1, 1, EVTGEN_VARIANT_NATURAL, nullptr, nullptr, nullptr};
}

void evtgen_training_config_init(evtgen_training_config *config) {
  if (!config) return;
  evtgen::TrainingConfig d;
  *config = {d.m, d.seed, d.resample_each_epoch ? 1 : 0, d.epoch};
}

evtgen_status evtgen_build_training_set(const evtgen_corpus *corpus, const evtgen_ontology *ontology,
                                        const evtgen_prompt_config *prompt,
                                        const evtgen_training_config *training,
                                        evtgen_instances **out) {
  return Guard([&] {
    Require(corpus && ontology && prompt && training && out, "arguments");
    evtgen::TrainingConfig t{training->m, training->seed, training->resample_each_epoch != 0,
                             training->epoch};
    *out = new evtgen_instances{
        evtgen::BuildTrainingSet(corpus->value, ontology->value, ToPrompt(prompt), t)};
  });
}

evtgen_status evtgen_build_inference_set(const evtgen_corpus *corpus,
                                         const evtgen_ontology *ontology,
                                         const evtgen_prompt_config *prompt,
                                         evtgen_instances **out) {
  return Guard([&] {
    Require(corpus && ontology && prompt && out, "arguments");
    evtgen::PromptConfig p = ToPrompt(prompt);
    evtgen::TriggerTable gold;
    if (p.task == evtgen::TemplateKind::kEAE) gold = evtgen::GoldTriggers(corpus->value);
    *out = new evtgen_instances{evtgen::BuildInferenceSet(
        corpus->value, ontology->value, p, p.task == evtgen::TemplateKind::kEAE ? &gold : nullptr)};
  });
}

evtgen_status evtgen_instances_load(const char *path, evtgen_instances **out) {
  return Guard([&] {
    Require(path && out, "path and out");
    std::ifstream in = OpenIn(path);
    *out = new evtgen_instances{evtgen::ReadInstances(in, path)};
  });
}

evtgen_status evtgen_instances_save(const evtgen_instances *instances, const char *path) {
  return Guard([&] {
    Require(instances && path, "instances and path");
    WriteFile(path, [&](std::ostream &out) { evtgen::WriteInstances(out, instances->value); });
  });
}

void evtgen_instances_free(evtgen_instances *instances) { delete instances; }

size_t evtgen_instances_size(const evtgen_instances *instances) {
  return instances ? instances->value.size() : 0;
}

const char *evtgen_instance_input(const evtgen_instances *instances, size_t index) {
  if (!instances || index >= instances->value.size()) return nullptr;
  return instances->value[index].input.c_str();
}

const char *evtgen_instance_target(const evtgen_instances *instances, size_t index) {
  if (!instances || index >= instances->value.size()) return nullptr;
  const auto &target = instances->value[index].target;
  return target ? target->c_str() : nullptr;
}

evtgen_status evtgen_generator_oracle(const evtgen_corpus *gold, const evtgen_ontology *ontology,
                                      const evtgen_prompt_config *prompt,
                                      const evtgen_corruption *corruption,
                                      evtgen_generator **out) {
  return Guard([&] {
    Require(gold && ontology && out, "gold, ontology and out");
    evtgen::CorruptionConfig c;
    if (corruption) {
      for (double p : {corruption->drop_slot, corruption->recase, corruption->garble}) {
        if (!(p >= 0.0 && p <= 1.0)) {
          throw Error(ErrorCode::kInvalidArgument, "corruption probabilities must be in [0, 1]");
        }
      }
      c = {corruption->drop_slot, corruption->recase, corruption->garble, corruption->seed};
    }
    auto gen = std::make_unique<evtgen::OracleGenerator>(gold->value, ontology->value,
                                                         ToPrompt(prompt), c);
    *out = new evtgen_generator{std::move(gen), nullptr};
  });
}

void evtgen_client_config_init(evtgen_client_config *config) {
  if (!config) return;
  evtgen::ClientConfig d;
  *config = {nullptr,
             d.batch_size,
             static_cast<uint32_t>(d.timeout.count()),
             d.max_in_flight,
             d.retries,
             static_cast<uint32_t>(d.backoff.count())};
}

evtgen_status evtgen_generator_remote(const evtgen_client_config *config, evtgen_generator **out) {
  return Guard([&] {
    Require(config && config->endpoint && out, "config, endpoint and out");
    evtgen::ClientConfig c;
    c.endpoint = config->endpoint;
    c.batch_size = config->batch_size;
    c.timeout = std::chrono::milliseconds(config->timeout_ms);
    c.max_in_flight = config->max_in_flight;
    c.retries = config->retries;
    c.backoff = std::chrono::milliseconds(config->backoff_ms);
    auto gen = std::make_unique<evtgen::RemoteGenerator>(c);
    evtgen::RemoteGenerator *remote = gen.get();
    *out = new evtgen_generator{std::move(gen), remote};
  });
}

evtgen_status evtgen_outputs_set(evtgen_outputs *outputs, size_t index, const char *text) {
  return Guard([&] {
    Require(outputs && text, "outputs and text");
    if (index >= outputs->texts.size()) throw Error(ErrorCode::kInvalidArgument, "index out of range");
    outputs->texts[index] = text;
  });
}

void evtgen_outputs_fail(evtgen_outputs *outputs, const char *message) {
  if (outputs && message) outputs->failure = message;
}

evtgen_status evtgen_generator_callback(evtgen_generate_fn fn, void *user, evtgen_generator **out) {
  return Guard([&] {
    Require(fn && out, "fn and out");
    *out = new evtgen_generator{std::make_unique<CallbackGenerator>(fn, user), nullptr};
  });
}

void evtgen_generator_free(evtgen_generator *generator) { delete generator; }

size_t evtgen_generator_requests_sent(const evtgen_generator *generator) {
  return generator && generator->remote ? generator->remote->requests_sent() : 0;
}

evtgen_status evtgen_generate_file(evtgen_generator *generator, const evtgen_instances *instances,
                                   const char *raw_path) {
  return Guard([&] {
    Require(generator && instances && raw_path, "generator, instances and raw_path");
    auto outputs = generator->value->Generate(instances->value);
    if (outputs.size() != instances->value.size()) {
      throw Error(ErrorCode::kProtocol, "generator returned the wrong number of outputs");
    }
    std::vector<evtgen::RawGeneration> raw;
    for (size_t i = 0; i < outputs.size(); ++i) {
      raw.push_back({instances->value[i], std::move(outputs[i].text), std::move(outputs[i].error)});
    }
    WriteFile(raw_path, [&](std::ostream &out) { evtgen::WriteRawGenerations(out, raw); });
  });
}

evtgen_status evtgen_run(const evtgen_corpus *corpus, const evtgen_ontology *ontology,
                         evtgen_generator *generator, const evtgen_prompt_config *prompt,
                         const evtgen_run_config *run, evtgen_predictions **out) {
  return Guard([&] {
    Require(corpus && ontology && generator && run && out, "arguments");
    evtgen::PipelineConfig cfg;
    switch (run->mode) {
      case EVTGEN_MODE_E2E: cfg.mode = evtgen::PipelineMode::kE2E; break;
      case EVTGEN_MODE_PIPELINE: cfg.mode = evtgen::PipelineMode::kPipeline; break;
      case EVTGEN_MODE_GOLD_EAE: cfg.mode = evtgen::PipelineMode::kGoldTriggerEAE; break;
      default: throw Error(ErrorCode::kInvalidArgument, "unknown mode");
    }
    cfg.prompt = ToPrompt(prompt);
    cfg.jobs = run->jobs == 0 ? 1 : run->jobs;
    std::unique_ptr<std::ofstream> raw_out;
    if (run->raw_path) {
      raw_out = std::make_unique<std::ofstream>(run->raw_path, std::ios::binary | std::ios::trunc);
      if (!*raw_out) throw Error(ErrorCode::kIo, std::string("cannot write ") + run->raw_path);
      cfg.on_generated = [&](const std::vector<evtgen::RawGeneration> &stage) {
        evtgen::WriteRawGenerations(*raw_out, stage);
        raw_out->flush();
        if (!*raw_out) throw Error(ErrorCode::kIo, std::string("write failed: ") + run->raw_path);
      };
    }
    evtgen::PipelineResult result =
        evtgen::RunPipeline(corpus->value, ontology->value, *generator->value, cfg);
    *out = new evtgen_predictions{std::move(result.predictions)};
  });
}

evtgen_status evtgen_decode_file(const char *raw_path, const evtgen_corpus *corpus,
                                 const evtgen_ontology *ontology, const evtgen_prompt_config *prompt,
                                 size_t jobs, evtgen_predictions **out) {
  return Guard([&] {
    Require(raw_path && corpus && ontology && out, "arguments");
    std::ifstream in = OpenIn(raw_path);
    auto raw = evtgen::ReadRawGenerations(in, raw_path);
    *out = new evtgen_predictions{evtgen::DecodeGenerations(raw, corpus->value, ontology->value,
                                                            ToPrompt(prompt), jobs == 0 ? 1 : jobs)};
  });
}

evtgen_status evtgen_baseline(const evtgen_corpus *corpus, const evtgen_ontology *ontology,
                              evtgen_baseline_method method, const char *lemma_path,
                              evtgen_predictions **out) {
  return Guard([&] {
    Require(corpus && ontology && out, "corpus, ontology and out");
    evtgen::LemmaTable lemmas;
    if (lemma_path) lemmas = evtgen::LemmaTable::Load(lemma_path);
    evtgen::BaselineMethod m;
    switch (method) {
      case EVTGEN_BASELINE_MATCHING: m = evtgen::BaselineMethod::kMatching; break;
      case EVTGEN_BASELINE_LEMMA: m = evtgen::BaselineMethod::kLemma; break;
      default: throw Error(ErrorCode::kInvalidArgument, "unknown baseline method");
    }
    *out = new evtgen_predictions{evtgen::RunBaseline(corpus->value, ontology->value, m, lemmas)};
  });
}

evtgen_status evtgen_predictions_load(const char *path, evtgen_predictions **out) {
  return Guard([&] {
    Require(path && out, "path and out");
    std::ifstream in = OpenIn(path);
    *out = new evtgen_predictions{evtgen::ReadPredictions(in, path)};
  });
}

evtgen_status evtgen_predictions_save(const evtgen_predictions *predictions, const char *path) {
  return Guard([&] {
    Require(predictions && path, "predictions and path");
    WriteFile(path, [&](std::ostream &out) { evtgen::WritePredictions(out, predictions->value); });
  });
}

void evtgen_predictions_free(evtgen_predictions *predictions) { delete predictions; }

size_t evtgen_predictions_size(const evtgen_predictions *predictions) {
  return predictions ? predictions->value.size() : 0;
}

size_t evtgen_predictions_event_count(const evtgen_predictions *predictions) {
  size_t n = 0;
  if (predictions) {
    for (const auto &r : predictions->value) n += r.events.size();
  }
  return n;
}

size_t evtgen_predictions_diagnostic_count(const evtgen_predictions *predictions) {
  size_t n = 0;
  if (predictions) {
    for (const auto &r : predictions->value) n += r.diagnostics.size();
  }
  return n;
}

evtgen_status evtgen_score(const evtgen_predictions *predictions, const evtgen_corpus *gold,
                           const char *const *types, size_t num_types, evtgen_score_report **out) {
  return Guard([&] {
    Require(predictions && gold && out, "predictions, gold and out");
    std::set<std::string> restrict;
    if (types) restrict = ToTypeSet(types, num_types);
    *out = new evtgen_score_report{
        evtgen::Score(predictions->value, gold->value, types ? &restrict : nullptr)};
  });
}

void evtgen_score_free(evtgen_score_report *score) { delete score; }

evtgen_status evtgen_score_get(const evtgen_score_report *score, evtgen_metric metric, evtgen_prf *out) {
  return Guard([&] {
    Require(score && out, "score and out");
    if (metric < EVTGEN_METRIC_TRI_I || metric > EVTGEN_METRIC_ARG_C) {
      throw Error(ErrorCode::kInvalidArgument, "unknown metric");
    }
    const evtgen::PrfCounts &c = score->value[static_cast<evtgen::Metric>(metric)];
    *out = {c.tp, c.fp, c.fn, c.precision(), c.recall(), c.f1()};
  });
}

size_t evtgen_score_structural_errors(const evtgen_score_report *score) {
  return score ? score->value.unknown_sentences + score->value.invalid_spans : 0;
}

evtgen_status evtgen_score_to_json(const evtgen_score_report *score, char **out_json) {
  return Guard([&] {
    Require(score && out_json, "score and out_json");
    json doc;
    for (evtgen::Metric m : evtgen::kAllMetrics) {
      const evtgen::PrfCounts &c = score->value[m];
      doc["metrics"][evtgen::MetricName(m)] = {{"tp", c.tp},           {"fp", c.fp},
                                               {"fn", c.fn},           {"precision", c.precision()},
                                               {"recall", c.recall()}, {"f1", c.f1()}};
    }
    doc["unknown_sentences"] = score->value.unknown_sentences;
    doc["invalid_spans"] = score->value.invalid_spans;
    doc["errors"] = score->value.errors;
    *out_json = CopyString(doc.dump(2));
  });
}

evtgen_status evtgen_score_table(const evtgen_predictions *const *runs, const char *const *labels,
                                 size_t num_runs, const evtgen_corpus *gold,
                                 const char *const *types, size_t num_types, int csv,
                                 char **out_text) {
  return Guard([&] {
    Require((runs && labels) || num_runs == 0, "runs and labels");
    Require(gold && out_text, "gold and out_text");
    std::vector<std::pair<std::string, std::vector<evtgen::PredictionRecord>>> named;
    for (size_t i = 0; i < num_runs; ++i) {
      Require(runs[i] && labels[i], "run and label");
      named.emplace_back(labels[i], runs[i]->value);
    }
    std::set<std::string> restrict;
    if (types) restrict = ToTypeSet(types, num_types);
    evtgen::ScoreTable table = evtgen::ScoreMatrix(named, gold->value, types ? &restrict : nullptr);
    *out_text = CopyString(csv ? table.ToCsv() : table.ToText());
  });
}

}  // extern "C"
