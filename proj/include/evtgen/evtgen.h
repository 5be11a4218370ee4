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

#ifndef EVTGEN_EVTGEN_H_
#define EVTGEN_EVTGEN_H_

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(__GNUC__)
#define EVTGEN_API __attribute__((visibility("default")))
#else
#define EVTGEN_API
#endif

typedef enum {
  EVTGEN_OK = 0,
  EVTGEN_ERR_INVALID_ARGUMENT = 1,
  EVTGEN_ERR_IO = 2,
  EVTGEN_ERR_PARSE = 3,
  EVTGEN_ERR_VALIDATION = 4,
  EVTGEN_ERR_PROTOCOL = 5,
  EVTGEN_ERR_TIMEOUT = 6,
  EVTGEN_ERR_INTERNAL = 7,
} evtgen_status;

typedef enum { EVTGEN_TASK_ED = 0, EVTGEN_TASK_EAE = 1, EVTGEN_TASK_E2E = 2 } evtgen_task;
typedef enum {
  EVTGEN_VARIANT_NATURAL = 0,
  EVTGEN_VARIANT_SPECIAL = 1,
  EVTGEN_VARIANT_HTML = 2,
} evtgen_variant;
typedef enum {
  EVTGEN_MODE_E2E = 0,
  EVTGEN_MODE_PIPELINE = 1,
  EVTGEN_MODE_GOLD_EAE = 2,
} evtgen_mode;
typedef enum {
  EVTGEN_METRIC_TRI_I = 0,
  EVTGEN_METRIC_TRI_C = 1,
  EVTGEN_METRIC_ARG_I = 2,
  EVTGEN_METRIC_ARG_C = 3,
} evtgen_metric;
typedef enum { EVTGEN_BASELINE_MATCHING = 0, EVTGEN_BASELINE_LEMMA = 1 } evtgen_baseline_method;

typedef struct evtgen_ontology evtgen_ontology;
typedef struct evtgen_corpus evtgen_corpus;
typedef struct evtgen_instances evtgen_instances;
typedef struct evtgen_generator evtgen_generator;
typedef struct evtgen_predictions evtgen_predictions;
typedef struct evtgen_score_report evtgen_score_report;
typedef struct evtgen_outputs evtgen_outputs;

/* Message of the last failed call on this thread; "" if none. */
EVTGEN_API const char *evtgen_last_error(void);
EVTGEN_API const char *evtgen_version(void);
/* Frees strings returned through char** out-parameters. */
EVTGEN_API void evtgen_free_string(char *s);

/* Warnings go to stderr unless a handler is installed; NULL restores it. */
typedef void (*evtgen_warning_fn)(const char *message, void *user);
EVTGEN_API void evtgen_set_warning_handler(evtgen_warning_fn fn, void *user);

/* Lowercase hex SHA-256 of a file. */
EVTGEN_API evtgen_status evtgen_sha256_file(const char *path, char **out_hex);

/* Ontology */
EVTGEN_API evtgen_status evtgen_ontology_load(const char *path, evtgen_ontology **out);
/* name is used when the document has no "name" field; may be NULL. */
EVTGEN_API evtgen_status evtgen_ontology_parse(const char *json, const char *name,
                                               evtgen_ontology **out);
EVTGEN_API void evtgen_ontology_free(evtgen_ontology *ontology);
EVTGEN_API const char *evtgen_ontology_name(const evtgen_ontology *ontology);
EVTGEN_API size_t evtgen_ontology_size(const evtgen_ontology *ontology);
/* Borrowed; valid while the ontology lives. NULL if out of range. */
EVTGEN_API const char *evtgen_ontology_event_type(const evtgen_ontology *ontology, size_t index);
EVTGEN_API evtgen_status evtgen_ontology_to_json(const evtgen_ontology *ontology, char **out_json);

/* Corpus (JSON Lines, validated against the ontology) */
EVTGEN_API evtgen_status evtgen_corpus_load(const char *path, const evtgen_ontology *ontology,
                                            evtgen_corpus **out);
EVTGEN_API evtgen_status evtgen_corpus_parse(const char *jsonl, const evtgen_ontology *ontology,
                                             evtgen_corpus **out);
EVTGEN_API evtgen_status evtgen_corpus_convert_oneie(const char *path,
                                                     const evtgen_ontology *ontology,
                                                     evtgen_corpus **out);
EVTGEN_API evtgen_status evtgen_corpus_save(const evtgen_corpus *corpus, const char *path);
EVTGEN_API void evtgen_corpus_free(evtgen_corpus *corpus);
EVTGEN_API size_t evtgen_corpus_size(const evtgen_corpus *corpus);

typedef struct {
  size_t docs;
  size_t sents;
  size_t events;
  size_t event_types;
  size_t args;
  size_t arg_types;
} evtgen_stats;
EVTGEN_API evtgen_status evtgen_corpus_stats(const evtgen_corpus *corpus, evtgen_stats *out);

/* Splits */
typedef struct {
  double proportion;
  uint64_t seed;
  int coverage_greedy;
} evtgen_split_config;
/* out_report: {"doc_ids": [...], "coverage_trace": [...]}; may be NULL. */
EVTGEN_API evtgen_status evtgen_split(const evtgen_corpus *corpus, const evtgen_split_config *config,
                                      evtgen_corpus **out, char **out_report);

typedef struct {
  size_t n_common;
  size_t k;
  uint64_t seed;
} evtgen_fewshot_config;
/* ontology may be NULL. out_report: {"seen_types": [...], "unseen_types": [...]}. */
EVTGEN_API evtgen_status evtgen_fewshot(const evtgen_corpus *corpus,
                                        const evtgen_ontology *ontology,
                                        const evtgen_fewshot_config *config, evtgen_corpus **out,
                                        char **out_report);
EVTGEN_API evtgen_status evtgen_eval_filter(const evtgen_corpus *corpus, const char *const *types,
                                            size_t num_types, evtgen_corpus **out);

/* Prompts. String fields may be NULL for the defaults. */
typedef struct {
  evtgen_task task;
  int include_definition;
  int include_keywords;
  int include_template;
  evtgen_variant variant;
  const char *segment_separator;
  const char *multi_event_separator;
  const char *and_joiner;
} evtgen_prompt_config;
EVTGEN_API void evtgen_prompt_config_init(evtgen_prompt_config *config);

typedef struct {
  size_t m;
  uint64_t seed;
  int resample_each_epoch;
  size_t epoch;
} evtgen_training_config;
EVTGEN_API void evtgen_training_config_init(evtgen_training_config *config);

EVTGEN_API evtgen_status evtgen_build_training_set(const evtgen_corpus *corpus,
                                                   const evtgen_ontology *ontology,
                                                   const evtgen_prompt_config *prompt,
                                                   const evtgen_training_config *training,
                                                   evtgen_instances **out);
/* EAE instances are anchored on the corpus's gold triggers. */
EVTGEN_API evtgen_status evtgen_build_inference_set(const evtgen_corpus *corpus,
                                                    const evtgen_ontology *ontology,
                                                    const evtgen_prompt_config *prompt,
                                                    evtgen_instances **out);
EVTGEN_API evtgen_status evtgen_instances_load(const char *path, evtgen_instances **out);
EVTGEN_API evtgen_status evtgen_instances_save(const evtgen_instances *instances, const char *path);
EVTGEN_API void evtgen_instances_free(evtgen_instances *instances);
EVTGEN_API size_t evtgen_instances_size(const evtgen_instances *instances);
/* Borrowed. NULL if out of range or absent. */
EVTGEN_API const char *evtgen_instance_input(const evtgen_instances *instances, size_t index);
EVTGEN_API const char *evtgen_instance_target(const evtgen_instances *instances, size_t index);

/* Generators */
typedef struct {
  double drop_slot;
  double recase;
  double garble;
  uint64_t seed;
} evtgen_corruption;
/* gold and ontology must outlive the generator. corruption may be NULL. */
EVTGEN_API evtgen_status evtgen_generator_oracle(const evtgen_corpus *gold,
                                                 const evtgen_ontology *ontology,
                                                 const evtgen_prompt_config *prompt,
                                                 const evtgen_corruption *corruption,
                                                 evtgen_generator **out);

typedef struct {
  const char *endpoint; /* "http://host:port" or "proc:<command>" */
  size_t batch_size;
  uint32_t timeout_ms;
  size_t max_in_flight;
  size_t retries;
  uint32_t backoff_ms;
} evtgen_client_config;
EVTGEN_API void evtgen_client_config_init(evtgen_client_config *config);
EVTGEN_API evtgen_status evtgen_generator_remote(const evtgen_client_config *config,
                                                 evtgen_generator **out);

/* Callback generator: fill every index with evtgen_outputs_set. Unset
   entries become empty outputs. A non-OK return marks the whole batch
   failed with the message given to evtgen_outputs_fail, if any. */
typedef evtgen_status (*evtgen_generate_fn)(void *user, const char *const *inputs, size_t count,
                                            evtgen_outputs *outputs);
EVTGEN_API evtgen_status evtgen_outputs_set(evtgen_outputs *outputs, size_t index, const char *text);
EVTGEN_API void evtgen_outputs_fail(evtgen_outputs *outputs, const char *message);
EVTGEN_API evtgen_status evtgen_generator_callback(evtgen_generate_fn fn, void *user,
                                                   evtgen_generator **out);

EVTGEN_API void evtgen_generator_free(evtgen_generator *generator);
/* Requests issued by a remote generator; 0 for other kinds. */
EVTGEN_API size_t evtgen_generator_requests_sent(const evtgen_generator *generator);

/* Runs instances through a generator; writes raw generations (JSON Lines). */
EVTGEN_API evtgen_status evtgen_generate_file(evtgen_generator *generator,
                                              const evtgen_instances *instances,
                                              const char *raw_path);

/* Pipeline */
typedef struct {
  evtgen_mode mode;
  size_t jobs;
  /* If set, raw generations are written here before decoding. */
  const char *raw_path;
} evtgen_run_config;
EVTGEN_API evtgen_status evtgen_run(const evtgen_corpus *corpus, const evtgen_ontology *ontology,
                                    evtgen_generator *generator, const evtgen_prompt_config *prompt,
                                    const evtgen_run_config *run, evtgen_predictions **out);
/* Re-decodes a raw-generation file. */
EVTGEN_API evtgen_status evtgen_decode_file(const char *raw_path, const evtgen_corpus *corpus,
                                            const evtgen_ontology *ontology,
                                            const evtgen_prompt_config *prompt, size_t jobs,
                                            evtgen_predictions **out);
/* lemma_path may be NULL. */
EVTGEN_API evtgen_status evtgen_baseline(const evtgen_corpus *corpus, const evtgen_ontology *ontology,
                                         evtgen_baseline_method method, const char *lemma_path,
                                         evtgen_predictions **out);

EVTGEN_API evtgen_status evtgen_predictions_load(const char *path, evtgen_predictions **out);
EVTGEN_API evtgen_status evtgen_predictions_save(const evtgen_predictions *predictions,
                                                 const char *path);
EVTGEN_API void evtgen_predictions_free(evtgen_predictions *predictions);
EVTGEN_API size_t evtgen_predictions_size(const evtgen_predictions *predictions);
EVTGEN_API size_t evtgen_predictions_event_count(const evtgen_predictions *predictions);
EVTGEN_API size_t evtgen_predictions_diagnostic_count(const evtgen_predictions *predictions);

/* Scoring. types may be NULL (no restriction). */
typedef struct {
  size_t tp;
  size_t fp;
  size_t fn;
  double precision;
  double recall;
  double f1;
} evtgen_prf;
EVTGEN_API evtgen_status evtgen_score(const evtgen_predictions *predictions, const evtgen_corpus *gold,
                                      const char *const *types, size_t num_types, evtgen_score_report **out);
EVTGEN_API void evtgen_score_free(evtgen_score_report *score);
EVTGEN_API evtgen_status evtgen_score_get(const evtgen_score_report *score, evtgen_metric metric,
                                          evtgen_prf *out);
/* Unknown sentences plus invalid spans. */
EVTGEN_API size_t evtgen_score_structural_errors(const evtgen_score_report *score);
EVTGEN_API evtgen_status evtgen_score_to_json(const evtgen_score_report *score, char **out_json);

/* Text or CSV table, one row per labelled run. */
EVTGEN_API evtgen_status evtgen_score_table(const evtgen_predictions *const *runs,
                                            const char *const *labels, size_t num_runs,
                                            const evtgen_corpus *gold, const char *const *types,
                                            size_t num_types, int csv, char **out_text);

#ifdef __cplusplus
}
#endif

#endif  /* EVTGEN_EVTGEN_H_ */
