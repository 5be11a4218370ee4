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

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "support/synth.h"

namespace {

namespace fs = std::filesystem;
using json = nlohmann::json;

std::string Take(char *s) {
  std::string out = s ? s : "";
  evtgen_free_string(s);
  return out;
}

class CapiTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("evtgen_capi_" + std::to_string(::getpid()) + "_" +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
    evtgen::Ontology o = evtgen::testing::SyntheticOntology({});
    std::ofstream(Path("ontology.json")) << evtgen::SerializeOntology(o);
    std::ofstream corpus(Path("corpus.jsonl"));
    evtgen::WriteCorpus(corpus, evtgen::testing::SyntheticCorpus(o, {.docs = 30}));
    corpus.close();
    ASSERT_EQ(evtgen_ontology_load(Path("ontology.json").c_str(), &ontology_), EVTGEN_OK)
        << evtgen_last_error();
    ASSERT_EQ(evtgen_corpus_load(Path("corpus.jsonl").c_str(), ontology_, &corpus_), EVTGEN_OK)
        << evtgen_last_error();
  }
  void TearDown() override {
    evtgen_corpus_free(corpus_);
    evtgen_ontology_free(ontology_);
    fs::remove_all(dir_);
  }
  std::string Path(const std::string &name) const { return (dir_ / name).string(); }

  fs::path dir_;
  evtgen_ontology *ontology_ = nullptr;
  evtgen_corpus *corpus_ = nullptr;
};

TEST_F(CapiTest, VersionAndErrors) {
  EXPECT_STREQ(evtgen_version(), "0.1.0");
  evtgen_ontology *o = nullptr;
  EXPECT_EQ(evtgen_ontology_load(Path("missing.json").c_str(), &o), EVTGEN_ERR_IO);
  EXPECT_EQ(o, nullptr);
  EXPECT_NE(std::string(evtgen_last_error()).find("missing.json"), std::string::npos);
  EXPECT_EQ(evtgen_ontology_parse("{", "x", &o), EVTGEN_ERR_PARSE);
  EXPECT_EQ(evtgen_ontology_parse(R"({"roles":[],"events":[]})", "x", &o), EVTGEN_ERR_VALIDATION);
  EXPECT_EQ(evtgen_ontology_load(nullptr, &o), EVTGEN_ERR_INVALID_ARGUMENT);
  EXPECT_STRNE(evtgen_last_error(), "");
  EXPECT_EQ(evtgen_ontology_load(Path("ontology.json").c_str(), &o), EVTGEN_OK);
  EXPECT_STREQ(evtgen_last_error(), "");
  evtgen_ontology_free(o);
}

TEST_F(CapiTest, OntologyAccessors) {
  EXPECT_NE(evtgen_ontology_event_type(ontology_, 0), nullptr);
  EXPECT_EQ(evtgen_ontology_event_type(ontology_, 12), nullptr);
  char *text = nullptr;
  ASSERT_EQ(evtgen_ontology_to_json(ontology_, &text), EVTGEN_OK);
  evtgen_ontology *copy = nullptr;
  std::string s = Take(text);
  ASSERT_EQ(evtgen_ontology_parse(s.c_str(), "copy", &copy), EVTGEN_OK);
  EXPECT_EQ(evtgen_ontology_size(copy), evtgen_ontology_size(ontology_));
  EXPECT_STREQ(evtgen_ontology_name(copy), "synthetic");
  evtgen_ontology_free(copy);
  json doc = json::parse(s);
  doc.erase("name");
  ASSERT_EQ(evtgen_ontology_parse(doc.dump().c_str(), "copy", &copy), EVTGEN_OK);
  EXPECT_STREQ(evtgen_ontology_name(copy), "copy");
  evtgen_ontology_free(copy);
}

TEST_F(CapiTest, WarningHandler) {
  std::vector<std::string> seen;
  evtgen_set_warning_handler(
      [](const char *m, void *user) { static_cast<std::vector<std::string> *>(user)->push_back(m); }, &seen);
  const char *two_keywords = R"({"roles":["A"],"events":[{"type":"X:Y","definition":"d.",
    "keywords":["a","b"],"template":"somebody did.","slots":[{"placeholder":"somebody","role":"A"}]}]})";
  evtgen_ontology *o = nullptr;
  ASSERT_EQ(evtgen_ontology_parse(two_keywords, "w", &o), EVTGEN_OK);
  evtgen_ontology_free(o);
  evtgen_set_warning_handler(nullptr, nullptr);
  EXPECT_EQ(seen.size(), 1u);
}

TEST_F(CapiTest, StatsAndSplits) {
  evtgen_stats st{};
  ASSERT_EQ(evtgen_corpus_stats(corpus_, &st), EVTGEN_OK);
  EXPECT_EQ(st.docs, 30u);
  EXPECT_EQ(st.sents, evtgen_corpus_size(corpus_));

  evtgen_split_config cfg{0.2, 1, 1};
  evtgen_corpus *split = nullptr;
  char *report = nullptr;
  ASSERT_EQ(evtgen_split(corpus_, &cfg, &split, &report), EVTGEN_OK) << evtgen_last_error();
  json r = json::parse(Take(report));
  EXPECT_EQ(r["doc_ids"].size(), 6u);
  EXPECT_EQ(r["coverage_trace"].size(), 6u);
  evtgen_stats ss{};
  evtgen_corpus_stats(split, &ss);
  EXPECT_EQ(ss.docs, 6u);
  evtgen_corpus_free(split);

  cfg.proportion = 0.0;
  EXPECT_EQ(evtgen_split(corpus_, &cfg, &split, nullptr), EVTGEN_ERR_INVALID_ARGUMENT);

  evtgen_fewshot_config fs_cfg{3, 2, 5};
  ASSERT_EQ(evtgen_fewshot(corpus_, ontology_, &fs_cfg, &split, &report), EVTGEN_OK) << evtgen_last_error();
  r = json::parse(Take(report));
  EXPECT_EQ(r["seen_types"].size(), 3u);
  EXPECT_EQ(r["seen_types"].size() + r["unseen_types"].size(), 12u);
  evtgen_corpus_free(split);

  const char *types[] = {evtgen_ontology_event_type(ontology_, 0)};
  ASSERT_EQ(evtgen_eval_filter(corpus_, types, 1, &split), EVTGEN_OK);
  evtgen_corpus_free(split);
}

TEST_F(CapiTest, InstancesRoundTrip) {
  evtgen_prompt_config prompt;
  evtgen_prompt_config_init(&prompt);
  EXPECT_EQ(prompt.task, EVTGEN_TASK_E2E);
  evtgen_training_config training;
  evtgen_training_config_init(&training);
  evtgen_instances *inst = nullptr;
  ASSERT_EQ(evtgen_build_training_set(corpus_, ontology_, &prompt, &training, &inst), EVTGEN_OK)
      << evtgen_last_error();
  ASSERT_GT(evtgen_instances_size(inst), 0u);
  EXPECT_NE(evtgen_instance_target(inst, 0), nullptr);
  EXPECT_EQ(evtgen_instance_input(inst, evtgen_instances_size(inst)), nullptr);
  ASSERT_EQ(evtgen_instances_save(inst, Path("train.jsonl").c_str()), EVTGEN_OK);
  evtgen_instances *back = nullptr;
  ASSERT_EQ(evtgen_instances_load(Path("train.jsonl").c_str(), &back), EVTGEN_OK);
  ASSERT_EQ(evtgen_instances_size(back), evtgen_instances_size(inst));
  EXPECT_STREQ(evtgen_instance_input(back, 0), evtgen_instance_input(inst, 0));
  evtgen_instances_free(back);
  evtgen_instances_free(inst);

  ASSERT_EQ(evtgen_build_inference_set(corpus_, ontology_, &prompt, &inst), EVTGEN_OK);
  EXPECT_EQ(evtgen_instances_size(inst), evtgen_corpus_size(corpus_) * 12);
  EXPECT_EQ(evtgen_instance_target(inst, 0), nullptr);
  evtgen_instances_free(inst);

  prompt.variant = static_cast<evtgen_variant>(9);
  EXPECT_EQ(evtgen_build_inference_set(corpus_, ontology_, &prompt, &inst), EVTGEN_ERR_INVALID_ARGUMENT);
  evtgen_prompt_config_init(&prompt);
  prompt.and_joiner = "  ";
  EXPECT_EQ(evtgen_build_inference_set(corpus_, ontology_, &prompt, &inst), EVTGEN_ERR_INVALID_ARGUMENT);
}

TEST_F(CapiTest, OracleRunScoresPerfectly) {
  evtgen_prompt_config prompt;
  evtgen_prompt_config_init(&prompt);
  for (evtgen_mode mode : {EVTGEN_MODE_E2E, EVTGEN_MODE_PIPELINE, EVTGEN_MODE_GOLD_EAE}) {
    evtgen_generator *gen = nullptr;
    ASSERT_EQ(evtgen_generator_oracle(corpus_, ontology_, &prompt, nullptr, &gen), EVTGEN_OK);
    evtgen_run_config run{mode, 2, nullptr};
    std::string raw = Path("raw.jsonl");
    run.raw_path = raw.c_str();
    evtgen_predictions *pred = nullptr;
    ASSERT_EQ(evtgen_run(corpus_, ontology_, gen, &prompt, &run, &pred), EVTGEN_OK) << evtgen_last_error();
    EXPECT_EQ(evtgen_generator_requests_sent(gen), 0u);
    evtgen_generator_free(gen);

    evtgen_score_report *score = nullptr;
    ASSERT_EQ(evtgen_score(pred, corpus_, nullptr, 0, &score), EVTGEN_OK);
    for (evtgen_metric m : {EVTGEN_METRIC_TRI_I, EVTGEN_METRIC_TRI_C, EVTGEN_METRIC_ARG_I, EVTGEN_METRIC_ARG_C}) {
      evtgen_prf prf{};
      ASSERT_EQ(evtgen_score_get(score, m, &prf), EVTGEN_OK);
      EXPECT_DOUBLE_EQ(prf.f1, 1.0) << "mode " << mode << " metric " << m;
    }
    EXPECT_EQ(evtgen_score_structural_errors(score), 0u);
    evtgen_score_free(score);

    evtgen_predictions *decoded = nullptr;
    ASSERT_EQ(evtgen_decode_file(raw.c_str(), corpus_, ontology_, &prompt, 4, &decoded), EVTGEN_OK)
        << evtgen_last_error();
    EXPECT_EQ(evtgen_predictions_event_count(decoded), evtgen_predictions_event_count(pred));
    evtgen_predictions_free(decoded);
    evtgen_predictions_free(pred);
  }
}

TEST_F(CapiTest, CorruptedOracleAndTables) {
  evtgen_prompt_config prompt;
  evtgen_prompt_config_init(&prompt);
  evtgen_corruption bad{1.5, 0, 0, 0};
  evtgen_generator *gen = nullptr;
  EXPECT_EQ(evtgen_generator_oracle(corpus_, ontology_, &prompt, &bad, &gen), EVTGEN_ERR_INVALID_ARGUMENT);
  evtgen_corruption c{0.5, 0, 0, 3};
  ASSERT_EQ(evtgen_generator_oracle(corpus_, ontology_, &prompt, &c, &gen), EVTGEN_OK);
  evtgen_run_config run{EVTGEN_MODE_E2E, 1, nullptr};
  evtgen_predictions *noisy = nullptr;
  ASSERT_EQ(evtgen_run(corpus_, ontology_, gen, &prompt, &run, &noisy), EVTGEN_OK);
  evtgen_generator_free(gen);
  ASSERT_EQ(evtgen_predictions_save(noisy, Path("pred.jsonl").c_str()), EVTGEN_OK);
  evtgen_predictions *loaded = nullptr;
  ASSERT_EQ(evtgen_predictions_load(Path("pred.jsonl").c_str(), &loaded), EVTGEN_OK);
  EXPECT_EQ(evtgen_predictions_size(loaded), evtgen_predictions_size(noisy));

  evtgen_predictions *base = nullptr;
  ASSERT_EQ(evtgen_baseline(corpus_, ontology_, EVTGEN_BASELINE_MATCHING, nullptr, &base), EVTGEN_OK);
  const evtgen_predictions *runs[] = {loaded, base};
  const char *labels[] = {"noisy", "matching"};
  char *table = nullptr;
  ASSERT_EQ(evtgen_score_table(runs, labels, 2, corpus_, nullptr, 0, 1, &table), EVTGEN_OK);
  std::string csv = Take(table);
  EXPECT_NE(csv.find("noisy"), std::string::npos);
  EXPECT_NE(csv.find("matching"), std::string::npos);

  evtgen_score_report *score = nullptr;
  ASSERT_EQ(evtgen_score(loaded, corpus_, nullptr, 0, &score), EVTGEN_OK);
  evtgen_prf prf{};
  evtgen_score_get(score, EVTGEN_METRIC_ARG_C, &prf);
  EXPECT_LT(prf.f1, 1.0);
  char *js = nullptr;
  ASSERT_EQ(evtgen_score_to_json(score, &js), EVTGEN_OK);
  json doc = json::parse(Take(js));
  EXPECT_DOUBLE_EQ(doc["metrics"]["Arg-C"]["f1"].get<double>(), prf.f1);
  EXPECT_EQ(evtgen_score_get(score, static_cast<evtgen_metric>(8), &prf), EVTGEN_ERR_INVALID_ARGUMENT);
  evtgen_score_free(score);
  evtgen_predictions_free(base);
  evtgen_predictions_free(loaded);
  evtgen_predictions_free(noisy);
}

struct Echo {
  int calls = 0;
};

evtgen_status EchoFn(void *user, const char *const *inputs, size_t count, evtgen_outputs *outputs) {
  auto *echo = static_cast<Echo *>(user);
  if (echo->calls++ == 0) {
    evtgen_outputs_fail(outputs, "model offline");
    return EVTGEN_ERR_IO;
  }
  for (size_t i = 0; i < count; ++i) evtgen_outputs_set(outputs, i, inputs[i]);
  return EVTGEN_OK;
}

TEST_F(CapiTest, CallbackGenerator) {
  evtgen_prompt_config prompt;
  evtgen_prompt_config_init(&prompt);
  prompt.task = EVTGEN_TASK_ED;
  evtgen_instances *inst = nullptr;
  ASSERT_EQ(evtgen_build_inference_set(corpus_, ontology_, &prompt, &inst), EVTGEN_OK);
  Echo echo;
  evtgen_generator *gen = nullptr;
  ASSERT_EQ(evtgen_generator_callback(EchoFn, &echo, &gen), EVTGEN_OK);
  for (int pass = 0; pass < 2; ++pass) {
    ASSERT_EQ(evtgen_generate_file(gen, inst, Path("raw.jsonl").c_str()), EVTGEN_OK) << evtgen_last_error();
    std::ifstream in(Path("raw.jsonl"));
    std::string line;
    size_t n = 0, failed = 0;
    while (std::getline(in, line)) {
      json doc = json::parse(line);
      if (doc.contains("error")) {
        ++failed;
        EXPECT_NE(doc["error"].get<std::string>().find("model offline"), std::string::npos);
      } else {
        EXPECT_EQ(doc["output"], doc["input"]);
      }
      ++n;
    }
    EXPECT_EQ(n, evtgen_instances_size(inst));
    EXPECT_EQ(failed, pass == 0 ? n : 0u);
  }
  evtgen_generator_free(gen);
  EXPECT_EQ(echo.calls, 2);
  evtgen_instances_free(inst);
}

TEST_F(CapiTest, RemoteConfigValidation) {
  evtgen_client_config cfg;
  evtgen_client_config_init(&cfg);
  EXPECT_EQ(cfg.batch_size, 16u);
  evtgen_generator *gen = nullptr;
  EXPECT_EQ(evtgen_generator_remote(&cfg, &gen), EVTGEN_ERR_INVALID_ARGUMENT);
  cfg.endpoint = "gopher://x";
  EXPECT_EQ(evtgen_generator_remote(&cfg, &gen), EVTGEN_ERR_INVALID_ARGUMENT);
  cfg.endpoint = "http://127.0.0.1:1";
  ASSERT_EQ(evtgen_generator_remote(&cfg, &gen), EVTGEN_OK);
  evtgen_generator_free(gen);
}

TEST_F(CapiTest, Sha256) {
  std::ofstream(Path("abc.txt")) << "abc";
  char *hex = nullptr;
  ASSERT_EQ(evtgen_sha256_file(Path("abc.txt").c_str(), &hex), EVTGEN_OK);
  EXPECT_EQ(Take(hex), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  EXPECT_EQ(evtgen_sha256_file(Path("none").c_str(), &hex), EVTGEN_ERR_IO);
}

}  // namespace
