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

#include <evtgen/evtgen.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

namespace {

using json = nlohmann::ordered_json;

struct Failure {
  int exit_code;
  std::string message;
};

void Check(evtgen_status status, const std::string &what) {
  if (status != EVTGEN_OK) {
    throw Failure{status == EVTGEN_ERR_VALIDATION ? 3 : 1, what + ": " + evtgen_last_error()};
  }
}

template <typename T, void (*Free)(T *)>
struct Handle {
  T *ptr = nullptr;
  Handle() = default;
  Handle(const Handle &) = delete;
  Handle &operator=(const Handle &) = delete;
  ~Handle() {
    if (ptr) Free(ptr);
  }
  T **out() { return &ptr; }
  T *get() const { return ptr; }
};

using Ontology = Handle<evtgen_ontology, evtgen_ontology_free>;
using Corpus = Handle<evtgen_corpus, evtgen_corpus_free>;
using Instances = Handle<evtgen_instances, evtgen_instances_free>;
using GeneratorH = Handle<evtgen_generator, evtgen_generator_free>;
using Predictions = Handle<evtgen_predictions, evtgen_predictions_free>;
using Report = Handle<evtgen_score_report, evtgen_score_free>;

std::string TakeString(char *s) {
  std::string out = s ? s : "";
  evtgen_free_string(s);
  return out;
}

std::string Digest(const std::string &path) {
  char *hex = nullptr;
  Check(evtgen_sha256_file(path.c_str(), &hex), "digest " + path);
  return TakeString(hex);
}

// Options shared by the subcommands that build prompts.
struct PromptOptions {
  std::string task = "e2e";
  std::string variant = "natural";
  bool no_definition = false;
  bool no_keywords = false;
  bool no_template = false;
  std::string segment_separator = " \n ";
  std::string event_separator = " <sep> ";
  std::string and_joiner = " and ";

  void Register(CLI::App *app, bool with_task) {
    if (with_task) {
      app->add_option("--task", task, "Task")->check(CLI::IsMember({"ed", "eae", "e2e"}))->capture_default_str();
    }
    app->add_option("--variant", variant, "Template variant")
        ->check(CLI::IsMember({"natural", "special", "html"}))
        ->capture_default_str();
    app->add_flag("--no-definition", no_definition, "Leave the event definition out of prompts");
    app->add_flag("--no-keywords", no_keywords, "Leave the keyword sentence out of prompts");
    app->add_flag("--no-template", no_template, "Leave the template out of prompts");
    app->add_option("--segment-sep", segment_separator, "Prompt segment separator")->capture_default_str();
    app->add_option("--event-sep", event_separator, "Multi-event separator")->capture_default_str();
    app->add_option("--and-joiner", and_joiner, "Joiner for multiple values in one slot")->capture_default_str();
  }

  evtgen_prompt_config Config() const {
    evtgen_prompt_config c;
    evtgen_prompt_config_init(&c);
    c.task = task == "ed" ? EVTGEN_TASK_ED : task == "eae" ? EVTGEN_TASK_EAE : EVTGEN_TASK_E2E;
    c.variant = variant == "special" ? EVTGEN_VARIANT_SPECIAL
                : variant == "html"  ? EVTGEN_VARIANT_HTML
                                     : EVTGEN_VARIANT_NATURAL;
    c.include_definition = !no_definition;
    c.include_keywords = !no_keywords;
    c.include_template = !no_template;
    c.segment_separator = segment_separator.c_str();
    c.multi_event_separator = event_separator.c_str();
    c.and_joiner = and_joiner.c_str();
    return c;
  }
};

// Records what a subcommand read and wrote so the run can be audited and
// repeated with `evtgen rerun`.
class Manifest {
 public:
  Manifest(const CLI::App *sub, std::vector<std::string> argv) : sub_(sub), argv_(std::move(argv)) {}

  void Input(const std::string &role, const std::string &path) {
    inputs_[role] = {{"path", path}, {"sha256", Digest(path)}};
  }
  void Output(const std::string &path) { outputs_.push_back(path); }
  json &result() { return result_; }

  void Write(const std::string &primary_output) const {
    json doc;
    doc["tool"] = "evtgen";
    doc["version"] = evtgen_version();
    doc["subcommand"] = sub_->get_name();
    json config = Echo(sub_);
    json global = Echo(sub_->get_parent());
    global.erase("version");
    config["global"] = global;
    doc["config"] = config;
    doc["cwd"] = std::filesystem::current_path().string();
    doc["argv"] = argv_;
    doc["inputs"] = inputs_;
    std::vector<json> outs;
    for (const std::string &path : outputs_) outs.push_back({{"path", path}, {"sha256", Digest(path)}});
    doc["outputs"] = outs;
    if (!result_.is_null()) doc["result"] = result_;
    std::string path = primary_output + ".manifest.json";
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << doc.dump(2) << "\n";
    if (!out) throw Failure{1, "cannot write " + path};
  }

 private:
  // Every option of `app`, defaults included.
  static json Echo(const CLI::App *app) {
    json config = json::object();
    for (const CLI::Option *opt : app->get_options()) {
      std::string name = opt->get_single_name();
      if (name.empty() || name == "help") continue;
      std::vector<std::string> values = opt->results();
      if (opt->get_expected_max() == 0) {
        config[name] = opt->count() > 0;
      } else if (values.empty()) {
        config[name] = opt->get_default_str();
      } else if (opt->get_expected_max() > 1) {
        config[name] = values;
      } else {
        config[name] = values.back();
      }
    }
    return config;
  }

  const CLI::App *sub_;
  std::vector<std::string> argv_;
  json inputs_ = json::object();
  std::vector<std::string> outputs_;
  json result_;
};

void LoadOntology(const std::string &path, Ontology &out) {
  Check(evtgen_ontology_load(path.c_str(), out.out()), "ontology " + path);
}

void LoadCorpus(const std::string &path, const Ontology &ontology, Corpus &out) {
  Check(evtgen_corpus_load(path.c_str(), ontology.get(), out.out()), "corpus " + path);
}

std::vector<std::string> SplitList(const std::vector<std::string> &items) {
  std::vector<std::string> out;
  for (const std::string &item : items) {
    std::stringstream ss(item);
    std::string piece;
    while (std::getline(ss, piece, ',')) {
      if (!piece.empty()) out.push_back(piece);
    }
  }
  return out;
}

std::vector<const char *> CStrings(const std::vector<std::string> &items) {
  std::vector<const char *> out;
  for (const std::string &s : items) out.push_back(s.c_str());
  return out;
}

// oracle[:drop=P,recase=P,garble=P,seed=N]
evtgen_corruption ParseOracleSpec(const std::string &spec) {
  evtgen_corruption c{0, 0, 0, 0};
  size_t colon = spec.find(':');
  if (colon == std::string::npos) return c;
  std::stringstream ss(spec.substr(colon + 1));
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    size_t eq = item.find('=');
    if (eq == std::string::npos) throw Failure{2, "bad oracle option '" + item + "'"};
    std::string key = item.substr(0, eq);
    std::string value = item.substr(eq + 1);
    try {
      size_t used = 0;
      if (key == "seed") {
        c.seed = std::stoull(value, &used);
      } else {
        double p = std::stod(value, &used);
        if (key == "drop") c.drop_slot = p;
        else if (key == "recase") c.recase = p;
        else if (key == "garble") c.garble = p;
        else throw Failure{2, "unknown oracle option '" + key + "'"};
      }
      if (used != value.size()) throw std::invalid_argument(value);
    } catch (const std::logic_error &) {
      throw Failure{2, "bad value for oracle option '" + key + "'"};
    }
  }
  return c;
}

struct ClientOptions {
  size_t batch_size = 16;
  uint32_t timeout_ms = 30000;
  size_t max_in_flight = 4;
  size_t retries = 2;
  uint32_t backoff_ms = 100;

  void Register(CLI::App *app) {
    app->add_option("--batch-size", batch_size, "Remote batch size")->check(CLI::PositiveNumber)->capture_default_str();
    app->add_option("--timeout-ms", timeout_ms, "Per-request timeout")->capture_default_str();
    app->add_option("--max-in-flight", max_in_flight, "Outstanding requests")->check(CLI::PositiveNumber)->capture_default_str();
    app->add_option("--retries", retries, "Retries per batch")->capture_default_str();
    app->add_option("--backoff-ms", backoff_ms, "Initial retry backoff")->capture_default_str();
  }
};

void MakeGenerator(const std::string &spec, const Corpus &corpus, const Ontology &ontology,
                   const evtgen_prompt_config &prompt, const ClientOptions &client, GeneratorH &out) {
  if (spec == "oracle" || spec.rfind("oracle:", 0) == 0) {
    evtgen_corruption c = ParseOracleSpec(spec);
    Check(evtgen_generator_oracle(corpus.get(), ontology.get(), &prompt, &c, out.out()), "generator");
    return;
  }
  std::string endpoint;
  if (spec.rfind("http://", 0) == 0 || spec.rfind("https://", 0) == 0 || spec.rfind("proc:", 0) == 0) {
    endpoint = spec;
  } else if (spec.rfind("http:", 0) == 0) {
    endpoint = "http://" + spec.substr(5);
  } else {
    throw Failure{2, "unknown generator '" + spec + "' (expected oracle[:...], http:URL or proc:CMD)"};
  }
  evtgen_client_config cfg;
  evtgen_client_config_init(&cfg);
  cfg.endpoint = endpoint.c_str();
  cfg.batch_size = client.batch_size;
  cfg.timeout_ms = client.timeout_ms;
  cfg.max_in_flight = client.max_in_flight;
  cfg.retries = client.retries;
  cfg.backoff_ms = client.backoff_ms;
  Check(evtgen_generator_remote(&cfg, out.out()), "generator");
}

void WriteText(const std::string &path, const std::string &text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << text;
  if (!out) throw Failure{1, "cannot write " + path};
}

int Run(int argc, char **argv);

}  // namespace

int main(int argc, char **argv) {
  try {
    return Run(argc, argv);
  } catch (const Failure &f) {
    std::cerr << "evtgen: " << f.message << "\n";
    return f.exit_code;
  }
}

namespace {

int Run(int argc, char **argv) {
  std::vector<std::string> args(argv + 1, argv + argc);

  CLI::App app{"Template-prompted generative event extraction toolkit"};
  app.set_version_flag("--version", std::string(evtgen_version()));
  CLI::Option *config_opt = app.set_config("--config", "", "TOML/INI config file; flags override it");
  app.require_subcommand(1);
  size_t jobs = 1;
  app.add_option("--jobs", jobs, "Worker threads for decoding")->check(CLI::PositiveNumber)->capture_default_str();

  std::string ontology_path, corpus_path, out_path;
  auto add_ontology = [&](CLI::App *sub) {
    sub->add_option("--ontology", ontology_path, "Ontology JSON")->required()->check(CLI::ExistingFile);
  };
  auto add_corpus = [&](CLI::App *sub, bool required) {
    auto *opt = sub->add_option("--corpus", corpus_path, "Corpus JSON Lines")->check(CLI::ExistingFile);
    if (required) opt->required();
  };
  auto add_out = [&](CLI::App *sub) { sub->add_option("--out", out_path, "Output file")->required(); };

  CLI::App *validate = app.add_subcommand("validate", "Check an ontology and optionally a corpus");
  add_ontology(validate);
  add_corpus(validate, false);

  CLI::App *stats = app.add_subcommand("stats", "Corpus statistics");
  add_ontology(stats);
  add_corpus(stats, true);
  std::string stats_format = "text";
  stats->add_option("--format", stats_format)->check(CLI::IsMember({"text", "json"}))->capture_default_str();

  CLI::App *split = app.add_subcommand("split", "Low-resource or few-shot training split");
  add_ontology(split);
  add_corpus(split, true);
  add_out(split);
  double proportion = 1.0;
  uint64_t seed = 0;
  bool random_split = false;
  std::optional<size_t> n_common, k_shots;
  split->add_option("--proportion", proportion, "Fraction of documents")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  split->add_option("--seed", seed)->capture_default_str();
  split->add_flag("--random", random_split, "Seeded random document draw instead of greedy coverage");
  split->add_option("--n-common", n_common, "Few-shot: number of seen (most frequent) types");
  split->add_option("--k", k_shots, "Few-shot: mentions kept per unseen type");

  CLI::App *build = app.add_subcommand("build-data", "Build prompt instances");
  add_ontology(build);
  add_corpus(build, true);
  add_out(build);
  PromptOptions build_prompt;
  build_prompt.Register(build, true);
  std::string build_kind = "train";
  size_t m = 13;
  uint64_t build_seed = 0;
  size_t epoch = 0;
  bool fixed_negatives = false;
  build->add_option("--kind", build_kind, "Instance kind")->check(CLI::IsMember({"train", "infer"}))->capture_default_str();
  build->add_option("--m", m, "Negative event types per sentence")->capture_default_str();
  build->add_option("--seed", build_seed)->capture_default_str();
  build->add_option("--epoch", epoch)->capture_default_str();
  build->add_flag("--fixed-negatives", fixed_negatives, "Use the same negatives in every epoch");

  CLI::App *infer = app.add_subcommand("infer", "Generate and decode predictions");
  add_ontology(infer);
  add_corpus(infer, true);
  add_out(infer);
  PromptOptions infer_prompt;
  infer_prompt.Register(infer, false);
  ClientOptions client;
  client.Register(infer);
  std::string mode = "e2e", generator_spec = "oracle", raw_path;
  infer->add_option("--mode", mode)->check(CLI::IsMember({"e2e", "pipeline", "gold-eae"}))->capture_default_str();
  infer->add_option("--generator", generator_spec, "oracle[:drop=P,recase=P,garble=P,seed=N], http:URL or proc:CMD")
      ->capture_default_str();
  infer->add_option("--raw", raw_path, "Raw generations (default <out>.raw.jsonl)");

  CLI::App *decode = app.add_subcommand("decode", "Decode a saved raw-generation file");
  add_ontology(decode);
  add_corpus(decode, true);
  add_out(decode);
  PromptOptions decode_prompt;
  decode_prompt.Register(decode, false);
  std::string decode_raw;
  decode->add_option("--raw", decode_raw, "Raw generations")->required()->check(CLI::ExistingFile);

  CLI::App *score = app.add_subcommand("score", "Score predictions against gold");
  add_ontology(score);
  score->add_option("--gold", corpus_path, "Gold corpus")->required()->check(CLI::ExistingFile);
  std::vector<std::string> pred_paths, labels, restrict_types;
  std::string score_format = "text", score_out;
  score->add_option("--pred", pred_paths, "Prediction file(s)")->required()->check(CLI::ExistingFile);
  score->add_option("--label", labels, "Row label per prediction file");
  score->add_option("--restrict-types", restrict_types, "Score only these event types (comma separated)");
  score->add_option("--format", score_format)->check(CLI::IsMember({"text", "csv", "json"}))->capture_default_str();
  score->add_option("--out", score_out, "Report file (default stdout)");

  CLI::App *baseline = app.add_subcommand("baseline", "Keyword-matching event detection baselines");
  add_ontology(baseline);
  add_corpus(baseline, true);
  add_out(baseline);
  std::string method = "matching", lemma_path;
  baseline->add_option("--method", method)->check(CLI::IsMember({"matching", "lemma"}))->capture_default_str();
  baseline->add_option("--lemmas", lemma_path, "Lemma table (TSV)")->check(CLI::ExistingFile);

  CLI::App *convert = app.add_subcommand("convert", "Convert OneIE-style records to the corpus format");
  add_ontology(convert);
  std::string convert_in;
  convert->add_option("--input", convert_in, "OneIE JSON Lines")->required()->check(CLI::ExistingFile);
  add_out(convert);

  CLI::App *rerun = app.add_subcommand("rerun", "Repeat the run recorded in a manifest");
  std::string manifest_path;
  rerun->add_option("manifest", manifest_path)->required()->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  evtgen_set_warning_handler(
      [](const char *msg, void *) { std::cerr << "warning: " << msg << "\n"; }, nullptr);

  if (rerun->parsed()) {
    std::ifstream in(manifest_path);
    json doc;
    try {
      doc = json::parse(in);
    } catch (const json::exception &e) {
      throw Failure{1, "manifest " + manifest_path + ": " + e.what()};
    }
    std::vector<std::string> saved;
    try {
      saved = doc.at("argv").get<std::vector<std::string>>();
      if (doc.contains("cwd")) std::filesystem::current_path(doc["cwd"].get<std::string>());
    } catch (const std::exception &e) {
      throw Failure{1, "manifest " + manifest_path + ": " + e.what()};
    }
    std::vector<char *> next;
    std::string self = argv[0];
    next.push_back(self.data());
    for (std::string &a : saved) next.push_back(a.data());
    next.push_back(nullptr);
    return Run(static_cast<int>(next.size() - 1), next.data());
  }

  Ontology ontology;
  LoadOntology(ontology_path, ontology);

  if (validate->parsed()) {
    std::cout << "ontology " << evtgen_ontology_name(ontology.get()) << ": "
              << evtgen_ontology_size(ontology.get()) << " event types ok\n";
    if (!corpus_path.empty()) {
      Corpus corpus;
      LoadCorpus(corpus_path, ontology, corpus);
      std::cout << "corpus " << corpus_path << ": " << evtgen_corpus_size(corpus.get()) << " sentences ok\n";
    }
    return 0;
  }

  if (stats->parsed()) {
    Corpus corpus;
    LoadCorpus(corpus_path, ontology, corpus);
    evtgen_stats s;
    Check(evtgen_corpus_stats(corpus.get(), &s), "stats");
    if (stats_format == "json") {
      json doc = {{"docs", s.docs},   {"sents", s.sents},         {"events", s.events},
                  {"event_types", s.event_types}, {"args", s.args}, {"arg_types", s.arg_types}};
      std::cout << doc.dump(2) << "\n";
    } else {
      std::printf("%-8s %-8s %-8s %-12s %-8s %-10s\n", "docs", "sents", "events", "event_types", "args",
                  "arg_types");
      std::printf("%-8zu %-8zu %-8zu %-12zu %-8zu %-10zu\n", s.docs, s.sents, s.events, s.event_types,
                  s.args, s.arg_types);
    }
    return 0;
  }

  Manifest manifest(app.get_subcommands().front(), args);
  if (config_opt->count() > 0) manifest.Input("config", config_opt->as<std::string>());
  manifest.Input("ontology", ontology_path);

  if (convert->parsed()) {
    Corpus corpus;
    Check(evtgen_corpus_convert_oneie(convert_in.c_str(), ontology.get(), corpus.out()), "convert");
    Check(evtgen_corpus_save(corpus.get(), out_path.c_str()), "write");
    manifest.Input("input", convert_in);
    manifest.Output(out_path);
    manifest.Write(out_path);
    return 0;
  }

  if (score->parsed()) {
    Corpus gold;
    LoadCorpus(corpus_path, ontology, gold);
    manifest.Input("gold", corpus_path);
    if (!labels.empty() && labels.size() != pred_paths.size()) {
      throw Failure{2, "--label must be given once per --pred"};
    }
    if (labels.empty()) labels = pred_paths;
    std::vector<Predictions> runs(pred_paths.size());
    std::vector<const evtgen_predictions *> run_ptrs;
    for (size_t i = 0; i < pred_paths.size(); ++i) {
      Check(evtgen_predictions_load(pred_paths[i].c_str(), runs[i].out()), "predictions " + pred_paths[i]);
      run_ptrs.push_back(runs[i].get());
      manifest.Input("pred" + std::to_string(i), pred_paths[i]);
    }
    std::vector<std::string> types = SplitList(restrict_types);
    std::vector<const char *> type_ptrs = CStrings(types);
    const char *const *types_arg = restrict_types.empty() ? nullptr : type_ptrs.data();
    std::string text;
    json rows = json::array();
    size_t structural = 0;
    for (size_t i = 0; i < runs.size(); ++i) {
      Report report;
      Check(evtgen_score(runs[i].get(), gold.get(), types_arg, types.size(), report.out()), "score");
      structural += evtgen_score_structural_errors(report.get());
      if (score_format == "json") {
        json doc = json::parse(TakeString([&] {
          char *s = nullptr;
          Check(evtgen_score_to_json(report.get(), &s), "score");
          return s;
        }()));
        json row = {{"label", labels[i]}};
        row.update(doc);
        rows.push_back(std::move(row));
      }
    }
    if (score_format == "json") {
      text = rows.dump(2) + "\n";
    } else {
      std::vector<const char *> label_ptrs = CStrings(labels);
      char *table = nullptr;
      Check(evtgen_score_table(run_ptrs.data(), label_ptrs.data(), run_ptrs.size(), gold.get(), types_arg,
                               types.size(), score_format == "csv", &table),
            "score");
      text = TakeString(table);
    }
    WriteText(score_out, text);
    if (structural > 0) {
      std::cerr << "warning: " << structural
                << " structural errors (unknown sentences or invalid spans) counted as false positives\n";
    }
    if (!score_out.empty() && score_out != "-") {
      manifest.Output(score_out);
      manifest.Write(score_out);
    }
    return 0;
  }

  Corpus corpus;
  LoadCorpus(corpus_path, ontology, corpus);
  manifest.Input("corpus", corpus_path);

  if (split->parsed()) {
    Corpus result;
    char *report = nullptr;
    if (n_common || k_shots) {
      evtgen_fewshot_config cfg{n_common.value_or(5), k_shots.value_or(0), seed};
      Check(evtgen_fewshot(corpus.get(), ontology.get(), &cfg, result.out(), &report), "split");
    } else {
      if (!(proportion > 0.0)) throw Failure{2, "--proportion must be in (0, 1]"};
      evtgen_split_config cfg{proportion, seed, random_split ? 0 : 1};
      Check(evtgen_split(corpus.get(), &cfg, result.out(), &report), "split");
    }
    manifest.result() = json::parse(TakeString(report));
    Check(evtgen_corpus_save(result.get(), out_path.c_str()), "write");
    manifest.Output(out_path);
    manifest.Write(out_path);
    return 0;
  }

  if (build->parsed()) {
    evtgen_prompt_config prompt = build_prompt.Config();
    Instances instances;
    if (build_kind == "train") {
      evtgen_training_config t;
      evtgen_training_config_init(&t);
      t.m = m;
      t.seed = build_seed;
      t.resample_each_epoch = fixed_negatives ? 0 : 1;
      t.epoch = epoch;
      Check(evtgen_build_training_set(corpus.get(), ontology.get(), &prompt, &t, instances.out()),
            "build-data");
    } else {
      Check(evtgen_build_inference_set(corpus.get(), ontology.get(), &prompt, instances.out()), "build-data");
    }
    Check(evtgen_instances_save(instances.get(), out_path.c_str()), "write");
    manifest.result() = {{"instances", evtgen_instances_size(instances.get())}};
    manifest.Output(out_path);
    manifest.Write(out_path);
    return 0;
  }

  if (infer->parsed()) {
    evtgen_prompt_config prompt = infer_prompt.Config();
    GeneratorH generator;
    MakeGenerator(generator_spec, corpus, ontology, prompt, client, generator);
    if (raw_path.empty()) raw_path = out_path + ".raw.jsonl";
    evtgen_run_config run{mode == "pipeline"   ? EVTGEN_MODE_PIPELINE
                          : mode == "gold-eae" ? EVTGEN_MODE_GOLD_EAE
                                               : EVTGEN_MODE_E2E,
                          jobs, raw_path.c_str()};
    Predictions predictions;
    Check(evtgen_run(corpus.get(), ontology.get(), generator.get(), &prompt, &run, predictions.out()), "infer");
    Check(evtgen_predictions_save(predictions.get(), out_path.c_str()), "write");
    manifest.result() = {{"sentences", evtgen_predictions_size(predictions.get())},
                         {"events", evtgen_predictions_event_count(predictions.get())},
                         {"diagnostics", evtgen_predictions_diagnostic_count(predictions.get())}};
    manifest.Output(raw_path);
    manifest.Output(out_path);
    manifest.Write(out_path);
    return 0;
  }

  if (decode->parsed()) {
    evtgen_prompt_config prompt = decode_prompt.Config();
    Predictions predictions;
    Check(evtgen_decode_file(decode_raw.c_str(), corpus.get(), ontology.get(), &prompt, jobs,
                             predictions.out()),
          "decode");
    Check(evtgen_predictions_save(predictions.get(), out_path.c_str()), "write");
    manifest.Input("raw", decode_raw);
    manifest.result() = {{"sentences", evtgen_predictions_size(predictions.get())},
                         {"events", evtgen_predictions_event_count(predictions.get())},
                         {"diagnostics", evtgen_predictions_diagnostic_count(predictions.get())}};
    manifest.Output(out_path);
    manifest.Write(out_path);
    return 0;
  }

  if (baseline->parsed()) {
    Predictions predictions;
    Check(evtgen_baseline(corpus.get(), ontology.get(),
                          method == "lemma" ? EVTGEN_BASELINE_LEMMA : EVTGEN_BASELINE_MATCHING,
                          lemma_path.empty() ? nullptr : lemma_path.c_str(), predictions.out()),
          "baseline");
    Check(evtgen_predictions_save(predictions.get(), out_path.c_str()), "write");
    if (!lemma_path.empty()) manifest.Input("lemmas", lemma_path);
    manifest.Output(out_path);
    manifest.Write(out_path);
    return 0;
  }
  return 0;
}

}  // namespace
