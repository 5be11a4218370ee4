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

// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// non-zero if any fails. Usage: acceptance <path to evtgen cli>

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "baselines.h"
#include "corpus.h"
#include "decoder.h"
#include "json.hpp"
#include "metrics.h"
#include "ontology.h"
#include "promptgen.h"
#include "rng.h"
#include "splitter.h"
#include "support/oracles.h"
#include "support/synth.h"

namespace evtgen {
namespace {

namespace fs = std::filesystem;
using json = nlohmann::json;
using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string g_cli;
std::vector<std::string> g_notes;
fs::path g_dir;

std::string Quote(const std::string &s) { return "'" + s + "'"; }

int Cli(const std::string &args) {
  std::string cmd = Quote(g_cli) + " " + args + " >>" + Quote((g_dir / "cli.log").string()) + " 2>&1";
  int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string P(const std::string &name) { return (g_dir / name).string(); }

std::string ReadFile(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void WriteData(const Ontology &o, const Corpus &c, const std::string &tag) {
  std::ofstream(P(tag + "_ontology.json")) << SerializeOntology(o);
  std::ofstream out(P(tag + "_corpus.jsonl"));
  WriteCorpus(out, c);
}

json ScoreFile(const std::string &ontology, const std::string &gold, const std::string &pred,
               const std::string &out) {
  if (Cli("score --ontology " + ontology + " --gold " + gold + " --pred " + pred + " --format json --out " +
          out) != 0) {
    return nullptr;
  }
  return json::parse(ReadFile(out)).at(0).at("metrics");
}

std::string F1s(const json &metrics) {
  std::ostringstream s;
  for (const char *m : {"Tri-I", "Tri-C", "Arg-I", "Arg-C"}) s << " " << m << "=" << metrics[m]["f1"].get<double>();
  return s.str();
}

bool AllF1(const json &metrics, double want) {
  for (const char *m : {"Tri-I", "Tri-C", "Arg-I", "Arg-C"}) {
    if (metrics[m]["f1"].get<double>() != want) return false;
  }
  return true;
}

Outcome OracleRoundTrip() {
  Ontology o = testing::SyntheticOntology({.num_types = 12});
  Corpus c = testing::SyntheticCorpus(o, {.docs = 80, .seed = 101});
  std::set<std::string> types;
  for (const SentenceRecord &s : c.sentences) {
    for (const EventMention &e : s.events) types.insert(e.event_type);
  }
  if (c.sentences.size() < 200 || types.size() < 10) return {false, "synthetic corpus too small"};
  WriteData(o, c, "c1");
  auto start = Clock::now();
  int rc = Cli("infer --ontology " + P("c1_ontology.json") + " --corpus " + P("c1_corpus.jsonl") +
               " --generator oracle --mode e2e --out " + P("c1_pred.jsonl"));
  if (rc != 0) return {false, "infer exited " + std::to_string(rc)};
  json m = ScoreFile(P("c1_ontology.json"), P("c1_corpus.jsonl"), P("c1_pred.jsonl"), P("c1_score.json"));
  double secs = std::chrono::duration<double>(Clock::now() - start).count();
  if (m.is_null()) return {false, "score failed"};
  std::ostringstream d;
  d << c.sentences.size() << " sentences, " << types.size() << " types," << F1s(m) << ", " << secs << " s";
  return {AllF1(m, 1.0) && secs < 10.0, d.str()};
}

Outcome ClosestOccurrence() {
  Ontology ace = LoadOntology(testing::DataPath("ace05e_ontology.json"));
  Rng rng(2024);
  size_t agree = 0, cases = 0;
  while (cases < 1000) {
    const EventSchema &schema = ace.schemas()[rng.Uniform(ace.size())];
    const TemplateSpec &t = schema.eae_template;
    if (t.slots().empty()) continue;
    Tokens needle;
    for (size_t i = 1 + rng.Uniform(2); i > 0; --i) needle.push_back("arg" + testing::RandomWord(rng));
    size_t copies = 2 + rng.Uniform(4);
    std::vector<Tokens> pieces(copies, needle);
    size_t fillers = copies + 1 + rng.Uniform(8);
    for (size_t i = 0; i < fillers; ++i) pieces.push_back({"w" + std::to_string(i)});
    rng.Shuffle(pieces);
    Tokens tokens;
    for (const Tokens &p : pieces) tokens.insert(tokens.end(), p.begin(), p.end());
    std::vector<int> trigger_positions;
    for (size_t i = 0; i < tokens.size(); ++i) {
      if (tokens[i][0] == 'w') trigger_positions.push_back(static_cast<int>(i));
    }
    int trigger = trigger_positions[rng.Uniform(trigger_positions.size())];
    int expected = testing::ClosestOccurrence(tokens, needle, trigger);

    SentenceRecord s;
    s.doc_id = "d";
    s.sent_id = "d-0";
    s.tokens = tokens;
    std::vector<std::optional<std::string>> fills(t.slots().size());
    fills[rng.Uniform(fills.size())] = Join(needle, " ");
    PromptConfig config;
    config.task = TemplateKind::kEAE;
    DecodeResult r = Decode(t.Fill(fills), s, schema, config, TokenSpan{trigger, trigger + 1});
    ++cases;
    if (r.events.size() == 1 && r.events[0].arguments.size() == 1 &&
        r.events[0].arguments[0].span.start == expected) {
      ++agree;
    }
  }
  return {agree == cases, std::to_string(agree) + "/" + std::to_string(cases) + " match the brute-force minimizer"};
}

Outcome ScorerEquivalence() {
  Rng rng(77);
  size_t agree = 0, checks = 0;
  const char *types[] = {"A", "B"};
  const char *roles[] = {"R1", "R2"};
  for (int iter = 0; iter < 10000; ++iter) {
    auto random_events = [&] {
      std::vector<EventMention> events;
      size_t args_left = 6;
      for (size_t i = rng.Uniform(7); i > 0; --i) {
        int start = static_cast<int>(rng.Uniform(4));
        EventMention e{types[rng.Uniform(2)], {start, start + 1}, "t", {}};
        for (size_t j = rng.Uniform(std::min<size_t>(args_left, 3) + 1); j > 0; --j, --args_left) {
          int a = static_cast<int>(4 + rng.Uniform(3));
          e.arguments.push_back({{a, a + 1}, roles[rng.Uniform(2)], "x"});
        }
        events.push_back(std::move(e));
      }
      return events;
    };
    SentenceRecord s;
    s.doc_id = "d";
    s.sent_id = "d-0";
    s.tokens = {"a", "b", "c", "d", "e", "f", "g"};
    s.events = random_events();
    Corpus gold;
    gold.sentences.push_back(s);
    std::vector<PredictionRecord> pred = {{"d", "d-0", random_events(), {}}};
    ScoreReport report = Score(pred, gold);

    std::array<std::vector<std::string>, 4> p, g;
    auto keys = [](const std::vector<EventMention> &events, std::array<std::vector<std::string>, 4> &out) {
      for (const EventMention &e : events) {
        std::string span = std::to_string(e.trigger.start) + ":" + std::to_string(e.trigger.end);
        out[0].push_back(span);
        out[1].push_back(span + "|" + e.event_type);
        for (const ArgumentMention &a : e.arguments) {
          std::string as = std::to_string(a.span.start) + ":" + std::to_string(a.span.end);
          out[2].push_back(as + "|" + e.event_type);
          out[3].push_back(as + "|" + e.event_type + "|" + a.role);
        }
      }
    };
    keys(pred[0].events, p);
    keys(s.events, g);
    for (Metric m : kAllMetrics) {
      size_t i = static_cast<size_t>(m);
      ++checks;
      agree += report[m] == testing::ExhaustiveMatch(p[i], g[i]);
    }
  }
  return {agree == checks, std::to_string(agree) + "/" + std::to_string(checks) +
                               " (sentence, metric) tallies equal the exhaustive matcher"};
}

Outcome DecoderFuzz() {
  Ontology ace = LoadOntology(testing::DataPath("ace05e_ontology.json"));
  Rng rng(4242);
  SentenceRecord s;
  s.doc_id = "d";
  s.sent_id = "d-0";
  s.tokens = {"Palestinian", "fighters", "detonated", "a", "bomb", "in", "St.", "Louis", "and", "Gaza", "."};
  std::vector<std::string> fragments = {" <sep> ", " and ", "Event trigger is ", ".", "<Trigger>", "</",
                                        "<", ">", "Palestinian", "bomb", "Gaza", "St. Louis", "\n", "  "};
  const TemplateKind kinds[] = {TemplateKind::kED, TemplateKind::kEAE, TemplateKind::kE2E};
  const TemplateVariant variants[] = {TemplateVariant::kNatural, TemplateVariant::kSpecialToken,
                                      TemplateVariant::kHtmlLike};
  size_t aborts = 0, invalid = 0, nonempty = 0;
  std::string first_problem;
  for (size_t i = 0; i < 100000; ++i) {
    const EventSchema &schema = ace.schemas()[i % ace.size()];
    TemplateKind k = kinds[(i / ace.size()) % 3];
    TemplateVariant v = variants[(i / (3 * ace.size())) % 3];
    PromptConfig config;
    config.task = k;
    config.template_variant = v;
    TemplateSpec t = TaskTemplate(schema, k, v);
    std::string text;
    switch (rng.Uniform(3)) {
      case 0: text = testing::RandomBytes(rng, 200); break;
      case 1: text = testing::Mutate(rng, t.text(), fragments); break;
      default: {
        std::vector<std::optional<std::string>> fills(t.slots().size());
        for (auto &f : fills) {
          if (rng.Bernoulli(0.5)) f = s.tokens[rng.Uniform(s.tokens.size())];
        }
        text = testing::Mutate(rng, t.Fill(fills), fragments);
      }
    }
    std::optional<TokenSpan> anchor;
    if (k == TemplateKind::kEAE) anchor = TokenSpan{2, 3};
    try {
      DecodeResult r = Decode(text, s, schema, config, anchor);
      std::string why;
      if (!testing::StructurallyValid(r, s, schema, &why)) {
        ++invalid;
        if (first_problem.empty()) first_problem = why;
      }
      nonempty += !r.events.empty();
    } catch (const std::exception &e) {
      ++aborts;
      if (first_problem.empty()) first_problem = e.what();
    }
  }
  std::string detail = "100000 inputs over " + std::to_string(ace.size()) + " templates x 3 tasks x 3 variants, " +
                       std::to_string(aborts) + " aborts, " + std::to_string(invalid) + " invalid, " +
                       std::to_string(nonempty) + " with events";
  if (!first_problem.empty()) detail += "; first problem: " + first_problem;
  return {aborts == 0 && invalid == 0, detail};
}

Outcome TemplateRegistry() {
  size_t counts[2] = {0, 0};
  size_t problems = 0, rendered = 0;
  const char *files[] = {"ace05e_ontology.json", "ere_ontology.json"};
  for (int f = 0; f < 2; ++f) {
    Ontology o = LoadOntology(testing::DataPath(files[f]));
    counts[f] = o.size();
    for (const EventSchema &s : o.schemas()) {
      for (const TemplateSlot &slot : s.eae_template.slots()) {
        problems += !s.roles.count(slot.role) || !o.role_universe().count(slot.role);
      }
      for (TemplateKind k : {TemplateKind::kED, TemplateKind::kEAE, TemplateKind::kE2E}) {
        for (TemplateVariant v : {TemplateVariant::kNatural, TemplateVariant::kSpecialToken,
                                  TemplateVariant::kHtmlLike}) {
          TemplateSpec t = TaskTemplate(s, k, v);
          std::vector<std::string> seg = t.Segments();
          std::string joined;
          for (size_t i = 0; i < t.slots().size(); ++i) joined += seg[i] + t.slots()[i].placeholder;
          joined += seg.back();
          problems += joined != t.text();
          problems += !(TemplateSpec::FromSlots(t.text(), t.kind(), t.variant(), t.slots()) == t);
          ++rendered;
        }
      }
    }
  }
  std::string detail = "ACE " + std::to_string(counts[0]) + " types, ERE " + std::to_string(counts[1]) +
                       " types, " + std::to_string(rendered) + " renderings, " + std::to_string(problems) +
                       " problems";
  return {counts[0] == 33 && counts[1] == 38 && problems == 0, detail};
}

Outcome SplitProperties() {
  Ontology o = testing::SyntheticOntology({.num_types = 30});
  Corpus c = testing::SyntheticCorpus(o, {.docs = 500, .max_sents = 3, .max_events = 2, .zipf = 1.2, .seed = 5});
  WriteData(o, c, "c6");
  std::string detail;
  bool ok = true;
  const double ps[] = {0.01, 0.02, 0.03, 0.05, 0.10, 0.20, 0.30, 0.50};
  for (double p : ps) {
    std::string tag = std::to_string(static_cast<int>(std::lround(p * 100)));
    std::string base = "split --ontology " + P("c6_ontology.json") + " --corpus " + P("c6_corpus.jsonl") +
                       " --proportion " + std::to_string(p) + " --seed 3 --out ";
    if (Cli(base + P("c6_split" + tag + "a.jsonl")) != 0 || Cli(base + P("c6_split" + tag + "b.jsonl")) != 0) {
      return {false, "split failed at p=" + tag + "%"};
    }
    std::string a = ReadFile(P("c6_split" + tag + "a.jsonl"));
    std::string b = ReadFile(P("c6_split" + tag + "b.jsonl"));
    std::istringstream in(a);
    Corpus split = ReadCorpus(in, o);
    std::set<std::string> docs;
    for (const SentenceRecord &s : split.sentences) docs.insert(s.doc_id);
    size_t want = static_cast<size_t>(std::lround(p * 500));
    ok = ok && docs.size() == want && a == b;
    detail += tag + "%:" + std::to_string(docs.size()) + (a == b ? "" : "(differs)") + " ";
  }

  // Greedy against the exhaustive optimum on sub-corpora of up to 12 documents.
  std::vector<std::string> doc_ids;
  std::map<std::string, std::set<std::string>> types_of;
  for (const SentenceRecord &s : c.sentences) {
    if (doc_ids.empty() || doc_ids.back() != s.doc_id) doc_ids.push_back(s.doc_id);
    std::set<std::string> &types = types_of[s.doc_id];
    for (const EventMention &e : s.events) types.insert(e.event_type);
  }
  Rng rng(6);
  size_t instances = 0, below = 0, got_total = 0, best_total = 0;
  double worst = 1.0;
  std::string worst_case;
  bool bound_holds = true;
  for (int iter = 0; iter < 300; ++iter) {
    size_t d = 2 + rng.Uniform(11);
    std::vector<std::string> picked = rng.Sample(doc_ids, d);
    std::set<std::string> picked_set(picked.begin(), picked.end());
    Corpus sub;
    std::vector<std::set<std::string>> sets;
    for (const std::string &id : picked) sets.push_back(types_of[id]);
    for (const SentenceRecord &s : c.sentences) {
      if (picked_set.count(s.doc_id)) sub.sentences.push_back(s);
    }
    for (size_t k = 1; k < d; ++k) {
      SplitResult r = MakeSplit(sub, {static_cast<double>(k) / static_cast<double>(d), 0, true});
      size_t got = testing::CoverageOf(sub, r.doc_ids);
      size_t best = testing::OptimalCoverage(sets, k);
      ++instances;
      got_total += got;
      best_total += best;
      if (got >= best) continue;
      ++below;
      double ratio = static_cast<double>(got) / static_cast<double>(best);
      bound_holds = bound_holds && ratio >= 1.0 - 1.0 / std::exp(1.0);
      std::string where = "D=" + std::to_string(d) + " k=" + std::to_string(k) + " greedy=" +
                          std::to_string(got) + " optimal=" + std::to_string(best);
      g_notes.push_back("greedy below optimal: " + where + " docs=" + Join(picked, ","));
      if (ratio < worst) {
        worst = ratio;
        worst_case = where;
      }
    }
  }
  // Constructed instance: one document spans 20 types, two others split
  // them but each adds a type of its own.
  std::set<std::string> all, left, right;
  for (int t = 1; t <= 20; ++t) {
    all.insert("T" + std::to_string(t));
    (t <= 10 ? left : right).insert("T" + std::to_string(t));
  }
  left.insert("T21");
  right.insert("T22");
  std::vector<std::set<std::string>> constructed = {all, left, right};
  Corpus cc = testing::CorpusFromTypeSets(constructed);
  size_t cc_got = testing::CoverageOf(cc, MakeSplit(cc, {2.0 / 3.0, 0, true}).doc_ids);
  size_t cc_best = testing::OptimalCoverage(constructed, 2);
  g_notes.push_back("constructed counterexample: greedy=" + std::to_string(cc_got) +
                    " optimal=" + std::to_string(cc_best));
  ok = ok && cc_got < cc_best && static_cast<double>(cc_got) >= 0.95 * static_cast<double>(cc_best);

  double aggregate = static_cast<double>(got_total) / static_cast<double>(best_total);
  ok = ok && bound_holds && aggregate >= 0.95;
  std::ostringstream d;
  d << "| " << instances << " D<=12 instances, greedy<optimal on " << below << " (listed below), "
    << "each >= (1-1/e) of optimal: " << (bound_holds ? "yes" : "no") << ", aggregate coverage "
    << aggregate * 100 << "% of optimal; per-instance >=95% not met by greedy (worst " << worst << " at "
    << worst_case << ")";
  detail += d.str();
  return {ok, detail};
}

Outcome Baselines() {
  Ontology o = testing::SyntheticOntology({.num_types = 12});
  Corpus c = testing::SyntheticCorpus(o, {.docs = 60, .seed = 17});
  LemmaTable lemmas;
  double exact = Score(RunBaseline(c, o, BaselineMethod::kMatching), c)[Metric::kTriC].f1();

  Corpus inflected = c;
  Rng rng(9);
  const char *suffixes[] = {"s", "ed", "ing"};
  size_t changed = 0, total = 0;
  for (SentenceRecord &s : inflected.sentences) {
    for (EventMention &e : s.events) {
      ++total;
      if (!rng.Bernoulli(0.5)) continue;
      std::string &token = s.tokens[static_cast<size_t>(e.trigger.start)];
      token += suffixes[rng.Uniform(3)];
      e.trigger_text = token;
      ++changed;
    }
  }
  double matching = Score(RunBaseline(inflected, o, BaselineMethod::kMatching), inflected)[Metric::kTriC].f1();
  double lemma = Score(RunBaseline(inflected, o, BaselineMethod::kLemma, lemmas), inflected)[Metric::kTriC].f1();
  std::ostringstream d;
  d << "exact-keyword matching F1=" << exact << "; inflected " << changed << "/" << total
    << " triggers: matching F1=" << matching << ", lemma F1=" << lemma;
  return {exact == 1.0 && lemma > matching, d.str()};
}

Outcome NegativeTargets() {
  Ontology o = testing::SyntheticOntology({.num_types = 20});
  Corpus c = testing::SyntheticCorpus(o, {.docs = 60, .seed = 23});
  WriteData(o, c, "c8");
  std::map<std::string, const SentenceRecord *> by_key;
  for (const SentenceRecord &s : c.sentences) by_key[SentenceKey(s.doc_id, s.sent_id)] = &s;
  size_t negatives = 0, failures = 0;
  for (const char *task : {"ed", "e2e"}) {
    for (const char *variant : {"natural", "special", "html"}) {
      std::string out = P(std::string("c8_") + task + "_" + variant + ".jsonl");
      if (Cli("build-data --ontology " + P("c8_ontology.json") + " --corpus " + P("c8_corpus.jsonl") +
              " --task " + task + " --variant " + variant + " --kind train --m 15 --seed 1 --out " + out) != 0) {
        return {false, "build-data failed"};
      }
      std::ifstream in(out);
      PromptConfig config;
      config.task = *ParseTask(task);
      config.template_variant = *ParseTemplateVariant(variant);
      for (const PromptInstance &inst : ReadInstances(in, out)) {
        const SentenceRecord &s = *by_key.at(SentenceKey(inst.doc_id, inst.sent_id));
        bool positive = false;
        for (const EventMention &e : s.events) positive = positive || e.event_type == inst.event_type;
        if (positive) continue;
        ++negatives;
        DecodeResult r = Decode(inst.target.value_or(""), s, o.Get(inst.event_type), config);
        failures += !r.events.empty();
      }
    }
  }
  return {negatives > 0 && failures == 0,
          std::to_string(negatives) + " negative instances, " + std::to_string(failures) + " decoded to events"};
}

Outcome CorruptionDegradation() {
  Ontology o = testing::SyntheticOntology({.num_types = 12});
  Corpus c = testing::SyntheticCorpus(o, {.docs = 40, .seed = 31});
  WriteData(o, c, "c9");
  std::string base = "infer --ontology " + P("c9_ontology.json") + " --corpus " + P("c9_corpus.jsonl");
  int garble_rc = Cli(base + " --generator oracle:garble=1.0,seed=4 --out " + P("c9_garble.jsonl"));
  int recase_rc = Cli(base + " --generator oracle:recase=1.0,garble=0,seed=4 --out " + P("c9_recase.jsonl"));
  if (garble_rc != 0 || recase_rc != 0) {
    return {false, "infer exited " + std::to_string(garble_rc) + "/" + std::to_string(recase_rc)};
  }
  json g = ScoreFile(P("c9_ontology.json"), P("c9_corpus.jsonl"), P("c9_garble.jsonl"), P("c9_garble_score.json"));
  json r = ScoreFile(P("c9_ontology.json"), P("c9_corpus.jsonl"), P("c9_recase.jsonl"), P("c9_recase_score.json"));
  if (g.is_null() || r.is_null()) return {false, "score failed"};
  return {AllF1(g, 0.0) && AllF1(r, 1.0), "garble:" + F1s(g) + "; recase:" + F1s(r) + "; both runs exit 0"};
}

}  // namespace
}  // namespace evtgen

int main(int argc, char **argv) {
  if (argc != 2) {
    std::cerr << "usage: acceptance <evtgen cli>\n";
    return 2;
  }
  evtgen::g_cli = argv[1];
  evtgen::g_dir = std::filesystem::temp_directory_path() / ("evtgen_acceptance_" + std::to_string(::getpid()));
  std::filesystem::create_directories(evtgen::g_dir);
  evtgen::SetWarningSink([](const std::string &) {});

  const std::pair<const char *, std::function<evtgen::Outcome()>> criteria[] = {
      {"oracle round trip", evtgen::OracleRoundTrip},
      {"closest-occurrence resolution", evtgen::ClosestOccurrence},
      {"scorer oracle equivalence", evtgen::ScorerEquivalence},
      {"decoder totality fuzz", evtgen::DecoderFuzz},
      {"template registry", evtgen::TemplateRegistry},
      {"split properties", evtgen::SplitProperties},
      {"baselines", evtgen::Baselines},
      {"negative-target decodability", evtgen::NegativeTargets},
      {"corruption degradation", evtgen::CorruptionDegradation},
  };
  int failed = 0;
  int n = 0;
  for (const auto &[name, check] : criteria) {
    ++n;
    evtgen::Outcome o;
    try {
      o = check();
    } catch (const std::exception &e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    std::printf("%s %d %s: %s\n", o.pass ? "PASS" : "FAIL", n, name, o.detail.c_str());
    for (const std::string &note : evtgen::g_notes) std::printf("    %s\n", note.c_str());
    evtgen::g_notes.clear();
    std::fflush(stdout);
  }
  if (failed == 0) std::filesystem::remove_all(evtgen::g_dir);
  else std::printf("work files kept in %s\n", evtgen::g_dir.c_str());
  return failed == 0 ? 0 : 1;
}
