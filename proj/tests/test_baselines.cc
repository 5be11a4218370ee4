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

#include <gtest/gtest.h>

#include <algorithm>
#include <sstream>

#include "common.h"
#include "support/synth.h"

namespace evtgen {
namespace {

const char kOntology[] = R"({
  "roles": ["Attacker", "Person"],
  "events": [{
    "type": "Conflict:Attack",
    "definition": "An attack.",
    "keywords": ["war", "attack", "car bomb"],
    "template": "somebody attacked.",
    "slots": [{"placeholder": "somebody", "role": "Attacker"}]
  }, {
    "type": "Movement:Transport",
    "definition": "A movement.",
    "keywords": ["go", "travel", "arrive"],
    "template": "somebody moved.",
    "slots": [{"placeholder": "somebody", "role": "Person"}]
  }]
})";

class BaselinesTest : public ::testing::Test {
 protected:
  void SetUp() override {
    SetWarningSink([](const std::string &) {});
    ontology_ = ParseOntology(kOntology);
  }
  void TearDown() override { SetWarningSink(nullptr); }

  static SentenceRecord Sentence(std::vector<std::string> tokens) {
    SentenceRecord s;
    s.doc_id = "d";
    s.sent_id = "d-0";
    s.tokens = std::move(tokens);
    return s;
  }

  Ontology ontology_;
};

TEST_F(BaselinesTest, MatchingFindsKeyword) {
  std::vector<EventPrediction> p =
      MatchingED(Sentence({"The", "War", "in", "Iraq", "ended"}), ontology_);
  ASSERT_EQ(p.size(), 1u);
  EXPECT_EQ(p[0].event_type, "Conflict:Attack");
  EXPECT_EQ(p[0].trigger, (TokenSpan{1, 2}));
  EXPECT_EQ(p[0].trigger_text, "War");
  EXPECT_TRUE(p[0].arguments.empty());
}

TEST_F(BaselinesTest, RepeatedKeywordGivesTwoPredictions) {
  std::vector<EventPrediction> p =
      MatchingED(Sentence({"war", "after", "war", "and", "a", "car", "bomb"}), ontology_);
  ASSERT_EQ(p.size(), 3u);
  std::vector<TokenSpan> spans;
  for (const EventPrediction &e : p) spans.push_back(e.trigger);
  std::sort(spans.begin(), spans.end());
  EXPECT_EQ(spans, (std::vector<TokenSpan>{{0, 1}, {2, 3}, {5, 7}}));
}

TEST_F(BaselinesTest, MatchingIsTokenAligned) {
  EXPECT_TRUE(MatchingED(Sentence({"they", "attacked", "warships"}), ontology_).empty());
  EXPECT_TRUE(MatchingED(Sentence({"car", "park", "bomb"}), ontology_).empty());
}

TEST_F(BaselinesTest, NoKeywordsNoPredictions) {
  Ontology empty;
  SentenceRecord s = Sentence({"war", "attack", "go"});
  EXPECT_TRUE(MatchingED(s, empty).empty());
  EXPECT_TRUE(LemmaED(s, empty, {}).empty());
}

TEST_F(BaselinesTest, LemmaRules) {
  LemmaTable t;
  t.Add("went", "go");
  EXPECT_EQ(t.Lemma("attacked"), "attack");
  EXPECT_EQ(t.Lemma("attacks"), "attack");
  EXPECT_EQ(t.Lemma("attacking"), "attack");
  EXPECT_EQ(t.Lemma("Went"), "go");
  EXPECT_EQ(t.Lemma("goes"), "goe");
  EXPECT_EQ(t.Lemma("boxes"), "box");
  EXPECT_EQ(t.Lemma("wars"), "war");
  EXPECT_EQ(t.Lemma("bus"), "bus");
}

TEST_F(BaselinesTest, LemmaMatchesInflections) {
  LemmaTable t;
  t.Add("went", "go");
  SentenceRecord s = Sentence({"They", "attacked", "and", "went", "home"});
  EXPECT_TRUE(MatchingED(s, ontology_).empty());
  std::vector<EventPrediction> p = LemmaED(s, ontology_, t);
  ASSERT_EQ(p.size(), 2u);
  std::sort(p.begin(), p.end(), [](const auto &a, const auto &b) { return a.trigger < b.trigger; });
  EXPECT_EQ(p[0].event_type, "Conflict:Attack");
  EXPECT_EQ(p[0].trigger, (TokenSpan{1, 2}));
  EXPECT_EQ(p[1].event_type, "Movement:Transport");
  EXPECT_EQ(p[1].trigger, (TokenSpan{3, 4}));
}

TEST_F(BaselinesTest, LemmaIsSupersetOfMatching) {
  Ontology o = testing::SyntheticOntology({});
  Corpus c = testing::SyntheticCorpus(o, {});
  LemmaTable t;
  size_t matched = 0;
  for (const SentenceRecord &s : c.sentences) {
    std::vector<EventPrediction> m = MatchingED(s, o);
    std::vector<EventPrediction> l = LemmaED(s, o, t);
    matched += m.size();
    for (const EventPrediction &e : m) {
      EXPECT_NE(std::find(l.begin(), l.end(), e), l.end());
    }
  }
  EXPECT_GT(matched, 0u);
}

TEST_F(BaselinesTest, ReadTable) {
  std::istringstream in("# comment\nwent\tgo\n\nBorn\tbear\n");
  LemmaTable t = LemmaTable::Read(in);
  EXPECT_EQ(t.size(), 2u);
  EXPECT_EQ(t.Lemma("born"), "bear");
  std::istringstream bad("went go\n");
  EXPECT_THROW(LemmaTable::Read(bad), Error);
}

TEST_F(BaselinesTest, RunBaselineCoversEverySentence) {
  Ontology o = testing::SyntheticOntology({});
  Corpus c = testing::SyntheticCorpus(o, {});
  std::vector<PredictionRecord> r = RunBaseline(c, o, BaselineMethod::kMatching);
  ASSERT_EQ(r.size(), c.sentences.size());
  ScoreReport score = Score(r, c);
  EXPECT_GT(score[Metric::kTriC].recall(), 0.99);
  EXPECT_FALSE(score.structural_errors());
}

}  // namespace
}  // namespace evtgen
