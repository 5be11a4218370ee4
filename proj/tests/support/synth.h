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

#ifndef EVTGEN_TESTS_SUPPORT_SYNTH_H_
#define EVTGEN_TESTS_SUPPORT_SYNTH_H_

#include <cstdint>
#include <string>
#include <vector>

#include "corpus.h"
#include "ontology.h"
#include "rng.h"
#include "support/printers.h"

namespace evtgen::testing {

// Pronounceable lowercase words built from consonant-vowel syllables. They
// never end in e, s, d or g, so the lemma rule leaves them alone.
std::string RandomWord(Rng &rng);

struct SynthOntologyConfig {
  size_t num_types = 12;
  size_t min_roles = 2;
  size_t max_roles = 5;
  uint64_t seed = 1;
};

// Types "Kind<i>:Sub", keywords are random words, EAE templates are built
// from "some <role>" placeholders with fixed connector text.
Ontology SyntheticOntology(const SynthOntologyConfig &config);

struct SynthCorpusConfig {
  size_t docs = 50;
  size_t min_sents = 1;
  size_t max_sents = 6;
  size_t max_events = 3;         // per sentence
  double event_prob = 0.7;       // chance a sentence has any event
  size_t max_args_per_role = 2;  // two args share a role via the and-joiner
  double zipf = 0.0;             // > 0 skews type frequencies
  uint64_t seed = 7;
};

// Every token within a sentence is distinct, so every gold text occurs
// exactly once in its sentence. Triggers are the type's keywords; no other
// token is a keyword.
Corpus SyntheticCorpus(const Ontology &ontology, const SynthCorpusConfig &config);

// Random sentence with `num_tokens` tokens drawn from a small vocabulary
// so strings repeat.
Tokens RepetitiveTokens(Rng &rng, size_t num_tokens, size_t vocabulary);

std::string DataPath(const std::string &name);

}  // namespace evtgen::testing

#endif  // EVTGEN_TESTS_SUPPORT_SYNTH_H_
