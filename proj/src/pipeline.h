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

#ifndef EVTGEN_SRC_PIPELINE_H_
#define EVTGEN_SRC_PIPELINE_H_

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "corpus.h"
#include "genio.h"
#include "metrics.h"
#include "ontology.h"
#include "promptgen.h"

namespace evtgen {

enum class PipelineMode {
  kE2E,             // one E2E pass
  kPipeline,        // ED pass, then EAE on the predicted triggers
  kGoldTriggerEAE,  // EAE on gold triggers
};

std::optional<PipelineMode> ParsePipelineMode(std::string_view name);
const char *PipelineModeName(PipelineMode mode);

// One generation, kept so decoding can be replayed without the model.
struct RawGeneration {
  PromptInstance instance;
  std::string output;
  std::optional<std::string> error;

  bool operator==(const RawGeneration &) const = default;
};

void WriteRawGenerations(std::ostream &out, const std::vector<RawGeneration> &records);
std::vector<RawGeneration> ReadRawGenerations(std::istream &in, const std::string &source = "<stream>");

struct PipelineConfig {
  PipelineMode mode = PipelineMode::kE2E;
  // Task is set per stage; the remaining fields apply to every stage.
  PromptConfig prompt;
  size_t jobs = 1;
  // Called with each stage's generations before they are decoded.
  std::function<void(const std::vector<RawGeneration> &)> on_generated;
};

struct PipelineResult {
  std::vector<RawGeneration> raw;
  std::vector<PredictionRecord> predictions;
};

PipelineResult RunPipeline(const Corpus &corpus, const Ontology &ontology, Generator &generator,
                           const PipelineConfig &config);

// Decodes saved generations into one prediction record per corpus sentence
// (corpus order). ED triggers that were expanded by an EAE record are taken
// from the EAE record; exact duplicate events are collapsed.
std::vector<PredictionRecord> DecodeGenerations(const std::vector<RawGeneration> &raw,
                                                const Corpus &corpus, const Ontology &ontology,
                                                const PromptConfig &prompt, size_t jobs = 1);

}  // namespace evtgen

#endif  // EVTGEN_SRC_PIPELINE_H_
