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

#ifndef EVTGEN_SRC_DECODER_H_
#define EVTGEN_SRC_DECODER_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "corpus.h"
#include "ontology.h"
#include "promptgen.h"

namespace evtgen {

// Diagnostic codes emitted while decoding.
inline constexpr std::string_view kUnanchoredSegment = "UnanchoredSegment";
inline constexpr std::string_view kLeadingText = "LeadingText";
inline constexpr std::string_view kTrailingText = "TrailingText";
inline constexpr std::string_view kUnmatchedString = "UnmatchedString";
inline constexpr std::string_view kHallucinatedArgument = "HallucinatedArgument";
inline constexpr std::string_view kOrphanArguments = "OrphanArguments";
inline constexpr std::string_view kInvalidAnchor = "InvalidAnchor";
inline constexpr std::string_view kGenerationError = "GenerationError";

struct Diagnostic {
  std::string code;
  std::string detail;

  bool operator==(const Diagnostic &) const = default;
};

struct SlotFill {
  size_t slot = 0;  // index into the template's slot table
  // Trimmed text captured for the slot; empty when the placeholder was kept
  // or the slot could not be aligned.
  std::string raw;
  // `raw` split on the and-joiner, placeholders removed. Whether the split
  // is used is decided against the passage by ResolveSpans.
  std::vector<std::string> values;

  bool empty() const { return values.empty(); }
  bool operator==(const SlotFill &) const = default;
};

struct ChunkFills {
  std::vector<SlotFill> slots;  // one per template slot, in slot order
  // Offsets (within the trimmed chunk) of each fixed segment that was
  // anchored; stops at the first segment that could not be found.
  std::vector<size_t> segment_offsets;
  bool aligned = false;

  bool operator==(const ChunkFills &) const = default;
};

struct ParseResult {
  std::vector<ChunkFills> chunks;
  std::vector<Diagnostic> diagnostics;
};

// Splits the output into per-event chunks and aligns each chunk to the
// template by finding its fixed segments left to right. The final segment
// is matched as a suffix of the chunk when possible. Never throws.
ParseResult ParseOutput(std::string_view output, const TemplateSpec &spec,
                        const PromptConfig &config);

struct DecodeResult {
  std::vector<EventPrediction> events;
  std::vector<Diagnostic> diagnostics;
};

// Maps slot fills to token spans. Triggers take every occurrence of the
// string; arguments take the occurrence closest to the anchor trigger
// (ties to the earlier start). Exact matching is tried before ASCII case
// folding; a fill matching the passage as a whole is never split.
DecodeResult ResolveSpans(const ParseResult &parsed, const TemplateSpec &spec,
                          const SentenceRecord &sentence, const std::string &event_type,
                          std::optional<TokenSpan> anchor);

// ParseOutput followed by ResolveSpans for the template of config.task.
// EAE requires `anchor`; its prediction carries that trigger.
DecodeResult Decode(std::string_view output, const SentenceRecord &sentence,
                    const EventSchema &schema, const PromptConfig &config,
                    std::optional<TokenSpan> anchor = std::nullopt);

}  // namespace evtgen

#endif  // EVTGEN_SRC_DECODER_H_
