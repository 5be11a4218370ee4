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

#include "decoder.h"

#include <algorithm>
#include <cstdlib>

namespace evtgen {

namespace {

std::vector<std::string_view> SplitOn(std::string_view text, std::string_view sep) {
  std::vector<std::string_view> out;
  if (sep.empty()) {
    out.push_back(text);
    return out;
  }
  size_t start = 0;
  for (size_t pos = text.find(sep); pos != std::string_view::npos; pos = text.find(sep, start)) {
    out.push_back(text.substr(start, pos - start));
    start = pos + sep.size();
  }
  out.push_back(text.substr(start));
  return out;
}

SlotFill MakeFill(size_t index, std::string_view captured, const TemplateSlot &slot,
                  const PromptConfig &config) {
  SlotFill fill;
  fill.slot = index;
  std::string_view raw = Trim(captured);
  std::string_view placeholder = Trim(slot.placeholder);
  if (raw.empty() || raw == placeholder) return fill;
  fill.raw = std::string(raw);
  for (std::string_view piece : SplitOn(raw, config.and_joiner)) {
    piece = Trim(piece);
    if (piece.empty() || piece == placeholder) continue;
    fill.values.emplace_back(piece);
  }
  return fill;
}

std::string Excerpt(std::string_view text) {
  constexpr size_t kMax = 48;
  if (text.size() <= kMax) return std::string(text);
  return std::string(text.substr(0, kMax)) + "...";
}

ChunkFills AlignChunk(std::string_view chunk, const TemplateSpec &spec,
                      const std::vector<std::string> &segments, const PromptConfig &config,
                      size_t chunk_index, std::vector<Diagnostic> &diagnostics) {
  const auto &slots = spec.slots();
  ChunkFills out;
  for (size_t i = 0; i < slots.size(); ++i) out.slots.push_back({i, {}, {}});

  auto unanchored = [&](size_t seg) {
    diagnostics.push_back({std::string(kUnanchoredSegment),
                           "chunk " + std::to_string(chunk_index) + ": segment " +
                               std::to_string(seg) + " \"" + segments[seg] + "\" not found in \"" +
                               Excerpt(chunk) + "\""});
  };

  size_t first = chunk.find(segments[0]);
  if (first == std::string_view::npos) {
    unanchored(0);
    return out;
  }
  if (first > 0) {
    diagnostics.push_back({std::string(kLeadingText),
                           "chunk " + std::to_string(chunk_index) + ": \"" +
                               Excerpt(chunk.substr(0, first)) + "\" before the template"});
  }
  out.segment_offsets.push_back(first);
  size_t pos = first + segments[0].size();

  for (size_t i = 1; i < segments.size(); ++i) {
    const std::string &seg = segments[i];
    size_t found;
    bool last = i + 1 == segments.size();
    if (last && seg.empty()) {
      found = chunk.size();
    } else if (last && chunk.size() >= pos + seg.size() &&
               chunk.compare(chunk.size() - seg.size(), seg.size(), seg) == 0) {
      found = chunk.size() - seg.size();
    } else {
      found = chunk.find(seg, pos);
      if (found == std::string_view::npos) {
        unanchored(i);
        // Slots after the last anchored segment are unknown.
        return out;
      }
      if (last) {
        diagnostics.push_back({std::string(kTrailingText),
                               "chunk " + std::to_string(chunk_index) + ": \"" +
                                   Excerpt(chunk.substr(found + seg.size())) +
                                   "\" after the template"});
      }
    }
    out.slots[i - 1] = MakeFill(i - 1, chunk.substr(pos, found - pos), slots[i - 1], config);
    out.segment_offsets.push_back(found);
    pos = found + seg.size();
  }
  out.aligned = true;
  return out;
}

// Occurrences of `text`, exact first, then case-folded.
std::vector<TokenSpan> Locate(const Tokens &tokens, std::string_view text) {
  std::vector<TokenSpan> occ = FindOccurrences(tokens, text, CaseMode::kExact);
  if (occ.empty()) occ = FindOccurrences(tokens, text, CaseMode::kFold);
  return occ;
}

// Resolves a fill to one occurrence list per value: the unsplit raw text if
// it matches, else each split piece. Unmatched pieces yield empty lists.
std::vector<std::pair<std::string, std::vector<TokenSpan>>> LocateFill(const Tokens &tokens,
                                                                       const SlotFill &fill) {
  std::vector<std::pair<std::string, std::vector<TokenSpan>>> out;
  if (fill.empty()) return out;
  if (auto whole = Locate(tokens, fill.raw); !whole.empty()) {
    out.emplace_back(fill.raw, std::move(whole));
    return out;
  }
  for (const std::string &value : fill.values) out.emplace_back(value, Locate(tokens, value));
  return out;
}

TokenSpan Closest(const std::vector<TokenSpan> &occurrences, TokenSpan anchor) {
  TokenSpan best = occurrences.front();
  int best_distance = std::abs(best.start - anchor.start);
  for (const TokenSpan &occ : occurrences) {
    int distance = std::abs(occ.start - anchor.start);
    if (distance < best_distance || (distance == best_distance && occ.start < best.start)) {
      best = occ;
      best_distance = distance;
    }
  }
  return best;
}

}  // namespace

ParseResult ParseOutput(std::string_view output, const TemplateSpec &spec,
                        const PromptConfig &config) {
  ParseResult result;
  std::vector<std::string> segments = spec.Segments();
  std::string_view sep = Trim(config.multi_event_separator);
  if (sep.empty()) sep = config.multi_event_separator;
  std::vector<std::string_view> chunks = SplitOn(output, sep);
  for (size_t i = 0; i < chunks.size(); ++i) {
    result.chunks.push_back(
        AlignChunk(Trim(chunks[i]), spec, segments, config, i, result.diagnostics));
  }
  return result;
}

DecodeResult ResolveSpans(const ParseResult &parsed, const TemplateSpec &spec,
                          const SentenceRecord &sentence, const std::string &event_type,
                          std::optional<TokenSpan> anchor) {
  DecodeResult result;
  result.diagnostics = parsed.diagnostics;
  const Tokens &tokens = sentence.tokens;
  const auto &slots = spec.slots();
  bool eae = spec.kind() == TemplateKind::kEAE;

  if (eae && (!anchor || !anchor->ValidFor(tokens.size()))) {
    result.diagnostics.push_back({std::string(kInvalidAnchor), "EAE decode without a valid trigger"});
    return result;
  }

  for (size_t c = 0; c < parsed.chunks.size(); ++c) {
    const ChunkFills &chunk = parsed.chunks[c];
    std::string where = "chunk " + std::to_string(c) + ": ";

    std::vector<TokenSpan> triggers;
    if (eae) {
      triggers.push_back(*anchor);
    } else if (spec.HasTrigger()) {
      for (const auto &[value, occ] : LocateFill(tokens, chunk.slots[0])) {
        if (occ.empty()) {
          result.diagnostics.push_back(
              {std::string(kUnmatchedString), where + "trigger \"" + value + "\" not in passage"});
        }
        for (const TokenSpan &span : occ) {
          if (std::find(triggers.begin(), triggers.end(), span) == triggers.end()) {
            triggers.push_back(span);
          }
        }
      }
    }

    std::vector<ArgumentMention> arguments;
    bool has_argument_fill = false;
    for (size_t i = 0; i < slots.size(); ++i) {
      if (slots[i].is_trigger || chunk.slots[i].empty()) continue;
      has_argument_fill = true;
      if (triggers.empty()) continue;
      TokenSpan nearest_to = *std::min_element(triggers.begin(), triggers.end());
      for (const auto &[value, occ] : LocateFill(tokens, chunk.slots[i])) {
        if (occ.empty()) {
          result.diagnostics.push_back({std::string(kHallucinatedArgument),
                                        where + slots[i].role + " \"" + value + "\" not in passage"});
          continue;
        }
        TokenSpan span = Closest(occ, nearest_to);
        arguments.push_back({span, slots[i].role, JoinTokens(tokens, span)});
      }
    }
    if (triggers.empty()) {
      if (has_argument_fill) {
        result.diagnostics.push_back(
            {std::string(kOrphanArguments), where + "argument fills without a resolved trigger"});
      }
      continue;
    }
    std::sort(triggers.begin(), triggers.end());
    for (const TokenSpan &trigger : triggers) {
      result.events.push_back({event_type, trigger, JoinTokens(tokens, trigger), arguments});
    }
  }
  return result;
}

DecodeResult Decode(std::string_view output, const SentenceRecord &sentence,
                    const EventSchema &schema, const PromptConfig &config,
                    std::optional<TokenSpan> anchor) {
  TemplateSpec spec = TaskTemplate(schema, config.task, config.template_variant);
  return ResolveSpans(ParseOutput(output, spec, config), spec, sentence, schema.event_type,
                      anchor);
}

}  // namespace evtgen
