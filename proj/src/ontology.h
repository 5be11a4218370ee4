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

#ifndef EVTGEN_SRC_ONTOLOGY_H_
#define EVTGEN_SRC_ONTOLOGY_H_

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace evtgen {

enum class TemplateKind { kED, kEAE, kE2E };
enum class TemplateVariant { kNatural, kSpecialToken, kHtmlLike };

const char *TemplateKindName(TemplateKind kind);
const char *TemplateVariantName(TemplateVariant variant);
std::optional<TemplateVariant> ParseTemplateVariant(std::string_view name);

// Placeholder of the trigger slot in ED and E2E templates.
inline constexpr std::string_view kTriggerPlaceholder = "<Trigger>";

struct TemplateSlot {
  std::string placeholder;
  // Empty for the trigger slot.
  std::string role;
  bool is_trigger = false;
  // Byte offset of the placeholder in the owning template's text.
  size_t offset = 0;

  bool operator==(const TemplateSlot &) const = default;
};

// A template sentence plus its slot table. Slots are ordered by position in
// the text and never overlap, so the text decomposes into |slots|+1 fixed
// segments interleaved with the placeholders.
class TemplateSpec {
 public:
  TemplateSpec() = default;

  // Locates every (placeholder, role) pair in `text`. Placeholders are
  // resolved longest first; occurrences inside an already located placeholder
  // are ignored, and what remains must be a single occurrence. The resolved
  // order must match the order of `slots`. Role "" marks the trigger slot.
  // Throws Error(kValidation) on any violation.
  static TemplateSpec Locate(
      std::string text, TemplateKind kind,
      const std::vector<std::pair<std::string, std::string>> &slots);

  // Builds a spec from explicit offsets; validates ordering and bounds.
  static TemplateSpec FromSlots(std::string text, TemplateKind kind,
                                TemplateVariant variant,
                                std::vector<TemplateSlot> slots);

  const std::string &text() const { return text_; }
  const std::vector<TemplateSlot> &slots() const { return slots_; }
  TemplateKind kind() const { return kind_; }
  TemplateVariant variant() const { return variant_; }

  // Fixed text between placeholders; size() == slots().size() + 1.
  std::vector<std::string> Segments() const;

  // Replaces slots with fills; a missing fill keeps the placeholder.
  std::string Fill(const std::vector<std::optional<std::string>> &fills) const;

  bool HasTrigger() const { return !slots_.empty() && slots_[0].is_trigger; }

  bool operator==(const TemplateSpec &) const = default;

 private:
  std::string text_;
  std::vector<TemplateSlot> slots_;
  TemplateKind kind_ = TemplateKind::kEAE;
  TemplateVariant variant_ = TemplateVariant::kNatural;
};

struct EventSchema {
  std::string event_type;
  std::string definition;
  std::vector<std::string> keywords;
  std::set<std::string> roles;
  TemplateSpec eae_template;

  bool operator==(const EventSchema &) const = default;
};

class Ontology {
 public:
  Ontology() = default;
  Ontology(std::string name, std::vector<std::string> role_universe,
           std::vector<EventSchema> schemas);

  const std::string &name() const { return name_; }
  // Schemas in file order; inference enumerates types in this order.
  const std::vector<EventSchema> &schemas() const { return schemas_; }
  const std::set<std::string> &role_universe() const { return roles_; }
  size_t size() const { return schemas_.size(); }

  const EventSchema *Find(std::string_view event_type) const;
  const EventSchema &Get(std::string_view event_type) const;
  bool Contains(std::string_view event_type) const {
    return Find(event_type) != nullptr;
  }

  bool operator==(const Ontology &other) const {
    return name_ == other.name_ && roles_ == other.roles_ &&
           schemas_ == other.schemas_;
  }

 private:
  std::string name_;
  std::set<std::string> roles_;
  std::vector<EventSchema> schemas_;
  std::map<std::string, size_t, std::less<>> index_;
};

// Ontology file (JSON). The ontology name is taken from the optional "name"
// key, else from `default_name`.
Ontology ParseOntology(std::string_view json_text,
                       const std::string &default_name = "ontology");
Ontology LoadOntology(const std::string &path);
std::string SerializeOntology(const Ontology &ontology);

// The ED template "Event trigger is <Trigger>."
TemplateSpec EdTemplate();

// Re-renders an EAE template. Natural returns the spec unchanged;
// SpecialToken swaps each placeholder for "<Role>"; HtmlLike drops the prose
// and emits "<Role> </Role>" pairs in slot order.
TemplateSpec RenderVariant(const TemplateSpec &spec, TemplateVariant variant);

// ED template followed by the (optionally re-rendered) EAE template.
TemplateSpec E2eTemplate(const EventSchema &schema,
                         TemplateVariant variant = TemplateVariant::kNatural);

// The template a task emits for a schema.
TemplateSpec TaskTemplate(const EventSchema &schema, TemplateKind task,
                          TemplateVariant variant);

}  // namespace evtgen

#endif  // EVTGEN_SRC_ONTOLOGY_H_
