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

#include "ontology.h"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "common.h"
#include "json.hpp"

namespace evtgen {

using json = nlohmann::json;

const char *TemplateKindName(TemplateKind kind) {
  switch (kind) {
    case TemplateKind::kED: return "ed";
    case TemplateKind::kEAE: return "eae";
    case TemplateKind::kE2E: return "e2e";
  }
  return "?";
}

const char *TemplateVariantName(TemplateVariant variant) {
  switch (variant) {
    case TemplateVariant::kNatural: return "natural";
    case TemplateVariant::kSpecialToken: return "special";
    case TemplateVariant::kHtmlLike: return "html";
  }
  return "?";
}

std::optional<TemplateVariant> ParseTemplateVariant(std::string_view name) {
  if (name == "natural") return TemplateVariant::kNatural;
  if (name == "special") return TemplateVariant::kSpecialToken;
  if (name == "html") return TemplateVariant::kHtmlLike;
  return std::nullopt;
}

namespace {

[[noreturn]] void Invalid(const std::string &message) {
  throw Error(ErrorCode::kValidation, message);
}

bool Overlaps(size_t a_begin, size_t a_end, size_t b_begin, size_t b_end) {
  return a_begin < b_end && b_begin < a_end;
}

}  // namespace

TemplateSpec TemplateSpec::Locate(
    std::string text, TemplateKind kind,
    const std::vector<std::pair<std::string, std::string>> &slots) {
  std::vector<size_t> order(slots.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    return slots[a].first.size() > slots[b].first.size();
  });

  std::vector<size_t> offsets(slots.size());
  std::vector<std::pair<size_t, size_t>> claimed;
  for (size_t idx : order) {
    const std::string &placeholder = slots[idx].first;
    if (placeholder.empty()) Invalid("empty placeholder in template \"" + text + "\"");
    std::vector<size_t> found;
    for (size_t pos = text.find(placeholder); pos != std::string::npos;
         pos = text.find(placeholder, pos + 1)) {
      bool covered = false;
      for (const auto &[b, e] : claimed) {
        if (Overlaps(pos, pos + placeholder.size(), b, e)) covered = true;
      }
      if (!covered) found.push_back(pos);
    }
    if (found.empty()) {
      Invalid("placeholder \"" + placeholder + "\" absent from template \"" +
              text + "\"");
    }
    if (found.size() > 1) {
      Invalid("placeholder \"" + placeholder + "\" repeated in template \"" +
              text + "\"");
    }
    offsets[idx] = found[0];
    claimed.emplace_back(found[0], found[0] + placeholder.size());
  }

  std::vector<TemplateSlot> out;
  for (size_t i = 0; i < slots.size(); ++i) {
    TemplateSlot slot;
    slot.placeholder = slots[i].first;
    slot.role = slots[i].second;
    slot.is_trigger = slots[i].second.empty();
    slot.offset = offsets[i];
    out.push_back(std::move(slot));
  }
  return FromSlots(std::move(text), kind, TemplateVariant::kNatural,
                   std::move(out));
}

TemplateSpec TemplateSpec::FromSlots(std::string text, TemplateKind kind,
                                     TemplateVariant variant,
                                     std::vector<TemplateSlot> slots) {
  size_t cursor = 0;
  std::set<std::string> roles;
  for (size_t i = 0; i < slots.size(); ++i) {
    const TemplateSlot &slot = slots[i];
    if (slot.offset < cursor) {
      Invalid("slots of template \"" + text +
              "\" must be listed in text order without overlap");
    }
    if (slot.offset + slot.placeholder.size() > text.size() ||
        text.compare(slot.offset, slot.placeholder.size(), slot.placeholder) != 0) {
      Invalid("slot table does not match template \"" + text + "\"");
    }
    if (i > 0 && slot.offset == cursor) {
      Invalid("placeholders \"" + slots[i - 1].placeholder + "\" and \"" +
              slot.placeholder + "\" are adjacent in template \"" + text + "\"");
    }
    if (slot.is_trigger) {
      if (kind == TemplateKind::kEAE) {
        Invalid("trigger slot in EAE template \"" + text + "\"");
      }
      if (i != 0) Invalid("trigger slot must come first in \"" + text + "\"");
    } else {
      if (slot.role.empty()) Invalid("empty role in template \"" + text + "\"");
      if (!roles.insert(slot.role).second) {
        Invalid("role " + slot.role + " has two slots in template \"" + text + "\"");
      }
    }
    cursor = slot.offset + slot.placeholder.size();
  }
  TemplateSpec spec;
  spec.text_ = std::move(text);
  spec.slots_ = std::move(slots);
  spec.kind_ = kind;
  spec.variant_ = variant;
  return spec;
}

std::vector<std::string> TemplateSpec::Segments() const {
  std::vector<std::string> out;
  size_t cursor = 0;
  for (const TemplateSlot &slot : slots_) {
    out.push_back(text_.substr(cursor, slot.offset - cursor));
    cursor = slot.offset + slot.placeholder.size();
  }
  out.push_back(text_.substr(cursor));
  return out;
}

std::string TemplateSpec::Fill(
    const std::vector<std::optional<std::string>> &fills) const {
  std::string out;
  size_t cursor = 0;
  for (size_t i = 0; i < slots_.size(); ++i) {
    const TemplateSlot &slot = slots_[i];
    out.append(text_, cursor, slot.offset - cursor);
    if (i < fills.size() && fills[i]) {
      // Tag-enclosed slots keep a space on each side of the value.
      if (variant_ == TemplateVariant::kHtmlLike && !slot.is_trigger) {
        out += ' ' + *fills[i] + ' ';
      } else {
        out += *fills[i];
      }
    } else {
      out += slot.placeholder;
    }
    cursor = slot.offset + slot.placeholder.size();
  }
  out.append(text_, cursor);
  return out;
}

Ontology::Ontology(std::string name, std::vector<std::string> role_universe,
                   std::vector<EventSchema> schemas)
    : name_(std::move(name)),
      roles_(role_universe.begin(), role_universe.end()),
      schemas_(std::move(schemas)) {
  if (schemas_.empty()) Invalid("no schemas");
  if (roles_.size() != role_universe.size()) Invalid("duplicate role in role list");
  for (const std::string &role : roles_) {
    if (role.empty()) Invalid("empty role name");
  }
  for (size_t i = 0; i < schemas_.size(); ++i) {
    const EventSchema &schema = schemas_[i];
    if (schema.event_type.empty()) Invalid("event with empty type");
    if (!index_.emplace(schema.event_type, i).second) {
      Invalid("duplicate event type " + schema.event_type);
    }
    if (Trim(schema.definition).empty()) {
      Invalid("event " + schema.event_type + " is missing its definition");
    }
    if (schema.keywords.empty()) {
      Invalid("event " + schema.event_type + " has no keywords");
    }
    for (const std::string &keyword : schema.keywords) {
      if (SplitWhitespace(keyword).empty()) {
        Invalid("event " + schema.event_type + " has an empty keyword");
      }
    }
    if (schema.eae_template.kind() != TemplateKind::kEAE) {
      Invalid("event " + schema.event_type + " template is not an EAE template");
    }
    for (const std::string &role : schema.roles) {
      if (!roles_.count(role)) {
        Invalid("event " + schema.event_type + " uses undeclared role " + role);
      }
    }
    for (const TemplateSlot &slot : schema.eae_template.slots()) {
      if (!schema.roles.count(slot.role)) {
        Invalid("event " + schema.event_type + " slot role " + slot.role +
                " is not a role of the event");
      }
    }
  }
}

const EventSchema *Ontology::Find(std::string_view event_type) const {
  auto it = index_.find(event_type);
  return it == index_.end() ? nullptr : &schemas_[it->second];
}

const EventSchema &Ontology::Get(std::string_view event_type) const {
  const EventSchema *schema = Find(event_type);
  if (!schema) {
    throw Error(ErrorCode::kInvalidArgument,
                "unknown event type " + std::string(event_type));
  }
  return *schema;
}

namespace {

std::string RequireString(const json &obj, const char *key, const std::string &where) {
  auto it = obj.find(key);
  if (it == obj.end() || !it->is_string()) {
    Invalid(where + ": missing string field \"" + key + "\"");
  }
  return it->get<std::string>();
}

std::vector<std::string> StringList(const json &obj, const char *key,
                                    const std::string &where, bool required) {
  auto it = obj.find(key);
  if (it == obj.end()) {
    if (required) Invalid(where + ": missing list field \"" + key + "\"");
    return {};
  }
  if (!it->is_array()) Invalid(where + ": \"" + key + "\" must be a list");
  std::vector<std::string> out;
  for (const json &item : *it) {
    if (!item.is_string()) Invalid(where + ": \"" + key + "\" must hold strings");
    out.push_back(item.get<std::string>());
  }
  return out;
}

}  // namespace

Ontology ParseOntology(std::string_view json_text, const std::string &default_name) {
  if (Trim(json_text).empty()) Invalid("no schemas");
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error &e) {
    throw Error(ErrorCode::kParse, std::string("ontology: ") + e.what());
  }
  if (!doc.is_object()) throw Error(ErrorCode::kParse, "ontology: top level must be an object");

  std::string name = default_name;
  if (doc.contains("name") && doc["name"].is_string()) name = doc["name"].get<std::string>();
  std::vector<std::string> roles = StringList(doc, "roles", "ontology", true);

  auto events = doc.find("events");
  if (events == doc.end() || !events->is_array() || events->empty()) {
    Invalid("no schemas");
  }

  std::vector<EventSchema> schemas;
  for (size_t i = 0; i < events->size(); ++i) {
    const json &event = (*events)[i];
    std::string where = "events[" + std::to_string(i) + "]";
    if (!event.is_object()) Invalid(where + ": must be an object");
    EventSchema schema;
    schema.event_type = RequireString(event, "type", where);
    where += " (" + schema.event_type + ")";
    if (!event.contains("definition")) Invalid(where + ": missing definition");
    schema.definition = RequireString(event, "definition", where);
    if (!event.contains("keywords")) Invalid(where + ": missing keywords");
    schema.keywords = StringList(event, "keywords", where, true);
    std::string text = RequireString(event, "template", where);

    auto slots = event.find("slots");
    if (slots == event.end() || !slots->is_array()) Invalid(where + ": missing slots");
    std::vector<std::pair<std::string, std::string>> slot_pairs;
    for (const json &slot : *slots) {
      if (!slot.is_object()) Invalid(where + ": slot must be an object");
      std::string placeholder = RequireString(slot, "placeholder", where);
      std::string role = RequireString(slot, "role", where);
      if (role.empty()) Invalid(where + ": slot with empty role");
      if (placeholder == kTriggerPlaceholder) {
        Invalid(where + ": trigger placeholder in an EAE template");
      }
      slot_pairs.emplace_back(std::move(placeholder), std::move(role));
    }
    try {
      schema.eae_template = TemplateSpec::Locate(text, TemplateKind::kEAE, slot_pairs);
    } catch (const Error &e) {
      Invalid(where + ": " + e.what());
    }
    for (const auto &[placeholder, role] : slot_pairs) schema.roles.insert(role);
    for (const std::string &role : StringList(event, "roles", where, false)) {
      if (schema.roles.insert(role).second) {
        Warn(where + ": role " + role + " has no placeholder and can never be predicted");
      }
    }
    if (schema.keywords.size() != 3) {
      Warn(where + ": expected 3 keywords, found " + std::to_string(schema.keywords.size()));
    }
    schemas.push_back(std::move(schema));
  }
  return Ontology(std::move(name), std::move(roles), std::move(schemas));
}

Ontology LoadOntology(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open ontology file " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  std::string stem = path;
  if (auto slash = stem.find_last_of('/'); slash != std::string::npos) stem = stem.substr(slash + 1);
  if (auto dot = stem.find('.'); dot != std::string::npos) stem = stem.substr(0, dot);
  return ParseOntology(buffer.str(), stem);
}

std::string SerializeOntology(const Ontology &ontology) {
  json doc;
  doc["name"] = ontology.name();
  doc["roles"] = std::vector<std::string>(ontology.role_universe().begin(),
                                          ontology.role_universe().end());
  json events = json::array();
  for (const EventSchema &schema : ontology.schemas()) {
    json event;
    event["type"] = schema.event_type;
    event["definition"] = schema.definition;
    event["keywords"] = schema.keywords;
    event["template"] = schema.eae_template.text();
    json slots = json::array();
    std::set<std::string> slotted;
    for (const TemplateSlot &slot : schema.eae_template.slots()) {
      slots.push_back({{"placeholder", slot.placeholder}, {"role", slot.role}});
      slotted.insert(slot.role);
    }
    event["slots"] = std::move(slots);
    std::vector<std::string> extra;
    for (const std::string &role : schema.roles) {
      if (!slotted.count(role)) extra.push_back(role);
    }
    if (!extra.empty()) event["roles"] = extra;
    events.push_back(std::move(event));
  }
  doc["events"] = std::move(events);
  return doc.dump(2) + "\n";
}

TemplateSpec EdTemplate() {
  return TemplateSpec::Locate("Event trigger is <Trigger>.", TemplateKind::kED,
                              {{std::string(kTriggerPlaceholder), ""}});
}

TemplateSpec RenderVariant(const TemplateSpec &spec, TemplateVariant variant) {
  if (variant == TemplateVariant::kNatural || spec.kind() != TemplateKind::kEAE) {
    return spec;
  }
  std::string text;
  std::vector<TemplateSlot> slots;
  if (variant == TemplateVariant::kSpecialToken) {
    std::vector<std::string> segments = spec.Segments();
    for (size_t i = 0; i < spec.slots().size(); ++i) {
      text += segments[i];
      TemplateSlot slot = spec.slots()[i];
      slot.placeholder = "<" + slot.role + ">";
      slot.offset = text.size();
      text += slot.placeholder;
      slots.push_back(std::move(slot));
    }
    text += segments.back();
  } else {
    for (const TemplateSlot &original : spec.slots()) {
      if (!text.empty()) text += ' ';
      text += "<" + original.role + ">";
      TemplateSlot slot = original;
      slot.placeholder = " ";
      slot.offset = text.size();
      text += " </" + original.role + ">";
      slots.push_back(std::move(slot));
    }
  }
  return TemplateSpec::FromSlots(std::move(text), spec.kind(), variant, std::move(slots));
}

TemplateSpec E2eTemplate(const EventSchema &schema, TemplateVariant variant) {
  TemplateSpec ed = EdTemplate();
  TemplateSpec eae = RenderVariant(schema.eae_template, variant);
  std::string text = ed.text() + " " + eae.text();
  std::vector<TemplateSlot> slots = ed.slots();
  size_t shift = ed.text().size() + 1;
  for (TemplateSlot slot : eae.slots()) {
    slot.offset += shift;
    slots.push_back(std::move(slot));
  }
  return TemplateSpec::FromSlots(std::move(text), TemplateKind::kE2E, eae.variant(),
                                 std::move(slots));
}

TemplateSpec TaskTemplate(const EventSchema &schema, TemplateKind task,
                          TemplateVariant variant) {
  switch (task) {
    case TemplateKind::kED: return EdTemplate();
    case TemplateKind::kEAE: return RenderVariant(schema.eae_template, variant);
    case TemplateKind::kE2E: return E2eTemplate(schema, variant);
  }
  return EdTemplate();
}

}  // namespace evtgen
