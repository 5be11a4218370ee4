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

#include "corpus.h"

#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <set>

#include "json.hpp"

namespace evtgen {

using json = nlohmann::ordered_json;

std::string SentenceKey(std::string_view doc_id, std::string_view sent_id) {
  std::string key(doc_id);
  key += '\x1f';
  key += sent_id;
  return key;
}

namespace {

std::string Coordinates(const SentenceRecord &s) {
  return "(doc_id=" + s.doc_id + ", sent_id=" + s.sent_id + ")";
}

[[noreturn]] void Invalid(const SentenceRecord &s, const std::string &message) {
  throw Error(ErrorCode::kValidation, Coordinates(s) + ": " + message);
}

void CheckSpan(const SentenceRecord &s, TokenSpan span, const std::string &text,
               const std::string &what) {
  if (!span.ValidFor(s.tokens.size())) {
    Invalid(s, what + " span [" + std::to_string(span.start) + "," +
                   std::to_string(span.end) + ") out of range for " +
                   std::to_string(s.tokens.size()) + " tokens");
  }
  std::string joined = JoinTokens(s.tokens, span);
  if (joined != text) {
    Invalid(s, what + " text \"" + text + "\" does not match tokens \"" + joined + "\"");
  }
}

int GetInt(const json &obj, const char *key, const std::string &where) {
  auto it = obj.find(key);
  if (it == obj.end() || !it->is_number_integer()) {
    throw Error(ErrorCode::kParse, where + ": missing integer field \"" + key + "\"");
  }
  return it->get<int>();
}

std::string GetString(const json &obj, const char *key, const std::string &where) {
  auto it = obj.find(key);
  if (it == obj.end() || !it->is_string()) {
    throw Error(ErrorCode::kParse, where + ": missing string field \"" + key + "\"");
  }
  return it->get<std::string>();
}

const json &GetArray(const json &obj, const char *key, const std::string &where) {
  auto it = obj.find(key);
  if (it == obj.end() || !it->is_array()) {
    throw Error(ErrorCode::kParse, where + ": missing list field \"" + key + "\"");
  }
  return *it;
}

json ParseLine(const std::string &line, const std::string &where) {
  try {
    json doc = json::parse(line);
    if (!doc.is_object()) throw Error(ErrorCode::kParse, where + ": record must be an object");
    return doc;
  } catch (const json::parse_error &e) {
    throw Error(ErrorCode::kParse, where + ": " + e.what());
  }
}

SentenceRecord RecordFromJson(const json &doc, const std::string &where) {
  SentenceRecord s;
  s.doc_id = GetString(doc, "doc_id", where);
  s.sent_id = GetString(doc, "sent_id", where);
  for (const json &tok : GetArray(doc, "tokens", where)) {
    if (!tok.is_string()) throw Error(ErrorCode::kParse, where + ": tokens must be strings");
    s.tokens.push_back(tok.get<std::string>());
  }
  auto events = doc.find("events");
  if (events == doc.end()) return s;
  if (!events->is_array()) throw Error(ErrorCode::kParse, where + ": events must be a list");
  for (const json &ev : *events) {
    EventMention event;
    event.event_type = GetString(ev, "event_type", where);
    auto trig = ev.find("trigger");
    if (trig == ev.end() || !trig->is_object()) {
      throw Error(ErrorCode::kParse, where + ": event without trigger");
    }
    event.trigger = {GetInt(*trig, "start", where), GetInt(*trig, "end", where)};
    event.trigger_text = GetString(*trig, "text", where);
    if (auto args = ev.find("arguments"); args != ev.end()) {
      for (const json &arg : *args) {
        ArgumentMention a;
        a.span = {GetInt(arg, "start", where), GetInt(arg, "end", where)};
        a.text = GetString(arg, "text", where);
        a.role = GetString(arg, "role", where);
        event.arguments.push_back(std::move(a));
      }
    }
    s.events.push_back(std::move(event));
  }
  return s;
}

json RecordToJson(const SentenceRecord &s) {
  json doc;
  doc["doc_id"] = s.doc_id;
  doc["sent_id"] = s.sent_id;
  doc["tokens"] = s.tokens;
  json events = json::array();
  for (const EventMention &e : s.events) {
    json ev;
    ev["event_type"] = e.event_type;
    ev["trigger"] = {{"start", e.trigger.start}, {"end", e.trigger.end}, {"text", e.trigger_text}};
    json args = json::array();
    for (const ArgumentMention &a : e.arguments) {
      args.push_back({{"start", a.span.start}, {"end", a.span.end}, {"text", a.text}, {"role", a.role}});
    }
    ev["arguments"] = std::move(args);
    events.push_back(std::move(ev));
  }
  doc["events"] = std::move(events);
  return doc;
}

void AddChecked(Corpus &corpus, std::set<std::string> &keys, SentenceRecord record,
                const Ontology &ontology, const std::string &where) {
  try {
    ValidateSentence(record, ontology);
  } catch (const Error &e) {
    throw Error(e.code(), where + " " + e.what());
  }
  if (!keys.insert(SentenceKey(record.doc_id, record.sent_id)).second) {
    throw Error(ErrorCode::kValidation,
                where + " " + Coordinates(record) + ": duplicate (doc_id, sent_id)");
  }
  corpus.sentences.push_back(std::move(record));
}

}  // namespace

void ValidateSentence(const SentenceRecord &s, const Ontology &ontology) {
  if (s.tokens.empty()) Invalid(s, "sentence has no tokens");
  for (const EventMention &e : s.events) {
    const EventSchema *schema = ontology.Find(e.event_type);
    if (!schema) Invalid(s, "unknown event type " + e.event_type);
    CheckSpan(s, e.trigger, e.trigger_text, "trigger");
    for (const ArgumentMention &a : e.arguments) {
      if (!schema->roles.count(a.role)) {
        Invalid(s, "unknown role " + a.role + " for event type " + e.event_type);
      }
      CheckSpan(s, a.span, a.text, "argument");
    }
  }
}

Corpus ReadCorpus(std::istream &in, const Ontology &ontology, const std::string &source) {
  Corpus corpus;
  corpus.ontology_id = ontology.name();
  std::set<std::string> keys;
  std::string line;
  for (size_t line_no = 1; std::getline(in, line); ++line_no) {
    if (Trim(line).empty()) continue;
    std::string where = source + ":" + std::to_string(line_no);
    AddChecked(corpus, keys, RecordFromJson(ParseLine(line, where), where), ontology, where);
  }
  return corpus;
}

Corpus LoadCorpus(const std::string &path, const Ontology &ontology) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open corpus file " + path);
  return ReadCorpus(in, ontology, path);
}

void WriteCorpus(std::ostream &out, const Corpus &corpus) {
  for (const SentenceRecord &s : corpus.sentences) out << RecordToJson(s).dump() << "\n";
}

void SaveCorpus(const std::string &path, const Corpus &corpus) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path);
  WriteCorpus(out, corpus);
  if (!out) throw Error(ErrorCode::kIo, "write failed for " + path);
}

Corpus ConvertOneIE(std::istream &in, const Ontology &ontology, const std::string &source) {
  Corpus corpus;
  corpus.ontology_id = ontology.name();
  std::set<std::string> keys;
  std::string line;
  for (size_t line_no = 1; std::getline(in, line); ++line_no) {
    if (Trim(line).empty()) continue;
    std::string where = source + ":" + std::to_string(line_no);
    json doc = ParseLine(line, where);
    SentenceRecord s;
    try {
      s.doc_id = GetString(doc, "doc_id", where);
      s.sent_id = GetString(doc, "sent_id", where);
      for (const json &tok : GetArray(doc, "tokens", where)) s.tokens.push_back(tok.get<std::string>());

      std::map<std::string, std::pair<TokenSpan, std::string>> entities;
      if (auto ents = doc.find("entity_mentions"); ents != doc.end()) {
        for (const json &ent : *ents) {
          entities[GetString(ent, "id", where)] = {
              TokenSpan{GetInt(ent, "start", where), GetInt(ent, "end", where)},
              GetString(ent, "text", where)};
        }
      }
      if (auto events = doc.find("event_mentions"); events != doc.end()) {
        for (const json &ev : *events) {
          EventMention event;
          event.event_type = GetString(ev, "event_type", where);
          const json &trig = ev.at("trigger");
          event.trigger = {GetInt(trig, "start", where), GetInt(trig, "end", where)};
          event.trigger_text = GetString(trig, "text", where);
          if (auto args = ev.find("arguments"); args != ev.end()) {
            for (const json &arg : *args) {
              std::string id = GetString(arg, "entity_id", where);
              auto it = entities.find(id);
              if (it == entities.end()) {
                throw Error(ErrorCode::kValidation, where + ": unknown entity id " + id);
              }
              ArgumentMention a;
              a.span = it->second.first;
              a.text = it->second.second;
              a.role = GetString(arg, "role", where);
              event.arguments.push_back(std::move(a));
            }
          }
          s.events.push_back(std::move(event));
        }
      }
    } catch (const json::exception &e) {
      throw Error(ErrorCode::kParse, where + ": " + e.what());
    }
    AddChecked(corpus, keys, std::move(s), ontology, where);
  }
  return corpus;
}

StatsReport CorpusStats(const Corpus &corpus) {
  StatsReport r;
  std::set<std::string> docs, types, roles;
  for (const SentenceRecord &s : corpus.sentences) {
    docs.insert(s.doc_id);
    ++r.sents;
    for (const EventMention &e : s.events) {
      ++r.events;
      types.insert(e.event_type);
      for (const ArgumentMention &a : e.arguments) {
        ++r.args;
        roles.insert(a.role);
      }
    }
  }
  r.docs = docs.size();
  r.event_types = types.size();
  r.arg_types = roles.size();
  return r;
}

std::vector<TokenSpan> FindOccurrences(const Tokens &tokens, std::string_view query,
                                       CaseMode mode) {
  std::vector<std::string> needle = SplitWhitespace(query);
  std::vector<TokenSpan> out;
  if (needle.empty() || needle.size() > tokens.size()) return out;
  std::vector<std::string> folded;
  if (mode == CaseMode::kFold) {
    for (std::string &n : needle) n = AsciiLower(n);
    folded.reserve(tokens.size());
    for (const std::string &t : tokens) folded.push_back(AsciiLower(t));
  }
  const Tokens &hay = mode == CaseMode::kFold ? folded : tokens;
  for (size_t i = 0; i + needle.size() <= hay.size(); ++i) {
    bool match = true;
    for (size_t j = 0; j < needle.size() && match; ++j) match = hay[i + j] == needle[j];
    if (match) {
      out.push_back({static_cast<int>(i), static_cast<int>(i + needle.size())});
    }
  }
  return out;
}

}  // namespace evtgen
