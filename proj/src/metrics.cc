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

#include "metrics.h"

#include <cstdio>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include "json.hpp"

namespace evtgen {

using json = nlohmann::ordered_json;

const char *MetricName(Metric metric) {
  switch (metric) {
    case Metric::kTriI: return "Tri-I";
    case Metric::kTriC: return "Tri-C";
    case Metric::kArgI: return "Arg-I";
    case Metric::kArgC: return "Arg-C";
  }
  return "?";
}

double PrfCounts::precision() const {
  if (tp + fp == 0) return fn == 0 ? 1.0 : 0.0;
  return static_cast<double>(tp) / static_cast<double>(tp + fp);
}

double PrfCounts::recall() const {
  if (tp + fn == 0) return fp == 0 ? 1.0 : 0.0;
  return static_cast<double>(tp) / static_cast<double>(tp + fn);
}

double PrfCounts::f1() const {
  double p = precision(), r = recall();
  if (p + r == 0.0) return 0.0;
  return 2.0 * p * r / (p + r);
}

void WritePredictions(std::ostream &out, const std::vector<PredictionRecord> &records) {
  for (const PredictionRecord &r : records) {
    json doc;
    doc["doc_id"] = r.doc_id;
    doc["sent_id"] = r.sent_id;
    json events = json::array();
    for (const EventPrediction &e : r.events) {
      json args = json::array();
      for (const ArgumentMention &a : e.arguments) {
        args.push_back({{"start", a.span.start}, {"end", a.span.end}, {"text", a.text}, {"role", a.role}});
      }
      events.push_back({{"event_type", e.event_type},
                        {"trigger", {{"start", e.trigger.start}, {"end", e.trigger.end}, {"text", e.trigger_text}}},
                        {"arguments", std::move(args)}});
    }
    doc["events"] = std::move(events);
    json diags = json::array();
    for (const Diagnostic &d : r.diagnostics) diags.push_back({{"code", d.code}, {"detail", d.detail}});
    doc["diagnostics"] = std::move(diags);
    out << doc.dump() << "\n";
  }
}

std::vector<PredictionRecord> ReadPredictions(std::istream &in, const std::string &source) {
  std::vector<PredictionRecord> out;
  std::string line;
  for (size_t line_no = 1; std::getline(in, line); ++line_no) {
    if (Trim(line).empty()) continue;
    try {
      json doc = json::parse(line);
      PredictionRecord r;
      r.doc_id = doc.at("doc_id").get<std::string>();
      r.sent_id = doc.at("sent_id").get<std::string>();
      for (const json &ev : doc.value("events", json::array())) {
        EventPrediction e;
        e.event_type = ev.at("event_type").get<std::string>();
        const json &t = ev.at("trigger");
        e.trigger = {t.at("start").get<int>(), t.at("end").get<int>()};
        e.trigger_text = t.value("text", std::string());
        for (const json &a : ev.value("arguments", json::array())) {
          e.arguments.push_back({{a.at("start").get<int>(), a.at("end").get<int>()},
                                 a.at("role").get<std::string>(),
                                 a.value("text", std::string())});
        }
        r.events.push_back(std::move(e));
      }
      for (const json &d : doc.value("diagnostics", json::array())) {
        r.diagnostics.push_back({d.value("code", std::string()), d.value("detail", std::string())});
      }
      out.push_back(std::move(r));
    } catch (const json::exception &e) {
      throw Error(ErrorCode::kParse, source + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

PrfCounts TallyItems(std::vector<std::vector<std::string>> predicted,
                     std::vector<std::vector<std::string>> gold) {
  // Equality matching: the number of one-to-one matches for a key is the
  // smaller multiplicity, so greedy matching is already optimal.
  std::map<std::vector<std::string>, std::pair<size_t, size_t>> counts;
  for (auto &item : predicted) ++counts[std::move(item)].first;
  for (auto &item : gold) ++counts[std::move(item)].second;
  PrfCounts out;
  for (const auto &[key, c] : counts) {
    size_t matched = std::min(c.first, c.second);
    out.tp += matched;
    out.fp += c.first - matched;
    out.fn += c.second - matched;
  }
  return out;
}

namespace {

using Items = std::array<std::vector<std::vector<std::string>>, 4>;

std::string SpanKey(TokenSpan span) {
  return std::to_string(span.start) + ":" + std::to_string(span.end);
}

void AddItems(const EventMention &e, Items &items) {
  items[0].push_back({SpanKey(e.trigger)});
  items[1].push_back({SpanKey(e.trigger), e.event_type});
  for (const ArgumentMention &a : e.arguments) {
    items[2].push_back({SpanKey(a.span), e.event_type});
    items[3].push_back({SpanKey(a.span), e.event_type, a.role});
  }
}

bool Allowed(const std::string &type, const std::set<std::string> *restrict_types) {
  return !restrict_types || restrict_types->count(type);
}

}  // namespace

ScoreReport Score(const std::vector<PredictionRecord> &predictions, const Corpus &gold,
                  const std::set<std::string> *restrict_types) {
  ScoreReport report;
  std::map<std::string, size_t> gold_index;
  for (size_t i = 0; i < gold.sentences.size(); ++i) {
    gold_index.emplace(SentenceKey(gold.sentences[i].doc_id, gold.sentences[i].sent_id), i);
  }

  std::vector<Items> predicted(gold.sentences.size());
  for (const PredictionRecord &r : predictions) {
    auto it = gold_index.find(SentenceKey(r.doc_id, r.sent_id));
    if (it == gold_index.end()) {
      ++report.unknown_sentences;
      report.errors.push_back("prediction for unknown sentence (doc_id=" + r.doc_id +
                              ", sent_id=" + r.sent_id + ")");
      Items orphan;
      for (const EventPrediction &e : r.events) {
        if (Allowed(e.event_type, restrict_types)) AddItems(e, orphan);
      }
      for (size_t m = 0; m < 4; ++m) report.counts[m].fp += orphan[m].size();
      continue;
    }
    size_t num_tokens = gold.sentences[it->second].tokens.size();
    for (const EventPrediction &e : r.events) {
      if (!Allowed(e.event_type, restrict_types)) continue;
      bool valid = e.trigger.ValidFor(num_tokens);
      for (const ArgumentMention &a : e.arguments) valid = valid && a.span.ValidFor(num_tokens);
      if (!valid) {
        ++report.invalid_spans;
        report.errors.push_back("span out of range in prediction for (doc_id=" + r.doc_id +
                                ", sent_id=" + r.sent_id + ")");
      }
      AddItems(e, predicted[it->second]);
    }
  }

  for (size_t i = 0; i < gold.sentences.size(); ++i) {
    Items gold_items;
    for (const EventMention &e : gold.sentences[i].events) {
      if (Allowed(e.event_type, restrict_types)) AddItems(e, gold_items);
    }
    for (size_t m = 0; m < 4; ++m) {
      report.counts[m] += TallyItems(std::move(predicted[i][m]), std::move(gold_items[m]));
    }
  }
  return report;
}

ScoreTable ScoreMatrix(const std::vector<std::pair<std::string, std::vector<PredictionRecord>>> &runs,
                       const Corpus &gold, const std::set<std::string> *restrict_types) {
  ScoreTable table;
  for (const auto &[label, records] : runs) {
    table.labels.push_back(label);
    table.rows.push_back(Score(records, gold, restrict_types));
  }
  return table;
}

namespace {

std::string Fixed(double value, int digits) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, value);
  return buf;
}

}  // namespace

std::string ScoreTable::ToText() const {
  size_t width = 5;
  for (const std::string &label : labels) width = std::max(width, label.size());
  std::ostringstream out;
  auto pad = [](std::string s, size_t w) {
    if (s.size() < w) s.append(w - s.size(), ' ');
    return s;
  };
  out << pad("run", width);
  for (Metric m : kAllMetrics) out << " | " << pad(std::string(MetricName(m)) + " P/R/F1", 20);
  out << "\n" << std::string(width, '-');
  for (size_t i = 0; i < kAllMetrics.size(); ++i) out << "-+-" << std::string(20, '-');
  out << "\n";
  for (size_t r = 0; r < rows.size(); ++r) {
    out << pad(labels[r], width);
    for (Metric m : kAllMetrics) {
      const PrfCounts &c = rows[r][m];
      out << " | "
          << pad(Fixed(100 * c.precision(), 1) + "/" + Fixed(100 * c.recall(), 1) + "/" +
                     Fixed(100 * c.f1(), 1),
                 20);
    }
    out << "\n";
  }
  return out.str();
}

std::string ScoreTable::ToCsv() const {
  std::ostringstream out;
  out << "run";
  for (Metric m : kAllMetrics) {
    std::string n = MetricName(m);
    out << "," << n << "_tp," << n << "_fp," << n << "_fn," << n << "_p," << n << "_r," << n << "_f1";
  }
  out << "\n";
  for (size_t r = 0; r < rows.size(); ++r) {
    out << labels[r];
    for (Metric m : kAllMetrics) {
      const PrfCounts &c = rows[r][m];
      out << "," << c.tp << "," << c.fp << "," << c.fn << "," << Fixed(c.precision(), 6) << ","
          << Fixed(c.recall(), 6) << "," << Fixed(c.f1(), 6);
    }
    out << "\n";
  }
  return out.str();
}

}  // namespace evtgen
