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

#ifndef EVTGEN_SRC_GENIO_H_
#define EVTGEN_SRC_GENIO_H_

#include <atomic>
#include <chrono>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "corpus.h"
#include "ontology.h"
#include "promptgen.h"

namespace evtgen {

struct GenerationOutput {
  std::string text;
  // Set when the item failed; text is then empty.
  std::optional<std::string> error;

  bool operator==(const GenerationOutput &) const = default;
};

// The only boundary to a model. Implementations return exactly one output
// per input, in input order; failures become empty outputs with an error.
class Generator {
 public:
  virtual ~Generator() = default;
  virtual std::vector<GenerationOutput> Generate(std::span<const PromptInstance> batch) = 0;
};

struct CorruptionConfig {
  double drop_slot = 0.0;  // per filled value: revert to the placeholder
  double recase = 0.0;     // per filled value: swap ASCII case
  double garble = 0.0;     // per output: replace with random text
  uint64_t seed = 0;

  bool active() const { return drop_slot > 0 || recase > 0 || garble > 0; }
};

// Emits the gold-filled target of each instance, optionally corrupted.
// Corruption draws are keyed by the instance, so results do not depend on
// batching or order.
class OracleGenerator : public Generator {
 public:
  OracleGenerator(const Corpus &gold, const Ontology &ontology, PromptConfig prompt,
                  CorruptionConfig corruption = {});

  std::vector<GenerationOutput> Generate(std::span<const PromptInstance> batch) override;

 private:
  GenerationOutput One(const PromptInstance &instance) const;

  const Ontology &ontology_;
  PromptConfig prompt_;
  CorruptionConfig corruption_;
  std::map<std::string, const SentenceRecord *> sentences_;
};

// Wire transport for one request: {"id", "inputs"} -> {"id", "outputs"}.
// Throws Error (kIo, kTimeout, kProtocol) on failure; a response with the
// wrong id or output count is a protocol error.
class Transport {
 public:
  virtual ~Transport() = default;
  virtual std::vector<std::string> Call(const std::string &id, const std::vector<std::string> &inputs,
                                        std::chrono::milliseconds timeout) = 0;
};

// Request/response line codec shared by both transports.
std::string EncodeRequest(const std::string &id, const std::vector<std::string> &inputs);
std::vector<std::string> DecodeResponse(const std::string &line, const std::string &expected_id,
                                        size_t expected_count);

// HTTP POST <base>/generate. `base` is "http://host:port".
class HttpTransport : public Transport {
 public:
  explicit HttpTransport(std::string base_url);
  std::vector<std::string> Call(const std::string &id, const std::vector<std::string> &inputs,
                                std::chrono::milliseconds timeout) override;

 private:
  std::string base_url_;
};

// Newline-delimited protocol over a child process's stdin/stdout. Several
// requests may be outstanding; responses are routed by id.
class ProcessTransport : public Transport {
 public:
  explicit ProcessTransport(const std::string &command);
  ~ProcessTransport() override;
  ProcessTransport(const ProcessTransport &) = delete;
  ProcessTransport &operator=(const ProcessTransport &) = delete;

  std::vector<std::string> Call(const std::string &id, const std::vector<std::string> &inputs,
                                std::chrono::milliseconds timeout) override;

 private:
  struct State;
  std::unique_ptr<State> state_;
};

struct HealthStatus {
  std::string status;
  std::string model;
};

// GET <base>/health.
HealthStatus CheckHealth(const std::string &base_url, std::chrono::milliseconds timeout);

struct ClientConfig {
  // "http://host:port" or "proc:<shell command>".
  std::string endpoint;
  size_t batch_size = 16;
  std::chrono::milliseconds timeout{30000};
  size_t max_in_flight = 4;
  size_t retries = 2;
  std::chrono::milliseconds backoff{100};  // doubled after every failed attempt
};

std::unique_ptr<Transport> MakeTransport(const std::string &endpoint);

// Batches inputs, keeps up to max_in_flight requests outstanding and
// restores input order. A batch that exhausts its retries yields empty
// outputs with the last error as the note.
class RemoteGenerator : public Generator {
 public:
  RemoteGenerator(ClientConfig config, std::unique_ptr<Transport> transport);
  explicit RemoteGenerator(ClientConfig config);

  std::vector<GenerationOutput> Generate(std::span<const PromptInstance> batch) override;

  size_t requests_sent() const { return requests_sent_.load(); }

 private:
  ClientConfig config_;
  std::unique_ptr<Transport> transport_;
  std::atomic<size_t> requests_sent_{0};
  std::atomic<uint64_t> next_id_{0};
};

}  // namespace evtgen

#endif  // EVTGEN_SRC_GENIO_H_
