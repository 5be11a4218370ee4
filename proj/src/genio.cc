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

#include "genio.h"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <condition_variable>
#include <cstring>
#include <future>
#include <mutex>
#include <thread>

#include "httplib.h"
#include "json.hpp"
#include "rng.h"

namespace evtgen {

using json = nlohmann::json;

OracleGenerator::OracleGenerator(const Corpus &gold, const Ontology &ontology, PromptConfig prompt,
                                 CorruptionConfig corruption)
    : ontology_(ontology), prompt_(std::move(prompt)), corruption_(corruption) {
  for (const SentenceRecord &s : gold.sentences) {
    sentences_.emplace(SentenceKey(s.doc_id, s.sent_id), &s);
  }
}

std::vector<GenerationOutput> OracleGenerator::Generate(std::span<const PromptInstance> batch) {
  std::vector<GenerationOutput> out;
  out.reserve(batch.size());
  for (const PromptInstance &instance : batch) out.push_back(One(instance));
  return out;
}

namespace {

std::string SwapCase(const std::string &text) {
  std::string out = text;
  for (char &c : out) {
    if (c >= 'a' && c <= 'z') {
      c = static_cast<char>(c - 'a' + 'A');
    } else if (c >= 'A' && c <= 'Z') {
      c = static_cast<char>(c - 'A' + 'a');
    }
  }
  return out;
}

}  // namespace

GenerationOutput OracleGenerator::One(const PromptInstance &instance) const {
  auto it = sentences_.find(SentenceKey(instance.doc_id, instance.sent_id));
  const EventSchema *schema = ontology_.Find(instance.event_type);
  if (it == sentences_.end() || !schema) {
    return {"", "oracle: instance (doc_id=" + instance.doc_id + ", sent_id=" + instance.sent_id +
                    ", event_type=" + instance.event_type + ") not traceable to gold"};
  }
  PromptConfig prompt = prompt_;
  prompt.task = instance.task;
  std::optional<TokenSpan> trigger;
  if (instance.trigger) trigger = instance.trigger->span;

  try {
    if (!corruption_.active()) return {BuildTarget(*it->second, *schema, prompt, trigger), std::nullopt};

    Rng rng = Rng::ForKey(corruption_.seed,
                          {"oracle", TemplateKindName(instance.task), instance.doc_id, instance.sent_id,
                           instance.event_type,
                           trigger ? std::to_string(trigger->start) + ":" + std::to_string(trigger->end)
                                   : std::string()});
    FillTransform transform = [&](const std::string &value) -> std::optional<std::string> {
      if (rng.Bernoulli(corruption_.drop_slot)) return std::nullopt;
      if (rng.Bernoulli(corruption_.recase)) return SwapCase(value);
      return value;
    };
    std::string text = BuildTarget(*it->second, *schema, prompt, trigger, transform);
    if (rng.Bernoulli(corruption_.garble)) {
      static constexpr char kAlphabet[] = "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789 ";
      for (char &c : text) c = kAlphabet[rng.Uniform(sizeof(kAlphabet) - 1)];
    }
    return {std::move(text), std::nullopt};
  } catch (const Error &e) {
    return {"", std::string("oracle: ") + e.what()};
  }
}

std::string EncodeRequest(const std::string &id, const std::vector<std::string> &inputs) {
  json doc = {{"id", id}, {"inputs", inputs}};
  return doc.dump(-1, ' ', false, json::error_handler_t::replace);
}

std::vector<std::string> DecodeResponse(const std::string &line, const std::string &expected_id,
                                        size_t expected_count) {
  json doc;
  try {
    doc = json::parse(line);
  } catch (const json::parse_error &e) {
    throw Error(ErrorCode::kProtocol, std::string("malformed response: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("id") || !doc["id"].is_string() || !doc.contains("outputs") ||
      !doc["outputs"].is_array()) {
    throw Error(ErrorCode::kProtocol, "malformed response: expected {\"id\", \"outputs\"}");
  }
  if (doc["id"].get<std::string>() != expected_id) {
    throw Error(ErrorCode::kProtocol, "response id " + doc["id"].get<std::string>() +
                                          " does not match request " + expected_id);
  }
  const json &outputs = doc["outputs"];
  if (outputs.size() != expected_count) {
    throw Error(ErrorCode::kProtocol, "expected " + std::to_string(expected_count) + " outputs, got " +
                                          std::to_string(outputs.size()));
  }
  std::vector<std::string> out;
  out.reserve(outputs.size());
  for (const json &o : outputs) {
    if (!o.is_string()) throw Error(ErrorCode::kProtocol, "malformed response: non-string output");
    out.push_back(o.get<std::string>());
  }
  return out;
}

namespace {

void SetTimeouts(httplib::Client &client, std::chrono::milliseconds timeout) {
  auto sec = static_cast<time_t>(timeout.count() / 1000);
  auto usec = static_cast<time_t>((timeout.count() % 1000) * 1000);
  client.set_connection_timeout(sec, usec);
  client.set_read_timeout(sec, usec);
  client.set_write_timeout(sec, usec);
}

[[noreturn]] void ThrowHttp(httplib::Error err, const std::string &what) {
  ErrorCode code = err == httplib::Error::Read || err == httplib::Error::ConnectionTimeout
                       ? ErrorCode::kTimeout
                       : ErrorCode::kIo;
  throw Error(code, what + ": " + httplib::to_string(err));
}

}  // namespace

HttpTransport::HttpTransport(std::string base_url) : base_url_(std::move(base_url)) {
  while (!base_url_.empty() && base_url_.back() == '/') base_url_.pop_back();
}

std::vector<std::string> HttpTransport::Call(const std::string &id, const std::vector<std::string> &inputs,
                                             std::chrono::milliseconds timeout) {
  httplib::Client client(base_url_);
  SetTimeouts(client, timeout);
  auto res = client.Post("/generate", EncodeRequest(id, inputs), "application/json");
  if (!res) ThrowHttp(res.error(), "POST " + base_url_ + "/generate");
  if (res->status != 200) {
    throw Error(ErrorCode::kProtocol, "POST /generate returned HTTP " + std::to_string(res->status));
  }
  return DecodeResponse(res->body, id, inputs.size());
}

HealthStatus CheckHealth(const std::string &base_url, std::chrono::milliseconds timeout) {
  httplib::Client client(base_url);
  SetTimeouts(client, timeout);
  auto res = client.Get("/health");
  if (!res) ThrowHttp(res.error(), "GET " + base_url + "/health");
  if (res->status != 200) {
    throw Error(ErrorCode::kProtocol, "GET /health returned HTTP " + std::to_string(res->status));
  }
  try {
    json doc = json::parse(res->body);
    return {doc.at("status").get<std::string>(), doc.value("model", std::string())};
  } catch (const json::exception &e) {
    throw Error(ErrorCode::kProtocol, std::string("malformed health response: ") + e.what());
  }
}

struct ProcessTransport::State {
  pid_t pid = -1;
  int to_child = -1;
  int from_child = -1;
  std::thread reader;
  std::mutex write_mutex;
  std::mutex mutex;
  std::map<std::string, std::promise<std::string>> pending;
  bool closed = false;
  std::string close_reason;

  void ReadLoop() {
    std::string buffer;
    char chunk[4096];
    for (;;) {
      ssize_t n = ::read(from_child, chunk, sizeof(chunk));
      if (n < 0 && errno == EINTR) continue;
      if (n <= 0) break;
      buffer.append(chunk, static_cast<size_t>(n));
      size_t nl;
      while ((nl = buffer.find('\n')) != std::string::npos) {
        std::string line = buffer.substr(0, nl);
        buffer.erase(0, nl + 1);
        Dispatch(line);
      }
    }
    std::lock_guard<std::mutex> lock(mutex);
    closed = true;
    close_reason = "generator process closed its output";
    for (auto &[id, promise] : pending) {
      promise.set_exception(std::make_exception_ptr(Error(ErrorCode::kIo, close_reason)));
    }
    pending.clear();
  }

  void Dispatch(const std::string &line) {
    if (Trim(line).empty()) return;
    std::string id;
    try {
      json doc = json::parse(line);
      id = doc.at("id").get<std::string>();
    } catch (const json::exception &) {
      // An unparseable line cannot be routed; the waiting call times out.
      return;
    }
    std::lock_guard<std::mutex> lock(mutex);
    auto it = pending.find(id);
    if (it == pending.end()) return;  // late reply to a request that timed out
    it->second.set_value(line);
    pending.erase(it);
  }
};

ProcessTransport::ProcessTransport(const std::string &command) : state_(std::make_unique<State>()) {
  ::signal(SIGPIPE, SIG_IGN);
  int in_pipe[2], out_pipe[2];
  if (::pipe(in_pipe) != 0) throw Error(ErrorCode::kIo, "pipe failed");
  if (::pipe(out_pipe) != 0) {
    ::close(in_pipe[0]);
    ::close(in_pipe[1]);
    throw Error(ErrorCode::kIo, "pipe failed");
  }
  pid_t pid = ::fork();
  if (pid < 0) {
    for (int fd : {in_pipe[0], in_pipe[1], out_pipe[0], out_pipe[1]}) ::close(fd);
    throw Error(ErrorCode::kIo, "fork failed");
  }
  if (pid == 0) {
    ::dup2(in_pipe[0], STDIN_FILENO);
    ::dup2(out_pipe[1], STDOUT_FILENO);
    for (int fd : {in_pipe[0], in_pipe[1], out_pipe[0], out_pipe[1]}) ::close(fd);
    ::execl("/bin/sh", "sh", "-c", command.c_str(), static_cast<char *>(nullptr));
    ::_exit(127);
  }
  ::close(in_pipe[0]);
  ::close(out_pipe[1]);
  ::fcntl(in_pipe[1], F_SETFD, FD_CLOEXEC);
  ::fcntl(out_pipe[0], F_SETFD, FD_CLOEXEC);
  state_->pid = pid;
  state_->to_child = in_pipe[1];
  state_->from_child = out_pipe[0];
  state_->reader = std::thread([s = state_.get()] { s->ReadLoop(); });
}

ProcessTransport::~ProcessTransport() {
  if (state_->to_child >= 0) ::close(state_->to_child);
  int status = 0;
  bool exited = false;
  for (int i = 0; i < 200 && !exited; ++i) {
    exited = ::waitpid(state_->pid, &status, WNOHANG) == state_->pid;
    if (!exited) std::this_thread::sleep_for(std::chrono::milliseconds(10));
  }
  if (!exited) {
    ::kill(state_->pid, SIGKILL);
    ::waitpid(state_->pid, &status, 0);
  }
  if (state_->reader.joinable()) state_->reader.join();
  ::close(state_->from_child);
}

std::vector<std::string> ProcessTransport::Call(const std::string &id, const std::vector<std::string> &inputs,
                                                std::chrono::milliseconds timeout) {
  std::future<std::string> reply;
  {
    std::lock_guard<std::mutex> lock(state_->mutex);
    if (state_->closed) throw Error(ErrorCode::kIo, state_->close_reason);
    reply = state_->pending[id].get_future();
  }
  std::string line = EncodeRequest(id, inputs) + "\n";
  {
    std::lock_guard<std::mutex> lock(state_->write_mutex);
    size_t written = 0;
    while (written < line.size()) {
      ssize_t n = ::write(state_->to_child, line.data() + written, line.size() - written);
      if (n < 0 && errno == EINTR) continue;
      if (n <= 0) {
        std::lock_guard<std::mutex> plock(state_->mutex);
        state_->pending.erase(id);
        throw Error(ErrorCode::kIo, std::string("write to generator process failed: ") + std::strerror(errno));
      }
      written += static_cast<size_t>(n);
    }
  }
  if (reply.wait_for(timeout) != std::future_status::ready) {
    std::lock_guard<std::mutex> lock(state_->mutex);
    auto it = state_->pending.find(id);
    if (it != state_->pending.end()) {
      state_->pending.erase(it);
      throw Error(ErrorCode::kTimeout, "request " + id + " timed out");
    }
  }
  return DecodeResponse(reply.get(), id, inputs.size());
}

std::unique_ptr<Transport> MakeTransport(const std::string &endpoint) {
  if (endpoint.starts_with("proc:")) return std::make_unique<ProcessTransport>(endpoint.substr(5));
  if (endpoint.starts_with("http://") || endpoint.starts_with("https://")) {
    return std::make_unique<HttpTransport>(endpoint);
  }
  throw Error(ErrorCode::kInvalidArgument, "unsupported generator endpoint " + endpoint);
}

RemoteGenerator::RemoteGenerator(ClientConfig config, std::unique_ptr<Transport> transport)
    : config_(std::move(config)), transport_(std::move(transport)) {
  if (config_.batch_size == 0) throw Error(ErrorCode::kInvalidArgument, "batch_size must be >= 1");
  if (config_.max_in_flight == 0) throw Error(ErrorCode::kInvalidArgument, "max_in_flight must be >= 1");
}

RemoteGenerator::RemoteGenerator(ClientConfig config)
    : RemoteGenerator(config, MakeTransport(config.endpoint)) {}

std::vector<GenerationOutput> RemoteGenerator::Generate(std::span<const PromptInstance> batch) {
  std::vector<GenerationOutput> out(batch.size());
  size_t num_batches = (batch.size() + config_.batch_size - 1) / config_.batch_size;
  std::atomic<size_t> next{0};

  auto worker = [&] {
    for (size_t b = next++; b < num_batches; b = next++) {
      size_t begin = b * config_.batch_size;
      size_t end = std::min(batch.size(), begin + config_.batch_size);
      std::vector<std::string> inputs;
      for (size_t i = begin; i < end; ++i) inputs.push_back(batch[i].input);

      std::string last_error;
      bool done = false;
      for (size_t attempt = 0; attempt <= config_.retries && !done; ++attempt) {
        if (attempt > 0) std::this_thread::sleep_for(config_.backoff * (1LL << (attempt - 1)));
        std::string id = "req-" + std::to_string(next_id_++);
        ++requests_sent_;
        try {
          std::vector<std::string> outputs = transport_->Call(id, inputs, config_.timeout);
          for (size_t i = begin; i < end; ++i) out[i] = {std::move(outputs[i - begin]), std::nullopt};
          done = true;
        } catch (const Error &e) {
          last_error = e.what();
        }
      }
      if (!done) {
        for (size_t i = begin; i < end; ++i) {
          out[i] = {"", "request failed after " + std::to_string(config_.retries + 1) +
                            " attempts: " + last_error};
        }
      }
    }
  };

  size_t workers = std::min(config_.max_in_flight, num_batches);
  std::vector<std::thread> threads;
  for (size_t i = 1; i < workers; ++i) threads.emplace_back(worker);
  if (workers > 0) worker();
  for (std::thread &t : threads) t.join();
  return out;
}

}  // namespace evtgen
