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

#ifndef EVTGEN_SRC_COMMON_H_
#define EVTGEN_SRC_COMMON_H_

#include <compare>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace evtgen {

enum class ErrorCode {
  kInvalidArgument,
  kIo,
  kParse,
  kValidation,
  kProtocol,
  kTimeout,
  kInternal,
};

// All recoverable failures in the core are reported as Error. The C API maps
// the code onto its status enum.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string &message)
      : std::runtime_error(message), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

// Half-open token range [start, end).
struct TokenSpan {
  int start = 0;
  int end = 0;

  int length() const { return end - start; }
  bool ValidFor(size_t num_tokens) const {
    return start >= 0 && start < end && static_cast<size_t>(end) <= num_tokens;
  }
  friend auto operator<=>(const TokenSpan &, const TokenSpan &) = default;
};

using Tokens = std::vector<std::string>;

// Space-joined text of tokens[span]. The span must be valid.
std::string JoinTokens(const Tokens &tokens, TokenSpan span);

// Splits on runs of ASCII whitespace; no empty pieces.
std::vector<std::string> SplitWhitespace(std::string_view text);

std::string_view Trim(std::string_view text);
std::string AsciiLower(std::string_view text);
std::string AsciiUpper(std::string_view text);
std::string Join(const std::vector<std::string> &parts, std::string_view sep);

// Warnings raised by loaders and builders (keyword counts, clamped m, ...).
// The default sink writes to stderr.
using WarningSink = std::function<void(const std::string &)>;
void SetWarningSink(WarningSink sink);
void Warn(const std::string &message);

// Stable 64-bit FNV-1a, used to derive RNG substreams from string keys.
uint64_t Fnv1a64(std::string_view data, uint64_t seed = 0xcbf29ce484222325ULL);

}  // namespace evtgen

#endif  // EVTGEN_SRC_COMMON_H_
