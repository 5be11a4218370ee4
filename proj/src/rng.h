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

#ifndef EVTGEN_SRC_RNG_H_
#define EVTGEN_SRC_RNG_H_

#include <cstdint>
#include <initializer_list>
#include <string_view>
#include <utility>
#include <vector>

#include "common.h"

namespace evtgen {

// SplitMix64 stream with portable bounded sampling. Standard library
// distributions are implementation-defined, so seeded outputs would differ
// across toolchains; everything seeded in evtgen goes through this class.
class Rng {
 public:
  explicit Rng(uint64_t seed) : state_(seed) {}

  // Substream keyed by a base seed plus string parts, independent of the
  // order in which substreams are created.
  static Rng ForKey(uint64_t seed, std::initializer_list<std::string_view> parts) {
    uint64_t h = Fnv1a64(std::string_view(reinterpret_cast<const char *>(&seed),
                                          sizeof(seed)));
    for (std::string_view part : parts) {
      h = Fnv1a64(part, h);
      h = Fnv1a64(std::string_view("\x1f", 1), h);
    }
    return Rng(h);
  }

  uint64_t Next() {
    uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, n). n must be positive.
  uint64_t Uniform(uint64_t n) {
    uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    uint64_t x;
    do {
      x = Next();
    } while (x >= limit);
    return x % n;
  }

  // Uniform in [0, 1).
  double UniformReal() { return (Next() >> 11) * 0x1.0p-53; }

  bool Bernoulli(double p) {
    if (p <= 0.0) return false;
    if (p >= 1.0) return true;
    return UniformReal() < p;
  }

  // Selects min(k, items.size()) elements without replacement, in draw order.
  template <typename T>
  std::vector<T> Sample(std::vector<T> items, size_t k) {
    if (k > items.size()) k = items.size();
    for (size_t i = 0; i < k; ++i) {
      size_t j = i + Uniform(items.size() - i);
      std::swap(items[i], items[j]);
    }
    items.resize(k);
    return items;
  }

  template <typename T>
  void Shuffle(std::vector<T> &items) {
    for (size_t i = items.size(); i > 1; --i) {
      std::swap(items[i - 1], items[Uniform(i)]);
    }
  }

 private:
  uint64_t state_;
};

}  // namespace evtgen

#endif  // EVTGEN_SRC_RNG_H_
