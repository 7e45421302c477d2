// Copyright 2026 The staticq Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <string_view>
#include <vector>

namespace staticq {

/// Deterministic generator with labeled substreams. A substream depends only
/// on the root seed and the label path, never on how much of the parent has
/// been consumed.
class Rng {
 public:
  explicit Rng(std::uint64_t seed)
      : material_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)} {
    reseed();
  }

  Rng substream(std::string_view label) const {
    Rng child(*this, 0xFFFFFFFFu);
    for (unsigned char c : label) child.material_.push_back(c);
    child.reseed();
    return child;
  }

  Rng substream(std::uint64_t index) const {
    Rng child(*this, 0xFFFFFFFEu);
    child.material_.push_back(static_cast<std::uint32_t>(index));
    child.material_.push_back(static_cast<std::uint32_t>(index >> 32));
    child.reseed();
    return child;
  }

  std::uint64_t next() { return engine_(); }

  /// Uniform in [0, bound).
  std::uint64_t uniform(std::uint64_t bound) {
    return std::uniform_int_distribution<std::uint64_t>(0, bound - 1)(engine_);
  }

  int bit() { return static_cast<int>(engine_() & 1u); }

  std::vector<std::uint8_t> bytes(std::size_t n) {
    std::vector<std::uint8_t> out(n);
    fill(out);
    return out;
  }

  void fill(std::span<std::uint8_t> out) {
    std::uint64_t word = 0;
    for (std::size_t i = 0; i < out.size(); ++i) {
      if (i % 8 == 0) word = engine_();
      out[i] = static_cast<std::uint8_t>(word >> (8 * (i % 8)));
    }
  }

  using result_type = std::uint64_t;
  static constexpr result_type min() { return std::mt19937_64::min(); }
  static constexpr result_type max() { return std::mt19937_64::max(); }
  result_type operator()() { return engine_(); }

 private:
  Rng(const Rng& parent, std::uint32_t tag) : material_(parent.material_) {
    material_.push_back(tag);
  }

  void reseed() {
    std::seed_seq seq(material_.begin(), material_.end());
    engine_.seed(seq);
  }

  std::vector<std::uint32_t> material_;
  std::mt19937_64 engine_;
};

}  // namespace staticq
