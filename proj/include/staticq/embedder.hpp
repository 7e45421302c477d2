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
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "staticq/schedule.hpp"

namespace staticq {

/// Online greedy embedding of an adaptively revealed string into a fixed
/// target string. Each call returns the least 1-based index k > last_index()
/// with target[k] == symbol.
///
/// Per-symbol position lists with monotone cursors: total work over a whole
/// run is O(|target| + number of calls).
class EmbeddingState {
 public:
  EmbeddingState(std::span<const Symbol> target, std::size_t alphabet_size)
      : length_(target.size()), positions_(alphabet_size), cursors_(alphabet_size, 0) {
    if (alphabet_size == 0) throw InvalidArgument("alphabet must be non-empty");
    for (std::size_t i = 0; i < target.size(); ++i) {
      const Symbol s = target[i];
      if (s == 0 || s > alphabet_size) {
        throw InvalidArgument("target symbol " + std::to_string(s) + " outside alphabet");
      }
      positions_[s - 1].push_back(i + 1);
    }
  }

  explicit EmbeddingState(const Schedule& schedule)
      : EmbeddingState(schedule.symbols(), schedule.alphabet_size()) {}

  /// Next embedding index for `symbol`, or nullopt when the target has no
  /// further occurrence (the revealed string is not embeddable from here).
  /// State is unchanged on nullopt.
  std::optional<std::size_t> next_index(Symbol symbol) {
    if (symbol == 0 || symbol > positions_.size()) {
      throw InvalidArgument("symbol " + std::to_string(symbol) + " outside 1.." +
                            std::to_string(positions_.size()));
    }
    const auto& pos = positions_[symbol - 1];
    auto& cur = cursors_[symbol - 1];
    while (cur < pos.size() && pos[cur] <= last_index_) ++cur;
    if (cur == pos.size()) return std::nullopt;
    last_index_ = pos[cur++];
    return last_index_;
  }

  std::size_t last_index() const noexcept { return last_index_; }
  std::size_t target_size() const noexcept { return length_; }
  std::size_t alphabet_size() const noexcept { return positions_.size(); }

 private:
  std::size_t length_;
  std::vector<std::vector<std::size_t>> positions_;
  std::vector<std::size_t> cursors_;
  std::size_t last_index_ = 0;
};

/// Greedy embedding of all of `sub` into `target`; nullopt when `sub` is not a
/// subsequence.
inline std::optional<std::vector<std::size_t>> embed_offline(std::span<const Symbol> target,
                                                             std::span<const Symbol> sub,
                                                             std::size_t alphabet_size) {
  EmbeddingState state(target, alphabet_size);
  std::vector<std::size_t> out;
  out.reserve(sub.size());
  for (Symbol s : sub) {
    auto j = state.next_index(s);
    if (!j) return std::nullopt;
    out.push_back(*j);
  }
  return out;
}

inline std::optional<std::vector<std::size_t>> embed_offline(const Schedule& schedule,
                                                             std::span<const Symbol> sub) {
  return embed_offline(schedule.symbols(), sub, schedule.alphabet_size());
}

}  // namespace staticq
