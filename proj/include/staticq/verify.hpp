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

// Brute-force checks for the schedule construction. Nothing in here shares
// code with the embedder; the subsequence test is a plain DP table.

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "staticq/schedule.hpp"

namespace staticq::verify {

struct Guard {
  std::uint64_t max_total = 8;     // Q
  std::size_t max_alphabet = 4;    // n
};

inline void check_guard(const Characteristic& q, const Guard& guard) {
  if (q.total() > guard.max_total || q.alphabet_size() > guard.max_alphabet) {
    throw GuardViolation("exhaustive enumeration needs Q <= " + std::to_string(guard.max_total) +
                         " and n <= " + std::to_string(guard.max_alphabet) + " (got Q=" +
                         std::to_string(q.total()) + ", n=" +
                         std::to_string(q.alphabet_size()) + ")");
  }
}

/// Calls `visit` once for every string over 1..n with characteristic at most
/// q, ordered by length, then lexicographically. Returning false from `visit`
/// stops the enumeration. Returns false iff stopped early.
inline bool enumerate_bounded(const Characteristic& q,
                              const std::function<bool(std::span<const Symbol>)>& visit,
                              const Guard& guard = {}) {
  check_guard(q, guard);
  const std::size_t n = q.alphabet_size();
  std::vector<std::uint64_t> left(q.counts().begin(), q.counts().end());
  std::vector<Symbol> buf;

  std::function<bool(std::size_t)> extend = [&](std::size_t remaining) -> bool {
    if (remaining == 0) return visit(buf);
    for (Symbol s = 1; s <= n; ++s) {
      if (left[s - 1] == 0) continue;
      --left[s - 1];
      buf.push_back(s);
      const bool go_on = extend(remaining - 1);
      buf.pop_back();
      ++left[s - 1];
      if (!go_on) return false;
    }
    return true;
  };
  for (std::uint64_t len = 0; len <= q.total(); ++len) {
    if (!extend(len)) return false;
  }
  return true;
}

inline std::vector<std::vector<Symbol>> enumerate_bounded_all(const Characteristic& q,
                                                              const Guard& guard = {}) {
  std::vector<std::vector<Symbol>> out;
  enumerate_bounded(
      q,
      [&](std::span<const Symbol> s) {
        out.emplace_back(s.begin(), s.end());
        return true;
      },
      guard);
  return out;
}

/// DP decision of sub ⊑ s: reach[i][j] says sub[0..i) is a subsequence of
/// s[0..j).
inline bool is_subsequence_dp(std::span<const Symbol> sub, std::span<const Symbol> s) {
  const std::size_t m = sub.size();
  const std::size_t l = s.size();
  std::vector<std::vector<char>> reach(m + 1, std::vector<char>(l + 1, 0));
  for (std::size_t j = 0; j <= l; ++j) reach[0][j] = 1;
  for (std::size_t i = 1; i <= m; ++i) {
    for (std::size_t j = 1; j <= l; ++j) {
      reach[i][j] = reach[i][j - 1] || (reach[i - 1][j - 1] && sub[i - 1] == s[j - 1]);
    }
  }
  return reach[m][l] != 0;
}

struct UniversalityResult {
  std::optional<std::vector<Symbol>> counterexample;
  std::uint64_t strings_checked = 0;

  bool ok() const noexcept { return !counterexample.has_value(); }
};

/// Checks that every string of characteristic <= q is a subsequence of
/// `target`; reports the first failure in enumeration order.
inline UniversalityResult check_universal_against(std::span<const Symbol> target,
                                                  const Characteristic& q,
                                                  const Guard& guard = {}) {
  UniversalityResult result;
  enumerate_bounded(
      q,
      [&](std::span<const Symbol> sub) {
        ++result.strings_checked;
        if (is_subsequence_dp(sub, target)) return true;
        result.counterexample.emplace(sub.begin(), sub.end());
        return false;
      },
      guard);
  return result;
}

inline UniversalityResult check_universal(const Characteristic& q, const Guard& guard = {}) {
  check_guard(q, guard);
  const auto schedule = build_universal_schedule(q);
  return check_universal_against(schedule.symbols(), q, guard);
}

}  // namespace staticq::verify
