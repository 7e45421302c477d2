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

// Universal static query schedules.
//
// Given a per-oracle budget q = (q_1, ..., q_n), the schedule s is obtained by
// placing n * q_sigma copies of symbol sigma at the times k / q_sigma,
// k = 1 .. n * q_sigma, on the interval (0, n] and reading the symbols off in
// time order (ascending symbol id on equal times). Every string in which each
// sigma occurs at most q_sigma times is a subsequence of s.

#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <functional>
#include <queue>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "staticq/errors.hpp"

namespace staticq {

/// Oracle / alphabet symbol, 1-based.
using Symbol = std::uint32_t;

namespace detail {

inline std::uint64_t checked_add(std::uint64_t a, std::uint64_t b, const char* what) {
  std::uint64_t r = 0;
  if (__builtin_add_overflow(a, b, &r)) {
    throw OverflowError(std::string("integer overflow computing ") + what);
  }
  return r;
}

inline std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b, const char* what) {
  std::uint64_t r = 0;
  if (__builtin_mul_overflow(a, b, &r)) {
    throw OverflowError(std::string("integer overflow computing ") + what);
  }
  return r;
}

}  // namespace detail

/// Per-symbol query counts (q_1, ..., q_n).
class Characteristic {
 public:
  explicit Characteristic(std::vector<std::uint64_t> counts) : counts_(std::move(counts)) {
    if (counts_.empty()) throw InvalidArgument("characteristic needs at least one symbol");
    for (auto c : counts_) total_ = detail::checked_add(total_, c, "total budget Q");
  }

  /// All-zero characteristic over n symbols.
  static Characteristic zeros(std::size_t n) {
    return Characteristic(std::vector<std::uint64_t>(n, 0));
  }

  std::size_t alphabet_size() const noexcept { return counts_.size(); }

  /// Count of `symbol` (1-based).
  std::uint64_t operator[](Symbol symbol) const {
    if (symbol == 0 || symbol > counts_.size()) {
      throw InvalidArgument("symbol " + std::to_string(symbol) + " outside 1.." +
                            std::to_string(counts_.size()));
    }
    return counts_[symbol - 1];
  }

  std::uint64_t total() const noexcept { return total_; }
  std::span<const std::uint64_t> counts() const noexcept { return counts_; }

  /// Every count multiplied by `factor`, with overflow checking.
  Characteristic scaled(std::uint64_t factor) const {
    std::vector<std::uint64_t> out(counts_.size());
    for (std::size_t i = 0; i < counts_.size(); ++i) {
      out[i] = detail::checked_mul(counts_[i], factor, "scaled characteristic");
    }
    return Characteristic(std::move(out));
  }

  /// Pointwise <= on equal-size characteristics.
  bool at_most(const Characteristic& bound) const noexcept {
    if (bound.counts_.size() != counts_.size()) return false;
    for (std::size_t i = 0; i < counts_.size(); ++i) {
      if (counts_[i] > bound.counts_[i]) return false;
    }
    return true;
  }

  friend bool operator==(const Characteristic& a, const Characteristic& b) {
    return a.counts_ == b.counts_;
  }

 private:
  std::vector<std::uint64_t> counts_;
  std::uint64_t total_ = 0;
};

/// Exact positive rational time numerator/denominator.
class TimePoint {
 public:
  TimePoint(std::uint64_t numerator, std::uint64_t denominator)
      : num_(numerator), den_(denominator) {
    if (den_ == 0) throw InvalidArgument("time point with zero denominator");
    if (num_ == 0) throw InvalidArgument("time point must be positive");
  }

  std::uint64_t numerator() const noexcept { return num_; }
  std::uint64_t denominator() const noexcept { return den_; }

  // Cross-multiplication in 128 bits; 2/4 and 1/2 compare equal.
  friend std::strong_ordering operator<=>(const TimePoint& a, const TimePoint& b) noexcept {
    const auto lhs = static_cast<unsigned __int128>(a.num_) * b.den_;
    const auto rhs = static_cast<unsigned __int128>(b.num_) * a.den_;
    if (lhs < rhs) return std::strong_ordering::less;
    if (lhs > rhs) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }
  friend bool operator==(const TimePoint& a, const TimePoint& b) noexcept {
    return (a <=> b) == std::strong_ordering::equal;
  }

 private:
  std::uint64_t num_;
  std::uint64_t den_;
};

struct LineEntry {
  TimePoint time;
  Symbol symbol;

  // Lexicographic (time, symbol): exactly the projection order.
  friend std::strong_ordering operator<=>(const LineEntry& a, const LineEntry& b) noexcept {
    if (auto c = a.time <=> b.time; c != 0) return c;
    return a.symbol <=> b.symbol;
  }
  friend bool operator==(const LineEntry& a, const LineEntry& b) noexcept {
    return a.time == b.time && a.symbol == b.symbol;
  }
};

/// A finite set of (time, symbol) pairs. Inserting an equal pair is a no-op.
class LineSequence {
 public:
  LineSequence() = default;
  LineSequence(std::initializer_list<LineEntry> entries) : entries_(entries) {}

  bool insert(TimePoint time, Symbol symbol) {
    if (symbol == 0) throw InvalidArgument("symbols are 1-based");
    return entries_.insert(LineEntry{time, symbol}).second;
  }

  std::size_t size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }

  /// Entries in projection order.
  const std::set<LineEntry>& entries() const noexcept { return entries_; }

  /// Set union.
  LineSequence united(const LineSequence& other) const {
    LineSequence out = *this;
    out.entries_.insert(other.entries_.begin(), other.entries_.end());
    return out;
  }

 private:
  std::set<LineEntry> entries_;
};

/// The universal static string together with the budget it was built from.
class Schedule {
 public:
  /// Validates that `symbols` has characteristic exactly n * q.
  Schedule(Characteristic source, std::vector<Symbol> symbols)
      : source_(std::move(source)), symbols_(std::move(symbols)) {
    const auto n = source_.alphabet_size();
    const auto expected = source_.scaled(n);
    std::vector<std::uint64_t> seen(n, 0);
    for (Symbol s : symbols_) {
      if (s == 0 || s > n) {
        throw InvalidArgument("schedule symbol " + std::to_string(s) + " outside 1.." +
                              std::to_string(n));
      }
      ++seen[s - 1];
    }
    if (Characteristic(std::move(seen)) != expected) {
      throw InvalidArgument("schedule characteristic does not equal n*q");
    }
  }

  const Characteristic& source() const noexcept { return source_; }
  std::size_t alphabet_size() const noexcept { return source_.alphabet_size(); }
  std::size_t size() const noexcept { return symbols_.size(); }
  bool empty() const noexcept { return symbols_.empty(); }
  std::span<const Symbol> symbols() const noexcept { return symbols_; }

  /// Symbol at 1-based `position`.
  Symbol at(std::size_t position) const {
    if (position == 0 || position > symbols_.size()) {
      throw InvalidArgument("schedule position " + std::to_string(position) + " out of range");
    }
    return symbols_[position - 1];
  }

  friend bool operator==(const Schedule& a, const Schedule& b) {
    return a.source_ == b.source_ && a.symbols_ == b.symbols_;
  }

 private:
  Characteristic source_;
  std::vector<Symbol> symbols_;
};

/// S = union over sigma of {k / q_sigma : k = 1 .. n q_sigma} x {sigma}.
inline LineSequence build_line_sequence(const Characteristic& q) {
  const std::uint64_t n = q.alphabet_size();
  // Guards the total, so every per-symbol n*q_sigma fits as well.
  detail::checked_mul(n, q.total(), "schedule length n*Q");
  LineSequence out;
  for (Symbol sigma = 1; sigma <= n; ++sigma) {
    const auto q_sigma = q[sigma];
    const auto copies = detail::checked_mul(n, q_sigma, "n*q_sigma");
    for (std::uint64_t k = 1; k <= copies; ++k) out.insert(TimePoint(k, q_sigma), sigma);
  }
  return out;
}

/// Reads the symbols of `line` in time order, ties by ascending symbol.
inline std::vector<Symbol> project(const LineSequence& line) {
  std::vector<Symbol> out;
  out.reserve(line.size());
  for (const auto& e : line.entries()) out.push_back(e.symbol);
  return out;
}

/// Builds the universal schedule for q by an n-way merge of the progressions
/// (k / q_sigma)_k. O(nQ log n) and never materializes the point set.
inline Schedule build_universal_schedule(const Characteristic& q) {
  const std::uint64_t n = q.alphabet_size();
  const auto length = detail::checked_mul(n, q.total(), "schedule length n*Q");

  struct Cursor {
    TimePoint time;
    Symbol symbol;
    std::uint64_t k;
  };
  // Min-heap on (time, symbol).
  auto later = [](const Cursor& a, const Cursor& b) {
    return LineEntry{a.time, a.symbol} > LineEntry{b.time, b.symbol};
  };
  std::priority_queue<Cursor, std::vector<Cursor>, decltype(later)> heap(later);
  for (Symbol sigma = 1; sigma <= n; ++sigma) {
    if (q[sigma] > 0) heap.push(Cursor{TimePoint(1, q[sigma]), sigma, 1});
  }

  std::vector<Symbol> symbols;
  symbols.reserve(length);
  while (!heap.empty()) {
    Cursor c = heap.top();
    heap.pop();
    symbols.push_back(c.symbol);
    const auto q_sigma = q[c.symbol];
    if (c.k < n * q_sigma) heap.push(Cursor{TimePoint(c.k + 1, q_sigma), c.symbol, c.k + 1});
  }
  return Schedule(q, std::move(symbols));
}

/// Occurrence count of each symbol 1..n in `s`.
inline Characteristic characteristic_of(std::span<const Symbol> s, std::size_t n) {
  if (n == 0) throw InvalidArgument("alphabet must be non-empty");
  std::vector<std::uint64_t> counts(n, 0);
  for (Symbol x : s) {
    if (x == 0 || x > n) {
      throw InvalidArgument("symbol " + std::to_string(x) + " outside 1.." + std::to_string(n));
    }
    ++counts[x - 1];
  }
  return Characteristic(std::move(counts));
}

}  // namespace staticq
