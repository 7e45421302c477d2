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

#include <concepts>
#include <cstdint>
#include <ranges>
#include <sstream>
#include <string>
#include <string_view>
#include <type_traits>
#include <vector>

#include <nlohmann/json.hpp>

#include "staticq/schedule.hpp"

namespace staticq {

enum class SlotKind { kReal, kDummy, kSkipped };

inline std::string_view to_string(SlotKind k) {
  switch (k) {
    case SlotKind::kReal: return "real";
    case SlotKind::kDummy: return "dummy";
    case SlotKind::kSkipped: return "skipped";
  }
  return "?";
}

inline SlotKind slot_kind_from_string(std::string_view s) {
  if (s == "real") return SlotKind::kReal;
  if (s == "dummy") return SlotKind::kDummy;
  if (s == "skipped") return SlotKind::kSkipped;
  throw InvalidArgument("unknown slot kind '" + std::string(s) + "'");
}

/// 64-bit FNV-1a over the byte representation of a payload.
struct DefaultFingerprint {
  static constexpr std::uint64_t kOffset = 0xcbf29ce484222325ULL;
  static constexpr std::uint64_t kPrime = 0x100000001b3ULL;

  static std::uint64_t mix(std::uint64_t h, std::uint8_t byte) noexcept {
    return (h ^ byte) * kPrime;
  }

  template <std::integral T>
  std::uint64_t operator()(T value) const noexcept {
    std::uint64_t h = kOffset;
    auto v = static_cast<std::make_unsigned_t<T>>(value);
    for (std::size_t i = 0; i < sizeof(T); ++i) h = mix(h, static_cast<std::uint8_t>(v >> (8 * i)));
    return h;
  }

  template <std::ranges::input_range R>
    requires std::integral<std::ranges::range_value_t<R>>
  std::uint64_t operator()(const R& range) const noexcept {
    using V = std::make_unsigned_t<std::ranges::range_value_t<R>>;
    std::uint64_t h = kOffset;
    for (auto x : range) {
      auto v = static_cast<V>(x);
      for (std::size_t i = 0; i < sizeof(V); ++i) h = mix(h, static_cast<std::uint8_t>(v >> (8 * i)));
    }
    return h;
  }
};

struct TranscriptRecord {
  std::size_t position;  // 1-based schedule slot
  Symbol oracle;
  SlotKind kind;
  std::uint64_t fingerprint;  // 0 for skipped slots

  friend bool operator==(const TranscriptRecord&, const TranscriptRecord&) = default;
};

/// Ordered log of consumed schedule slots.
class QueryTranscript {
 public:
  void append(const TranscriptRecord& r) {
    if (r.position == 0 || (!records_.empty() && r.position <= records_.back().position)) {
      throw InvalidArgument("transcript positions must be strictly increasing and 1-based");
    }
    records_.push_back(r);
  }

  const std::vector<TranscriptRecord>& records() const noexcept { return records_; }
  std::size_t size() const noexcept { return records_.size(); }
  bool empty() const noexcept { return records_.empty(); }

  std::uint64_t count(Symbol oracle, SlotKind kind) const noexcept {
    std::uint64_t c = 0;
    for (const auto& r : records_) c += (r.oracle == oracle && r.kind == kind);
    return c;
  }

  /// Slots consumed for `oracle`, whatever their kind.
  std::uint64_t slots(Symbol oracle) const noexcept {
    std::uint64_t c = 0;
    for (const auto& r : records_) c += (r.oracle == oracle);
    return c;
  }

  /// Oracle ids actually contacted (real and dummy), in order.
  std::vector<Symbol> contacted() const {
    std::vector<Symbol> out;
    for (const auto& r : records_) {
      if (r.kind != SlotKind::kSkipped) out.push_back(r.oracle);
    }
    return out;
  }

  std::vector<std::size_t> real_positions() const {
    std::vector<std::size_t> out;
    for (const auto& r : records_) {
      if (r.kind == SlotKind::kReal) out.push_back(r.position);
    }
    return out;
  }

  /// One JSON object per line: {"fingerprint","kind","oracle","pos"}.
  std::string to_jsonl() const {
    std::string out;
    for (const auto& r : records_) {
      nlohmann::json j{{"pos", r.position},
                       {"oracle", r.oracle},
                       {"kind", std::string(to_string(r.kind))},
                       {"fingerprint", r.fingerprint}};
      out += j.dump();
      out += '\n';
    }
    return out;
  }

  static QueryTranscript from_jsonl(std::string_view text) {
    QueryTranscript t;
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      try {
        const auto j = nlohmann::json::parse(line);
        for (const char* key : {"pos", "oracle", "fingerprint"}) {
          if (!j.at(key).is_number_unsigned()) {
            throw InvalidArgument(std::string("field ") + key + " must be a non-negative integer");
          }
        }
        t.append(TranscriptRecord{j.at("pos").get<std::size_t>(), j.at("oracle").get<Symbol>(),
                                  slot_kind_from_string(j.at("kind").get<std::string>()),
                                  j.at("fingerprint").get<std::uint64_t>()});
      } catch (const nlohmann::json::exception& e) {
        throw InvalidArgument("transcript line " + std::to_string(lineno) + ": " + e.what());
      } catch (const InvalidArgument& e) {
        throw InvalidArgument("transcript line " + std::to_string(lineno) + ": " + e.what());
      }
    }
    return t;
  }

 private:
  std::vector<TranscriptRecord> records_;
};

struct TranscriptCheck {
  bool ok = true;
  std::string error;
  std::vector<std::uint64_t> real_per_oracle;
  std::vector<std::uint64_t> slots_per_oracle;
};

/// Checks a transcript against the schedule it claims to follow: slots
/// 1..m are consumed contiguously, each record names the scheduled oracle,
/// and real queries stay within q.
inline TranscriptCheck check_transcript(const QueryTranscript& t, const Schedule& s) {
  TranscriptCheck c;
  const auto n = s.alphabet_size();
  c.real_per_oracle.assign(n, 0);
  c.slots_per_oracle.assign(n, 0);
  auto fail = [&](std::string msg) {
    c.ok = false;
    c.error = std::move(msg);
    return c;
  };
  std::size_t expected_pos = 1;
  for (const auto& r : t.records()) {
    if (r.position != expected_pos) {
      return fail("slot " + std::to_string(expected_pos) + " missing (found position " +
                  std::to_string(r.position) + ")");
    }
    if (r.position > s.size()) return fail("position " + std::to_string(r.position) + " beyond schedule");
    if (r.oracle != s.at(r.position)) {
      return fail("position " + std::to_string(r.position) + " names oracle " +
                  std::to_string(r.oracle) + " but schedule has " +
                  std::to_string(s.at(r.position)));
    }
    ++c.slots_per_oracle[r.oracle - 1];
    if (r.kind == SlotKind::kReal) ++c.real_per_oracle[r.oracle - 1];
    ++expected_pos;
  }
  for (Symbol o = 1; o <= n; ++o) {
    if (c.real_per_oracle[o - 1] > s.source()[o]) {
      return fail("oracle " + std::to_string(o) + " got " +
                  std::to_string(c.real_per_oracle[o - 1]) + " real queries, budget " +
                  std::to_string(s.source()[o]));
    }
  }
  return c;
}

}  // namespace staticq
