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

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "staticq/schedule.hpp"

namespace staticq {

/// {"n": int, "q": [int], "schedule": [int]}, symbols 1-based.
inline nlohmann::json schedule_to_json(const Schedule& s) {
  const auto q = s.source().counts();
  return nlohmann::json{
      {"n", s.alphabet_size()},
      {"q", std::vector<std::uint64_t>(q.begin(), q.end())},
      {"schedule", std::vector<Symbol>(s.symbols().begin(), s.symbols().end())},
  };
}

/// Parses and validates a schedule document; the characteristic must be n*q.
inline Schedule schedule_from_json(const nlohmann::json& doc) {
  try {
    if (!doc.is_object()) throw InvalidArgument("schedule document must be an object");
    auto unsigned_array = [&](const char* key) {
      const auto& a = doc.at(key);
      if (!a.is_array()) throw InvalidArgument(std::string("schedule document: ") + key);
      for (const auto& v : a) {
        if (!v.is_number_unsigned()) {
          throw InvalidArgument(std::string("schedule document: non-negative integers in ") + key);
        }
      }
    };
    if (!doc.at("n").is_number_unsigned()) throw InvalidArgument("schedule document: n");
    unsigned_array("q");
    unsigned_array("schedule");
    const auto n = doc.at("n").get<std::uint64_t>();
    auto q = doc.at("q").get<std::vector<std::uint64_t>>();
    auto symbols = doc.at("schedule").get<std::vector<Symbol>>();
    if (q.size() != n) throw InvalidArgument("schedule document: len(q) != n");
    return Schedule(Characteristic(std::move(q)), std::move(symbols));
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("schedule document: ") + e.what());
  }
}

inline Schedule schedule_from_string(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("schedule document is not JSON: ") + e.what());
  }
  return schedule_from_json(doc);
}

}  // namespace staticq
