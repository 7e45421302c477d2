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

// Wraps a small adaptive client (it picks the next oracle from the previous
// answer) and prints its output plus the slot transcript.

#include <cstdint>
#include <iostream>

#include "staticq/interposer.hpp"

int main() {
  using staticq::OracleAccess;
  using staticq::OracleBinding;

  std::vector<OracleBinding<std::uint64_t, std::uint64_t>> oracles{
      {1, [](std::uint64_t x) { return x * 3 + 1; }, 0},
      {2, [](std::uint64_t x) { return x / 2; }, 0},
  };

  auto client = [](OracleAccess<std::uint64_t, std::uint64_t>& o) {
    std::uint64_t v = 7;
    for (int i = 0; i < 4; ++i) {
      v = (v % 2 == 0) ? o.query(2, v) : o.query(1, v);
    }
    return v;
  };

  const staticq::Characteristic q({2, 2});
  const auto direct = staticq::run_direct<std::uint64_t, std::uint64_t>(client, oracles);
  const auto wrapped = staticq::run_wrapped<std::uint64_t, std::uint64_t>(
      client, q, oracles, staticq::QueryMode::kDummy, /*flush=*/true);

  std::cout << "direct output:  " << direct << '\n'
            << "wrapped output: " << wrapped.output << '\n'
            << wrapped.transcript.to_jsonl();
  return direct == wrapped.output ? 0 : 1;
}
