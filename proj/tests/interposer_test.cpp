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

#include "staticq/interposer.hpp"

#include <algorithm>
#include <cstdint>
#include <memory>
#include <numeric>
#include <random>
#include <vector>

#include "gtest/gtest.h"

namespace staticq {
namespace {

using U64 = std::uint64_t;
using Binding = OracleBinding<U64, U64>;
using Access = OracleAccess<U64, U64>;
using USession = Session<U64, U64>;

U64 mix(U64 x) {
  x ^= x >> 33;
  x *= 0xff51afd7ed558ccdULL;
  x ^= x >> 33;
  return x;
}

std::vector<Binding> stateless(std::size_t n) {
  std::vector<Binding> out;
  for (Symbol i = 1; i <= n; ++i) {
    out.push_back({i, [i](U64 x) { return mix(x * 31 + i); }, 0});
  }
  return out;
}

// Counts how often each oracle was actually invoked.
std::vector<Binding> counted(std::size_t n, std::shared_ptr<std::vector<U64>> calls) {
  calls->assign(n, 0);
  auto out = stateless(n);
  for (auto& b : out) {
    auto inner = b.handler;
    const Symbol id = b.oracle_id;
    b.handler = [inner, id, calls](U64 x) {
      ++(*calls)[id - 1];
      return inner(x);
    };
  }
  return out;
}

// Adaptive client: the next oracle depends on the previous answer and the
// client's own coins; it never exceeds q.
struct ScriptedClient {
  std::uint32_t seed;
  std::vector<U64> q;

  U64 operator()(Access& o) const {
    std::mt19937_64 coins(seed);
    std::vector<U64> left = q;
    U64 acc = seed;
    const std::size_t total = std::accumulate(q.begin(), q.end(), U64{0});
    const std::size_t budget = coins() % (total + 1);
    for (std::size_t step = 0; step < budget; ++step) {
      std::vector<Symbol> open;
      for (Symbol i = 1; i <= q.size(); ++i) {
        if (left[i - 1] > 0) open.push_back(i);
      }
      const Symbol pick = open[(acc ^ coins()) % open.size()];
      --left[pick - 1];
      acc = acc * 1000003 ^ o.query(pick, acc + step);
    }
    return acc;
  }
};

struct FixedClient {
  std::vector<Symbol> order;
  U64 operator()(Access& o) const {
    U64 acc = 0;
    for (auto s : order) acc = acc * 7 + o.query(s, acc);
    return acc;
  }
};

TEST(NewSession, Examples) {
  Session<U64, U64> a(Characteristic({3, 2}), stateless(2), QueryMode::kDummy);
  EXPECT_EQ(a.schedule().size(), 10u);
  Session<U64, U64> b(Characteristic({1}), stateless(1), QueryMode::kSkip);
  EXPECT_EQ(b.schedule().size(), 1u);

  auto binds = stateless(2);
  binds[1].state = OracleState::kStateful;
  EXPECT_THROW(USession(Characteristic({3, 2}), binds, QueryMode::kDummy), ModeMismatch);
  EXPECT_NO_THROW(USession(Characteristic({3, 2}), binds, QueryMode::kSkip));
}

TEST(NewSession, BindingsMustCoverAllOracles) {
  EXPECT_THROW(USession(Characteristic({1, 1}), stateless(1), QueryMode::kDummy),
               InvalidArgument);
  auto binds = stateless(2);
  binds[1].oracle_id = 1;
  EXPECT_THROW(USession(Characteristic({1, 1}), binds, QueryMode::kDummy),
               InvalidArgument);
}

TEST(Query, FirstQueryToSecondOracleIssuesOneDummy) {
  auto calls = std::make_shared<std::vector<U64>>();
  Session<U64, U64> s(Characteristic({3, 2}), counted(2, calls), QueryMode::kDummy);
  const U64 r = s.query(2, 99);
  EXPECT_EQ(r, mix(99 * 31 + 2));
  const auto& recs = s.transcript().records();
  ASSERT_EQ(recs.size(), 2u);
  EXPECT_EQ(recs[0], (TranscriptRecord{1, 1, SlotKind::kDummy, DefaultFingerprint{}(U64{0})}));
  EXPECT_EQ(recs[1], (TranscriptRecord{2, 2, SlotKind::kReal, DefaultFingerprint{}(U64{99})}));
  EXPECT_EQ(*calls, (std::vector<U64>{1, 1}));
}

TEST(Query, FirstQueryToFirstOracleIsImmediate) {
  Session<U64, U64> s(Characteristic({3, 2}), stateless(2), QueryMode::kDummy);
  s.query(1, 5);
  ASSERT_EQ(s.transcript().size(), 1u);
  EXPECT_EQ(s.transcript().records()[0].kind, SlotKind::kReal);
  EXPECT_EQ(s.transcript().records()[0].position, 1u);
}

TEST(Query, BudgetExceededReportsOracleAndCount) {
  Session<U64, U64> s(Characteristic({3, 2}), stateless(2), QueryMode::kDummy);
  s.query(2, 1);
  s.query(2, 2);
  try {
    s.query(2, 3);
    FAIL() << "expected BudgetExceeded";
  } catch (const BudgetExceeded& e) {
    EXPECT_EQ(e.oracle(), 2u);
    EXPECT_EQ(e.attempted(), 3u);
    EXPECT_EQ(e.budget(), 2u);
  }
  // Session stays usable for in-budget queries.
  EXPECT_NO_THROW(s.query(1, 4));
}

TEST(Query, ZeroBudgetOracle) {
  Session<U64, U64> s(Characteristic({0, 1}), stateless(2), QueryMode::kDummy);
  EXPECT_THROW(s.query(1, 0), BudgetExceeded);
  EXPECT_NO_THROW(s.query(2, 0));
}

TEST(Query, UnknownOracleAborts) {
  Session<U64, U64> s(Characteristic({1, 1}), stateless(2), QueryMode::kDummy);
  EXPECT_THROW(s.query(3, 0), InterfaceInconsistency);
  EXPECT_THROW(s.query(0, 0), InterfaceInconsistency);
  s.finish();
  EXPECT_THROW(s.query(1, 0), InterfaceInconsistency);
}

TEST(Query, HandlerErrorsPropagate) {
  auto binds = stateless(1);
  binds[0].handler = [](U64 x) -> U64 {
    if (x == 13) throw std::domain_error("unlucky");
    return x;
  };
  Session<U64, U64> s(Characteristic({2}), binds, QueryMode::kDummy);
  EXPECT_THROW(s.query(1, 13), std::domain_error);
}

TEST(RunWrapped, ScriptedClientMatchesDirect) {
  const FixedClient client{{2, 1, 1, 2, 1}};
  const auto direct = run_direct<U64, U64>(client, stateless(2));
  const auto wrapped =
      run_wrapped<U64, U64>(client, Characteristic({3, 2}), stateless(2), QueryMode::kDummy);
  EXPECT_EQ(wrapped.output, direct);
  EXPECT_EQ(wrapped.transcript.real_positions(), (std::vector<std::size_t>{2, 3, 4, 5, 6}));
}

TEST(RunWrapped, SilentClient) {
  const FixedClient client{{}};
  const auto wrapped =
      run_wrapped<U64, U64>(client, Characteristic({3, 2}), stateless(2), QueryMode::kDummy);
  EXPECT_EQ(wrapped.output, 0u);
  EXPECT_TRUE(wrapped.transcript.empty());
}

TEST(RunWrapped, SeededClientsAreEquivalent) {
  const std::vector<U64> q{3, 1, 2};
  for (std::uint32_t seed = 0; seed < 100; ++seed) {
    const ScriptedClient client{seed, q};
    const auto direct = run_direct<U64, U64>(client, stateless(3));
    for (auto mode : {QueryMode::kDummy, QueryMode::kSkip}) {
      const auto wrapped = run_wrapped<U64, U64>(client, Characteristic(q), stateless(3), mode);
      EXPECT_EQ(wrapped.output, direct) << "seed " << seed;
    }
  }
}

TEST(Finish, Examples) {
  Session<U64, U64> a(Characteristic({3, 2}), stateless(2), QueryMode::kDummy);
  EXPECT_TRUE(a.finish().empty());

  auto calls = std::make_shared<std::vector<U64>>();
  Session<U64, U64> b(Characteristic({3, 2}), counted(2, calls), QueryMode::kDummy);
  const auto& t = b.finish(true);
  ASSERT_EQ(t.size(), 10u);
  EXPECT_EQ(t.contacted(), (std::vector<Symbol>{1, 2, 1, 1, 2, 1, 2, 1, 1, 2}));
  EXPECT_EQ(t.count(1, SlotKind::kDummy), 6u);
  EXPECT_EQ(*calls, (std::vector<U64>{6, 4}));

  auto calls2 = std::make_shared<std::vector<U64>>();
  Session<U64, U64> c(Characteristic({3, 2}), counted(2, calls2), QueryMode::kSkip);
  c.query(2, 0);
  const auto& t2 = c.finish(true);
  ASSERT_EQ(t2.size(), 10u);
  EXPECT_EQ(t2.count(1, SlotKind::kSkipped) + t2.count(2, SlotKind::kSkipped), 9u);
  EXPECT_EQ(*calls2, (std::vector<U64>{0, 1}));
}

TEST(Finish, FlushTwiceIsIdempotent) {
  Session<U64, U64> s(Characteristic({1, 1}), stateless(2), QueryMode::kDummy);
  EXPECT_EQ(s.finish(true).size(), 4u);
  EXPECT_EQ(s.finish(true).size(), 4u);
}

TEST(Invariants, StaticOrderAndCounting) {
  const std::vector<U64> q{2, 3};
  const auto expected = build_universal_schedule(Characteristic(q));
  for (std::uint32_t seed = 0; seed < 50; ++seed) {
    const ScriptedClient client{seed, q};
    const auto w = run_wrapped<U64, U64>(client, Characteristic(q), stateless(2), QueryMode::kDummy,
                                         /*flush=*/true);
    const auto contacted = w.transcript.contacted();
    EXPECT_TRUE(std::equal(contacted.begin(), contacted.end(), expected.symbols().begin(),
                           expected.symbols().end()));
    for (Symbol i = 1; i <= 2; ++i) {
      EXPECT_LE(w.transcript.count(i, SlotKind::kReal), q[i - 1]);
      EXPECT_LE(w.transcript.slots(i), 2 * q[i - 1]);
    }
    EXPECT_TRUE(check_transcript(w.transcript, expected).ok);
  }
}

// A stateful oracle (call counter): dummy mode changes what the client sees,
// skip mode does not.
TEST(Invariants, StatefulOracleSeparatesDummyFromSkip) {
  auto make = [](OracleState state) {
    auto counter = std::make_shared<U64>(0);
    return std::vector<Binding>{
        {1, [counter](U64) { return ++*counter; }, 0, state},
        {2, [](U64 x) { return x; }, 0, OracleState::kStateless},
    };
  };
  const FixedClient client{{2, 1}};
  const auto direct = run_direct<U64, U64>(client, make(OracleState::kStateful));
  const auto skip = run_wrapped<U64, U64>(client, Characteristic({1, 1}),
                                          make(OracleState::kStateful), QueryMode::kSkip);
  // Declared stateless so dummy mode is accepted; the counter still leaks.
  const auto dummy = run_wrapped<U64, U64>(client, Characteristic({1, 1}),
                                           make(OracleState::kStateless), QueryMode::kDummy);
  EXPECT_EQ(skip.output, direct);
  EXPECT_NE(dummy.output, direct);
}

TEST(Transcript, JsonLinesRoundTrip) {
  const ScriptedClient client{7, {2, 2}};
  const auto w = run_wrapped<U64, U64>(client, Characteristic({2, 2}), stateless(2),
                                       QueryMode::kDummy, true);
  const auto text = w.transcript.to_jsonl();
  const auto back = QueryTranscript::from_jsonl(text);
  EXPECT_EQ(back.records(), w.transcript.records());
  EXPECT_EQ(back.to_jsonl(), text);
}

TEST(Transcript, RejectsNonIncreasingPositions) {
  EXPECT_THROW(QueryTranscript::from_jsonl(
                   "{\"pos\":2,\"oracle\":1,\"kind\":\"real\",\"fingerprint\":0}\n"
                   "{\"pos\":2,\"oracle\":1,\"kind\":\"dummy\",\"fingerprint\":0}\n"),
               InvalidArgument);
  EXPECT_THROW(QueryTranscript::from_jsonl("{\"pos\":1,\"oracle\":1,\"kind\":\"odd\",\"fingerprint\":0}"),
               InvalidArgument);
}

TEST(Transcript, CheckerFlagsWrongOracleAndGaps) {
  const auto s = build_universal_schedule(Characteristic({1, 1}));  // 1 2 1 2
  QueryTranscript wrong;
  wrong.append({1, 2, SlotKind::kReal, 0});
  EXPECT_FALSE(check_transcript(wrong, s).ok);
  QueryTranscript gap;
  gap.append({2, 2, SlotKind::kReal, 0});
  EXPECT_FALSE(check_transcript(gap, s).ok);
  QueryTranscript over;
  over.append({1, 1, SlotKind::kReal, 0});
  over.append({2, 2, SlotKind::kDummy, 0});
  over.append({3, 1, SlotKind::kReal, 0});
  EXPECT_FALSE(check_transcript(over, s).ok);
}

}  // namespace
}  // namespace staticq
