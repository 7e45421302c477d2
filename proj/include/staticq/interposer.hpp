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

// Adaptive-to-static query compilation.
//
// A client talks to n oracles through OracleAccess and may choose the next
// oracle based on earlier answers. Wrapped in a Session, the oracles are
// contacted strictly in the order of the universal schedule for the declared
// budget q: the client's i-th query is placed at the greedy embedding index
// j_i, and the skipped-over slots j_{i-1}+1 .. j_i-1 are filled with dummy
// queries (or recorded as skipped). Oracle i sees at most n*q_i queries.

#pragma once

#include <algorithm>
#include <concepts>
#include <cstdint>
#include <functional>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "staticq/embedder.hpp"
#include "staticq/schedule.hpp"
#include "staticq/transcript.hpp"

namespace staticq {

enum class QueryMode {
  kDummy,  // fill unused slots with dummy queries; stateless oracles only
  kSkip,   // count unused slots without contacting the oracle
};

enum class OracleState { kStateless, kStateful };

/// What a client sees: one query interface over oracles 1..n.
template <class Payload, class Response>
class OracleAccess {
 public:
  virtual ~OracleAccess() = default;
  virtual Response query(Symbol oracle, const Payload& payload) = 0;
  virtual std::size_t oracle_count() const = 0;
};

template <class Payload, class Response>
struct OracleBinding {
  Symbol oracle_id;
  std::function<Response(const Payload&)> handler;
  Payload dummy_payload{};
  OracleState state = OracleState::kStateless;
};

namespace detail {

// Sorted by id and covering 1..n exactly once.
template <class P, class R>
std::vector<OracleBinding<P, R>> normalize_bindings(std::vector<OracleBinding<P, R>> bindings,
                                                    std::size_t n) {
  if (bindings.size() != n) {
    throw InvalidArgument("expected " + std::to_string(n) + " oracle bindings, got " +
                          std::to_string(bindings.size()));
  }
  std::sort(bindings.begin(), bindings.end(),
            [](const auto& a, const auto& b) { return a.oracle_id < b.oracle_id; });
  for (std::size_t i = 0; i < n; ++i) {
    if (bindings[i].oracle_id != i + 1) {
      throw InvalidArgument("oracle bindings must cover ids 1.." + std::to_string(n) +
                            " exactly once");
    }
    if (!bindings[i].handler) {
      throw InvalidArgument("oracle " + std::to_string(i + 1) + " has no handler");
    }
  }
  return bindings;
}

}  // namespace detail

/// The compiled client's view of the oracles: every call is routed through the
/// universal schedule for q.
template <class Payload, class Response, class Fingerprint = DefaultFingerprint>
class Session final : public OracleAccess<Payload, Response> {
 public:
  using Binding = OracleBinding<Payload, Response>;

  Session(const Characteristic& q, std::vector<Binding> bindings, QueryMode mode,
          Fingerprint fingerprint = {})
      : schedule_(build_universal_schedule(q)),
        embedding_(schedule_),
        bindings_(detail::normalize_bindings(std::move(bindings), q.alphabet_size())),
        mode_(mode),
        fingerprint_(std::move(fingerprint)),
        real_(q.alphabet_size(), 0) {
    if (mode_ == QueryMode::kDummy) {
      for (const auto& b : bindings_) {
        if (b.state == OracleState::kStateful) {
          throw ModeMismatch("oracle " + std::to_string(b.oracle_id) +
                             " is stateful; dummy mode needs stateless oracles (use skip mode)");
        }
      }
    }
  }

  Session(const Session&) = delete;
  Session& operator=(const Session&) = delete;
  Session(Session&&) = default;
  Session& operator=(Session&&) = default;

  Response query(Symbol oracle, const Payload& payload) override {
    if (finished_) throw InterfaceInconsistency("query after the session was finished");
    if (oracle == 0 || oracle > bindings_.size()) {
      throw InterfaceInconsistency("query to unknown oracle " + std::to_string(oracle));
    }
    const auto attempted = real_[oracle - 1] + 1;
    const auto budget = schedule_.source()[oracle];
    if (attempted > budget) throw BudgetExceeded(oracle, attempted, budget);
    const auto slot = embedding_.next_index(oracle);
    if (!slot) throw BudgetExceeded(oracle, attempted, budget);

    fill_until(*slot);
    ++real_[oracle - 1];
    transcript_.append({*slot, oracle, SlotKind::kReal, fingerprint_(payload)});
    consumed_ = *slot;
    return bindings_[oracle - 1].handler(payload);
  }

  std::size_t oracle_count() const override { return bindings_.size(); }

  /// Ends the session. With `flush`, the remaining schedule slots are issued
  /// as dummies (or recorded skipped) so the full n*Q order is observed.
  const QueryTranscript& finish(bool flush = false) {
    if (!finished_ && flush) fill_until(schedule_.size() + 1);
    finished_ = true;
    return transcript_;
  }

  const Schedule& schedule() const noexcept { return schedule_; }
  const QueryTranscript& transcript() const noexcept { return transcript_; }
  QueryMode mode() const noexcept { return mode_; }
  std::uint64_t real_queries(Symbol oracle) const { return real_.at(oracle - 1); }

 private:
  // Consumes slots consumed_+1 .. end-1 as dummy or skipped.
  void fill_until(std::size_t end) {
    for (std::size_t pos = consumed_ + 1; pos < end; ++pos) {
      const Symbol o = schedule_.at(pos);
      const auto& b = bindings_[o - 1];
      if (mode_ == QueryMode::kDummy) {
        transcript_.append({pos, o, SlotKind::kDummy, fingerprint_(b.dummy_payload)});
        consumed_ = pos;
        (void)b.handler(b.dummy_payload);
      } else {
        transcript_.append({pos, o, SlotKind::kSkipped, 0});
        consumed_ = pos;
      }
    }
  }

  Schedule schedule_;
  EmbeddingState embedding_;
  std::vector<Binding> bindings_;
  QueryMode mode_;
  Fingerprint fingerprint_;
  std::vector<std::uint64_t> real_;
  QueryTranscript transcript_;
  std::size_t consumed_ = 0;
  bool finished_ = false;
};

/// Uncompiled reference access: queries go straight to the handlers.
template <class Payload, class Response>
class DirectAccess final : public OracleAccess<Payload, Response> {
 public:
  using Binding = OracleBinding<Payload, Response>;

  explicit DirectAccess(std::vector<Binding> bindings) {
    const auto n = bindings.size();
    bindings_ = detail::normalize_bindings(std::move(bindings), n);
    counts_.assign(n, 0);
  }

  Response query(Symbol oracle, const Payload& payload) override {
    if (oracle == 0 || oracle > bindings_.size()) {
      throw InterfaceInconsistency("query to unknown oracle " + std::to_string(oracle));
    }
    ++counts_[oracle - 1];
    return bindings_[oracle - 1].handler(payload);
  }

  std::size_t oracle_count() const override { return bindings_.size(); }
  std::uint64_t queries(Symbol oracle) const { return counts_.at(oracle - 1); }

 private:
  std::vector<Binding> bindings_;
  std::vector<std::uint64_t> counts_;
};

template <class Client, class Payload, class Response>
concept AdaptiveClient = std::invocable<Client&, OracleAccess<Payload, Response>&>;

template <class Out>
struct WrappedRun {
  Out output;
  QueryTranscript transcript;
};

/// Runs `client` with direct adaptive oracle access.
template <class Payload, class Response, class Client>
  requires AdaptiveClient<Client, Payload, Response>
auto run_direct(Client&& client, std::vector<OracleBinding<Payload, Response>> bindings) {
  DirectAccess<Payload, Response> access(std::move(bindings));
  return client(static_cast<OracleAccess<Payload, Response>&>(access));
}

/// Runs `client` through a Session for budget q and returns its output along
/// with the slot transcript.
template <class Payload, class Response, class Client>
  requires AdaptiveClient<Client, Payload, Response>
auto run_wrapped(Client&& client, const Characteristic& q,
                 std::vector<OracleBinding<Payload, Response>> bindings, QueryMode mode,
                 bool flush = false) {
  using Out = std::invoke_result_t<Client&, OracleAccess<Payload, Response>&>;
  Session<Payload, Response> session(q, std::move(bindings), mode);
  Out out = client(static_cast<OracleAccess<Payload, Response>&>(session));
  return WrappedRun<Out>{std::move(out), session.finish(flush)};
}

}  // namespace staticq
