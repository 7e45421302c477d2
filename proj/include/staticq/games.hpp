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

// Classical PRF distinguishing games for F(k, x) = H(h(k, x)) at toy scale.
//
// Oracle 1 is the random oracle H, oracle 2 the PRF oracle O. In the real
// game O answers F(k, x) for one k drawn uniformly from the key space; in the
// ideal game O answers R(x) for an independent random function R. Adversaries
// may only ask O on inputs x with h(kappa, x) fresh for every kappa.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "staticq/interposer.hpp"
#include "staticq/rng.hpp"
#include "staticq/skprf.hpp"

namespace staticq::games {

using skprf::Bytes;
using skprf::Rational;

/// Key-to-hash-input map h : K x X -> W over K = {0 .. key_space-1}.
struct ToyH {
  std::string name;
  std::uint64_t key_space = 0;
  std::function<Bytes(std::uint64_t key, const Bytes& x)> eval;
  Rational declared_epsilon;
};

namespace detail {

inline Bytes key_bytes(std::uint64_t key, unsigned key_bits) {
  const unsigned width = std::max(1u, (key_bits + 7) / 8);
  Bytes out(width);
  for (unsigned i = 0; i < width; ++i) out[width - 1 - i] = static_cast<std::uint8_t>(key >> (8 * i));
  return out;
}

inline void check_key_bits(unsigned key_bits) {
  if (key_bits > 20) {
    throw InvalidArgument("toy games support up to 20 key bits (exhaustive freshness checks)");
  }
}

}  // namespace detail

/// h(k, x) = k || x. Freshness reduces to x being new. key_bits = 0 gives
/// the one-key space, epsilon = 1.
inline ToyH pair_h(unsigned key_bits) {
  detail::check_key_bits(key_bits);
  return ToyH{"pair", std::uint64_t{1} << key_bits,
              [key_bits](std::uint64_t k, const Bytes& x) {
                Bytes w = detail::key_bytes(k, key_bits);
                w.insert(w.end(), x.begin(), x.end());
                return w;
              },
              Rational{1, std::uint64_t{1} << key_bits}};
}

/// The split-key instance seen from key part 1 of two: k = k_1 and
/// x = (k_2, x~), h(k, x) = frame(g(k_1, k_2), x~). x must be non-empty.
inline ToyH skprf_h(skprf::GVariant variant, unsigned key_bits) {
  if (key_bits == 0 || key_bits > 8) throw InvalidArgument("skprf_h uses one-byte key parts");
  const skprf::GFunction g{variant, key_bits};
  const std::uint8_t mask = static_cast<std::uint8_t>((1u << key_bits) - 1);
  return ToyH{std::string("skprf-") + skprf::to_string(variant), std::uint64_t{1} << key_bits,
              [g, mask](std::uint64_t k, const Bytes& x) {
                if (x.empty()) throw InvalidArgument("skprf_h input needs the k_2 byte");
                const std::vector<Bytes> parts{Bytes{static_cast<std::uint8_t>(k)},
                                               Bytes{static_cast<std::uint8_t>(x[0] & mask)}};
                const Bytes w = skprf::g_eval(g, parts);
                return skprf::frame(w, std::span(x).subspan(1));
              },
              g.declared_epsilon()};
}

/// max_w Pr_{k}[h(k, x) = w] for one x, by scanning every key.
inline Rational scan_h_epsilon(const ToyH& h, const Bytes& x) {
  std::map<Bytes, std::uint64_t> hist;
  std::uint64_t worst = 0;
  for (std::uint64_t k = 0; k < h.key_space; ++k) worst = std::max(worst, ++hist[h.eval(k, x)]);
  return Rational{worst, h.key_space};
}

enum class Hosting {
  kDirect,  // adversary queries the oracles directly
  kStatic,  // adversary is compiled through a dummy-mode Session, q = (q_H, q_O)
};

struct GameParams {
  ToyH h;
  std::uint64_t q_h = 0;
  std::uint64_t q_o = 0;
  std::size_t x_bytes = 4;
  std::size_t y_bytes = 1;
  std::uint64_t seed = 0;
  Hosting hosting = Hosting::kStatic;
  bool ideal_both = false;  // serve R in both games (harness null test)
};

inline constexpr Symbol kHashOracle = 1;
inline constexpr Symbol kPrfOracle = 2;

/// What the adversary gets: H, O, and the public parameters.
class GameOracles {
 public:
  GameOracles(OracleAccess<Bytes, Bytes>& access, const GameParams& params, bool count_budget)
      : access_(access), params_(params), count_budget_(count_budget) {}

  Bytes hash(const Bytes& w) {
    if (count_budget_ && ++h_used_ > params_.q_h) throw BudgetExceeded(kHashOracle, h_used_, params_.q_h);
    return access_.query(kHashOracle, w);
  }

  /// PRF oracle. Rejects x when h(kappa, x) == h(kappa, x') for some key
  /// kappa and some earlier query x'.
  Bytes prf(const Bytes& x) {
    std::vector<Bytes> images;
    images.reserve(params_.h.key_space);
    for (std::uint64_t kappa = 0; kappa < params_.h.key_space; ++kappa) {
      images.push_back(params_.h.eval(kappa, x));
    }
    for (const auto& prior : prior_images_) {
      for (std::uint64_t kappa = 0; kappa < params_.h.key_space; ++kappa) {
        if (prior[kappa] == images[kappa]) {
          throw FreshnessViolation("PRF query repeats h(kappa, x) of an earlier query for kappa=" +
                                   std::to_string(kappa));
        }
      }
    }
    if (count_budget_ && ++o_used_ > params_.q_o) throw BudgetExceeded(kPrfOracle, o_used_, params_.q_o);
    prior_images_.push_back(std::move(images));
    return access_.query(kPrfOracle, x);
  }

  const GameParams& params() const noexcept { return params_; }

 private:
  OracleAccess<Bytes, Bytes>& access_;
  const GameParams& params_;
  bool count_budget_;
  std::uint64_t h_used_ = 0;
  std::uint64_t o_used_ = 0;
  std::vector<std::vector<Bytes>> prior_images_;
};

class Adversary {
 public:
  virtual ~Adversary() = default;
  virtual std::string name() const = 0;
  /// Returns the guessed bit.
  virtual int run(GameOracles& oracles, Rng& coins) const = 0;
};

/// One run of PR^b; returns the adversary's bit.
inline int run_game(const GameParams& params, const Adversary& adversary, int b) {
  if (b != 0 && b != 1) throw InvalidArgument("game bit must be 0 or 1");
  if (!params.h.eval || params.h.key_space == 0) throw InvalidArgument("game needs a toy h");
  const Rng root(params.seed);
  const std::uint64_t key = root.substream("key").uniform(params.h.key_space);
  auto hash = std::make_shared<skprf::LazyRandomFunction>(root.substream("H").next(), params.y_bytes);
  auto ideal = std::make_shared<skprf::LazyRandomFunction>(root.substream("R").next(), params.y_bytes);
  Rng coins = root.substream("adversary");

  const bool real = b == 1 && !params.ideal_both;
  std::vector<OracleBinding<Bytes, Bytes>> bindings{
      {kHashOracle, [hash](const Bytes& w) { return hash->evaluate(w); }, Bytes{}},
      {kPrfOracle,
       [&params, hash, ideal, key, real](const Bytes& x) {
         return real ? hash->evaluate(params.h.eval(key, x)) : ideal->evaluate(x);
       },
       Bytes(params.x_bytes, 0)},
  };

  int out = 0;
  if (params.hosting == Hosting::kStatic) {
    Session<Bytes, Bytes> session(Characteristic({params.q_h, params.q_o}), std::move(bindings),
                                  QueryMode::kDummy);
    GameOracles oracles(session, params, false);
    out = adversary.run(oracles, coins);
  } else {
    DirectAccess<Bytes, Bytes> direct(std::move(bindings));
    GameOracles oracles(direct, params, true);
    out = adversary.run(oracles, coins);
  }
  if (out != 0 && out != 1) throw InvalidArgument("adversary must output a bit");
  return out;
}

struct AdvantageEstimate {
  std::uint64_t trials = 0;
  double p_real = 0;   // Pr[1 <- PR^1]
  double p_ideal = 0;  // Pr[1 <- PR^0]
  double estimate = 0;
  double std_error = 0;
  double ci_low = 0;
  double ci_high = 0;
};

/// Paired Monte-Carlo estimate of Pr[1 <- PR^1] - Pr[1 <- PR^0]: trial t runs
/// both games on the same seed, and the 95% normal interval is built from the
/// per-trial differences.
inline AdvantageEstimate estimate_advantage(const GameParams& params, const Adversary& adversary,
                                            std::uint64_t trials) {
  if (trials < 100) throw InvalidArgument("advantage estimation needs at least 100 trials");
  const Rng root(params.seed);
  GameParams p = params;
  std::uint64_t ones_real = 0;
  std::uint64_t ones_ideal = 0;
  double sum = 0;
  double sum_sq = 0;
  for (std::uint64_t t = 0; t < trials; ++t) {
    p.seed = root.substream(t).next();
    const int o1 = run_game(p, adversary, 1);
    const int o0 = run_game(p, adversary, 0);
    ones_real += o1;
    ones_ideal += o0;
    const double d = o1 - o0;
    sum += d;
    sum_sq += d * d;
  }
  AdvantageEstimate e;
  const double n = static_cast<double>(trials);
  e.trials = trials;
  e.p_real = ones_real / n;
  e.p_ideal = ones_ideal / n;
  e.estimate = sum / n;
  const double var = std::max(0.0, (sum_sq - n * e.estimate * e.estimate) / (n - 1));
  e.std_error = std::sqrt(var / n);
  e.ci_low = e.estimate - 1.96 * e.std_error;
  e.ci_high = e.estimate + 1.96 * e.std_error;
  return e;
}

/// Classical random-oracle bound q_H * epsilon.
inline double classical_bound(const GameParams& p) { return p.q_h * p.h.declared_epsilon.value(); }

/// 4 sqrt(2 q_O^2 q_H eps) + 4 sqrt(2 q_H^2 q_O eps); reported, never asserted.
inline double quantum_bound_reference(const GameParams& p) {
  const double eps = p.h.declared_epsilon.value();
  const double qh = static_cast<double>(p.q_h);
  const double qo = static_cast<double>(p.q_o);
  return 4 * std::sqrt(2 * qo * qo * qh * eps) + 4 * std::sqrt(2 * qh * qh * qo * eps);
}

inline nlohmann::json report(const GameParams& p, const Adversary& adversary,
                             const AdvantageEstimate& e) {
  return nlohmann::json{
      {"params",
       {{"h", p.h.name},
        {"key_space", p.h.key_space},
        {"epsilon", p.h.declared_epsilon.value()},
        {"q_H", p.q_h},
        {"q_O", p.q_o},
        {"x_bytes", p.x_bytes},
        {"y_bytes", p.y_bytes},
        {"seed", p.seed},
        {"hosting", p.hosting == Hosting::kStatic ? "static" : "direct"},
        {"ideal_both", p.ideal_both},
        {"adversary", adversary.name()}}},
      {"trials", e.trials},
      {"adv_estimate", e.estimate},
      {"std_error", e.std_error},
      {"ci", {e.ci_low, e.ci_high}},
      {"p_real", e.p_real},
      {"p_ideal", e.p_ideal},
      {"classical_bound", classical_bound(p)},
      {"quantum_bound_reference", quantum_bound_reference(p)},
  };
}

// ---- adversary corpus ----

/// Makes no queries and outputs 0.
class SilentAdversary final : public Adversary {
 public:
  std::string name() const override { return "silent"; }
  int run(GameOracles&, Rng&) const override { return 0; }
};

/// Makes no queries and outputs a fair coin.
class RandomGuessAdversary final : public Adversary {
 public:
  std::string name() const override { return "random-guess"; }
  int run(GameOracles&, Rng& coins) const override { return coins.bit(); }
};

namespace detail {

inline std::vector<std::uint64_t> distinct_keys(std::uint64_t key_space, std::uint64_t count,
                                                Rng& coins) {
  std::vector<std::uint64_t> keys(key_space);
  std::iota(keys.begin(), keys.end(), std::uint64_t{0});
  count = std::min(count, key_space);
  for (std::uint64_t i = 0; i < count; ++i) std::swap(keys[i], keys[i + coins.uniform(key_space - i)]);
  keys.resize(count);
  return keys;
}

inline Bytes fresh_input(const GameParams& p, Rng& coins, const std::vector<Bytes>& used) {
  for (;;) {
    Bytes x = coins.bytes(p.x_bytes);
    if (std::find(used.begin(), used.end(), x) == used.end()) return x;
  }
}

}  // namespace detail

/// Asks O once, then spends every H query on h(kappa, x) for distinct guessed
/// keys kappa, answering 1 on a match. Optimal classical strategy up to the
/// q_H * epsilon bound.
class KeyGuessAdversary final : public Adversary {
 public:
  std::string name() const override { return "key-guess"; }
  int run(GameOracles& o, Rng& coins) const override {
    const auto& p = o.params();
    if (p.q_o == 0) return 0;
    const Bytes x = coins.bytes(p.x_bytes);
    const Bytes y = o.prf(x);
    for (auto kappa : detail::distinct_keys(p.h.key_space, p.q_h, coins)) {
      if (o.hash(p.h.eval(kappa, x)) == y) return 1;
    }
    return 0;
  }
};

/// Like key-guess, but picks the next oracle from earlier answers: after a
/// miss whose H answer has low bit 1 it spends another O query on a fresh x
/// and retargets its guesses there.
class AdaptiveKeyGuessAdversary final : public Adversary {
 public:
  std::string name() const override { return "adaptive-key-guess"; }
  int run(GameOracles& o, Rng& coins) const override {
    const auto& p = o.params();
    if (p.q_o == 0) return 0;
    std::vector<Bytes> xs{coins.bytes(p.x_bytes)};
    Bytes y = o.prf(xs.back());
    std::uint64_t o_used = 1;
    for (auto kappa : detail::distinct_keys(p.h.key_space, p.q_h, coins)) {
      const Bytes answer = o.hash(p.h.eval(kappa, xs.back()));
      if (answer == y) return 1;
      if (!answer.empty() && (answer.back() & 1) && o_used < p.q_o) {
        xs.push_back(detail::fresh_input(p, coins, xs));
        y = o.prf(xs.back());
        ++o_used;
      }
    }
    return 0;
  }
};

/// Uses only O: two fresh queries, outputs 1 iff the answers agree in their
/// first byte's low bit.
class PrfOnlyAdversary final : public Adversary {
 public:
  std::string name() const override { return "prf-only"; }
  int run(GameOracles& o, Rng& coins) const override {
    const auto& p = o.params();
    if (p.q_o < 2) return coins.bit();
    std::vector<Bytes> xs{coins.bytes(p.x_bytes)};
    xs.push_back(detail::fresh_input(p, coins, xs));
    const Bytes a = o.prf(xs[0]);
    const Bytes b = o.prf(xs[1]);
    return ((a.front() ^ b.front()) & 1) == 0 ? 1 : 0;
  }
};

/// Asks O twice on the same x; always rejected by the freshness check.
class RepeatQueryAdversary final : public Adversary {
 public:
  std::string name() const override { return "repeat-query"; }
  int run(GameOracles& o, Rng& coins) const override {
    const Bytes x = coins.bytes(o.params().x_bytes);
    o.prf(x);
    o.prf(x);
    return 1;
  }
};

/// Makes one H query more than q_H.
class OverBudgetAdversary final : public Adversary {
 public:
  std::string name() const override { return "over-budget"; }
  int run(GameOracles& o, Rng&) const override {
    for (std::uint64_t i = 0; i <= o.params().q_h; ++i) o.hash(Bytes{static_cast<std::uint8_t>(i)});
    return 0;
  }
};

inline std::vector<std::string> adversary_names() {
  return {"silent", "random-guess", "key-guess", "adaptive-key-guess", "prf-only",
          "repeat-query", "over-budget"};
}

/// Adversaries that respect freshness and their budget.
inline std::vector<std::string> compliant_adversary_names() {
  return {"silent", "random-guess", "key-guess", "adaptive-key-guess", "prf-only"};
}

inline std::unique_ptr<Adversary> make_adversary(std::string_view name) {
  if (name == "silent") return std::make_unique<SilentAdversary>();
  if (name == "random-guess") return std::make_unique<RandomGuessAdversary>();
  if (name == "key-guess") return std::make_unique<KeyGuessAdversary>();
  if (name == "adaptive-key-guess") return std::make_unique<AdaptiveKeyGuessAdversary>();
  if (name == "prf-only") return std::make_unique<PrfOnlyAdversary>();
  if (name == "repeat-query") return std::make_unique<RepeatQueryAdversary>();
  if (name == "over-budget") return std::make_unique<OverBudgetAdversary>();
  throw InvalidArgument("unknown adversary '" + std::string(name) + "'");
}

}  // namespace staticq::games
