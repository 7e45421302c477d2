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

// Hash-based split-key PRF F(k_1..k_n, x) = H(g(k_1..k_n), x) and the KEM
// combiner K = F(k_1..k_n, C) over the concatenated ciphertext C.

#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <random>
#include <span>
#include <string>
#include <vector>

#include <openssl/evp.h>

#include "staticq/errors.hpp"
#include "staticq/rng.hpp"

namespace staticq::skprf {

using Bytes = std::vector<std::uint8_t>;

/// Non-negative rational num/den.
struct Rational {
  std::uint64_t num = 0;
  std::uint64_t den = 1;

  friend bool operator==(const Rational& a, const Rational& b) {
    return static_cast<unsigned __int128>(a.num) * b.den ==
           static_cast<unsigned __int128>(b.num) * a.den;
  }
  friend bool operator<=(const Rational& a, const Rational& b) {
    return static_cast<unsigned __int128>(a.num) * b.den <=
           static_cast<unsigned __int128>(b.num) * a.den;
  }
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};

enum class GVariant {
  kConcat,  // k_1 || ... || k_n
  kXorSum,  // k_1 ^ ... ^ k_n
  kAddMod,  // k_1 + ... + k_n mod 2^(8 * len), big-endian
};

inline const char* to_string(GVariant v) noexcept {
  switch (v) {
    case GVariant::kConcat:
      return "concat";
    case GVariant::kXorSum:
      return "xor";
    case GVariant::kAddMod:
      return "add";
  }
  return "?";
}

/// Key combiner g with its declared min-entropy bound: for every i and every
/// fixing of the other parts, max_w Pr_{k_i}[g(k) = w] <= epsilon.
struct GFunction {
  GVariant variant = GVariant::kXorSum;
  unsigned part_bits = 128;  // bits of entropy in each key part

  /// Each variant is injective in any single part, hence 2^-part_bits.
  /// Representable for part_bits <= 63; use epsilon_log2() beyond that.
  Rational declared_epsilon() const {
    if (part_bits > 63) throw InvalidArgument("epsilon below 2^-63 is not representable");
    return Rational{1, std::uint64_t{1} << part_bits};
  }
  int epsilon_log2() const noexcept { return -static_cast<int>(part_bits); }
};

inline Bytes g_eval(const GFunction& g, std::span<const Bytes> parts) {
  if (parts.empty()) throw InvalidArgument("g needs at least one key part");
  Bytes w;
  switch (g.variant) {
    case GVariant::kConcat:
      for (const auto& p : parts) w.insert(w.end(), p.begin(), p.end());
      return w;
    case GVariant::kXorSum:
    case GVariant::kAddMod: {
      const auto len = parts.front().size();
      for (const auto& p : parts) {
        if (p.size() != len) throw InvalidArgument("xor/add combiners need equal part lengths");
      }
      w.assign(len, 0);
      for (const auto& p : parts) {
        if (g.variant == GVariant::kXorSum) {
          for (std::size_t i = 0; i < len; ++i) w[i] ^= p[i];
        } else {
          unsigned carry = 0;
          for (std::size_t i = len; i-- > 0;) {
            const unsigned sum = w[i] + p[i] + carry;
            w[i] = static_cast<std::uint8_t>(sum);
            carry = sum >> 8;
          }
        }
      }
      return w;
    }
  }
  throw InvalidArgument("unknown g variant");
}

/// Exhaustive max_w Pr_{k_i}[g(k) = w] over toy key spaces where every part
/// is one byte holding a `part_bits`-bit value, maximized over all fixings of
/// the other n-1 parts. `position` is 1-based.
inline Rational scan_epsilon(const GFunction& g, unsigned part_bits, std::size_t n,
                             std::size_t position) {
  if (part_bits == 0 || part_bits > 8) throw InvalidArgument("toy parts hold 1..8 bits");
  if (n == 0 || position == 0 || position > n) throw InvalidArgument("bad part position");
  if (part_bits * (n - 1) > 24) throw GuardViolation("toy epsilon scan too large");
  const std::uint64_t domain = std::uint64_t{1} << part_bits;
  std::uint64_t fixings = 1;
  for (std::size_t i = 1; i < n; ++i) fixings *= domain;

  std::uint64_t worst = 0;
  std::vector<Bytes> parts(n, Bytes(1, 0));
  for (std::uint64_t f = 0; f < fixings; ++f) {
    std::uint64_t rest = f;
    for (std::size_t i = 0; i < n; ++i) {
      if (i + 1 == position) continue;
      parts[i][0] = static_cast<std::uint8_t>(rest % domain);
      rest /= domain;
    }
    std::map<Bytes, std::uint64_t> hist;
    for (std::uint64_t k = 0; k < domain; ++k) {
      parts[position - 1][0] = static_cast<std::uint8_t>(k);
      worst = std::max(worst, ++hist[g_eval(g, parts)]);
    }
  }
  return Rational{worst, domain};
}

/// Byte-oriented hash H with a fixed output length.
class HashFunction {
 public:
  virtual ~HashFunction() = default;
  virtual Bytes evaluate(std::span<const std::uint8_t> input) = 0;
  virtual std::size_t output_size() const = 0;
};

/// SHAKE256 truncated to `output_size` bytes.
class Shake256 final : public HashFunction {
 public:
  explicit Shake256(std::size_t output_size = 32) : out_(output_size) {
    if (out_ == 0) throw InvalidArgument("hash output size must be positive");
  }

  Bytes evaluate(std::span<const std::uint8_t> input) override { return digest(input, out_); }
  std::size_t output_size() const override { return out_; }

  static Bytes digest(std::span<const std::uint8_t> input, std::size_t out_len) {
    std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(),
                                                                 &EVP_MD_CTX_free);
    Bytes out(out_len);
    if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_shake256(), nullptr) != 1 ||
        EVP_DigestUpdate(ctx.get(), input.data(), input.size()) != 1 ||
        EVP_DigestFinalXOF(ctx.get(), out.data(), out.size()) != 1) {
      throw Error("SHAKE256 evaluation failed");
    }
    return out;
  }

 private:
  std::size_t out_;
};

/// Seeded, lazily sampled random function with an explicit table. The value
/// at a point is drawn from a generator seeded by (seed, point), so the table
/// does not depend on the order in which points are first queried.
/// Thread-safe under its internal mutex.
class LazyRandomFunction final : public HashFunction {
 public:
  LazyRandomFunction(std::uint64_t seed, std::size_t output_size) : seed_(seed), out_(output_size) {
    if (out_ == 0) throw InvalidArgument("random function output size must be positive");
  }

  Bytes evaluate(std::span<const std::uint8_t> input) override {
    Bytes key(input.begin(), input.end());
    std::lock_guard lock(mu_);
    auto it = table_.find(key);
    if (it != table_.end()) return it->second;
    Bytes value = sample(key);
    table_.emplace(std::move(key), value);
    return value;
  }

  std::size_t output_size() const override { return out_; }

  std::size_t table_size() const {
    std::lock_guard lock(mu_);
    return table_.size();
  }

  std::map<Bytes, Bytes> table() const {
    std::lock_guard lock(mu_);
    return table_;
  }

 private:
  Bytes sample(const Bytes& point) const {
    std::vector<std::uint32_t> material{static_cast<std::uint32_t>(seed_),
                                        static_cast<std::uint32_t>(seed_ >> 32),
                                        static_cast<std::uint32_t>(point.size())};
    material.insert(material.end(), point.begin(), point.end());
    std::seed_seq seq(material.begin(), material.end());
    std::mt19937_64 engine(seq);
    Bytes out(out_);
    std::uint64_t word = 0;
    for (std::size_t i = 0; i < out_; ++i) {
      if (i % 8 == 0) word = engine();
      out[i] = static_cast<std::uint8_t>(word >> (8 * (i % 8)));
    }
    return out;
  }

  std::uint64_t seed_;
  std::size_t out_;
  mutable std::mutex mu_;
  std::map<Bytes, Bytes> table_;
};

/// H input framing: 4-byte big-endian len(w) || w || x.
inline Bytes frame(std::span<const std::uint8_t> w, std::span<const std::uint8_t> x) {
  if (w.size() > 0xFFFFFFFFu) throw InvalidArgument("w longer than 2^32-1 bytes");
  const auto len = static_cast<std::uint32_t>(w.size());
  Bytes out;
  out.reserve(4 + w.size() + x.size());
  out.push_back(static_cast<std::uint8_t>(len >> 24));
  out.push_back(static_cast<std::uint8_t>(len >> 16));
  out.push_back(static_cast<std::uint8_t>(len >> 8));
  out.push_back(static_cast<std::uint8_t>(len));
  out.insert(out.end(), w.begin(), w.end());
  out.insert(out.end(), x.begin(), x.end());
  return out;
}

struct SplitKey {
  std::vector<Bytes> parts;
};

class SkPrf {
 public:
  SkPrf(GFunction g, std::vector<std::size_t> part_sizes, std::shared_ptr<HashFunction> hash)
      : g_(g), part_sizes_(std::move(part_sizes)), hash_(std::move(hash)) {
    if (part_sizes_.empty()) throw InvalidArgument("skPRF needs at least one key part");
    if (!hash_) throw InvalidArgument("skPRF needs a hash function");
  }

  Bytes evaluate(const SplitKey& key, std::span<const std::uint8_t> x) const {
    if (key.parts.size() != part_sizes_.size()) {
      throw InvalidArgument("split key has " + std::to_string(key.parts.size()) +
                            " parts, instance expects " + std::to_string(part_sizes_.size()));
    }
    for (std::size_t i = 0; i < part_sizes_.size(); ++i) {
      if (key.parts[i].size() != part_sizes_[i]) {
        throw InvalidArgument("key part " + std::to_string(i + 1) + " has wrong length");
      }
    }
    const Bytes w = g_eval(g_, key.parts);
    return hash_->evaluate(frame(w, x));
  }

  std::size_t parts() const noexcept { return part_sizes_.size(); }
  std::size_t output_size() const { return hash_->output_size(); }
  const GFunction& g() const noexcept { return g_; }

 private:
  GFunction g_;
  std::vector<std::size_t> part_sizes_;
  std::shared_ptr<HashFunction> hash_;
};

// ---- KEMs ----

struct KeyPair {
  Bytes public_key;
  Bytes secret_key;
};

struct Encapsulation {
  Bytes ciphertext;
  Bytes key;
};

class Kem {
 public:
  virtual ~Kem() = default;
  virtual KeyPair keygen(Rng& rng) const = 0;
  virtual Encapsulation encaps(const Bytes& public_key, Rng& rng) const = 0;
  virtual Bytes decaps(const Bytes& secret_key, const Bytes& ciphertext) const = 0;
  virtual std::size_t key_size() const = 0;
};

/// Insecure test double: pk == sk, c = nonce || (k ^ SHAKE256(sk || nonce)).
class ToyKem final : public Kem {
 public:
  explicit ToyKem(std::size_t key_size = 16) : n_(key_size) {}

  KeyPair keygen(Rng& rng) const override {
    Bytes sk = rng.bytes(16);
    return {sk, sk};
  }

  Encapsulation encaps(const Bytes& pk, Rng& rng) const override {
    Bytes k = rng.bytes(n_);
    Bytes c = rng.bytes(16);
    const Bytes pad = mask(pk, c);
    for (std::size_t i = 0; i < n_; ++i) c.push_back(k[i] ^ pad[i]);
    return {std::move(c), std::move(k)};
  }

  Bytes decaps(const Bytes& sk, const Bytes& c) const override {
    if (c.size() != 16 + n_) throw KemError("toy KEM: malformed ciphertext");
    const Bytes nonce(c.begin(), c.begin() + 16);
    const Bytes pad = mask(sk, nonce);
    Bytes k(n_);
    for (std::size_t i = 0; i < n_; ++i) k[i] = c[16 + i] ^ pad[i];
    return k;
  }

  std::size_t key_size() const override { return n_; }

 private:
  Bytes mask(const Bytes& key, const Bytes& nonce) const {
    Bytes in(key);
    in.insert(in.end(), nonce.begin(), nonce.end());
    return Shake256::digest(in, n_);
  }

  std::size_t n_;
};

/// Wire format: count byte n, then n times (4-byte big-endian length || c_i).
inline Bytes encode_ciphertexts(std::span<const Bytes> parts) {
  if (parts.empty() || parts.size() > 255) throw InvalidArgument("need 1..255 ciphertexts");
  Bytes out{static_cast<std::uint8_t>(parts.size())};
  for (const auto& c : parts) {
    const Bytes framed = frame(c, {});
    out.insert(out.end(), framed.begin(), framed.end());
  }
  return out;
}

inline std::vector<Bytes> decode_ciphertexts(std::span<const std::uint8_t> wire) {
  if (wire.empty()) throw KemError("combined ciphertext: empty");
  const std::size_t n = wire[0];
  std::size_t at = 1;
  std::vector<Bytes> out;
  for (std::size_t i = 0; i < n; ++i) {
    if (wire.size() - at < 4) throw KemError("combined ciphertext: truncated length");
    const std::uint32_t len = (std::uint32_t{wire[at]} << 24) | (std::uint32_t{wire[at + 1]} << 16) |
                              (std::uint32_t{wire[at + 2]} << 8) | std::uint32_t{wire[at + 3]};
    at += 4;
    if (wire.size() - at < len) throw KemError("combined ciphertext: truncated component");
    out.emplace_back(wire.begin() + at, wire.begin() + at + len);
    at += len;
  }
  if (at != wire.size()) throw KemError("combined ciphertext: trailing bytes");
  return out;
}

struct CombinedKeyPair {
  std::vector<Bytes> public_keys;
  std::vector<Bytes> secret_keys;
};

struct CombinedEncapsulation {
  Bytes ciphertext;  // wire-encoded (c_1, ..., c_n)
  Bytes key;
};

/// n component KEMs; the session key is F(k_1..k_n, C) with C the wire
/// encoding of all component ciphertexts.
class CombinedKem {
 public:
  CombinedKem(std::vector<std::shared_ptr<const Kem>> components, GFunction g,
              std::shared_ptr<HashFunction> hash)
      : components_(std::move(components)), prf_(g, key_sizes(components_), std::move(hash)) {}

  CombinedKeyPair keygen(Rng& rng) const {
    CombinedKeyPair kp;
    for (const auto& c : components_) {
      auto p = c->keygen(rng);
      kp.public_keys.push_back(std::move(p.public_key));
      kp.secret_keys.push_back(std::move(p.secret_key));
    }
    return kp;
  }

  CombinedEncapsulation encaps(std::span<const Bytes> public_keys, Rng& rng) const {
    check_count(public_keys.size());
    SplitKey key;
    std::vector<Bytes> cts;
    for (std::size_t i = 0; i < components_.size(); ++i) {
      auto e = components_[i]->encaps(public_keys[i], rng);
      cts.push_back(std::move(e.ciphertext));
      key.parts.push_back(std::move(e.key));
    }
    Bytes wire = encode_ciphertexts(cts);
    Bytes k = prf_.evaluate(key, wire);
    return {std::move(wire), std::move(k)};
  }

  Bytes decaps(std::span<const Bytes> secret_keys, std::span<const std::uint8_t> wire) const {
    check_count(secret_keys.size());
    const auto cts = decode_ciphertexts(wire);
    if (cts.size() != components_.size()) throw KemError("combined ciphertext: wrong component count");
    SplitKey key;
    for (std::size_t i = 0; i < components_.size(); ++i) {
      key.parts.push_back(components_[i]->decaps(secret_keys[i], cts[i]));
    }
    return prf_.evaluate(key, wire);
  }

  const SkPrf& prf() const noexcept { return prf_; }

 private:
  static std::vector<std::size_t> key_sizes(const std::vector<std::shared_ptr<const Kem>>& cs) {
    if (cs.empty()) throw InvalidArgument("combiner needs at least one KEM");
    std::vector<std::size_t> out;
    for (const auto& c : cs) {
      if (!c) throw InvalidArgument("null component KEM");
      out.push_back(c->key_size());
    }
    return out;
  }

  void check_count(std::size_t keys) const {
    if (keys != components_.size()) throw InvalidArgument("one key per component KEM expected");
  }

  std::vector<std::shared_ptr<const Kem>> components_;
  SkPrf prf_;
};

}  // namespace staticq::skprf
