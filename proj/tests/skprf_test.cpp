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

#include "staticq/skprf.hpp"

#include <memory>
#include <vector>

#include "gtest/gtest.h"

namespace staticq::skprf {
namespace {

Bytes hex(std::string_view s) {
  Bytes out;
  for (std::size_t i = 0; i + 1 < s.size(); i += 2) {
    out.push_back(static_cast<std::uint8_t>(std::stoul(std::string(s.substr(i, 2)), nullptr, 16)));
  }
  return out;
}

TEST(GEval, XorSum) {
  const GFunction g{GVariant::kXorSum, 32};
  const Bytes k = hex("deadbeef");
  EXPECT_EQ(g_eval(g, std::vector<Bytes>{Bytes(4, 0), k}), k);
  EXPECT_EQ(g_eval(g, std::vector<Bytes>{k, k}), Bytes(4, 0));
  EXPECT_THROW(g_eval(g, std::vector<Bytes>{k, Bytes(3, 0)}), InvalidArgument);
}

TEST(GEval, Concat) {
  const GFunction g{GVariant::kConcat, 8};
  EXPECT_EQ(g_eval(g, std::vector<Bytes>{{0xAB}, {0xCD}}), (Bytes{0xAB, 0xCD}));
}

TEST(GEval, AddModCarries) {
  const GFunction g{GVariant::kAddMod, 16};
  EXPECT_EQ(g_eval(g, std::vector<Bytes>{{0x00, 0xFF}, {0x00, 0x01}}), (Bytes{0x01, 0x00}));
  EXPECT_EQ(g_eval(g, std::vector<Bytes>{{0xFF, 0xFF}, {0x00, 0x01}}), (Bytes{0x00, 0x00}));
}

TEST(GEval, EmptyPartsRejected) {
  EXPECT_THROW(g_eval(GFunction{}, std::vector<Bytes>{}), InvalidArgument);
}

TEST(Epsilon, ExhaustiveScanMatchesDeclared) {
  for (auto v : {GVariant::kConcat, GVariant::kXorSum, GVariant::kAddMod}) {
    const GFunction g{v, 4};
    for (std::size_t n : {1u, 2u, 3u}) {
      for (std::size_t i = 1; i <= n; ++i) {
        EXPECT_EQ(scan_epsilon(g, 4, n, i), g.declared_epsilon());
      }
    }
  }
}

TEST(Epsilon, ScanDetectsLowEntropyCombiner) {
  // Parts declared as 4-bit but drawn from a 2-bit domain.
  const GFunction g{GVariant::kXorSum, 4};
  EXPECT_EQ(scan_epsilon(g, 2, 2, 1), (Rational{1, 4}));
  EXPECT_FALSE(scan_epsilon(g, 2, 2, 1) <= g.declared_epsilon());
}

TEST(Frame, BigEndianLengthPrefix) {
  EXPECT_EQ(frame(Bytes{0xAA, 0xBB}, Bytes{0x01}), (Bytes{0, 0, 0, 2, 0xAA, 0xBB, 0x01}));
  EXPECT_EQ(frame(Bytes{}, Bytes{}), (Bytes{0, 0, 0, 0}));
  // (w, x) = (ab, c) and (a, bc) must not collide.
  EXPECT_NE(frame(Bytes{1, 2}, Bytes{3}), frame(Bytes{1}, Bytes{2, 3}));
}

TEST(Shake256, KnownAnswer) {
  // SHAKE256("", 32)
  EXPECT_EQ(Shake256::digest({}, 32),
            hex("46b9dd2b0ba88d13233b3feb743eeb243fcd52ea62b81b82b50c27646ed5762f"));
}

TEST(LazyRandomFunction, DeterministicAndOrderIndependent) {
  LazyRandomFunction a(7, 1), b(7, 1);
  const Bytes p{1}, q{2};
  const auto ap = a.evaluate(p);
  const auto aq = a.evaluate(q);
  const auto bq = b.evaluate(q);
  const auto bp = b.evaluate(p);
  EXPECT_EQ(ap, bp);
  EXPECT_EQ(aq, bq);
  EXPECT_EQ(a.evaluate(p), ap);
  EXPECT_EQ(a.table(), b.table());
  EXPECT_EQ(a.table_size(), 2u);
  LazyRandomFunction c(8, 1);
  EXPECT_EQ(c.evaluate(p).size(), 1u);
}

// With an 8-bit random function every output byte value should appear roughly
// equally often over many points.
TEST(LazyRandomFunction, ByteOutputsLookUniform) {
  LazyRandomFunction f(3, 1);
  std::vector<int> hist(256, 0);
  for (std::uint32_t i = 0; i < 256 * 64; ++i) {
    ++hist[f.evaluate(Bytes{static_cast<std::uint8_t>(i), static_cast<std::uint8_t>(i >> 8)})[0]];
  }
  for (int h : hist) {
    EXPECT_GT(h, 20);
    EXPECT_LT(h, 120);
  }
}

TEST(SkPrf, DeterministicAndKeyed) {
  auto h = std::make_shared<LazyRandomFunction>(42, 1);
  const SkPrf f(GFunction{GVariant::kXorSum, 32}, {4, 4}, h);
  const SplitKey key{{hex("01020304"), hex("a0b0c0d0")}};
  const Bytes x = hex("cafe");
  EXPECT_EQ(f.evaluate(key, x), f.evaluate(key, x));
  EXPECT_EQ(h->table_size(), 1u);

  // The random-function table is keyed by framed (w, x): distinct x or a
  // flipped key bit lands on a fresh point.
  f.evaluate(key, hex("beef"));
  SplitKey flipped = key;
  flipped.parts[1][3] ^= 0x01;
  f.evaluate(flipped, x);
  EXPECT_EQ(h->table_size(), 3u);
  const auto table = h->table();
  const Bytes w = g_eval(GFunction{GVariant::kXorSum, 32}, key.parts);
  EXPECT_EQ(table.at(frame(w, x)), f.evaluate(key, x));
}

TEST(SkPrf, ValidatesKeyShape) {
  const SkPrf f(GFunction{GVariant::kConcat, 8}, {1, 2}, std::make_shared<Shake256>(16));
  EXPECT_THROW(f.evaluate(SplitKey{{Bytes{1}}}, Bytes{}), InvalidArgument);
  EXPECT_THROW(f.evaluate(SplitKey{{Bytes{1}, Bytes{1}}}, Bytes{}), InvalidArgument);
  EXPECT_EQ(f.evaluate(SplitKey{{Bytes{1}, Bytes{1, 2}}}, Bytes{}).size(), 16u);
}

TEST(SkPrf, ShakeBackendMatchesDirectDigest) {
  const SkPrf f(GFunction{GVariant::kConcat, 8}, {1, 1}, std::make_shared<Shake256>(32));
  const SplitKey key{{Bytes{0xAB}, Bytes{0xCD}}};
  const Bytes x{0x01, 0x02};
  EXPECT_EQ(f.evaluate(key, x), Shake256::digest(frame(Bytes{0xAB, 0xCD}, x), 32));
}

TEST(CiphertextWire, Format) {
  const std::vector<Bytes> cts{{0x01, 0x02}, {}, {0xFF}};
  const Bytes wire = encode_ciphertexts(cts);
  EXPECT_EQ(wire, (Bytes{3, 0, 0, 0, 2, 1, 2, 0, 0, 0, 0, 0, 0, 0, 1, 0xFF}));
  EXPECT_EQ(decode_ciphertexts(wire), cts);
  Bytes truncated = wire;
  truncated.pop_back();
  EXPECT_THROW(decode_ciphertexts(truncated), KemError);
  Bytes trailing = wire;
  trailing.push_back(0);
  EXPECT_THROW(decode_ciphertexts(trailing), KemError);
}

CombinedKem toy_combiner(std::size_t n, GVariant v, std::shared_ptr<HashFunction> h) {
  std::vector<std::shared_ptr<const Kem>> kems;
  for (std::size_t i = 0; i < n; ++i) kems.push_back(std::make_shared<ToyKem>(16));
  return CombinedKem(std::move(kems), GFunction{v, 128}, std::move(h));
}

TEST(CombinedKem, RoundTrip) {
  for (auto v : {GVariant::kConcat, GVariant::kXorSum}) {
    const auto kem = toy_combiner(2, v, std::make_shared<Shake256>(32));
    Rng rng(9);
    const auto kp = kem.keygen(rng);
    const auto enc = kem.encaps(kp.public_keys, rng);
    EXPECT_EQ(enc.key.size(), 32u);
    EXPECT_EQ(kem.decaps(kp.secret_keys, enc.ciphertext), enc.key);
  }
}

TEST(CombinedKem, TamperedComponentChangesKey) {
  const auto kem = toy_combiner(2, GVariant::kXorSum, std::make_shared<Shake256>(32));
  Rng rng(10);
  const auto kp = kem.keygen(rng);
  const auto enc = kem.encaps(kp.public_keys, rng);
  Bytes tampered = enc.ciphertext;
  tampered[5] ^= 0x80;  // first byte of c_1
  EXPECT_NE(kem.decaps(kp.secret_keys, tampered), enc.key);
  Bytes bad_len = enc.ciphertext;
  bad_len.push_back(0);
  EXPECT_THROW(kem.decaps(kp.secret_keys, bad_len), KemError);
}

TEST(CombinedKem, SingleComponentIsPostProcessedKey) {
  auto h = std::make_shared<Shake256>(32);
  const auto kem = toy_combiner(1, GVariant::kXorSum, h);
  Rng rng(11);
  const auto kp = kem.keygen(rng);
  const auto enc = kem.encaps(kp.public_keys, rng);
  const auto cts = decode_ciphertexts(enc.ciphertext);
  ASSERT_EQ(cts.size(), 1u);
  const Bytes k1 = ToyKem(16).decaps(kp.secret_keys[0], cts[0]);
  EXPECT_EQ(enc.key, h->evaluate(frame(k1, enc.ciphertext)));
}

TEST(CombinedKem, ComponentFailurePropagates) {
  const auto kem = toy_combiner(2, GVariant::kConcat, std::make_shared<Shake256>(32));
  Rng rng(12);
  const auto kp = kem.keygen(rng);
  const Bytes wire = encode_ciphertexts(std::vector<Bytes>{Bytes(32, 0), Bytes(3, 0)});
  EXPECT_THROW(kem.decaps(kp.secret_keys, wire), KemError);
  const Bytes one = encode_ciphertexts(std::vector<Bytes>{Bytes(32, 0)});
  EXPECT_THROW(kem.decaps(kp.secret_keys, one), KemError);
}

}  // namespace
}  // namespace staticq::skprf
