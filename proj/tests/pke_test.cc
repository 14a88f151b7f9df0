/*
 * Copyright 2026 The kyberlab Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */


#include "kyberlab/pke.h"

#include <gtest/gtest.h>

#include <random>

#include "kyberlab/errors.h"
#include "kyberlab/params.h"
#include "kyberlab/ring.h"
#include "testing/oracles.h"

namespace kyberlab {
namespace {

using testing::AddVec;
using testing::Centered;
using testing::DecompressOracle;
using testing::Mod;
using testing::NegacyclicMul;
using testing::Widen;

const KyberParams kBaby = KyberParams::For(Variant::kBaby);
const KyberParams k512 = KyberParams::For(Variant::kKyber512);

SignedPoly Sp(std::vector<Coeff> c) { return SignedPoly{std::move(c)}; }
Poly P(std::vector<Coeff> c) { return Poly{std::move(c)}; }

// Worked toy instance (n = 4, k = 2, q = 17) with fixed A, s, e and coins.
struct ToyFixture {
  PolyMatrix a = {{P({11, 15, 14, 6}), P({3, 6, 7, 9})}, {P({12, 10, 3, 5}), P({15, 4, 1, 9})}};
  SignedPolyVec s = {Sp({0, 1, -1, -1}), Sp({0, -1, 0, -1})};
  SignedPolyVec e = {Sp({0, 0, 1, 0}), Sp({0, -1, 1, 0})};
  EncryptionCoins coins{{Sp({0, 1, 0, -1}), Sp({-1, 1, 0, 1})},
                        {Sp({1, 0, 1, 0}), Sp({0, 0, 1, 0})},
                        Sp({0, -1, 0, -1})};
};

std::vector<std::int64_t> ToInts(const Poly& p) { return Widen(p.coeffs); }
std::vector<std::int64_t> ToInts(const SignedPoly& p) { return Widen(p.coeffs); }

std::vector<std::int64_t> ModVec(std::vector<std::int64_t> v, int q) {
  for (auto& x : v) x = Mod(x, q);
  return v;
}

// rec = Decompress(c2) - sum_j Decompress(c1_j) * s_j, all in plain integers.
std::vector<std::int64_t> RecOracle(const PkeCiphertext& ct, const SignedPolyVec& s,
                                    const KyberParams& p) {
  std::vector<std::int64_t> rec(p.n);
  for (int i = 0; i < p.n; ++i) rec[i] = DecompressOracle(ct.c2[i], p.dv, p.q);
  for (int j = 0; j < p.k; ++j) {
    std::vector<std::int64_t> u(p.n);
    for (int i = 0; i < p.n; ++i) u[i] = DecompressOracle(ct.c1[j][i], p.du, p.q);
    const auto w = NegacyclicMul(u, ToInts(s[j]));
    for (int i = 0; i < p.n; ++i) rec[i] -= w[i];
  }
  return ModVec(rec, p.q);
}

Bits RandomBits(std::mt19937_64& rng, int n) {
  Bits m(n);
  for (auto& b : m) b = static_cast<std::uint8_t>(rng() & 1);
  return m;
}

Seed SeedFrom(std::mt19937_64& rng) {
  Seed s;
  for (auto& b : s) b = static_cast<std::uint8_t>(rng());
  return s;
}

TEST(PkeToyTest, PublicKeyMatchesWorkedValues) {
  ToyFixture f;
  const auto kp = PkeKeyGenFromValues(kBaby, f.a, f.s, f.e);
  ASSERT_EQ(kp.pk.t_hat.size(), 2u);
  EXPECT_EQ(kp.pk.t_hat[0], P({4, 1, 14, 12}));
  EXPECT_EQ(kp.pk.t_hat[1], P({4, 5, 9, 16}));
  EXPECT_TRUE(kp.pk.explicit_matrix);
}

TEST(PkeToyTest, PublicKeyMatchesOracle) {
  ToyFixture f;
  const auto kp = PkeKeyGenFromValues(kBaby, f.a, f.s, f.e);
  for (int i = 0; i < 2; ++i) {
    auto t = ToInts(f.e[i]);
    for (int j = 0; j < 2; ++j) t = AddVec(t, NegacyclicMul(ToInts(f.a[i][j]), ToInts(f.s[j])));
    EXPECT_EQ(ToInts(kp.pk.t_hat[i]), ModVec(t, 17)) << "row " << i;
  }
}

TEST(PkeToyTest, EncryptionMatchesWorkedValues) {
  ToyFixture f;
  const auto kp = PkeKeyGenFromValues(kBaby, f.a, f.s, f.e);
  EncryptionTrace trace;
  const auto ct = PkeEncrypt(kp.pk, Bits{1, 1, 0, 1}, f.coins, kBaby, &trace);
  EXPECT_EQ(trace.u[0], P({0, 7, 7, 13}));
  EXPECT_EQ(trace.u[1], P({3, 3, 10, 11}));
  EXPECT_EQ(trace.v, P({7, 16, 10, 15}));
  EXPECT_EQ(ct.c1[0], (CompressedPoly{0, 7, 7, 12}));
  EXPECT_EQ(ct.c1[1], (CompressedPoly{3, 3, 9, 10}));
  EXPECT_EQ(ct.c2, (CompressedPoly{7, 15, 9, 14}));
  EXPECT_EQ(PkeDecryptRec(kp.sk, ct, kBaby), P({9, 6, 16, 11}));
  EXPECT_EQ(PkeDecrypt(kp.sk, ct, kBaby), (Bits{1, 1, 0, 1}));
}

TEST(PkeToyTest, EncryptionMatchesOracleForAllMessages) {
  ToyFixture f;
  const auto kp = PkeKeyGenFromValues(kBaby, f.a, f.s, f.e);
  for (int word = 0; word < 16; ++word) {
    const Bits m = {static_cast<std::uint8_t>(word & 1), static_cast<std::uint8_t>((word >> 1) & 1),
                    static_cast<std::uint8_t>((word >> 2) & 1),
                    static_cast<std::uint8_t>((word >> 3) & 1)};
    EncryptionTrace trace;
    const auto ct = PkeEncrypt(kp.pk, m, f.coins, kBaby, &trace);
    // u_i = sum_j A[j][i] r_j + e1_i, v = t^T r + e2 + 9 m.
    for (int i = 0; i < 2; ++i) {
      auto u = ToInts(f.coins.e1[i]);
      for (int j = 0; j < 2; ++j) {
        u = AddVec(u, NegacyclicMul(ToInts(f.a[j][i]), ToInts(f.coins.r[j])));
      }
      EXPECT_EQ(ToInts(trace.u[i]), ModVec(u, 17));
    }
    auto v = ToInts(f.coins.e2);
    for (int j = 0; j < 2; ++j) {
      v = AddVec(v, NegacyclicMul(ToInts(kp.pk.t_hat[j]), ToInts(f.coins.r[j])));
    }
    for (int i = 0; i < 4; ++i) v[i] += 9 * m[i];
    EXPECT_EQ(ToInts(trace.v), ModVec(v, 17));
    EXPECT_EQ(ToInts(PkeDecryptRec(kp.sk, ct, kBaby)), RecOracle(ct, f.s, kBaby));
    EXPECT_EQ(PkeDecrypt(kp.sk, ct, kBaby), m) << "message " << word;
  }
}

TEST(PkeToyTest, DecryptionErrorMatchesRecMinusEncoding) {
  ToyFixture f;
  const auto kp = PkeKeyGenFromValues(kBaby, f.a, f.s, f.e);
  const Bits m = {1, 1, 0, 1};
  EncryptionTrace trace;
  const auto ct = PkeEncrypt(kp.pk, m, f.coins, kBaby, &trace);
  const auto d = DecryptionErrorPoly(f.s, f.e, f.coins, CompressionErrorU(trace.u, kBaby),
                                     CompressionErrorV(trace.v, kBaby), kBaby);
  const auto rec = PkeDecryptRec(kp.sk, ct, kBaby);
  for (int i = 0; i < 4; ++i) {
    EXPECT_EQ(d.coeffs[i], Centered(rec.coeffs[i] - 9 * m[i], 17)) << "coefficient " << i;
  }
}

TEST(PkeToyTest, RejectsCoinsOutsideSupport) {
  ToyFixture f;
  const auto kp = PkeKeyGenFromValues(kBaby, f.a, f.s, f.e);
  auto coins = f.coins;
  coins.r[0].coeffs[0] = 2;
  EXPECT_THROW(PkeEncrypt(kp.pk, Bits{0, 0, 0, 0}, coins, kBaby), DomainError);
  coins = f.coins;
  coins.e2.coeffs[3] = -2;
  EXPECT_THROW(PkeEncrypt(kp.pk, Bits{0, 0, 0, 0}, coins, kBaby), DomainError);
  coins = f.coins;
  coins.e1.pop_back();
  EXPECT_THROW(PkeEncrypt(kp.pk, Bits{0, 0, 0, 0}, coins, kBaby), StructuralError);
}

TEST(PkeToyTest, RejectsMisshapenKeyMaterial) {
  ToyFixture f;
  auto a = f.a;
  a.pop_back();
  EXPECT_THROW(PkeKeyGenFromValues(kBaby, a, f.s, f.e), StructuralError);
  auto s = f.s;
  s[1].coeffs.push_back(0);
  EXPECT_THROW(PkeKeyGenFromValues(kBaby, f.a, s, f.e), StructuralError);
}

class PkeVariantTest : public ::testing::TestWithParam<Variant> {};

TEST_P(PkeVariantTest, RoundTripAndOracleAgreement) {
  const auto params = KyberParams::For(GetParam());
  std::mt19937_64 rng(7 + static_cast<int>(GetParam()));
  for (int trial = 0; trial < 40; ++trial) {
    const auto kp = PkeKeyGen(params, SeedFrom(rng));
    for (const auto& p : kp.sk.s) {
      for (Coeff c : p.coeffs) ASSERT_LE(std::abs(c), params.eta1);
    }
    const auto m = RandomBits(rng, params.n);
    const auto coins = SampleCoins(params, SeedFrom(rng));
    EncryptionTrace trace;
    const auto ct = PkeEncrypt(kp.pk, m, coins, params, &trace);
    const auto rec = PkeDecryptRec(kp.sk, ct, params);
    ASSERT_EQ(ToInts(rec), RecOracle(ct, kp.sk.s, params));
    const auto d = DecryptionErrorPoly(kp.sk.s, kp.e, coins, CompressionErrorU(trace.u, params),
                                       CompressionErrorV(trace.v, params), params);
    const int half = (params.q + 1) / 2;
    for (int i = 0; i < params.n; ++i) {
      ASSERT_EQ(d.coeffs[i], Centered(rec.coeffs[i] - half * m[i], params.q));
      if (GetParam() != Variant::kBaby) ASSERT_LT(4 * std::abs(d.coeffs[i]), params.q);
    }
    if (GetParam() != Variant::kBaby) ASSERT_EQ(PkeDecrypt(kp.sk, ct, params), m);
  }
}

TEST_P(PkeVariantTest, PublicKeyIsAsPlusE) {
  const auto params = KyberParams::For(GetParam());
  std::mt19937_64 rng(99);
  const auto kp = PkeKeyGen(params, SeedFrom(rng));
  for (int i = 0; i < params.k; ++i) {
    auto t = ToInts(kp.e[i]);
    for (int j = 0; j < params.k; ++j) {
      t = AddVec(t, NegacyclicMul(ToInts(FromMulDomain(kp.pk.a_hat[i][j], params)),
                                  ToInts(kp.sk.s[j])));
    }
    EXPECT_EQ(ToInts(FromMulDomain(kp.pk.t_hat[i], params)), ModVec(t, params.q));
  }
}

TEST_P(PkeVariantTest, SerializationRoundTrips) {
  const auto params = KyberParams::For(GetParam());
  std::mt19937_64 rng(5);
  const auto kp = PkeKeyGen(params, SeedFrom(rng));
  const auto ct = PkeEncrypt(kp.pk, RandomBits(rng, params.n), SampleCoins(params, SeedFrom(rng)),
                             params);
  const auto pk_bytes = SerializePublicKey(kp.pk, params);
  const auto sk_bytes = SerializeSecretKey(kp.sk, params);
  const auto ct_bytes = SerializeCiphertext(ct, params);
  EXPECT_EQ(pk_bytes.size(), PublicKeyBytes(params));
  EXPECT_EQ(sk_bytes.size(), SecretKeyBytes(params));
  EXPECT_EQ(ct_bytes.size(), CiphertextBytes(params));
  EXPECT_EQ(DeserializePublicKey(pk_bytes, params), kp.pk);
  EXPECT_EQ(DeserializeSecretKey(sk_bytes, params), kp.sk);
  EXPECT_EQ(DeserializeCiphertext(ct_bytes, params), ct);

  auto short_ct = ct_bytes;
  short_ct.pop_back();
  EXPECT_THROW(DeserializeCiphertext(short_ct, params), ParseError);
  auto long_pk = pk_bytes;
  long_pk.push_back(0);
  EXPECT_THROW(DeserializePublicKey(long_pk, params), ParseError);
}

TEST_P(PkeVariantTest, KeyGenIsDeterministicAndSeedSensitive) {
  const auto params = KyberParams::For(GetParam());
  Seed d{};
  const auto a = PkeKeyGen(params, d);
  const auto b = PkeKeyGen(params, d);
  EXPECT_EQ(a.pk, b.pk);
  EXPECT_EQ(a.sk, b.sk);
  d[31] ^= 1;
  const auto c = PkeKeyGen(params, d);
  EXPECT_NE(a.pk.t_hat, c.pk.t_hat);
}

TEST_P(PkeVariantTest, CiphertextDependsOnCoins) {
  const auto params = KyberParams::For(GetParam());
  std::mt19937_64 rng(11);
  const auto kp = PkeKeyGen(params, SeedFrom(rng));
  const auto m = RandomBits(rng, params.n);
  Seed coins{};
  const auto a = PkeEncrypt(kp.pk, m, SampleCoins(params, coins), params);
  EXPECT_EQ(a, PkeEncrypt(kp.pk, m, SampleCoins(params, coins), params));
  coins[0] = 1;
  EXPECT_NE(a, PkeEncrypt(kp.pk, m, SampleCoins(params, coins), params));
}

INSTANTIATE_TEST_SUITE_P(AllVariants, PkeVariantTest,
                         ::testing::Values(Variant::kBaby, Variant::kKyber512,
                                           Variant::kKyber768, Variant::kKyber1024),
                         [](const auto& info) { return "v" + std::string(VariantName(info.param)); });

TEST(PkeTest, ExpandedMatrixIsReduced) {
  Seed rho{};
  for (Variant v : {Variant::kBaby, Variant::kKyber512, Variant::kKyber1024}) {
    const auto params = KyberParams::For(v);
    const auto a = ExpandMatrix(rho, params);
    ASSERT_EQ(a.size(), static_cast<std::size_t>(params.k));
    for (const auto& row : a) {
      for (const auto& p : row) {
        for (Coeff c : p.coeffs) {
          ASSERT_GE(c, 0);
          ASSERT_LT(c, params.q);
        }
      }
    }
  }
}

TEST(PkeTest, Kyber512SizesAreRound3) {
  EXPECT_EQ(PublicKeyBytes(k512), 800u);
  EXPECT_EQ(SecretKeyBytes(k512), 768u);
  EXPECT_EQ(CiphertextBytes(k512), 768u);
}

}  // namespace
}  // namespace kyberlab
