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

#include "kyberlab/ring.h"

#include <algorithm>
#include <array>
#include <string>

#include "kyberlab/errors.h"

namespace kyberlab {

namespace {

constexpr int kNttQ = 3329;
constexpr int kNttN = 256;
constexpr Coeff kNttRoot = 17;  // primitive 256-th root of unity mod 3329
constexpr Coeff kInv128 = 3303;

constexpr int BitRev7(int x) {
  int r = 0;
  for (int i = 0; i < 7; ++i) r |= ((x >> i) & 1) << (6 - i);
  return r;
}

constexpr Coeff PowMod(Coeff base, int exp, int q) {
  std::int64_t result = 1;
  std::int64_t b = base % q;
  while (exp > 0) {
    if (exp & 1) result = result * b % q;
    b = b * b % q;
    exp >>= 1;
  }
  return static_cast<Coeff>(result);
}

struct NttTables {
  std::array<Coeff, 128> zetas{};
  std::array<Coeff, 128> gammas{};
  constexpr NttTables() {
    for (int i = 0; i < 128; ++i) {
      zetas[i] = PowMod(kNttRoot, BitRev7(i), kNttQ);
      gammas[i] = PowMod(kNttRoot, 2 * BitRev7(i) + 1, kNttQ);
    }
  }
};

constexpr NttTables kTables;

void RequireSameSize(const Poly& a, const Poly& b) {
  if (a.size() != b.size()) {
    throw StructuralError("polynomial length mismatch: " + std::to_string(a.size()) +
                          " vs " + std::to_string(b.size()));
  }
}

void RequireNtt(const KyberParams& params, const Poly& a) {
  if (!params.has_ntt()) {
    throw UnsupportedVariantError("NTT is not defined for variant " +
                                  std::string(VariantName(params.variant)));
  }
  if (a.size() != kNttN) throw StructuralError("NTT input must have 256 coefficients");
}

inline Coeff MulMod(Coeff a, Coeff b) {
  return static_cast<Coeff>(static_cast<std::int64_t>(a) * b % kNttQ);
}

}  // namespace

Coeff ModQ(std::int64_t x, int q) {
  std::int64_t r = x % q;
  return static_cast<Coeff>(r < 0 ? r + q : r);
}

Coeff CenterMod(std::int64_t x, int q) {
  Coeff r = ModQ(x, q);
  return r > q / 2 ? r - q : r;
}

Poly Reduce(const SignedPoly& a, int q) {
  Poly out{std::vector<Coeff>(a.size())};
  for (std::size_t i = 0; i < a.size(); ++i) out.coeffs[i] = ModQ(a.coeffs[i], q);
  return out;
}

SignedPoly Center(const Poly& a, int q) {
  SignedPoly out{std::vector<Coeff>(a.size())};
  for (std::size_t i = 0; i < a.size(); ++i) out.coeffs[i] = CenterMod(a.coeffs[i], q);
  return out;
}

PolyVec Reduce(const SignedPolyVec& a, int q) {
  PolyVec out;
  out.reserve(a.size());
  for (const auto& p : a) out.push_back(Reduce(p, q));
  return out;
}

SignedPolyVec Center(const PolyVec& a, int q) {
  SignedPolyVec out;
  out.reserve(a.size());
  for (const auto& p : a) out.push_back(Center(p, q));
  return out;
}

Poly PolyAdd(const Poly& a, const Poly& b, int q) {
  RequireSameSize(a, b);
  Poly out{std::vector<Coeff>(a.size())};
  for (std::size_t i = 0; i < a.size(); ++i) {
    out.coeffs[i] = ModQ(static_cast<std::int64_t>(a.coeffs[i]) + b.coeffs[i], q);
  }
  return out;
}

Poly PolySub(const Poly& a, const Poly& b, int q) {
  RequireSameSize(a, b);
  Poly out{std::vector<Coeff>(a.size())};
  for (std::size_t i = 0; i < a.size(); ++i) {
    out.coeffs[i] = ModQ(static_cast<std::int64_t>(a.coeffs[i]) - b.coeffs[i], q);
  }
  return out;
}

Poly PolyMulSchoolbook(const Poly& a, const Poly& b, int q) {
  RequireSameSize(a, b);
  const std::size_t n = a.size();
  std::vector<std::int64_t> acc(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      std::int64_t prod = static_cast<std::int64_t>(a.coeffs[i]) * b.coeffs[j];
      if (i + j < n) {
        acc[i + j] += prod;
      } else {
        acc[i + j - n] -= prod;  // x^n = -1
      }
    }
  }
  Poly out{std::vector<Coeff>(n)};
  for (std::size_t i = 0; i < n; ++i) out.coeffs[i] = ModQ(acc[i], q);
  return out;
}

Poly PolyMul(const Poly& a, const Poly& b, const KyberParams& params) {
  if (!params.has_ntt()) return PolyMulSchoolbook(a, b, params.q);
  return InvNtt(NttBaseMul(Ntt(a, params), Ntt(b, params), params), params);
}

Poly Ntt(const Poly& a, const KyberParams& params) {
  RequireNtt(params, a);
  Poly r = a;
  auto& f = r.coeffs;
  int k = 1;
  for (int len = 128; len >= 2; len >>= 1) {
    for (int start = 0; start < kNttN; start += 2 * len) {
      const Coeff zeta = kTables.zetas[k++];
      for (int j = start; j < start + len; ++j) {
        Coeff t = MulMod(zeta, f[j + len]);
        f[j + len] = ModQ(static_cast<std::int64_t>(f[j]) - t, kNttQ);
        f[j] = ModQ(static_cast<std::int64_t>(f[j]) + t, kNttQ);
      }
    }
  }
  return r;
}

Poly InvNtt(const Poly& a_hat, const KyberParams& params) {
  RequireNtt(params, a_hat);
  Poly r = a_hat;
  auto& f = r.coeffs;
  int k = 127;
  for (int len = 2; len <= 128; len <<= 1) {
    for (int start = 0; start < kNttN; start += 2 * len) {
      const Coeff zeta = kTables.zetas[k--];
      for (int j = start; j < start + len; ++j) {
        Coeff t = f[j];
        f[j] = ModQ(static_cast<std::int64_t>(t) + f[j + len], kNttQ);
        f[j + len] = MulMod(zeta, ModQ(static_cast<std::int64_t>(f[j + len]) - t, kNttQ));
      }
    }
  }
  for (auto& c : f) c = MulMod(c, kInv128);
  return r;
}

Poly NttBaseMul(const Poly& a_hat, const Poly& b_hat, const KyberParams& params) {
  RequireNtt(params, a_hat);
  RequireSameSize(a_hat, b_hat);
  Poly out = Poly::Zero(kNttN);
  for (int i = 0; i < 128; ++i) {
    const Coeff a0 = a_hat.coeffs[2 * i], a1 = a_hat.coeffs[2 * i + 1];
    const Coeff b0 = b_hat.coeffs[2 * i], b1 = b_hat.coeffs[2 * i + 1];
    out.coeffs[2 * i] = ModQ(static_cast<std::int64_t>(a0) * b0 +
                                 static_cast<std::int64_t>(MulMod(a1, b1)) * kTables.gammas[i],
                             kNttQ);
    out.coeffs[2 * i + 1] =
        ModQ(static_cast<std::int64_t>(a0) * b1 + static_cast<std::int64_t>(a1) * b0, kNttQ);
  }
  return out;
}

Poly ToMulDomain(const Poly& a, const KyberParams& params) {
  return params.has_ntt() ? Ntt(a, params) : a;
}

Poly FromMulDomain(const Poly& a_hat, const KyberParams& params) {
  return params.has_ntt() ? InvNtt(a_hat, params) : a_hat;
}

Poly MulInDomain(const Poly& a_hat, const Poly& b_hat, const KyberParams& params) {
  return params.has_ntt() ? NttBaseMul(a_hat, b_hat, params)
                          : PolyMulSchoolbook(a_hat, b_hat, params.q);
}

Poly InnerProductInDomain(const PolyVec& a_hat, const PolyVec& b_hat,
                          const KyberParams& params) {
  if (a_hat.size() != b_hat.size()) throw StructuralError("vector length mismatch");
  Poly acc = Poly::Zero(params.n);
  for (std::size_t j = 0; j < a_hat.size(); ++j) {
    acc = PolyAdd(acc, MulInDomain(a_hat[j], b_hat[j], params), params.q);
  }
  return acc;
}

Coeff Compress(Coeff x, int d, int q) {
  if (x < 0 || x >= q) {
    throw DomainError("compress input " + std::to_string(x) + " outside [0, q)");
  }
  const std::int64_t scaled = (static_cast<std::int64_t>(x) << (d + 1)) + q;
  return static_cast<Coeff>((scaled / (2 * static_cast<std::int64_t>(q))) & ((1 << d) - 1));
}

Coeff Decompress(Coeff x, int d, int q) {
  if (x < 0 || x >= (1 << d)) {
    throw DomainError("decompress input " + std::to_string(x) + " outside [0, 2^d)");
  }
  return static_cast<Coeff>((static_cast<std::int64_t>(x) * q * 2 + (1 << d)) >> (d + 1));
}

CompressedPoly CompressPoly(const Poly& a, int d, int q) {
  CompressedPoly out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    out[i] = static_cast<std::uint16_t>(Compress(a.coeffs[i], d, q));
  }
  return out;
}

Poly DecompressPoly(const CompressedPoly& a, int d, int q) {
  Poly out{std::vector<Coeff>(a.size())};
  for (std::size_t i = 0; i < a.size(); ++i) out.coeffs[i] = Decompress(a[i], d, q);
  return out;
}

SignedPoly SampleCbd(int eta, ByteSpan randomness, int n) {
  const std::size_t bits_needed = static_cast<std::size_t>(2 * eta) * n;
  if (randomness.size() * 8 < bits_needed) {
    throw InputError("CBD sampling needs " + std::to_string(bits_needed) + " bits, got " +
                     std::to_string(randomness.size() * 8));
  }
  auto bit = [&](std::size_t idx) -> int { return (randomness[idx / 8] >> (idx % 8)) & 1; };
  SignedPoly out = SignedPoly::Zero(n);
  std::size_t pos = 0;
  for (int j = 0; j < n; ++j) {
    int a = 0, b = 0;
    for (int t = 0; t < eta; ++t) a += bit(pos++);
    for (int t = 0; t < eta; ++t) b += bit(pos++);
    out.coeffs[j] = a - b;
  }
  return out;
}

Poly EncodeMessage(const Bits& m, const KyberParams& params) {
  if (m.size() != static_cast<std::size_t>(params.n)) {
    throw StructuralError("message must have " + std::to_string(params.n) + " bits");
  }
  const Coeff half = (params.q + 1) / 2;  // round(q/2) with ties up
  Poly out = Poly::Zero(params.n);
  for (int i = 0; i < params.n; ++i) out.coeffs[i] = m[i] ? half : 0;
  return out;
}

int Phi(Coeff a, int q) {
  const Coeff dist = std::min(a, q - a);
  return 4 * dist < q ? 0 : 1;
}

Bits DecodeMessage(const Poly& rec, const KyberParams& params) {
  if (rec.size() != static_cast<std::size_t>(params.n)) {
    throw StructuralError("decode input must have " + std::to_string(params.n) + " coefficients");
  }
  Bits out(rec.size());
  for (std::size_t i = 0; i < rec.size(); ++i) {
    out[i] = static_cast<std::uint8_t>(Phi(ModQ(rec.coeffs[i], params.q), params.q));
  }
  return out;
}

Bits BitsFromBytes(ByteSpan bytes, int n) {
  if (bytes.size() * 8 < static_cast<std::size_t>(n)) throw InputError("not enough message bytes");
  Bits out(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) out[i] = (bytes[i / 8] >> (i % 8)) & 1;
  return out;
}

Bytes BytesFromBits(const Bits& bits) {
  Bytes out((bits.size() + 7) / 8, 0);
  for (std::size_t i = 0; i < bits.size(); ++i) {
    out[i / 8] |= static_cast<std::uint8_t>((bits[i] & 1) << (i % 8));
  }
  return out;
}

Bytes PackValues(std::span<const std::uint16_t> values, int d) {
  Bytes out((values.size() * d + 7) / 8, 0);
  std::size_t pos = 0;
  for (auto v : values) {
    for (int b = 0; b < d; ++b, ++pos) {
      out[pos / 8] |= static_cast<std::uint8_t>(((v >> b) & 1) << (pos % 8));
    }
  }
  return out;
}

std::vector<std::uint16_t> UnpackValues(ByteSpan bytes, int d, std::size_t count) {
  if (bytes.size() * 8 < count * d) throw InputError("packed buffer too short");
  std::vector<std::uint16_t> out(count, 0);
  std::size_t pos = 0;
  for (auto& v : out) {
    for (int b = 0; b < d; ++b, ++pos) {
      v |= static_cast<std::uint16_t>(((bytes[pos / 8] >> (pos % 8)) & 1) << b);
    }
  }
  return out;
}

}  // namespace kyberlab
