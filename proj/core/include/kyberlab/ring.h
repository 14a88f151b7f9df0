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

#ifndef KYBERLAB_RING_H_
#define KYBERLAB_RING_H_

#include <cstdint>
#include <vector>

#include "kyberlab/params.h"
#include "kyberlab/symmetric.h"

namespace kyberlab {

using Coeff = std::int32_t;

// Element of R_q = Z_q[x]/(x^n + 1). coeffs[j] multiplies x^j and lies in
// [0, q).
struct Poly {
  std::vector<Coeff> coeffs;

  static Poly Zero(int n) { return Poly{std::vector<Coeff>(static_cast<std::size_t>(n), 0)}; }
  std::size_t size() const { return coeffs.size(); }
  bool operator==(const Poly&) const = default;
};

// Centered representation, used for the small noise and secret polynomials.
struct SignedPoly {
  std::vector<Coeff> coeffs;

  static SignedPoly Zero(int n) {
    return SignedPoly{std::vector<Coeff>(static_cast<std::size_t>(n), 0)};
  }
  std::size_t size() const { return coeffs.size(); }
  bool operator==(const SignedPoly&) const = default;
};

using PolyVec = std::vector<Poly>;
using SignedPolyVec = std::vector<SignedPoly>;
// Row-major k x k matrix of ring elements.
using PolyMatrix = std::vector<PolyVec>;
// Coefficients after Compress_q(., d), each in [0, 2^d).
using CompressedPoly = std::vector<std::uint16_t>;
// One message bit per entry (0 or 1).
using Bits = std::vector<std::uint8_t>;

Coeff ModQ(std::int64_t x, int q);
// Representative of x mod q in (-q/2, q/2].
Coeff CenterMod(std::int64_t x, int q);

Poly Reduce(const SignedPoly& a, int q);
SignedPoly Center(const Poly& a, int q);
PolyVec Reduce(const SignedPolyVec& a, int q);
SignedPolyVec Center(const PolyVec& a, int q);

Poly PolyAdd(const Poly& a, const Poly& b, int q);
Poly PolySub(const Poly& a, const Poly& b, int q);

// Negacyclic convolution, O(n^2). Reference path for every n.
Poly PolyMulSchoolbook(const Poly& a, const Poly& b, int q);

// Product in R_q. Uses the NTT when the parameter set has one; the result is
// identical to PolyMulSchoolbook.
Poly PolyMul(const Poly& a, const Poly& b, const KyberParams& params);

// Incomplete (7-layer) NTT of the round-3 standard, in plain modular
// arithmetic. Throws UnsupportedVariantError for parameter sets without an
// NTT.
Poly Ntt(const Poly& a, const KyberParams& params);
Poly InvNtt(const Poly& a_hat, const KyberParams& params);
// Pointwise product of two NTT-domain polynomials (128 degree-1 products).
Poly NttBaseMul(const Poly& a_hat, const Poly& b_hat, const KyberParams& params);

// The "multiplication domain" is the NTT domain for full variants and plain
// coefficient form for Baby. Keys and matrices live in this domain.
Poly ToMulDomain(const Poly& a, const KyberParams& params);
Poly FromMulDomain(const Poly& a_hat, const KyberParams& params);
Poly MulInDomain(const Poly& a_hat, const Poly& b_hat, const KyberParams& params);
// sum_j a_hat[j] * b_hat[j], still in the multiplication domain.
Poly InnerProductInDomain(const PolyVec& a_hat, const PolyVec& b_hat,
                          const KyberParams& params);

// round(2^d / q * x) mod 2^d, ties rounded up.
Coeff Compress(Coeff x, int d, int q);
// round(q / 2^d * x), ties rounded up.
Coeff Decompress(Coeff x, int d, int q);
CompressedPoly CompressPoly(const Poly& a, int d, int q);
Poly DecompressPoly(const CompressedPoly& a, int d, int q);

// Centered binomial sample: coefficient j is the popcount of bits
// [2*eta*j, 2*eta*j + eta) minus the popcount of the next eta bits, reading
// bytes little-endian bit by bit.
SignedPoly SampleCbd(int eta, ByteSpan randomness, int n);

// Bit 1 -> round(q/2), bit 0 -> 0.
Poly EncodeMessage(const Bits& m, const KyberParams& params);
Bits DecodeMessage(const Poly& rec, const KyberParams& params);
// 0 iff min(|a - q|, |a|) < q/4, for a in [0, q).
int Phi(Coeff a, int q);

Bits BitsFromBytes(ByteSpan bytes, int n);
Bytes BytesFromBits(const Bits& bits);

// Little-endian packing of d-bit values.
Bytes PackValues(std::span<const std::uint16_t> values, int d);
std::vector<std::uint16_t> UnpackValues(ByteSpan bytes, int d, std::size_t count);

}  // namespace kyberlab

#endif  // KYBERLAB_RING_H_
