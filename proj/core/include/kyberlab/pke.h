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

#ifndef KYBERLAB_PKE_H_
#define KYBERLAB_PKE_H_

#include <vector>

#include "kyberlab/params.h"
#include "kyberlab/ring.h"
#include "kyberlab/symmetric.h"

namespace kyberlab {

// Kyber IND-CPA encryption (round-3 structure).
//
// Keys and the public matrix are kept in the multiplication domain (NTT for
// the full variants, plain coefficients for Baby), which is also the domain
// the standard serializes t and s in.

struct PkePublicKey {
  Variant variant;
  PolyVec t_hat;     // A*s + e
  Seed seed{};       // rho; all-zero when the matrix was supplied explicitly
  PolyMatrix a_hat;  // expanded once at construction; a_hat[i][j] is row i, column j
  bool explicit_matrix = false;

  bool operator==(const PkePublicKey&) const = default;
};

struct PkeSecretKey {
  Variant variant;
  SignedPolyVec s;  // centered, within [-eta1, eta1]
  PolyVec s_hat;    // s in the multiplication domain

  bool operator==(const PkeSecretKey&) const = default;
};

struct PkeCiphertext {
  std::vector<CompressedPoly> c1;  // compressed u, du bits per value
  CompressedPoly c2;               // compressed v, dv bits per value

  bool operator==(const PkeCiphertext&) const = default;
};

struct EncryptionCoins {
  SignedPolyVec r;   // blinding vector, eta1
  SignedPolyVec e1;  // eta2
  SignedPoly e2;     // eta2
};

struct PkeKeyPair {
  PkePublicKey pk;
  PkeSecretKey sk;
  SignedPolyVec e;  // key-generation noise; kept so simulations know the truth
};

// Uncompressed encryption intermediates, visible to whoever encrypts.
struct EncryptionTrace {
  PolyVec u;
  Poly v;
};

// Matrix A from rho by rejection sampling on SHAKE-128(rho || j || i).
// 12-bit candidates for q = 3329 (result in the NTT domain); single bytes
// below 255 reduced mod q for Baby.
PolyMatrix ExpandMatrix(const Seed& rho, const KyberParams& params);

// Deterministic key generation from the 32-byte seed d: (rho, sigma) = G(d),
// s and e sampled with PRF(sigma, nonce) for nonces 0 .. 2k-1.
PkeKeyPair PkeKeyGen(const KyberParams& params, const Seed& d);

// Fixed-vector mode: A (coefficient form), s and e supplied directly.
PkeKeyPair PkeKeyGenFromValues(const KyberParams& params, const PolyMatrix& a,
                               const SignedPolyVec& s, const SignedPolyVec& e);

EncryptionCoins SampleCoins(const KyberParams& params, const Seed& coins);

// Throws DomainError if a coin lies outside its CBD support.
PkeCiphertext PkeEncrypt(const PkePublicKey& pk, const Bits& m, const EncryptionCoins& coins,
                         const KyberParams& params, EncryptionTrace* trace = nullptr);

// rec = Decompress(c2) - Decompress(c1)^T s, coefficients in [0, q).
Poly PkeDecryptRec(const PkeSecretKey& sk, const PkeCiphertext& ct, const KyberParams& params);
Bits PkeDecrypt(const PkeSecretKey& sk, const PkeCiphertext& ct, const KyberParams& params);

// Decompress(Compress(x)) - x, centered.
SignedPolyVec CompressionErrorU(const PolyVec& u, const KyberParams& params);
SignedPoly CompressionErrorV(const Poly& v, const KyberParams& params);

// d = e^T r - s^T (e1 + du) + e2 + dv, centered to (-q/2, q/2].
SignedPoly DecryptionErrorPoly(const SignedPolyVec& s, const SignedPolyVec& e,
                               const EncryptionCoins& coins, const SignedPolyVec& delta_u,
                               const SignedPoly& delta_v, const KyberParams& params);

// Byte layouts. Full variants use the round-3 encodings; Baby uses a
// length-prefixed list of 16-bit integers (see docs/formats.md).
Bytes SerializePublicKey(const PkePublicKey& pk, const KyberParams& params);
PkePublicKey DeserializePublicKey(ByteSpan bytes, const KyberParams& params);
Bytes SerializeSecretKey(const PkeSecretKey& sk, const KyberParams& params);
PkeSecretKey DeserializeSecretKey(ByteSpan bytes, const KyberParams& params);
Bytes SerializeCiphertext(const PkeCiphertext& ct, const KyberParams& params);
PkeCiphertext DeserializeCiphertext(ByteSpan bytes, const KyberParams& params);

std::size_t PublicKeyBytes(const KyberParams& params);
std::size_t SecretKeyBytes(const KyberParams& params);
std::size_t CiphertextBytes(const KyberParams& params);

}  // namespace kyberlab

#endif  // KYBERLAB_PKE_H_
