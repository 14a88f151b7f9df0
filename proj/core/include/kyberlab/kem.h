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

#ifndef KYBERLAB_KEM_H_
#define KYBERLAB_KEM_H_

#include <array>
#include <cstdint>

#include "kyberlab/params.h"
#include "kyberlab/pke.h"

namespace kyberlab {

using SharedKey = std::array<std::uint8_t, 32>;

struct KemSecretKey {
  PkeSecretKey pke;
  PkePublicKey pk;
  Seed h_pk{};  // H(pk)
  Seed z{};     // implicit-rejection secret

  bool operator==(const KemSecretKey&) const = default;
};

struct KemKeyPair {
  PkePublicKey pk;
  KemSecretKey sk;
  SignedPolyVec e;  // simulation ground truth, never used by Decaps
};

// Everything the encapsulating party knows about one ciphertext.
struct EncapsTranscript {
  Bits m;
  EncryptionCoins coins;
  EncryptionTrace trace;  // u, v before compression
  SignedPolyVec delta_u;  // Decompress(Compress(u)) - u
  SignedPoly delta_v;
  SharedKey key{};
};

struct EncapsResult {
  PkeCiphertext ct;
  SharedKey key{};
  EncapsTranscript transcript;
};

enum class FaultMode { kNone, kCorrectManipulation };

// Behavioural model of an instruction-skip fault in decapsulation. With
// kCorrectManipulation the re-encryption comparison sees c2[coeff_index] at
// its original value, as does the final KDF, while decryption ran on the
// manipulated ciphertext.
struct FaultSpec {
  FaultMode mode = FaultMode::kNone;
  int coeff_index = 0;
  std::uint16_t original_value = 0;

  static FaultSpec None() { return {}; }
  static FaultSpec CorrectManipulation(int coeff_index, std::uint16_t original_value) {
    return {FaultMode::kCorrectManipulation, coeff_index, original_value};
  }
};

// d and z are the two 32-byte random inputs of round-3 key generation.
KemKeyPair KemKeyGenFromCoins(const KyberParams& params, const Seed& d, const Seed& z);
// Expands a single seed into (d, z).
KemKeyPair KemKeyGen(const KyberParams& params, const Seed& seed);
// Wraps an existing PKE key pair (e.g. the Baby fixture) with a given z.
KemKeyPair KemKeyPairFromPke(const KyberParams& params, PkeKeyPair pke, const Seed& z);

// m = H(m_seed), (Kbar, tau) = G(m || H(pk)), ct = Enc(pk, m, tau),
// K = KDF(Kbar || H(ct)).
EncapsResult Encaps(const PkePublicKey& pk, const Seed& m_seed, const KyberParams& params);

SharedKey Decaps(const KemSecretKey& sk, const PkeCiphertext& ct, const KyberParams& params,
                 const FaultSpec& fault = FaultSpec::None());

// KDF(z || H(ct)), the key returned when re-encryption does not match.
SharedKey RejectionKey(const KemSecretKey& sk, const PkeCiphertext& ct, const KyberParams& params);

// sk_pke || pk || H(pk) || z.
Bytes SerializeKemSecretKey(const KemSecretKey& sk, const KyberParams& params);
KemSecretKey DeserializeKemSecretKey(ByteSpan bytes, const KyberParams& params);

}  // namespace kyberlab

#endif  // KYBERLAB_KEM_H_
