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

#include "kyberlab/kem.h"

#include <algorithm>

#include "kyberlab/errors.h"

namespace kyberlab {

namespace {

Seed HashPk(const PkePublicKey& pk, const KyberParams& params) {
  return Sha3_256(SerializePublicKey(pk, params));
}

SharedKey Kdf(ByteSpan prefix, const PkeCiphertext& ct, const KyberParams& params) {
  const auto h_ct = Sha3_256(SerializeCiphertext(ct, params));
  Bytes out = Shake256(Concat({prefix, h_ct}), 32);
  SharedKey key;
  std::copy(out.begin(), out.end(), key.begin());
  return key;
}

// (Kbar, tau) = G(m || H(pk)).
std::pair<Seed, Seed> DeriveKeyAndCoins(const Bits& m, const Seed& h_pk) {
  const Bytes m_bytes = BytesFromBits(m);
  const auto g = Sha3_512(Concat({m_bytes, h_pk}));
  Seed kbar, tau;
  std::copy(g.begin(), g.begin() + 32, kbar.begin());
  std::copy(g.begin() + 32, g.end(), tau.begin());
  return {kbar, tau};
}

}  // namespace

KemKeyPair KemKeyPairFromPke(const KyberParams& params, PkeKeyPair pke, const Seed& z) {
  KemKeyPair kp;
  kp.pk = pke.pk;
  kp.e = std::move(pke.e);
  kp.sk.pke = std::move(pke.sk);
  kp.sk.h_pk = HashPk(pke.pk, params);
  kp.sk.pk = std::move(pke.pk);
  kp.sk.z = z;
  return kp;
}

KemKeyPair KemKeyGenFromCoins(const KyberParams& params, const Seed& d, const Seed& z) {
  return KemKeyPairFromPke(params, PkeKeyGen(params, d), z);
}

KemKeyPair KemKeyGen(const KyberParams& params, const Seed& seed) {
  Bytes coins = Shake256(Concat({seed}), 64);
  Seed d, z;
  std::copy(coins.begin(), coins.begin() + 32, d.begin());
  std::copy(coins.begin() + 32, coins.end(), z.begin());
  return KemKeyGenFromCoins(params, d, z);
}

EncapsResult Encaps(const PkePublicKey& pk, const Seed& m_seed, const KyberParams& params) {
  if (pk.variant != params.variant) throw ConfigurationError("public key belongs to another variant");
  const auto m_hash = Sha3_256(m_seed);
  EncapsResult out;
  auto& tr = out.transcript;
  tr.m = BitsFromBytes(m_hash, params.n);
  const auto [kbar, tau] = DeriveKeyAndCoins(tr.m, HashPk(pk, params));
  tr.coins = SampleCoins(params, tau);
  out.ct = PkeEncrypt(pk, tr.m, tr.coins, params, &tr.trace);
  tr.delta_u = CompressionErrorU(tr.trace.u, params);
  tr.delta_v = CompressionErrorV(tr.trace.v, params);
  out.key = Kdf(kbar, out.ct, params);
  tr.key = out.key;
  return out;
}

SharedKey Decaps(const KemSecretKey& sk, const PkeCiphertext& ct, const KyberParams& params,
                 const FaultSpec& fault) {
  if (sk.pk.variant != params.variant) throw ConfigurationError("secret key belongs to another variant");
  const Bits m = PkeDecrypt(sk.pke, ct, params);
  const auto [kbar, tau] = DeriveKeyAndCoins(m, sk.h_pk);
  const PkeCiphertext reencrypted = PkeEncrypt(sk.pk, m, SampleCoins(params, tau), params);

  if (fault.mode != FaultMode::kCorrectManipulation) {
    return ct == reencrypted ? Kdf(kbar, ct, params) : Kdf(sk.z, ct, params);
  }
  if (fault.coeff_index < 0 || fault.coeff_index >= params.n) {
    throw DomainError("fault coefficient index out of range");
  }
  // The skipped instruction rewrites the ciphertext buffer before the
  // comparison; everything after it, the KDF included, sees the corrected c.
  PkeCiphertext restored = ct;
  restored.c2[fault.coeff_index] = fault.original_value;
  return restored == reencrypted ? Kdf(kbar, restored, params) : Kdf(sk.z, restored, params);
}

SharedKey RejectionKey(const KemSecretKey& sk, const PkeCiphertext& ct, const KyberParams& params) {
  return Kdf(sk.z, ct, params);
}

Bytes SerializeKemSecretKey(const KemSecretKey& sk, const KyberParams& params) {
  return Concat({SerializeSecretKey(sk.pke, params), SerializePublicKey(sk.pk, params), sk.h_pk, sk.z});
}

KemSecretKey DeserializeKemSecretKey(ByteSpan bytes, const KyberParams& params) {
  const std::size_t sk_len = SecretKeyBytes(params);
  const std::size_t pk_len = PublicKeyBytes(params);
  if (bytes.size() != sk_len + pk_len + 64) throw ParseError("kem_secret_key", "wrong length");
  KemSecretKey sk;
  sk.pke = DeserializeSecretKey(bytes.subspan(0, sk_len), params);
  sk.pk = DeserializePublicKey(bytes.subspan(sk_len, pk_len), params);
  std::copy_n(bytes.begin() + sk_len + pk_len, 32, sk.h_pk.begin());
  std::copy_n(bytes.begin() + sk_len + pk_len + 32, 32, sk.z.begin());
  if (sk.h_pk != HashPk(sk.pk, params)) throw ParseError("kem_secret_key.h_pk", "does not match H(pk)");
  return sk;
}

}  // namespace kyberlab
