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

#include <algorithm>
#include <string>

#include "kyberlab/errors.h"

namespace kyberlab {

namespace {

Bytes Prf(const Seed& key, std::uint8_t nonce, std::size_t len) {
  Bytes input(key.begin(), key.end());
  input.push_back(nonce);
  return Shake256(input, len);
}

std::size_t CbdBytes(int eta, int n) { return static_cast<std::size_t>(eta) * n / 4; }

SignedPoly NoisePoly(const Seed& key, std::uint8_t nonce, int eta, const KyberParams& params) {
  return SampleCbd(eta, Prf(key, nonce, CbdBytes(eta, params.n)), params.n);
}

Poly ParseUniform(const Seed& rho, std::uint8_t x, std::uint8_t y, const KyberParams& params) {
  Bytes input(rho.begin(), rho.end());
  input.push_back(x);
  input.push_back(y);
  Poly out = Poly::Zero(params.n);
  int filled = 0;
  // SHAKE output is prefix-consistent, so a longer request only extends the
  // stream; 840 bytes is 5 SHAKE-128 blocks.
  for (std::size_t len = 840; filled < params.n; len *= 2) {
    Bytes buf = Shake128(input, len);
    filled = 0;
    if (params.q > 255) {
      for (std::size_t pos = 0; pos + 3 <= buf.size() && filled < params.n; pos += 3) {
        Coeff d1 = buf[pos] | ((buf[pos + 1] & 0x0f) << 8);
        Coeff d2 = (buf[pos + 1] >> 4) | (buf[pos + 2] << 4);
        if (d1 < params.q) out.coeffs[filled++] = d1;
        if (d2 < params.q && filled < params.n) out.coeffs[filled++] = d2;
      }
    } else {
      const int limit = 256 - 256 % params.q;
      for (std::size_t pos = 0; pos < buf.size() && filled < params.n; ++pos) {
        if (buf[pos] < limit) out.coeffs[filled++] = buf[pos] % params.q;
      }
    }
  }
  return out;
}

void CheckSupport(const SignedPoly& p, int eta, const char* what) {
  for (Coeff c : p.coeffs) {
    if (c < -eta || c > eta) {
      throw DomainError(std::string(what) + " coefficient " + std::to_string(c) +
                        " outside [-" + std::to_string(eta) + ", " + std::to_string(eta) + "]");
    }
  }
}

void CheckShape(const SignedPolyVec& v, const KyberParams& params, const char* what) {
  if (v.size() != static_cast<std::size_t>(params.k)) {
    throw StructuralError(std::string(what) + " must have k polynomials");
  }
  for (const auto& p : v) {
    if (p.size() != static_cast<std::size_t>(params.n)) {
      throw StructuralError(std::string(what) + " polynomial has wrong length");
    }
  }
}

PolyVec ToMulDomain(const PolyVec& v, const KyberParams& params) {
  PolyVec out;
  out.reserve(v.size());
  for (const auto& p : v) out.push_back(ToMulDomain(p, params));
  return out;
}

// --- Baby list encoding: u32 count, then count little-endian u16 values. ---

void PutList(Bytes& out, const std::vector<std::uint16_t>& values) {
  const auto count = static_cast<std::uint32_t>(values.size());
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(count >> (8 * i)));
  for (auto v : values) {
    out.push_back(static_cast<std::uint8_t>(v & 0xff));
    out.push_back(static_cast<std::uint8_t>(v >> 8));
  }
}

std::vector<std::uint16_t> GetList(ByteSpan bytes, std::size_t& pos, std::size_t expected,
                                   const char* what) {
  if (bytes.size() < pos + 4) throw ParseError(what, "truncated length prefix");
  std::uint32_t count = 0;
  for (int i = 0; i < 4; ++i) count |= static_cast<std::uint32_t>(bytes[pos + i]) << (8 * i);
  pos += 4;
  if (count != expected) {
    throw ParseError(what, "expected " + std::to_string(expected) + " values, found " +
                               std::to_string(count));
  }
  if (bytes.size() < pos + 2 * count) throw ParseError(what, "truncated value list");
  std::vector<std::uint16_t> out(count);
  for (auto& v : out) {
    v = static_cast<std::uint16_t>(bytes[pos] | (bytes[pos + 1] << 8));
    pos += 2;
  }
  return out;
}

void AppendPoly(std::vector<std::uint16_t>& out, const Poly& p) {
  for (Coeff c : p.coeffs) out.push_back(static_cast<std::uint16_t>(c));
}

Poly TakePoly(const std::vector<std::uint16_t>& values, std::size_t& pos, const KyberParams& params,
              const char* what) {
  Poly p = Poly::Zero(params.n);
  for (auto& c : p.coeffs) {
    c = values[pos++];
    if (c >= params.q) throw ParseError(what, "coefficient not reduced mod q");
  }
  return p;
}

Bytes PackPoly12(const Poly& p) {
  std::vector<std::uint16_t> v(p.coeffs.begin(), p.coeffs.end());
  return PackValues(v, 12);
}

Poly UnpackPoly12(ByteSpan bytes, const KyberParams& params, const char* what) {
  auto values = UnpackValues(bytes, 12, static_cast<std::size_t>(params.n));
  Poly p = Poly::Zero(params.n);
  for (int i = 0; i < params.n; ++i) {
    if (values[i] >= params.q) throw ParseError(what, "coefficient not reduced mod q");
    p.coeffs[i] = values[i];
  }
  return p;
}

std::size_t PolyBytes12(const KyberParams& params) { return static_cast<std::size_t>(params.n) * 12 / 8; }

}  // namespace

PolyMatrix ExpandMatrix(const Seed& rho, const KyberParams& params) {
  PolyMatrix a(params.k, PolyVec(params.k));
  for (int i = 0; i < params.k; ++i) {
    for (int j = 0; j < params.k; ++j) {
      a[i][j] = ParseUniform(rho, static_cast<std::uint8_t>(j), static_cast<std::uint8_t>(i), params);
    }
  }
  return a;
}

namespace {

PkeKeyPair AssembleKeyPair(const KyberParams& params, PolyMatrix a_hat, const Seed& rho,
                           bool explicit_matrix, const SignedPolyVec& s, const SignedPolyVec& e) {
  PkeKeyPair kp;
  kp.e = e;
  kp.sk.variant = params.variant;
  kp.sk.s = s;
  kp.sk.s_hat = ToMulDomain(Reduce(s, params.q), params);
  const PolyVec e_hat = ToMulDomain(Reduce(e, params.q), params);

  kp.pk.variant = params.variant;
  kp.pk.seed = rho;
  kp.pk.explicit_matrix = explicit_matrix;
  kp.pk.t_hat.resize(params.k);
  for (int i = 0; i < params.k; ++i) {
    kp.pk.t_hat[i] =
        PolyAdd(InnerProductInDomain(a_hat[i], kp.sk.s_hat, params), e_hat[i], params.q);
  }
  kp.pk.a_hat = std::move(a_hat);
  return kp;
}

}  // namespace

PkeKeyPair PkeKeyGen(const KyberParams& params, const Seed& d) {
  const auto g = Sha3_512(d);
  Seed rho, sigma;
  std::copy(g.begin(), g.begin() + 32, rho.begin());
  std::copy(g.begin() + 32, g.end(), sigma.begin());

  SignedPolyVec s(params.k), e(params.k);
  std::uint8_t nonce = 0;
  for (auto& p : s) p = NoisePoly(sigma, nonce++, params.eta1, params);
  for (auto& p : e) p = NoisePoly(sigma, nonce++, params.eta1, params);
  return AssembleKeyPair(params, ExpandMatrix(rho, params), rho, false, s, e);
}

PkeKeyPair PkeKeyGenFromValues(const KyberParams& params, const PolyMatrix& a,
                               const SignedPolyVec& s, const SignedPolyVec& e) {
  if (a.size() != static_cast<std::size_t>(params.k)) throw StructuralError("A must be k x k");
  PolyMatrix a_hat(params.k);
  for (int i = 0; i < params.k; ++i) {
    if (a[i].size() != static_cast<std::size_t>(params.k)) throw StructuralError("A must be k x k");
    for (const auto& p : a[i]) a_hat[i].push_back(ToMulDomain(p, params));
  }
  CheckShape(s, params, "s");
  CheckShape(e, params, "e");
  return AssembleKeyPair(params, std::move(a_hat), Seed{}, true, s, e);
}

EncryptionCoins SampleCoins(const KyberParams& params, const Seed& coins) {
  EncryptionCoins out;
  out.r.resize(params.k);
  out.e1.resize(params.k);
  std::uint8_t nonce = 0;
  for (auto& p : out.r) p = NoisePoly(coins, nonce++, params.eta1, params);
  for (auto& p : out.e1) p = NoisePoly(coins, nonce++, params.eta2, params);
  out.e2 = NoisePoly(coins, nonce, params.eta2, params);
  return out;
}

PkeCiphertext PkeEncrypt(const PkePublicKey& pk, const Bits& m, const EncryptionCoins& coins,
                         const KyberParams& params, EncryptionTrace* trace) {
  CheckShape(coins.r, params, "r");
  CheckShape(coins.e1, params, "e1");
  for (const auto& p : coins.r) CheckSupport(p, params.eta1, "r");
  for (const auto& p : coins.e1) CheckSupport(p, params.eta2, "e1");
  if (coins.e2.size() != static_cast<std::size_t>(params.n)) throw StructuralError("e2 has wrong length");
  CheckSupport(coins.e2, params.eta2, "e2");

  const PolyVec r_hat = ToMulDomain(Reduce(coins.r, params.q), params);
  PolyVec u(params.k);
  for (int i = 0; i < params.k; ++i) {
    Poly acc = Poly::Zero(params.n);
    for (int j = 0; j < params.k; ++j) {
      acc = PolyAdd(acc, MulInDomain(pk.a_hat[j][i], r_hat[j], params), params.q);
    }
    u[i] = PolyAdd(FromMulDomain(acc, params), Reduce(coins.e1[i], params.q), params.q);
  }
  Poly v = FromMulDomain(InnerProductInDomain(pk.t_hat, r_hat, params), params);
  v = PolyAdd(v, Reduce(coins.e2, params.q), params.q);
  v = PolyAdd(v, EncodeMessage(m, params), params.q);

  PkeCiphertext ct;
  ct.c1.reserve(params.k);
  for (const auto& p : u) ct.c1.push_back(CompressPoly(p, params.du, params.q));
  ct.c2 = CompressPoly(v, params.dv, params.q);
  if (trace) {
    trace->u = std::move(u);
    trace->v = std::move(v);
  }
  return ct;
}

Poly PkeDecryptRec(const PkeSecretKey& sk, const PkeCiphertext& ct, const KyberParams& params) {
  if (ct.c1.size() != static_cast<std::size_t>(params.k)) {
    throw StructuralError("ciphertext must have k compressed polynomials");
  }
  PolyVec u_hat;
  u_hat.reserve(params.k);
  for (const auto& c : ct.c1) u_hat.push_back(ToMulDomain(DecompressPoly(c, params.du, params.q), params));
  const Poly w = FromMulDomain(InnerProductInDomain(sk.s_hat, u_hat, params), params);
  return PolySub(DecompressPoly(ct.c2, params.dv, params.q), w, params.q);
}

Bits PkeDecrypt(const PkeSecretKey& sk, const PkeCiphertext& ct, const KyberParams& params) {
  return DecodeMessage(PkeDecryptRec(sk, ct, params), params);
}

SignedPolyVec CompressionErrorU(const PolyVec& u, const KyberParams& params) {
  SignedPolyVec out;
  out.reserve(u.size());
  for (const auto& p : u) {
    out.push_back(Center(
        PolySub(DecompressPoly(CompressPoly(p, params.du, params.q), params.du, params.q), p,
                params.q),
        params.q));
  }
  return out;
}

SignedPoly CompressionErrorV(const Poly& v, const KyberParams& params) {
  return Center(PolySub(DecompressPoly(CompressPoly(v, params.dv, params.q), params.dv, params.q),
                        v, params.q),
                params.q);
}

SignedPoly DecryptionErrorPoly(const SignedPolyVec& s, const SignedPolyVec& e,
                               const EncryptionCoins& coins, const SignedPolyVec& delta_u,
                               const SignedPoly& delta_v, const KyberParams& params) {
  const int q = params.q;
  Poly acc = PolyAdd(Reduce(coins.e2, q), Reduce(delta_v, q), q);
  for (int j = 0; j < params.k; ++j) {
    acc = PolyAdd(acc, PolyMul(Reduce(e[j], q), Reduce(coins.r[j], q), params), q);
    const Poly noisy = PolyAdd(Reduce(coins.e1[j], q), Reduce(delta_u[j], q), q);
    acc = PolySub(acc, PolyMul(Reduce(s[j], q), noisy, params), q);
  }
  return Center(acc, q);
}

std::size_t PublicKeyBytes(const KyberParams& params) {
  if (!params.has_ntt()) {
    return 4 + 2 * (1 + static_cast<std::size_t>(params.k) * params.n * (1 + params.k)) + 32;
  }
  return params.k * PolyBytes12(params) + 32;
}

std::size_t SecretKeyBytes(const KyberParams& params) {
  if (!params.has_ntt()) return 4 + 2 * static_cast<std::size_t>(params.k) * params.n;
  return params.k * PolyBytes12(params);
}

std::size_t CiphertextBytes(const KyberParams& params) {
  if (!params.has_ntt()) return 4 + 2 * static_cast<std::size_t>(params.k + 1) * params.n;
  return static_cast<std::size_t>(params.n) * (params.k * params.du + params.dv) / 8;
}

Bytes SerializePublicKey(const PkePublicKey& pk, const KyberParams& params) {
  Bytes out;
  if (!params.has_ntt()) {
    std::vector<std::uint16_t> values{static_cast<std::uint16_t>(pk.explicit_matrix ? 1 : 0)};
    for (const auto& p : pk.t_hat) AppendPoly(values, p);
    for (const auto& row : pk.a_hat)
      for (const auto& p : row) AppendPoly(values, p);
    PutList(out, values);
    out.insert(out.end(), pk.seed.begin(), pk.seed.end());
    return out;
  }
  for (const auto& p : pk.t_hat) {
    Bytes b = PackPoly12(p);
    out.insert(out.end(), b.begin(), b.end());
  }
  out.insert(out.end(), pk.seed.begin(), pk.seed.end());
  return out;
}

PkePublicKey DeserializePublicKey(ByteSpan bytes, const KyberParams& params) {
  if (bytes.size() != PublicKeyBytes(params)) {
    throw ParseError("public_key", "expected " + std::to_string(PublicKeyBytes(params)) +
                                       " bytes, got " + std::to_string(bytes.size()));
  }
  PkePublicKey pk;
  pk.variant = params.variant;
  pk.t_hat.resize(params.k);
  if (!params.has_ntt()) {
    std::size_t pos = 0;
    auto values = GetList(bytes, pos, 1 + static_cast<std::size_t>(params.k) * params.n * (1 + params.k),
                          "public_key");
    std::size_t vp = 1;
    pk.explicit_matrix = values[0] != 0;
    for (auto& p : pk.t_hat) p = TakePoly(values, vp, params, "public_key.t");
    pk.a_hat.assign(params.k, PolyVec(params.k));
    for (auto& row : pk.a_hat)
      for (auto& p : row) p = TakePoly(values, vp, params, "public_key.A");
    std::copy(bytes.begin() + pos, bytes.begin() + pos + 32, pk.seed.begin());
    return pk;
  }
  const std::size_t pb = PolyBytes12(params);
  for (int i = 0; i < params.k; ++i) {
    pk.t_hat[i] = UnpackPoly12(bytes.subspan(i * pb, pb), params, "public_key.t");
  }
  std::copy(bytes.end() - 32, bytes.end(), pk.seed.begin());
  pk.a_hat = ExpandMatrix(pk.seed, params);
  return pk;
}

Bytes SerializeSecretKey(const PkeSecretKey& sk, const KyberParams& params) {
  Bytes out;
  if (!params.has_ntt()) {
    std::vector<std::uint16_t> values;
    for (const auto& p : sk.s_hat) AppendPoly(values, p);
    PutList(out, values);
    return out;
  }
  for (const auto& p : sk.s_hat) {
    Bytes b = PackPoly12(p);
    out.insert(out.end(), b.begin(), b.end());
  }
  return out;
}

PkeSecretKey DeserializeSecretKey(ByteSpan bytes, const KyberParams& params) {
  if (bytes.size() != SecretKeyBytes(params)) throw ParseError("secret_key", "wrong length");
  PkeSecretKey sk;
  sk.variant = params.variant;
  sk.s_hat.resize(params.k);
  if (!params.has_ntt()) {
    std::size_t pos = 0;
    auto values = GetList(bytes, pos, static_cast<std::size_t>(params.k) * params.n, "secret_key");
    std::size_t vp = 0;
    for (auto& p : sk.s_hat) p = TakePoly(values, vp, params, "secret_key.s");
  } else {
    const std::size_t pb = PolyBytes12(params);
    for (int i = 0; i < params.k; ++i) {
      sk.s_hat[i] = UnpackPoly12(bytes.subspan(i * pb, pb), params, "secret_key.s");
    }
  }
  for (const auto& p : sk.s_hat) sk.s.push_back(Center(FromMulDomain(p, params), params.q));
  return sk;
}

Bytes SerializeCiphertext(const PkeCiphertext& ct, const KyberParams& params) {
  Bytes out;
  if (!params.has_ntt()) {
    std::vector<std::uint16_t> values;
    for (const auto& c : ct.c1) values.insert(values.end(), c.begin(), c.end());
    values.insert(values.end(), ct.c2.begin(), ct.c2.end());
    PutList(out, values);
    return out;
  }
  for (const auto& c : ct.c1) {
    Bytes b = PackValues(c, params.du);
    out.insert(out.end(), b.begin(), b.end());
  }
  Bytes b = PackValues(ct.c2, params.dv);
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

PkeCiphertext DeserializeCiphertext(ByteSpan bytes, const KyberParams& params) {
  if (bytes.size() != CiphertextBytes(params)) {
    throw ParseError("ciphertext", "expected " + std::to_string(CiphertextBytes(params)) +
                                       " bytes, got " + std::to_string(bytes.size()));
  }
  const auto n = static_cast<std::size_t>(params.n);
  PkeCiphertext ct;
  if (!params.has_ntt()) {
    std::size_t pos = 0;
    auto values = GetList(bytes, pos, (params.k + 1) * n, "ciphertext");
    for (int i = 0; i < params.k; ++i) {
      ct.c1.emplace_back(values.begin() + i * n, values.begin() + (i + 1) * n);
    }
    ct.c2.assign(values.end() - n, values.end());
    for (const auto& c : ct.c1)
      for (auto v : c)
        if (v >= (1u << params.du)) throw ParseError("ciphertext.c1", "value exceeds du bits");
    for (auto v : ct.c2)
      if (v >= (1u << params.dv)) throw ParseError("ciphertext.c2", "value exceeds dv bits");
    return ct;
  }
  const std::size_t pu = n * params.du / 8;
  for (int i = 0; i < params.k; ++i) {
    ct.c1.push_back(UnpackValues(bytes.subspan(i * pu, pu), params.du, n));
  }
  ct.c2 = UnpackValues(bytes.subspan(params.k * pu), params.dv, n);
  return ct;
}

}  // namespace kyberlab
