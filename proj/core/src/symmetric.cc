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

#include "kyberlab/symmetric.h"

#include <openssl/evp.h>
#include <openssl/rand.h>

#include <algorithm>
#include <memory>

#include "kyberlab/errors.h"

namespace kyberlab {

namespace {

struct CtxDeleter {
  void operator()(EVP_MD_CTX* ctx) const { EVP_MD_CTX_free(ctx); }
};

void Digest(const EVP_MD* md, ByteSpan data, std::uint8_t* out,
            std::size_t out_len, bool xof) {
  std::unique_ptr<EVP_MD_CTX, CtxDeleter> ctx(EVP_MD_CTX_new());
  if (!ctx || EVP_DigestInit_ex(ctx.get(), md, nullptr) != 1 ||
      EVP_DigestUpdate(ctx.get(), data.data(), data.size()) != 1) {
    throw Error("digest initialisation failed");
  }
  int ok = xof ? EVP_DigestFinalXOF(ctx.get(), out, out_len)
               : EVP_DigestFinal_ex(ctx.get(), out, nullptr);
  if (ok != 1) throw Error("digest finalisation failed");
}

void AppendLe64(Bytes& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

}  // namespace

std::array<std::uint8_t, 32> Sha3_256(ByteSpan data) {
  std::array<std::uint8_t, 32> out;
  Digest(EVP_sha3_256(), data, out.data(), out.size(), false);
  return out;
}

std::array<std::uint8_t, 64> Sha3_512(ByteSpan data) {
  std::array<std::uint8_t, 64> out;
  Digest(EVP_sha3_512(), data, out.data(), out.size(), false);
  return out;
}

Bytes Shake128(ByteSpan data, std::size_t out_len) {
  Bytes out(out_len);
  if (out_len > 0) Digest(EVP_shake128(), data, out.data(), out_len, true);
  return out;
}

Bytes Shake256(ByteSpan data, std::size_t out_len) {
  Bytes out(out_len);
  if (out_len > 0) Digest(EVP_shake256(), data, out.data(), out_len, true);
  return out;
}

Bytes Concat(std::initializer_list<ByteSpan> parts) {
  std::size_t total = 0;
  for (auto p : parts) total += p.size();
  Bytes out;
  out.reserve(total);
  for (auto p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

Seed DeriveSeed(std::string_view label, std::initializer_list<std::uint64_t> values) {
  return DeriveSeed(label, ByteSpan{}, values);
}

Seed DeriveSeed(std::string_view label, ByteSpan base,
                std::initializer_list<std::uint64_t> values) {
  Bytes input(label.begin(), label.end());
  input.push_back(0);
  AppendLe64(input, base.size());
  input.insert(input.end(), base.begin(), base.end());
  for (auto v : values) AppendLe64(input, v);
  Bytes digest = Shake256(input, 32);
  Seed seed;
  std::copy(digest.begin(), digest.end(), seed.begin());
  return seed;
}

Seed RandomSeed() {
  Seed out{};
  if (RAND_bytes(out.data(), static_cast<int>(out.size())) != 1) throw Error("RAND_bytes failed");
  return out;
}

std::string ToHex(ByteSpan data) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(data.size() * 2);
  for (auto b : data) {
    out.push_back(kDigits[b >> 4]);
    out.push_back(kDigits[b & 0xf]);
  }
  return out;
}

Bytes FromHex(std::string_view hex) {
  if (hex.size() % 2 != 0) throw ParseError("hex", "odd number of digits");
  auto nibble = [](char c) -> int {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    throw ParseError("hex", std::string("invalid digit '") + c + "'");
  };
  Bytes out(hex.size() / 2);
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = static_cast<std::uint8_t>(nibble(hex[2 * i]) << 4 | nibble(hex[2 * i + 1]));
  }
  return out;
}

}  // namespace kyberlab
