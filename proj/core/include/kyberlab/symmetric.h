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

#ifndef KYBERLAB_SYMMETRIC_H_
#define KYBERLAB_SYMMETRIC_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace kyberlab {

using Bytes = std::vector<std::uint8_t>;
using ByteSpan = std::span<const std::uint8_t>;
using Seed = std::array<std::uint8_t, 32>;

// Keccak-based primitives used by Kyber round 3:
//   H = SHA3-256, G = SHA3-512, KDF/PRF = SHAKE-256, XOF = SHAKE-128.
std::array<std::uint8_t, 32> Sha3_256(ByteSpan data);
std::array<std::uint8_t, 64> Sha3_512(ByteSpan data);
Bytes Shake128(ByteSpan data, std::size_t out_len);
Bytes Shake256(ByteSpan data, std::size_t out_len);

// Concatenates byte ranges; most hash inputs are a few pieces glued together.
Bytes Concat(std::initializer_list<ByteSpan> parts);

// Deterministic 32-byte seed derived from a label and a list of integers.
// Used wherever a component needs independent, reproducible randomness.
Seed DeriveSeed(std::string_view label, std::initializer_list<std::uint64_t> values);
Seed DeriveSeed(std::string_view label, ByteSpan base,
                std::initializer_list<std::uint64_t> values);

// Fresh seed from the OpenSSL CSPRNG.
Seed RandomSeed();

std::string ToHex(ByteSpan data);
Bytes FromHex(std::string_view hex);

}  // namespace kyberlab

#endif  // KYBERLAB_SYMMETRIC_H_
