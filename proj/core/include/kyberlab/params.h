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

#ifndef KYBERLAB_PARAMS_H_
#define KYBERLAB_PARAMS_H_

#include <cstddef>
#include <string>
#include <string_view>

namespace kyberlab {

enum class Variant { kBaby, kKyber512, kKyber768, kKyber1024 };

// One Kyber parameter set. The three full variants follow the round-3
// standard; kBaby is the n=4, k=2, q=17 toy instance.
struct KyberParams {
  Variant variant;
  int n;     // coefficients per polynomial
  int k;     // module rank
  int q;     // modulus
  int eta1;  // CBD parameter for s, e, r
  int eta2;  // CBD parameter for e1, e2
  int du;    // compression bits for u
  int dv;    // compression bits for v

  static KyberParams For(Variant variant);

  // The incomplete NTT is only defined for n = 256, q = 3329.
  bool has_ntt() const { return n == 256 && q == 3329; }

  // Number of secret unknowns (e, s) the attack solves for.
  int unknowns() const { return 2 * k * n; }

  // Bytes of a message m (n bits).
  std::size_t message_bytes() const { return static_cast<std::size_t>(n + 7) / 8; }

  bool operator==(const KyberParams&) const = default;
};

std::string_view VariantName(Variant variant);

// Accepts "baby", "512", "768", "1024" and the "kyber-512" style spellings.
Variant ParseVariant(std::string_view text);

}  // namespace kyberlab

#endif  // KYBERLAB_PARAMS_H_
