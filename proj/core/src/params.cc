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

#include "kyberlab/params.h"

#include <algorithm>
#include <cctype>

#include "kyberlab/errors.h"

namespace kyberlab {

KyberParams KyberParams::For(Variant variant) {
  switch (variant) {
    case Variant::kBaby:
      return {variant, 4, 2, 17, 1, 1, 4, 4};
    case Variant::kKyber512:
      return {variant, 256, 2, 3329, 3, 2, 10, 4};
    case Variant::kKyber768:
      return {variant, 256, 3, 3329, 2, 2, 10, 4};
    case Variant::kKyber1024:
      return {variant, 256, 4, 3329, 2, 2, 11, 5};
  }
  throw DomainError("unknown variant");
}

std::string_view VariantName(Variant variant) {
  switch (variant) {
    case Variant::kBaby:
      return "baby";
    case Variant::kKyber512:
      return "512";
    case Variant::kKyber768:
      return "768";
    case Variant::kKyber1024:
      return "1024";
  }
  return "?";
}

Variant ParseVariant(std::string_view text) {
  std::string lower(text);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  if (lower.rfind("kyber-", 0) == 0) lower = lower.substr(6);
  if (lower.rfind("kyber", 0) == 0) lower = lower.substr(5);
  if (lower == "baby") return Variant::kBaby;
  if (lower == "512") return Variant::kKyber512;
  if (lower == "768") return Variant::kKyber768;
  if (lower == "1024") return Variant::kKyber1024;
  throw ConfigurationError("unknown variant '" + std::string(text) + "'");
}

}  // namespace kyberlab
