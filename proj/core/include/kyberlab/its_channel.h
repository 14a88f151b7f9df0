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

#ifndef KYBERLAB_ITS_CHANNEL_H_
#define KYBERLAB_ITS_CHANNEL_H_

#include <array>
#include <cstdint>
#include <string>
#include <string_view>

#include "kyberlab/kem.h"
#include "kyberlab/params.h"
#include "kyberlab/symmetric.h"

namespace kyberlab {

// Core data of a basic safety message. Units follow the source data set;
// the channel treats the message as opaque bytes.
enum class TransmissionState { kNeutral, kPark, kForwardGears, kReverseGears, kUnavailable };
enum class BrakeStatus { kUnavailable, kOff, kOn, kEngaged };

struct BsmAccuracy {
  double semi_major = 0.0;
  double semi_minor = 0.0;
  double orientation = 0.0;
  bool operator==(const BsmAccuracy&) const = default;
};

struct BsmAccelSet {
  double lon = 0.0;
  double lat = 0.0;
  double vert = 0.0;
  double yaw = 0.0;
  bool operator==(const BsmAccelSet&) const = default;
};

struct BsmBrakes {
  std::uint8_t wheel_brakes = 0;  // 5-bit mask: unavailable, leftFront, leftRear, rightFront, rightRear
  BrakeStatus traction = BrakeStatus::kUnavailable;
  BrakeStatus abs = BrakeStatus::kUnavailable;
  BrakeStatus scs = BrakeStatus::kUnavailable;
  BrakeStatus brake_boost = BrakeStatus::kUnavailable;
  BrakeStatus aux_brakes = BrakeStatus::kUnavailable;
  bool operator==(const BsmBrakes&) const = default;
};

struct BsmSize {
  std::int32_t width = 0;
  std::int32_t length = 0;
  bool operator==(const BsmSize&) const = default;
};

struct BsmMessage {
  std::int32_t msg_cnt = 0;  // 0..127
  std::string id;            // 8 hex digits
  std::int32_t secmark = 0;  // 0..65535
  double lat = 0.0;          // [-90, 90]
  double lon = 0.0;          // [-180, 180]
  double elev = 0.0;
  BsmAccuracy accuracy;
  TransmissionState transmission = TransmissionState::kUnavailable;
  double speed = 0.0;
  double heading = 0.0;
  double angle = 0.0;
  BsmAccelSet accel_set;
  BsmBrakes brakes;
  BsmSize size;

  bool operator==(const BsmMessage&) const = default;
};

// Throws DomainError naming the first out-of-range field.
void ValidateBsm(const BsmMessage& msg);

// One "name=value" line per field in a fixed order; doubles use the shortest
// round-trip representation, so equal messages give equal bytes.
std::string SerializeBsm(const BsmMessage& msg);
// Accepts the fields in any order. Unknown, duplicate, missing or malformed
// fields raise ParseError carrying the field name.
BsmMessage DeserializeBsm(std::string_view text);

enum class SecurityLevel { kLow, kModerate, kHigh };

Variant VariantForLevel(SecurityLevel level);
std::string SecurityLevelName(SecurityLevel level);
SecurityLevel ParseSecurityLevel(std::string_view name);

inline constexpr std::size_t kDefaultPayloadLen = 1024;

// Minimal KEM-DEM framing for the use case. Not a production AEAD.
struct SecureEnvelope {
  SecurityLevel level = SecurityLevel::kLow;
  PkeCiphertext kem_ct;
  Bytes payload_ct;
  std::array<std::uint8_t, 32> auth_tag{};

  bool operator==(const SecureEnvelope&) const = default;
};

struct SendResult {
  SecureEnvelope envelope;
  EncapsResult encaps;  // sender-side view of the KEM step
};

// The serialized message is framed as le32(length) || bytes and zero-padded
// to payload_len; ConfigurationError if it does not fit.
SendResult SecureSend(const PkePublicKey& pk, SecurityLevel level, const BsmMessage& msg,
                      const Seed& m_seed, std::size_t payload_len = kDefaultPayloadLen);
SendResult SecureSend(const PkePublicKey& pk, SecurityLevel level, const BsmMessage& msg,
                      std::size_t payload_len = kDefaultPayloadLen);

// Verifies the tag before touching the payload. AuthenticationError on tag
// mismatch, ConfigurationError when the keys do not belong to the level.
BsmMessage SecureReceive(const KemSecretKey& sk, const SecureEnvelope& envelope);

// level byte, then le32-length-prefixed kem_ct, payload_ct and auth_tag.
Bytes SerializeEnvelope(const SecureEnvelope& envelope);
SecureEnvelope DeserializeEnvelope(ByteSpan bytes);

}  // namespace kyberlab

#endif  // KYBERLAB_ITS_CHANNEL_H_
