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

#include "kyberlab/its_channel.h"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <functional>
#include <map>
#include <sstream>
#include <system_error>
#include <vector>

#include "kyberlab/errors.h"

namespace kyberlab {
namespace {

constexpr std::string_view kStreamTag = "kyberlab.its.stream.v1";
constexpr std::size_t kStreamBlock = 136;  // SHAKE-256 rate

constexpr std::array<std::string_view, 5> kTransmissionNames = {"neutral", "park", "forwardGears",
                                                                "reverseGears", "unavailable"};
constexpr std::array<std::string_view, 4> kBrakeNames = {"unavailable", "off", "on", "engaged"};

std::string FormatDouble(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

template <typename T>
T ParseNumber(std::string_view field, std::string_view text) {
  T value{};
  const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size() || text.empty()) {
    throw ParseError(std::string(field), "malformed number '" + std::string(text) + "'");
  }
  return value;
}

template <std::size_t N>
std::size_t ParseName(std::string_view field, std::string_view text,
                      const std::array<std::string_view, N>& names) {
  for (std::size_t i = 0; i < N; ++i) {
    if (names[i] == text) return i;
  }
  throw ParseError(std::string(field), "unknown value '" + std::string(text) + "'");
}

// Field table: name, writer, reader. The order here is the canonical order.
struct FieldCodec {
  std::string_view name;
  std::function<std::string(const BsmMessage&)> write;
  std::function<void(BsmMessage&, std::string_view)> read;
};

FieldCodec DoubleField(std::string_view name, double BsmMessage::*member) {
  return {name, [member](const BsmMessage& m) { return FormatDouble(m.*member); },
          [name, member](BsmMessage& m, std::string_view v) { m.*member = ParseNumber<double>(name, v); }};
}

template <typename Outer>
FieldCodec NestedDouble(std::string_view name, Outer BsmMessage::*outer, double Outer::*inner) {
  return {name, [outer, inner](const BsmMessage& m) { return FormatDouble(m.*outer.*inner); },
          [name, outer, inner](BsmMessage& m, std::string_view v) { m.*outer.*inner = ParseNumber<double>(name, v); }};
}

FieldCodec BrakeField(std::string_view name, BrakeStatus BsmBrakes::*member) {
  return {name, [member](const BsmMessage& m) { return std::string(kBrakeNames[static_cast<int>(m.brakes.*member)]); },
          [name, member](BsmMessage& m, std::string_view v) {
            m.brakes.*member = static_cast<BrakeStatus>(ParseName(name, v, kBrakeNames));
          }};
}

const std::vector<FieldCodec>& Fields() {
  static const std::vector<FieldCodec> fields = {
      {"msgCnt", [](const BsmMessage& m) { return std::to_string(m.msg_cnt); },
       [](BsmMessage& m, std::string_view v) { m.msg_cnt = ParseNumber<std::int32_t>("msgCnt", v); }},
      {"id", [](const BsmMessage& m) { return m.id; },
       [](BsmMessage& m, std::string_view v) { m.id = std::string(v); }},
      {"secmark", [](const BsmMessage& m) { return std::to_string(m.secmark); },
       [](BsmMessage& m, std::string_view v) { m.secmark = ParseNumber<std::int32_t>("secmark", v); }},
      DoubleField("lat", &BsmMessage::lat),
      DoubleField("long", &BsmMessage::lon),
      DoubleField("elev", &BsmMessage::elev),
      NestedDouble("accuracy.semiMajor", &BsmMessage::accuracy, &BsmAccuracy::semi_major),
      NestedDouble("accuracy.semiMinor", &BsmMessage::accuracy, &BsmAccuracy::semi_minor),
      NestedDouble("accuracy.orientation", &BsmMessage::accuracy, &BsmAccuracy::orientation),
      {"transmission", [](const BsmMessage& m) { return std::string(kTransmissionNames[static_cast<int>(m.transmission)]); },
       [](BsmMessage& m, std::string_view v) {
         m.transmission = static_cast<TransmissionState>(ParseName("transmission", v, kTransmissionNames));
       }},
      DoubleField("speed", &BsmMessage::speed),
      DoubleField("heading", &BsmMessage::heading),
      DoubleField("angle", &BsmMessage::angle),
      NestedDouble("accelSet.long", &BsmMessage::accel_set, &BsmAccelSet::lon),
      NestedDouble("accelSet.lat", &BsmMessage::accel_set, &BsmAccelSet::lat),
      NestedDouble("accelSet.vert", &BsmMessage::accel_set, &BsmAccelSet::vert),
      NestedDouble("accelSet.yaw", &BsmMessage::accel_set, &BsmAccelSet::yaw),
      {"brakes.wheelBrakes", [](const BsmMessage& m) { return std::to_string(m.brakes.wheel_brakes); },
       [](BsmMessage& m, std::string_view v) { m.brakes.wheel_brakes = ParseNumber<std::uint8_t>("brakes.wheelBrakes", v); }},
      BrakeField("brakes.traction", &BsmBrakes::traction),
      BrakeField("brakes.abs", &BsmBrakes::abs),
      BrakeField("brakes.scs", &BsmBrakes::scs),
      BrakeField("brakes.brakeBoost", &BsmBrakes::brake_boost),
      BrakeField("brakes.auxBrakes", &BsmBrakes::aux_brakes),
      {"size.width", [](const BsmMessage& m) { return std::to_string(m.size.width); },
       [](BsmMessage& m, std::string_view v) { m.size.width = ParseNumber<std::int32_t>("size.width", v); }},
      {"size.length", [](const BsmMessage& m) { return std::to_string(m.size.length); },
       [](BsmMessage& m, std::string_view v) { m.size.length = ParseNumber<std::int32_t>("size.length", v); }},
  };
  return fields;
}

void Require(bool ok, const char* field, const char* what) {
  if (!ok) throw DomainError(std::string(field) + ": " + what);
}

Bytes Keystream(const SharedKey& key, std::size_t len) {
  Bytes out;
  out.reserve(len);
  const ByteSpan tag(reinterpret_cast<const std::uint8_t*>(kStreamTag.data()), kStreamTag.size());
  for (std::uint64_t counter = 0; out.size() < len; ++counter) {
    std::uint8_t ctr[8];
    for (int b = 0; b < 8; ++b) ctr[b] = static_cast<std::uint8_t>(counter >> (8 * b));
    const Bytes block = Shake256(Concat({key, tag, ctr}), kStreamBlock);
    out.insert(out.end(), block.begin(), block.begin() + std::min(kStreamBlock, len - out.size()));
  }
  return out;
}

std::array<std::uint8_t, 32> AuthTag(const SharedKey& key, ByteSpan payload_ct) {
  return Sha3_256(Concat({key, payload_ct}));
}

void PutLength(Bytes& out, std::size_t len) {
  for (int b = 0; b < 4; ++b) out.push_back(static_cast<std::uint8_t>(len >> (8 * b)));
}

class Reader {
 public:
  explicit Reader(ByteSpan bytes) : bytes_(bytes) {}
  ByteSpan Section(const char* name) {
    if (bytes_.size() - pos_ < 4) throw ParseError(name, "truncated length prefix");
    std::size_t len = 0;
    for (int b = 0; b < 4; ++b) len |= static_cast<std::size_t>(bytes_[pos_ + b]) << (8 * b);
    pos_ += 4;
    if (bytes_.size() - pos_ < len) throw ParseError(name, "truncated section");
    const ByteSpan out = bytes_.subspan(pos_, len);
    pos_ += len;
    return out;
  }
  std::uint8_t Byte(const char* name) {
    if (pos_ >= bytes_.size()) throw ParseError(name, "missing");
    return bytes_[pos_++];
  }
  bool Done() const { return pos_ == bytes_.size(); }

 private:
  ByteSpan bytes_;
  std::size_t pos_ = 0;
};

}  // namespace

void ValidateBsm(const BsmMessage& msg) {
  Require(msg.msg_cnt >= 0 && msg.msg_cnt <= 127, "msgCnt", "outside 0..127");
  Require(msg.id.size() == 8 && std::all_of(msg.id.begin(), msg.id.end(), [](char c) { return std::isxdigit(static_cast<unsigned char>(c)); }),
          "id", "must be 8 hex digits");
  Require(msg.secmark >= 0 && msg.secmark <= 65535, "secmark", "outside 0..65535");
  Require(std::isfinite(msg.lat) && msg.lat >= -90.0 && msg.lat <= 90.0, "lat", "outside [-90, 90]");
  Require(std::isfinite(msg.lon) && msg.lon >= -180.0 && msg.lon <= 180.0, "long", "outside [-180, 180]");
  Require(static_cast<int>(msg.transmission) >= 0 && static_cast<std::size_t>(msg.transmission) < kTransmissionNames.size(),
          "transmission", "not a listed state");
  Require(msg.brakes.wheel_brakes < 32, "brakes.wheelBrakes", "more than 5 bits");
  for (BrakeStatus b : {msg.brakes.traction, msg.brakes.abs, msg.brakes.scs, msg.brakes.brake_boost, msg.brakes.aux_brakes}) {
    Require(static_cast<int>(b) >= 0 && static_cast<std::size_t>(b) < kBrakeNames.size(), "brakes", "not a listed status");
  }
  for (double d : {msg.elev, msg.accuracy.semi_major, msg.accuracy.semi_minor, msg.accuracy.orientation, msg.speed,
                   msg.heading, msg.angle, msg.accel_set.lon, msg.accel_set.lat, msg.accel_set.vert, msg.accel_set.yaw}) {
    Require(std::isfinite(d), "message", "non-finite value");
  }
}

std::string SerializeBsm(const BsmMessage& msg) {
  ValidateBsm(msg);
  std::string out;
  for (const auto& f : Fields()) {
    out.append(f.name);
    out.push_back('=');
    out.append(f.write(msg));
    out.push_back('\n');
  }
  return out;
}

BsmMessage DeserializeBsm(std::string_view text) {
  std::map<std::string_view, std::string_view> values;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty() || line.front() == '#') continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string_view::npos) throw ParseError(std::string(line), "expected name=value");
    const std::string_view name = line.substr(0, eq);
    const auto& fields = Fields();
    if (std::none_of(fields.begin(), fields.end(), [&](const FieldCodec& f) { return f.name == name; })) {
      throw ParseError(std::string(name), "unknown field");
    }
    if (!values.emplace(name, line.substr(eq + 1)).second) throw ParseError(std::string(name), "duplicate field");
  }
  BsmMessage msg;
  for (const auto& f : Fields()) {
    const auto it = values.find(f.name);
    if (it == values.end()) throw ParseError(std::string(f.name), "missing field");
    f.read(msg, it->second);
  }
  try {
    ValidateBsm(msg);
  } catch (const DomainError& e) {
    const std::string what = e.what();
    throw ParseError(what.substr(0, what.find(':')), what);
  }
  return msg;
}

Variant VariantForLevel(SecurityLevel level) {
  switch (level) {
    case SecurityLevel::kLow:
      return Variant::kKyber512;
    case SecurityLevel::kModerate:
      return Variant::kKyber768;
    case SecurityLevel::kHigh:
      return Variant::kKyber1024;
  }
  throw ConfigurationError("unknown security level");
}

std::string SecurityLevelName(SecurityLevel level) {
  switch (level) {
    case SecurityLevel::kLow:
      return "low";
    case SecurityLevel::kModerate:
      return "moderate";
    case SecurityLevel::kHigh:
      return "high";
  }
  throw ConfigurationError("unknown security level");
}

SecurityLevel ParseSecurityLevel(std::string_view name) {
  if (name == "low") return SecurityLevel::kLow;
  if (name == "moderate") return SecurityLevel::kModerate;
  if (name == "high") return SecurityLevel::kHigh;
  throw ConfigurationError("unknown security level '" + std::string(name) + "'");
}

SendResult SecureSend(const PkePublicKey& pk, SecurityLevel level, const BsmMessage& msg,
                      const Seed& m_seed, std::size_t payload_len) {
  const Variant variant = VariantForLevel(level);
  if (pk.variant != variant) throw ConfigurationError("public key does not belong to level " + SecurityLevelName(level));
  const std::string text = SerializeBsm(msg);
  if (text.size() + 4 > payload_len) {
    throw ConfigurationError("message of " + std::to_string(text.size()) + " bytes does not fit payload_len " +
                             std::to_string(payload_len));
  }
  Bytes plain;
  plain.reserve(payload_len);
  PutLength(plain, text.size());
  plain.insert(plain.end(), text.begin(), text.end());
  plain.resize(payload_len, 0);

  const KyberParams params = KyberParams::For(variant);
  SendResult out;
  out.encaps = Encaps(pk, m_seed, params);
  const Bytes stream = Keystream(out.encaps.key, plain.size());
  out.envelope.level = level;
  out.envelope.kem_ct = out.encaps.ct;
  out.envelope.payload_ct.resize(plain.size());
  for (std::size_t i = 0; i < plain.size(); ++i) out.envelope.payload_ct[i] = plain[i] ^ stream[i];
  out.envelope.auth_tag = AuthTag(out.encaps.key, out.envelope.payload_ct);
  return out;
}

SendResult SecureSend(const PkePublicKey& pk, SecurityLevel level, const BsmMessage& msg,
                      std::size_t payload_len) {
  return SecureSend(pk, level, msg, RandomSeed(), payload_len);
}

BsmMessage SecureReceive(const KemSecretKey& sk, const SecureEnvelope& envelope) {
  const Variant variant = VariantForLevel(envelope.level);
  if (sk.pke.variant != variant) {
    throw ConfigurationError("secret key does not belong to level " + SecurityLevelName(envelope.level));
  }
  const KyberParams params = KyberParams::For(variant);
  const SharedKey key = Decaps(sk, envelope.kem_ct, params);
  const auto expected = AuthTag(key, envelope.payload_ct);
  std::uint8_t diff = 0;
  for (std::size_t i = 0; i < expected.size(); ++i) diff |= expected[i] ^ envelope.auth_tag[i];
  if (diff != 0) throw AuthenticationError("envelope tag mismatch");

  const Bytes stream = Keystream(key, envelope.payload_ct.size());
  Bytes plain(envelope.payload_ct.size());
  for (std::size_t i = 0; i < plain.size(); ++i) plain[i] = envelope.payload_ct[i] ^ stream[i];
  if (plain.size() < 4) throw ParseError("payload", "shorter than its length header");
  std::size_t len = 0;
  for (int b = 0; b < 4; ++b) len |= static_cast<std::size_t>(plain[b]) << (8 * b);
  if (len > plain.size() - 4) throw ParseError("payload", "length header exceeds payload");
  return DeserializeBsm(std::string_view(reinterpret_cast<const char*>(plain.data()) + 4, len));
}

Bytes SerializeEnvelope(const SecureEnvelope& envelope) {
  const KyberParams params = KyberParams::For(VariantForLevel(envelope.level));
  const Bytes ct = SerializeCiphertext(envelope.kem_ct, params);
  Bytes out;
  out.push_back(static_cast<std::uint8_t>(envelope.level));
  PutLength(out, ct.size());
  out.insert(out.end(), ct.begin(), ct.end());
  PutLength(out, envelope.payload_ct.size());
  out.insert(out.end(), envelope.payload_ct.begin(), envelope.payload_ct.end());
  PutLength(out, envelope.auth_tag.size());
  out.insert(out.end(), envelope.auth_tag.begin(), envelope.auth_tag.end());
  return out;
}

SecureEnvelope DeserializeEnvelope(ByteSpan bytes) {
  Reader r(bytes);
  const std::uint8_t level = r.Byte("level");
  if (level > static_cast<std::uint8_t>(SecurityLevel::kHigh)) throw ParseError("level", "unknown level byte");
  SecureEnvelope env;
  env.level = static_cast<SecurityLevel>(level);
  const KyberParams params = KyberParams::For(VariantForLevel(env.level));
  const ByteSpan ct = r.Section("kem_ct");
  try {
    env.kem_ct = DeserializeCiphertext(ct, params);
  } catch (const Error& e) {
    throw ParseError("kem_ct", e.what());
  }
  const ByteSpan payload = r.Section("payload_ct");
  env.payload_ct.assign(payload.begin(), payload.end());
  const ByteSpan tag = r.Section("auth_tag");
  if (tag.size() != env.auth_tag.size()) throw ParseError("auth_tag", "must be 32 bytes");
  std::copy(tag.begin(), tag.end(), env.auth_tag.begin());
  if (!r.Done()) throw ParseError("envelope", "trailing bytes");
  return env;
}

}  // namespace kyberlab
