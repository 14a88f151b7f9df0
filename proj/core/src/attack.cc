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

#include "kyberlab/attack.h"

#include <atomic>
#include <exception>
#include <istream>
#include <mutex>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>

#include "kyberlab/errors.h"

namespace kyberlab {

namespace {

struct DecisionBoundary {
  bool survives_below;  // survived <=> d <= threshold (else d >= threshold)
  int threshold;
};

// Scans every error value d that decrypts the bit honestly and locates where
// the manipulated decryption stops returning the same bit.
DecisionBoundary FindBoundary(int bit, Coeff delta, const KyberParams& params) {
  const int q = params.q;
  const Coeff encoded = bit ? (q + 1) / 2 : 0;
  std::vector<std::pair<int, bool>> region;  // (d, survived), ascending d
  for (int d = -(q - 1) / 2; d <= q / 2; ++d) {
    if (Phi(ModQ(static_cast<std::int64_t>(encoded) + d, q), q) != bit) continue;
    const bool survived = Phi(ModQ(static_cast<std::int64_t>(encoded) + d + delta, q), q) == bit;
    region.emplace_back(d, survived);
  }
  if (region.empty()) throw DomainError("bit cannot be decrypted for any error value");
  const bool first = region.front().second;
  std::size_t split = 1;
  while (split < region.size() && region[split].second == first) ++split;
  if (split == region.size()) throw DomainError("manipulation does not split the decision region");
  for (std::size_t j = split; j < region.size(); ++j) {
    if (region[j].second == first) throw DomainError("decision region is not an interval for this shift");
  }
  return first ? DecisionBoundary{true, region[split - 1].first}
               : DecisionBoundary{false, region[split].first};
}

void RequireTranscript(const EncapsTranscript& tr, const KyberParams& params) {
  const auto k = static_cast<std::size_t>(params.k);
  const auto n = static_cast<std::size_t>(params.n);
  auto vec_ok = [&](const SignedPolyVec& v) {
    if (v.size() != k) return false;
    for (const auto& p : v)
      if (p.size() != n) return false;
    return true;
  };
  if (tr.m.size() != n || !vec_ok(tr.coins.r) || !vec_ok(tr.coins.e1) || !vec_ok(tr.delta_u) ||
      tr.coins.e2.size() != n || tr.delta_v.size() != n) {
    throw InputError("encapsulation transcript is missing or incomplete");
  }
}

}  // namespace

std::int64_t Inequality::Evaluate(std::span<const int> unknowns) const {
  if (unknowns.size() != coeffs.size()) throw StructuralError("unknown vector has wrong length");
  std::int64_t acc = constant;
  for (std::size_t j = 0; j < coeffs.size(); ++j) acc += static_cast<std::int64_t>(coeffs[j]) * unknowns[j];
  return acc;
}

bool Inequality::Holds(std::span<const int> unknowns) const {
  const std::int64_t y = Evaluate(unknowns);
  return relation == Relation::kLessThan ? y < threshold : y >= threshold;
}

std::vector<Inequality> AttackTranscript::Inequalities() const {
  std::vector<Inequality> out;
  out.reserve(trials.size());
  for (const auto& t : trials) out.push_back(t.inequality);
  return out;
}

int NegacyclicSign(int h, int i) { return i - h >= 0 ? 1 : -1; }

int NegacyclicIndex(int h, int i, int n) { return ((i - h) % n + n) % n; }

std::vector<int> FlattenUnknowns(const SignedPolyVec& e, const SignedPolyVec& s) {
  std::vector<int> out;
  for (const auto* vec : {&e, &s})
    for (const auto& p : *vec) out.insert(out.end(), p.coeffs.begin(), p.coeffs.end());
  return out;
}

std::vector<int> TrueUnknowns(const KemKeyPair& kp) { return FlattenUnknowns(kp.e, kp.sk.pke.s); }

std::pair<PkeCiphertext, Manipulation> CraftManipulation(const PkeCiphertext& ct, int coeff_index,
                                                         const KyberParams& params) {
  if (coeff_index < 0 || coeff_index >= params.n ||
      static_cast<std::size_t>(coeff_index) >= ct.c2.size()) {
    throw DomainError("coefficient index " + std::to_string(coeff_index) + " out of range");
  }
  Manipulation m;
  m.coeff_index = coeff_index;
  m.original_value = ct.c2[coeff_index];
  m.delta_compressed = static_cast<std::uint16_t>(1u << (params.dv - 2));
  PkeCiphertext out = ct;
  const auto mask = static_cast<std::uint16_t>((1u << params.dv) - 1);
  out.c2[coeff_index] = static_cast<std::uint16_t>((m.original_value + m.delta_compressed) & mask);
  m.raw_shift = Decompress(out.c2[coeff_index], params.dv, params.q) -
                Decompress(m.original_value, params.dv, params.q);
  m.delta_decompressed = CenterMod(m.raw_shift, params.q);
  return {std::move(out), m};
}

bool FaultOracle(const KemSecretKey& sk, const PkeCiphertext& manipulated,
                 const Manipulation& manipulation, const SharedKey& true_key,
                 const KyberParams& params) {
  const auto fault = FaultSpec::CorrectManipulation(manipulation.coeff_index, manipulation.original_value);
  return Decaps(sk, manipulated, params, fault) == true_key;
}

std::vector<std::int8_t> ErrorCoefficientRow(const EncapsTranscript& tr, int i,
                                             const KyberParams& params) {
  RequireTranscript(tr, params);
  const int n = params.n, k = params.k;
  std::vector<std::int8_t> row(static_cast<std::size_t>(2 * k * n));
  for (int t = 0; t < k; ++t) {
    const auto& r = tr.coins.r[t].coeffs;
    const auto& e1 = tr.coins.e1[t].coeffs;
    const auto& du = tr.delta_u[t].coeffs;
    for (int h = 0; h < n; ++h) {
      const int sign = NegacyclicSign(h, i);
      const int idx = NegacyclicIndex(h, i, n);
      row[t * n + h] = static_cast<std::int8_t>(sign * r[idx]);
      row[k * n + t * n + h] = static_cast<std::int8_t>(-sign * (e1[idx] + du[idx]));
    }
  }
  return row;
}

Inequality DeriveInequality(const EncapsTranscript& tr, const Manipulation& manipulation,
                            bool outcome, const KyberParams& params) {
  RequireTranscript(tr, params);
  const int i = manipulation.coeff_index;
  if (i < 0 || i >= params.n) throw DomainError("coefficient index out of range");
  Inequality ineq;
  ineq.coeffs = ErrorCoefficientRow(tr, i, params);
  ineq.constant = tr.coins.e2.coeffs[i] + tr.delta_v.coeffs[i];
  const auto boundary = FindBoundary(tr.m[i], manipulation.delta_decompressed, params);
  if (boundary.survives_below) {
    ineq.relation = outcome ? Relation::kLessThan : Relation::kGreaterOrEqual;
    ineq.threshold = boundary.threshold + 1;
  } else {
    ineq.relation = outcome ? Relation::kGreaterOrEqual : Relation::kLessThan;
    ineq.threshold = boundary.threshold;
  }
  return ineq;
}

namespace {

TrialRecord RunAttackTrial(const KemKeyPair& kp, int j, std::uint64_t rng_seed,
                           const KyberParams& params, const CiphertextSource& source,
                           int& honest_failures) {
  for (std::uint64_t attempt = 0;; ++attempt) {
    const Seed seed = DeriveSeed("kyberlab.attack.encaps",
                                 {rng_seed, static_cast<std::uint64_t>(j), attempt});
    EncapsResult enc = source ? source(seed) : Encaps(kp.pk, seed, params);
    // One unfaulted query tells the attacker whether this ciphertext
    // decrypts honestly; otherwise the inequality would not describe d.
    if (Decaps(kp.sk, enc.ct, params) != enc.key) {
      ++honest_failures;
      continue;
    }
    const Seed index_seed = DeriveSeed("kyberlab.attack.index",
                                       {rng_seed, static_cast<std::uint64_t>(j), attempt});
    std::uint32_t raw = 0;
    for (int b = 0; b < 4; ++b) raw |= static_cast<std::uint32_t>(index_seed[b]) << (8 * b);
    const int i = static_cast<int>(raw % static_cast<std::uint32_t>(params.n));

    auto [manipulated, manipulation] = CraftManipulation(enc.ct, i, params);
    TrialRecord rec;
    rec.trial = j;
    rec.coeff_index = i;
    rec.attempts = static_cast<int>(attempt) + 1;
    rec.manipulation = manipulation;
    rec.outcome = FaultOracle(kp.sk, manipulated, manipulation, enc.key, params);
    rec.inequality = DeriveInequality(enc.transcript, manipulation, rec.outcome, params);
    return rec;
  }
}

}  // namespace

AttackTranscript CollectInequalities(const KemKeyPair& keypair, std::size_t count,
                                     std::uint64_t rng_seed, const KyberParams& params,
                                     const CollectOptions& options) {
  AttackTranscript out;
  out.trials.resize(count);
  std::vector<int> failures(count, 0);
  const int workers = std::max(1, std::min<int>(options.workers, static_cast<int>(count)));

  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mu;
  auto work = [&] {
    try {
      for (std::size_t j = next++; j < count; j = next++) {
        out.trials[j] = RunAttackTrial(keypair, static_cast<int>(j), rng_seed, params,
                                       options.source, failures[j]);
      }
    } catch (...) {
      std::lock_guard<std::mutex> lock(error_mu);
      if (!error) error = std::current_exception();
      next = count;
    }
  };
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  if (error) std::rethrow_exception(error);
  for (int f : failures) out.honest_failures += f;
  return out;
}

void WriteInequalities(std::ostream& out, std::span<const Inequality> inequalities) {
  for (const auto& ineq : inequalities) {
    out << (ineq.relation == Relation::kLessThan ? "LT" : "GE") << ' ' << ineq.threshold << ' '
        << ineq.constant;
    for (auto c : ineq.coeffs) out << ' ' << static_cast<int>(c);
    out << '\n';
  }
}

std::vector<Inequality> ReadInequalities(std::istream& in,
                                         std::optional<std::size_t> expected_unknowns) {
  std::vector<Inequality> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    const std::string where = "line " + std::to_string(line_no);
    std::istringstream ls(line);
    std::string rel;
    Inequality ineq;
    if (!(ls >> rel >> ineq.threshold >> ineq.constant)) throw ParseError(where, "missing header fields");
    if (rel == "LT") {
      ineq.relation = Relation::kLessThan;
    } else if (rel == "GE") {
      ineq.relation = Relation::kGreaterOrEqual;
    } else {
      throw ParseError(where, "unknown relation '" + rel + "'");
    }
    int c;
    while (ls >> c) {
      if (c < -128 || c > 127) throw ParseError(where, "coefficient out of int8 range");
      ineq.coeffs.push_back(static_cast<std::int8_t>(c));
    }
    if (!ls.eof()) throw ParseError(where, "non-integer coefficient");
    if (expected_unknowns && ineq.coeffs.size() != *expected_unknowns) {
      throw ParseError(where, "expected " + std::to_string(*expected_unknowns) + " coefficients, found " +
                                  std::to_string(ineq.coeffs.size()));
    }
    if (!out.empty() && out.front().coeffs.size() != ineq.coeffs.size()) {
      throw ParseError(where, "coefficient count differs from the first record");
    }
    out.push_back(std::move(ineq));
  }
  return out;
}

}  // namespace kyberlab
