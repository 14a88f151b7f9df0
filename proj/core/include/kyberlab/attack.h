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

#ifndef KYBERLAB_ATTACK_H_
#define KYBERLAB_ATTACK_H_

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "kyberlab/kem.h"
#include "kyberlab/params.h"

namespace kyberlab {

// Fault-enabled chosen-ciphertext attack: shift one compressed coefficient of
// c2 by 2^(dv-2) (a quarter of the range, i.e. ~q/4 after decompression),
// let the faulted decapsulation compare against the original ciphertext, and
// turn the success/failure observation into a linear inequality on (e, s).

struct Manipulation {
  int coeff_index = 0;
  std::uint16_t original_value = 0;    // c2[i] before manipulation
  std::uint16_t delta_compressed = 0;  // 2^(dv-2)
  Coeff raw_shift = 0;                 // Decompress(c2'[i]) - Decompress(c2[i])
  Coeff delta_decompressed = 0;        // raw_shift centered mod q
};

enum class Relation { kLessThan, kGreaterOrEqual };

// sum_j coeffs[j] * x[j] + constant  (relation)  threshold, over the 2kn
// unknowns x = (e, s). Unknown layout: e^(t)_h at t*n + h, s^(t)_h at
// k*n + t*n + h.
struct Inequality {
  std::vector<std::int8_t> coeffs;
  std::int32_t constant = 0;
  Relation relation = Relation::kLessThan;
  std::int32_t threshold = 0;

  std::int64_t Evaluate(std::span<const int> unknowns) const;
  bool Holds(std::span<const int> unknowns) const;
  bool operator==(const Inequality&) const = default;
};

struct TrialRecord {
  int trial = 0;  // j
  int coeff_index = 0;
  int attempts = 1;  // encapsulations drawn until one decrypted honestly
  Manipulation manipulation;
  bool outcome = false;  // true: the shared key survived the fault
  Inequality inequality;
};

struct AttackTranscript {
  std::vector<TrialRecord> trials;
  int honest_failures = 0;

  std::vector<Inequality> Inequalities() const;
};

// sigma(h, i): +1 if i >= h, else -1 (x^n = -1 wrap).
int NegacyclicSign(int h, int i);
// tau(h, i) = (i - h) mod n.
int NegacyclicIndex(int h, int i, int n);

std::vector<int> FlattenUnknowns(const SignedPolyVec& e, const SignedPolyVec& s);
std::vector<int> TrueUnknowns(const KemKeyPair& kp);

std::pair<PkeCiphertext, Manipulation> CraftManipulation(const PkeCiphertext& ct, int coeff_index,
                                                         const KyberParams& params);

// True iff the faulted decapsulation of `manipulated` still yields true_key.
bool FaultOracle(const KemSecretKey& sk, const PkeCiphertext& manipulated,
                 const Manipulation& manipulation, const SharedKey& true_key,
                 const KyberParams& params);

// Coefficients of the linear form giving coefficient i of
// e^T r - s^T (e1 + du) in terms of (e, s).
std::vector<std::int8_t> ErrorCoefficientRow(const EncapsTranscript& transcript, int coeff_index,
                                             const KyberParams& params);

// Builds the inequality whose truth on the real (e, s) equals `outcome`.
// The threshold is exact: it is read off the decision function for the
// encoded bit and the manipulation's decompressed shift.
Inequality DeriveInequality(const EncapsTranscript& transcript, const Manipulation& manipulation,
                            bool outcome, const KyberParams& params);

// Produces one EncapsResult from a 32-byte seed. The default draws a fresh
// encapsulation under the target public key.
using CiphertextSource = std::function<EncapsResult(const Seed&)>;

struct CollectOptions {
  int workers = 1;
  CiphertextSource source;  // empty: Encaps(pk, seed)
};

// Runs `count` independent trials. Trial j uses seeds derived from
// (rng_seed, j, attempt) and a uniformly drawn coefficient index, so the
// output is identical for any worker count.
AttackTranscript CollectInequalities(const KemKeyPair& keypair, std::size_t count,
                                     std::uint64_t rng_seed, const KyberParams& params,
                                     const CollectOptions& options = {});

// Text format, one inequality per line:
//   LT|GE <threshold> <constant> <c_0> ... <c_{2kn-1}>
void WriteInequalities(std::ostream& out, std::span<const Inequality> inequalities);
std::vector<Inequality> ReadInequalities(std::istream& in,
                                         std::optional<std::size_t> expected_unknowns = {});

}  // namespace kyberlab

#endif  // KYBERLAB_ATTACK_H_
