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

#ifndef KYBERLAB_SOLVER_H_
#define KYBERLAB_SOLVER_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "kyberlab/attack.h"
#include "kyberlab/params.h"
#include "kyberlab/pke.h"

namespace kyberlab {

enum class SolverMode {
  // Exact posterior marginals of the whole system by pruned enumeration.
  // Limited to kMaxExactUnknowns unknowns.
  kExact,
  // Loopy belief propagation; each check node's excluded sum is modelled as
  // a normal with mean/variance taken from the current marginals.
  kNormalApprox,
};

inline constexpr std::size_t kMaxExactUnknowns = 20;

struct SolverConfig {
  int max_iterations = 50;
  double tolerance = 1e-6;  // on the largest per-probability change of a sweep
  SolverMode mode = SolverMode::kNormalApprox;
  double damping = 0.9;  // weight kept from the previous message, in [0, 1)
  int workers = 1;
};

// Exact mode when the system is small enough for it, otherwise defaults.
SolverConfig DefaultSolverConfig(const KyberParams& params);

// Per-unknown probability vectors over {-eta, ..., eta}, together with the
// priors they started from.
class MarginalTable {
 public:
  // Every unknown starts at the centered binomial pmf for eta.
  MarginalTable(int eta, std::size_t unknowns);
  // Custom priors; each row must have 2*eta+1 entries and is normalised.
  MarginalTable(int eta, std::vector<std::vector<double>> priors);

  int eta() const { return eta_; }
  int width() const { return 2 * eta_ + 1; }
  std::size_t unknowns() const { return unknowns_; }

  std::span<const double> row(std::size_t v) const { return {probs_.data() + v * width(), static_cast<std::size_t>(width())}; }
  std::span<double> mutable_row(std::size_t v) { return {probs_.data() + v * width(), static_cast<std::size_t>(width())}; }
  std::span<const double> prior(std::size_t v) const { return {priors_.data() + v * width(), static_cast<std::size_t>(width())}; }

  // P(unknown v == value).
  double probability(std::size_t v, int value) const { return row(v)[value + eta_]; }

 private:
  int eta_;
  std::size_t unknowns_;
  std::vector<double> probs_;
  std::vector<double> priors_;
};

// Centered binomial pmf over {-eta, ..., eta}.
std::vector<double> CbdPmf(int eta);

MarginalTable InitPriors(const KyberParams& params);

// Loopy belief propagation in the normal-approximation mode. Keeps one
// message per (check, unknown) edge so that each check sees the other
// checks' evidence about an unknown but not its own.
//
// A sweep recomputes every check-to-unknown message from the cavity
// distributions of the previous sweep, mixes it with the old message
// (weight `damping` on the old one) and rebuilds the marginals as
// prior * product of messages. Results do not depend on `workers`.
class BeliefPropagation {
 public:
  // `initial` supplies the priors; its current rows are ignored.
  BeliefPropagation(std::span<const Inequality> inequalities, const MarginalTable& initial,
                    const SolverConfig& config);

  // Returns the largest absolute change of any marginal probability.
  double Sweep();

  const MarginalTable& marginals() const { return marginals_; }
  std::size_t edges() const { return edge_var_.size(); }

 private:
  SolverConfig config_;
  MarginalTable marginals_;
  std::size_t checks_;
  std::vector<std::size_t> check_begin_;  // CSR by check, size checks_ + 1
  std::vector<std::uint32_t> edge_var_;
  std::vector<std::int8_t> edge_coef_;
  std::vector<std::vector<std::uint32_t>> var_edges_;  // edge ids per unknown, ascending
  std::vector<double> constants_;
  std::vector<double> edges_at_;  // threshold - 0.5 per check
  std::vector<bool> less_than_;
  std::vector<float> msg_;        // edges * width, each message normalised to sum 1
};

// One synchronous sweep over all check nodes, taking the current marginals
// as the unknowns' beliefs: each marginal is multiplied by the probability
// that every check holds given the unknown's value. Returns the largest
// absolute change of any probability. An empty inequality set leaves the
// table as is. In exact mode the table becomes the exact posterior of the
// table's priors, which is already a fixed point.
double BpUpdate(MarginalTable& marginals, std::span<const Inequality> inequalities,
                const SolverConfig& config);

struct KeyCandidate {
  std::vector<int> e_hat;
  std::vector<int> s_hat;
  std::vector<double> confidence;  // max marginal per unknown, (e, s) order

  std::vector<int> Flattened() const;
};

// Per-unknown argmax; ties go to the smaller |value|, then the negative one.
KeyCandidate ArgmaxCandidate(const MarginalTable& marginals, const KyberParams& params);

struct RecoveryResult {
  KeyCandidate candidate;
  int iterations = 0;
  bool converged = false;
  std::optional<double> accuracy;    // fraction of all 2kn unknowns correct
  std::optional<double> accuracy_e;
  std::optional<double> accuracy_s;
};

RecoveryResult RecoverKey(std::span<const Inequality> inequalities, const KyberParams& params,
                          const SolverConfig& config,
                          std::optional<std::span<const int>> true_key = std::nullopt);

// t == A*s_hat + e_hat exactly, with both vectors inside the CBD support.
bool ValidateCandidate(const PkePublicKey& pk, const KeyCandidate& candidate,
                       const KyberParams& params);

// Exact-size systems only. Among the assignments that satisfy every
// inequality, returns the most probable one under the priors that passes
// ValidateCandidate; confidences are the exact posterior marginals of the
// chosen values. nullopt when none validates or more than `max_candidates`
// assignments are feasible.
std::optional<KeyCandidate> ResolveWithPublicKey(std::span<const Inequality> inequalities,
                                                 const PkePublicKey& pk, const KyberParams& params,
                                                 std::size_t max_candidates = std::size_t{1} << 16);

struct ValidatedRecovery {
  RecoveryResult result;
  bool validated = false;
  bool resolved_by_public_key = false;  // the argmax failed and the key settled the tie
};

// RecoverKey followed by ValidateCandidate. In exact mode a candidate that
// fails validation is replaced by ResolveWithPublicKey's answer when there
// is one; accuracies are recomputed for the replacement.
ValidatedRecovery RecoverAndValidate(std::span<const Inequality> inequalities, const PkePublicKey& pk,
                                     const KyberParams& params, const SolverConfig& config,
                                     std::optional<std::span<const int>> true_key = std::nullopt);

std::string RecoveryReportJson(const RecoveryResult& result, std::optional<bool> validated);

}  // namespace kyberlab

#endif  // KYBERLAB_SOLVER_H_
