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

#include "kyberlab/solver.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <thread>

#include <nlohmann/json.hpp>
#include "kyberlab/errors.h"
#include "kyberlab/ring.h"

namespace kyberlab {
namespace {

void Normalize(std::span<double> row) {
  double sum = 0.0;
  for (double p : row) sum += p;
  if (!(sum > 0.0)) throw DomainError("marginal vector has no mass");
  for (double& p : row) p /= sum;
}

constexpr double kMessageFloor = 1e-30;

// P(N(0,1) <= z). Cubic Hermite interpolation of a table on [-8, 8] with
// step 1/128 (relative error below 1e-9 there); erfc outside.
class NormalCdfTable {
 public:
  static constexpr double kRange = 8.0;
  static constexpr int kPerUnit = 128;

  NormalCdfTable() {
    const int points = static_cast<int>(2 * kRange * kPerUnit) + 1;
    cdf_.resize(points);
    pdf_.resize(points);
    for (int i = 0; i < points; ++i) {
      const double z = -kRange + static_cast<double>(i) / kPerUnit;
      cdf_[i] = 0.5 * std::erfc(-z * M_SQRT1_2);
      pdf_[i] = std::exp(-0.5 * z * z) / std::sqrt(2.0 * M_PI);
    }
  }

  double operator()(double z) const {
    if (!(z > -kRange && z < kRange)) return 0.5 * std::erfc(-z * M_SQRT1_2);
    const double pos = (z + kRange) * kPerUnit;
    const int i = static_cast<int>(pos);
    const double t = pos - i;
    const double h = 1.0 / kPerUnit;
    const double t2 = t * t, t3 = t2 * t;
    return (2 * t3 - 3 * t2 + 1) * cdf_[i] + (t3 - 2 * t2 + t) * h * pdf_[i] +
           (-2 * t3 + 3 * t2) * cdf_[i + 1] + (t3 - t2) * h * pdf_[i + 1];
  }

 private:
  std::vector<double> cdf_;
  std::vector<double> pdf_;
};

double NormalCdf(double z) {
  static const NormalCdfTable table;
  return table(z);
}

// Runs fn(begin, end) over [0, count) split into contiguous chunks.
template <typename Fn>
void ParallelFor(std::size_t count, int workers, Fn&& fn) {
  const std::size_t w = std::clamp<std::size_t>(workers < 1 ? 1 : workers, 1, std::max<std::size_t>(count, 1));
  if (w == 1) {
    fn(std::size_t{0}, count);
    return;
  }
  std::vector<std::thread> pool;
  const std::size_t chunk = (count + w - 1) / w;
  for (std::size_t t = 0; t < w; ++t) {
    const std::size_t begin = t * chunk;
    const std::size_t end = std::min(count, begin + chunk);
    if (begin >= end) break;
    pool.emplace_back([&fn, begin, end] { fn(begin, end); });
  }
  for (auto& th : pool) th.join();
}

bool Accepts(const Inequality& ineq, std::int64_t y) {
  return ineq.relation == Relation::kLessThan ? y < ineq.threshold : y >= ineq.threshold;
}

// Exact posterior marginals P(x_v | all inequalities) under the priors, by
// depth-first enumeration with interval pruning. Once every check is decided
// for all completions, the remaining unknowns are independent and their
// prior mass is added in closed form.
class ExactEnumerator {
 public:
  ExactEnumerator(const MarginalTable& table, std::span<const Inequality> inequalities)
      : table_(table), ineqs_(inequalities), n_(table.unknowns()), width_(table.width()), eta_(table.eta()) {
    for (const auto& ineq : ineqs_) {
      if (ineq.coeffs.size() != n_) throw StructuralError("inequality length does not match unknown count");
    }
    // Support per unknown: values with non-zero prior.
    lo_.assign(n_, 0);
    hi_.assign(n_, 0);
    for (std::size_t v = 0; v < n_; ++v) {
      const auto p = table.prior(v);
      int first = -1, last = -1;
      for (int x = 0; x < width_; ++x) {
        if (p[x] > 0.0) {
          if (first < 0) first = x;
          last = x;
        }
      }
      if (first < 0) throw DomainError("prior has no mass");
      lo_[v] = first - eta_;
      hi_[v] = last - eta_;
    }
    // suffix_min_[c][d], suffix_max_[c][d]: range of sum_{w >= d} a_cw x_w.
    const std::size_t m = ineqs_.size();
    suffix_min_.assign(m, std::vector<std::int64_t>(n_ + 1, 0));
    suffix_max_.assign(m, std::vector<std::int64_t>(n_ + 1, 0));
    for (std::size_t c = 0; c < m; ++c) {
      for (std::size_t d = n_; d-- > 0;) {
        const std::int64_t a = ineqs_[c].coeffs[d];
        const std::int64_t p = a * lo_[d], q = a * hi_[d];
        suffix_min_[c][d] = suffix_min_[c][d + 1] + std::min(p, q);
        suffix_max_[c][d] = suffix_max_[c][d + 1] + std::max(p, q);
      }
    }
  }

  // Fills out with the posterior; returns false when no assignment satisfies
  // every inequality.
  bool Run(std::vector<double>& out) {
    tally_.assign(n_ * width_, 0.0);
    total_ = 0.0;
    path_.assign(n_, 0);
    std::vector<std::int64_t> partial(ineqs_.size());
    for (std::size_t c = 0; c < ineqs_.size(); ++c) partial[c] = ineqs_[c].constant;
    Descend(0, 1.0, partial);
    if (!(total_ > 0.0)) return false;
    out.resize(n_ * width_);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = tally_[i] / total_;
    return true;
  }

 private:
  void Descend(std::size_t depth, double weight, std::vector<std::int64_t>& partial) {
    bool all_decided = true;
    for (std::size_t c = 0; c < ineqs_.size(); ++c) {
      const bool lo_ok = Accepts(ineqs_[c], partial[c] + suffix_min_[c][depth]);
      const bool hi_ok = Accepts(ineqs_[c], partial[c] + suffix_max_[c][depth]);
      // The accepting set of either relation is a half line, so the ends
      // of the reachable interval decide it.
      if (!lo_ok && !hi_ok) return;
      if (lo_ok != hi_ok) all_decided = false;
    }
    if (all_decided) {
      for (std::size_t w = 0; w < depth; ++w) tally_[w * width_ + path_[w] + eta_] += weight;
      for (std::size_t w = depth; w < n_; ++w) {
        const auto p = table_.prior(w);
        for (int x = 0; x < width_; ++x) tally_[w * width_ + x] += weight * p[x];
      }
      total_ += weight;
      return;
    }
    const auto p = table_.prior(depth);
    for (int val = lo_[depth]; val <= hi_[depth]; ++val) {
      const double pw = p[val + eta_];
      if (pw == 0.0) continue;
      for (std::size_t c = 0; c < ineqs_.size(); ++c) partial[c] += ineqs_[c].coeffs[depth] * val;
      path_[depth] = val;
      Descend(depth + 1, weight * pw, partial);
      for (std::size_t c = 0; c < ineqs_.size(); ++c) partial[c] -= ineqs_[c].coeffs[depth] * val;
    }
  }

  const MarginalTable& table_;
  std::span<const Inequality> ineqs_;
  std::size_t n_;
  int width_;
  int eta_;
  std::vector<int> lo_, hi_;
  std::vector<std::vector<std::int64_t>> suffix_min_, suffix_max_;
  std::vector<double> tally_;
  double total_ = 0.0;
  std::vector<int> path_;
};

// Every assignment inside the prior support that satisfies all inequalities,
// with its prior weight. Stops and returns false once more than `limit`
// assignments have been found.
class FeasibleEnumerator {
 public:
  FeasibleEnumerator(const MarginalTable& table, std::span<const Inequality> inequalities, std::size_t limit)
      : table_(table), ineqs_(inequalities), n_(table.unknowns()), eta_(table.eta()), limit_(limit) {
    lo_.assign(n_, 0);
    hi_.assign(n_, 0);
    for (std::size_t v = 0; v < n_; ++v) {
      const auto p = table.prior(v);
      int first = -1, last = -1;
      for (int x = 0; x < table.width(); ++x) {
        if (p[x] > 0.0) {
          if (first < 0) first = x;
          last = x;
        }
      }
      if (first < 0) throw DomainError("prior has no mass");
      lo_[v] = first - eta_;
      hi_[v] = last - eta_;
    }
    suffix_min_.assign(ineqs_.size(), std::vector<std::int64_t>(n_ + 1, 0));
    suffix_max_.assign(ineqs_.size(), std::vector<std::int64_t>(n_ + 1, 0));
    for (std::size_t c = 0; c < ineqs_.size(); ++c) {
      if (ineqs_[c].coeffs.size() != n_) throw StructuralError("inequality length does not match unknown count");
      for (std::size_t d = n_; d-- > 0;) {
        const std::int64_t a = ineqs_[c].coeffs[d];
        suffix_min_[c][d] = suffix_min_[c][d + 1] + std::min(a * lo_[d], a * hi_[d]);
        suffix_max_[c][d] = suffix_max_[c][d + 1] + std::max(a * lo_[d], a * hi_[d]);
      }
    }
  }

  bool Run() {
    found_.clear();
    path_.assign(n_, 0);
    std::vector<std::int64_t> partial(ineqs_.size());
    for (std::size_t c = 0; c < ineqs_.size(); ++c) partial[c] = ineqs_[c].constant;
    overflow_ = false;
    Descend(0, 1.0, partial);
    return !overflow_;
  }

  const std::vector<std::pair<double, std::vector<int>>>& found() const { return found_; }

 private:
  void Descend(std::size_t depth, double weight, std::vector<std::int64_t>& partial) {
    if (overflow_) return;
    for (std::size_t c = 0; c < ineqs_.size(); ++c) {
      if (!Accepts(ineqs_[c], partial[c] + suffix_min_[c][depth]) &&
          !Accepts(ineqs_[c], partial[c] + suffix_max_[c][depth])) {
        return;
      }
    }
    if (depth == n_) {
      if (found_.size() == limit_) {
        overflow_ = true;
        return;
      }
      found_.emplace_back(weight, path_);
      return;
    }
    const auto p = table_.prior(depth);
    for (int val = lo_[depth]; val <= hi_[depth]; ++val) {
      const double pw = p[val + eta_];
      if (pw == 0.0) continue;
      for (std::size_t c = 0; c < ineqs_.size(); ++c) partial[c] += ineqs_[c].coeffs[depth] * val;
      path_[depth] = val;
      Descend(depth + 1, weight * pw, partial);
      for (std::size_t c = 0; c < ineqs_.size(); ++c) partial[c] -= ineqs_[c].coeffs[depth] * val;
    }
  }

  const MarginalTable& table_;
  std::span<const Inequality> ineqs_;
  std::size_t n_;
  int eta_;
  std::size_t limit_;
  std::vector<int> lo_, hi_;
  std::vector<std::vector<std::int64_t>> suffix_min_, suffix_max_;
  std::vector<std::pair<double, std::vector<int>>> found_;
  std::vector<int> path_;
  bool overflow_ = false;
};

double ExactUpdate(MarginalTable& table, std::span<const Inequality> inequalities) {
  if (table.unknowns() > kMaxExactUnknowns) throw ConfigurationError("exact mode supports at most 20 unknowns");
  ExactEnumerator enumerator(table, inequalities);
  std::vector<double> posterior;
  if (!enumerator.Run(posterior)) throw DomainError("inequality system has no solution under the priors");
  double max_delta = 0.0;
  const int width = table.width();
  for (std::size_t v = 0; v < table.unknowns(); ++v) {
    auto row = table.mutable_row(v);
    for (int x = 0; x < width; ++x) {
      const double next = posterior[v * width + x];
      max_delta = std::max(max_delta, std::abs(next - row[x]));
      row[x] = next;
    }
  }
  return max_delta;
}

void CheckConfig(const SolverConfig& config) {
  if (!(config.damping >= 0.0 && config.damping < 1.0)) throw ConfigurationError("damping must lie in [0, 1)");
  if (config.max_iterations < 1) throw ConfigurationError("max_iterations must be positive");
  if (!(config.tolerance > 0.0)) throw ConfigurationError("tolerance must be positive");
}

double Fraction(std::span<const int> got, std::span<const int> want) {
  if (got.empty()) return 1.0;
  std::size_t hits = 0;
  for (std::size_t i = 0; i < got.size(); ++i) hits += got[i] == want[i];
  return static_cast<double>(hits) / static_cast<double>(got.size());
}

}  // namespace

BeliefPropagation::BeliefPropagation(std::span<const Inequality> inequalities, const MarginalTable& initial,
                                     const SolverConfig& config)
    : config_(config), marginals_(initial), checks_(inequalities.size()) {
  CheckConfig(config_);
  const std::size_t n = marginals_.unknowns();
  const int width = marginals_.width();
  for (std::size_t v = 0; v < n; ++v) {
    auto row = marginals_.mutable_row(v);
    const auto p = marginals_.prior(v);
    std::copy(p.begin(), p.end(), row.begin());
  }
  check_begin_.reserve(checks_ + 1);
  check_begin_.push_back(0);
  var_edges_.resize(n);
  for (std::size_t c = 0; c < checks_; ++c) {
    const Inequality& ineq = inequalities[c];
    if (ineq.coeffs.size() != n) throw StructuralError("inequality length does not match unknown count");
    for (std::size_t v = 0; v < n; ++v) {
      if (ineq.coeffs[v] == 0) continue;
      var_edges_[v].push_back(static_cast<std::uint32_t>(edge_var_.size()));
      edge_var_.push_back(static_cast<std::uint32_t>(v));
      edge_coef_.push_back(ineq.coeffs[v]);
    }
    check_begin_.push_back(edge_var_.size());
    constants_.push_back(ineq.constant);
    // y < T and y >= T split the integers at T - 0.5.
    edges_at_.push_back(static_cast<double>(ineq.threshold) - 0.5);
    less_than_.push_back(ineq.relation == Relation::kLessThan);
  }
  msg_.assign(edge_var_.size() * width, 1.0f / static_cast<float>(width));
}

double BeliefPropagation::Sweep() {
  const std::size_t n = marginals_.unknowns();
  const int width = marginals_.width();
  const int eta = marginals_.eta();
  const std::size_t edges = edge_var_.size();
  if (checks_ == 0) return 0.0;

  // Cavity mean and variance of each edge's unknown: its marginal with this
  // edge's message divided out.
  std::vector<double> cav_mean(edges), cav_var(edges);
  std::vector<double> check_mean(checks_), check_var(checks_);
  ParallelFor(checks_, config_.workers, [&](std::size_t begin, std::size_t end) {
    for (std::size_t c = begin; c < end; ++c) {
      double cm = constants_[c], cv = 0.0;
      for (std::size_t e = check_begin_[c]; e < check_begin_[c + 1]; ++e) {
        const auto p = marginals_.row(edge_var_[e]);
        const float* m = msg_.data() + e * width;
        double z = 0.0, m1 = 0.0, m2 = 0.0;
        for (int x = 0; x < width; ++x) {
          const double w = p[x] / m[x];
          const double val = x - eta;
          z += w;
          m1 += w * val;
          m2 += w * val * val;
        }
        m1 /= z;
        const double var = std::max(0.0, m2 / z - m1 * m1);
        cav_mean[e] = m1;
        cav_var[e] = var;
        const double a = edge_coef_[e];
        cm += a * m1;
        cv += a * a * var;
      }
      check_mean[c] = cm;
      check_var[c] = cv;
    }
  });

  // Fresh check-to-unknown messages, damped into the stored ones.
  const double keep = config_.damping;
  ParallelFor(checks_, config_.workers, [&](std::size_t begin, std::size_t end) {
    std::vector<double> f(width);
    for (std::size_t c = begin; c < end; ++c) {
      const bool lt = less_than_[c];
      for (std::size_t e = check_begin_[c]; e < check_begin_[c + 1]; ++e) {
        const int a = edge_coef_[e];
        const double rest_mean = check_mean[c] - a * cav_mean[e];
        const double rest_var = check_var[c] - a * a * cav_var[e];
        double zf = 0.0;
        if (rest_var < 1e-9) {
          // The rest of the form is (numerically) fixed.
          for (int x = 0; x < width; ++x) {
            const double y = rest_mean + a * (x - eta);
            f[x] = (lt ? y < edges_at_[c] : y > edges_at_[c]) ? 1.0 : 0.0;
            zf += f[x];
          }
        } else {
          const double inv_sd = 1.0 / std::sqrt(rest_var);
          for (int x = 0; x < width; ++x) {
            const double z = (edges_at_[c] - rest_mean - a * (x - eta)) * inv_sd;
            f[x] = NormalCdf(lt ? z : -z);
            zf += f[x];
          }
        }
        float* m = msg_.data() + e * width;
        if (!(zf > 0.0)) continue;  // contradiction under the approximation; keep the old message
        double zm = 0.0;
        for (int x = 0; x < width; ++x) {
          f[x] = std::max(keep * m[x] + (1.0 - keep) * f[x] / zf, kMessageFloor);
          zm += f[x];
        }
        for (int x = 0; x < width; ++x) m[x] = static_cast<float>(f[x] / zm);
      }
    }
  });

  // Marginals: prior times every incoming message.
  std::vector<double> delta(n, 0.0);
  ParallelFor(n, config_.workers, [&](std::size_t begin, std::size_t end) {
    std::vector<double> b(width);
    for (std::size_t v = begin; v < end; ++v) {
      const auto prior = marginals_.prior(v);
      std::copy(prior.begin(), prior.end(), b.begin());
      int since_rescale = 0;
      for (std::uint32_t e : var_edges_[v]) {
        const float* m = msg_.data() + static_cast<std::size_t>(e) * width;
        for (int x = 0; x < width; ++x) b[x] *= m[x];
        // Messages are >= kMessageFloor, so eight products stay far above
        // the double range limit.
        if (++since_rescale == 8) {
          const double peak = *std::max_element(b.begin(), b.end());
          for (double& y : b) y /= peak;
          since_rescale = 0;
        }
      }
      double z = 0.0;
      for (double y : b) z += y;
      auto row = marginals_.mutable_row(v);
      for (int x = 0; x < width; ++x) {
        const double p = b[x] / z;
        delta[v] = std::max(delta[v], std::abs(p - row[x]));
        row[x] = p;
      }
    }
  });
  return *std::max_element(delta.begin(), delta.end());
}

std::vector<double> CbdPmf(int eta) {
  if (eta < 1) throw DomainError("eta must be positive");
  // P(v) = C(2eta, eta + v) / 4^eta.
  std::vector<double> pmf(2 * eta + 1);
  double binom = 1.0;
  for (int k = 0; k <= 2 * eta; ++k) {
    pmf[k] = binom;
    binom = binom * (2 * eta - k) / (k + 1);
  }
  const double scale = std::ldexp(1.0, -2 * eta);
  for (double& p : pmf) p *= scale;
  return pmf;
}

MarginalTable::MarginalTable(int eta, std::size_t unknowns)
    : eta_(eta), unknowns_(unknowns) {
  const auto pmf = CbdPmf(eta);
  priors_.reserve(unknowns * pmf.size());
  for (std::size_t v = 0; v < unknowns; ++v) priors_.insert(priors_.end(), pmf.begin(), pmf.end());
  probs_ = priors_;
}

MarginalTable::MarginalTable(int eta, std::vector<std::vector<double>> priors)
    : eta_(eta), unknowns_(priors.size()) {
  if (eta < 1) throw DomainError("eta must be positive");
  for (auto& row : priors) {
    if (row.size() != static_cast<std::size_t>(width())) throw StructuralError("prior row has wrong width");
    for (double p : row) {
      if (!(p >= 0.0)) throw DomainError("prior probabilities must be non-negative");
    }
    Normalize(row);
    priors_.insert(priors_.end(), row.begin(), row.end());
  }
  probs_ = priors_;
}

SolverConfig DefaultSolverConfig(const KyberParams& params) {
  SolverConfig config;
  if (static_cast<std::size_t>(params.unknowns()) <= kMaxExactUnknowns) config.mode = SolverMode::kExact;
  return config;
}

MarginalTable InitPriors(const KyberParams& params) {
  // Both e and s are drawn with eta1.
  return MarginalTable(params.eta1, params.unknowns());
}

double BpUpdate(MarginalTable& marginals, std::span<const Inequality> inequalities,
                const SolverConfig& config) {
  CheckConfig(config);
  if (inequalities.empty()) return 0.0;
  if (config.mode == SolverMode::kExact) return ExactUpdate(marginals, inequalities);
  // The current beliefs act as priors for a single round of messages.
  std::vector<std::vector<double>> beliefs;
  beliefs.reserve(marginals.unknowns());
  for (std::size_t v = 0; v < marginals.unknowns(); ++v) {
    const auto row = marginals.row(v);
    beliefs.emplace_back(row.begin(), row.end());
  }
  BeliefPropagation bp(inequalities, MarginalTable(marginals.eta(), std::move(beliefs)), config);
  bp.Sweep();
  double max_delta = 0.0;
  for (std::size_t v = 0; v < marginals.unknowns(); ++v) {
    auto row = marginals.mutable_row(v);
    const auto next = bp.marginals().row(v);
    for (int x = 0; x < marginals.width(); ++x) {
      max_delta = std::max(max_delta, std::abs(next[x] - row[x]));
      row[x] = next[x];
    }
  }
  return max_delta;
}

std::vector<int> KeyCandidate::Flattened() const {
  std::vector<int> out(e_hat);
  out.insert(out.end(), s_hat.begin(), s_hat.end());
  return out;
}

KeyCandidate ArgmaxCandidate(const MarginalTable& marginals, const KyberParams& params) {
  const std::size_t half = static_cast<std::size_t>(params.k) * params.n;
  if (marginals.unknowns() != 2 * half) throw StructuralError("marginal table does not match params");
  KeyCandidate out;
  out.e_hat.reserve(half);
  out.s_hat.reserve(half);
  out.confidence.reserve(2 * half);
  const int eta = marginals.eta();
  for (std::size_t v = 0; v < marginals.unknowns(); ++v) {
    const auto row = marginals.row(v);
    int best = 0;
    double best_p = -1.0;
    // Visit 0, -1, 1, -2, 2, ... so strict comparison settles ties.
    for (int mag = 0; mag <= eta; ++mag) {
      for (int val : {-mag, mag}) {
        if (row[val + eta] > best_p) {
          best_p = row[val + eta];
          best = val;
        }
        if (mag == 0) break;
      }
    }
    (v < half ? out.e_hat : out.s_hat).push_back(best);
    out.confidence.push_back(best_p);
  }
  return out;
}

RecoveryResult RecoverKey(std::span<const Inequality> inequalities, const KyberParams& params,
                          const SolverConfig& config, std::optional<std::span<const int>> true_key) {
  CheckConfig(config);
  const std::size_t unknowns = params.unknowns();
  for (const auto& ineq : inequalities) {
    if (ineq.coeffs.size() != unknowns) throw StructuralError("inequality length does not match 2kn");
  }
  if (true_key && true_key->size() != unknowns) throw StructuralError("true key length does not match 2kn");

  MarginalTable table = InitPriors(params);
  RecoveryResult result;
  if (inequalities.empty()) {
    result.converged = true;
  } else if (config.mode == SolverMode::kExact) {
    for (int it = 0; it < config.max_iterations; ++it) {
      const double delta = ExactUpdate(table, inequalities);
      result.iterations = it + 1;
      if (delta < config.tolerance) {
        result.converged = true;
        break;
      }
    }
  } else {
    BeliefPropagation bp(inequalities, table, config);
    for (int it = 0; it < config.max_iterations; ++it) {
      const double delta = bp.Sweep();
      result.iterations = it + 1;
      if (delta < config.tolerance) {
        result.converged = true;
        break;
      }
    }
    table = bp.marginals();
  }
  result.candidate = ArgmaxCandidate(table, params);
  if (true_key) {
    const auto got = result.candidate.Flattened();
    const std::size_t half = unknowns / 2;
    const std::span<const int> all(got);
    result.accuracy = Fraction(all, *true_key);
    result.accuracy_e = Fraction(all.first(half), true_key->first(half));
    result.accuracy_s = Fraction(all.subspan(half), true_key->subspan(half));
  }
  return result;
}

bool ValidateCandidate(const PkePublicKey& pk, const KeyCandidate& candidate, const KyberParams& params) {
  const std::size_t k = params.k, n = params.n;
  if (candidate.e_hat.size() != k * n || candidate.s_hat.size() != k * n) return false;
  if (pk.t_hat.size() != k || pk.a_hat.size() != k) return false;
  for (std::size_t j = 0; j < k * n; ++j) {
    if (std::abs(candidate.e_hat[j]) > params.eta1 || std::abs(candidate.s_hat[j]) > params.eta1) return false;
  }
  PolyVec s_dom(k);
  for (std::size_t i = 0; i < k; ++i) {
    SignedPoly s = SignedPoly::Zero(params.n);
    for (std::size_t j = 0; j < n; ++j) s.coeffs[j] = candidate.s_hat[i * n + j];
    s_dom[i] = ToMulDomain(Reduce(s, params.q), params);
  }
  for (std::size_t i = 0; i < k; ++i) {
    SignedPoly e = SignedPoly::Zero(params.n);
    for (std::size_t j = 0; j < n; ++j) e.coeffs[j] = candidate.e_hat[i * n + j];
    const Poly t = PolyAdd(InnerProductInDomain(pk.a_hat[i], s_dom, params),
                           ToMulDomain(Reduce(e, params.q), params), params.q);
    if (t != pk.t_hat[i]) return false;
  }
  return true;
}

std::optional<KeyCandidate> ResolveWithPublicKey(std::span<const Inequality> inequalities,
                                                 const PkePublicKey& pk, const KyberParams& params,
                                                 std::size_t max_candidates) {
  const std::size_t unknowns = params.unknowns();
  if (unknowns > kMaxExactUnknowns) throw ConfigurationError("public-key resolution supports at most 20 unknowns");
  for (const auto& ineq : inequalities) {
    if (ineq.coeffs.size() != unknowns) throw StructuralError("inequality length does not match 2kn");
  }
  MarginalTable table = InitPriors(params);
  FeasibleEnumerator feasible(table, inequalities, max_candidates);
  if (!feasible.Run() || feasible.found().empty()) return std::nullopt;
  if (!inequalities.empty()) ExactUpdate(table, inequalities);

  std::vector<std::size_t> order(feasible.found().size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  // Most probable first; enumeration order settles equal weights.
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return feasible.found()[a].first > feasible.found()[b].first;
  });
  const std::size_t half = unknowns / 2;
  for (std::size_t i : order) {
    const auto& x = feasible.found()[i].second;
    KeyCandidate c;
    c.e_hat.assign(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(half));
    c.s_hat.assign(x.begin() + static_cast<std::ptrdiff_t>(half), x.end());
    if (!ValidateCandidate(pk, c, params)) continue;
    c.confidence.reserve(unknowns);
    for (std::size_t v = 0; v < unknowns; ++v) c.confidence.push_back(table.probability(v, x[v]));
    return c;
  }
  return std::nullopt;
}

ValidatedRecovery RecoverAndValidate(std::span<const Inequality> inequalities, const PkePublicKey& pk,
                                     const KyberParams& params, const SolverConfig& config,
                                     std::optional<std::span<const int>> true_key) {
  ValidatedRecovery out;
  out.result = RecoverKey(inequalities, params, config, true_key);
  out.validated = ValidateCandidate(pk, out.result.candidate, params);
  if (out.validated || config.mode != SolverMode::kExact) return out;
  auto resolved = ResolveWithPublicKey(inequalities, pk, params);
  if (!resolved) return out;
  out.result.candidate = std::move(*resolved);
  out.validated = true;
  out.resolved_by_public_key = true;
  if (true_key) {
    const auto got = out.result.candidate.Flattened();
    const std::size_t half = got.size() / 2;
    const std::span<const int> all(got);
    out.result.accuracy = Fraction(all, *true_key);
    out.result.accuracy_e = Fraction(all.first(half), true_key->first(half));
    out.result.accuracy_s = Fraction(all.subspan(half), true_key->subspan(half));
  }
  return out;
}

std::string RecoveryReportJson(const RecoveryResult& result, std::optional<bool> validated) {
  nlohmann::ordered_json j;
  j["converged"] = result.converged;
  j["iterations"] = result.iterations;
  j["unknowns"] = result.candidate.e_hat.size() + result.candidate.s_hat.size();
  auto opt = [](const std::optional<double>& v) { return v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json(); };
  j["accuracy"] = opt(result.accuracy);
  j["accuracy_e"] = opt(result.accuracy_e);
  j["accuracy_s"] = opt(result.accuracy_s);
  j["validated"] = validated ? nlohmann::ordered_json(*validated) : nlohmann::ordered_json();
  double min_conf = 1.0;
  for (double c : result.candidate.confidence) min_conf = std::min(min_conf, c);
  j["min_confidence"] = min_conf;
  return j.dump(2);
}

}  // namespace kyberlab
