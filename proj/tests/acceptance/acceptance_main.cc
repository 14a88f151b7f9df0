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


// Acceptance runner. Prints one PASS/FAIL line per criterion and exits
// non-zero when any selected criterion fails.

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "kyberlab/attack.h"
#include "kyberlab/errors.h"
#include "kyberlab/experiment.h"
#include "kyberlab/its_channel.h"
#include "kyberlab/kem.h"
#include "kyberlab/params.h"
#include "kyberlab/pke.h"
#include "kyberlab/ring.h"
#include "kyberlab/solver.h"
#include "kyberlab/symmetric.h"
#include "testing/oracles.h"

namespace kyberlab {
namespace {

using Clock = std::chrono::steady_clock;

double SecondsSince(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Options {
  bool full = false;
  int workers = 1;
  std::uint64_t seed = 1;
  std::string csv_dir;
  std::string asset_dir = KYBERLAB_ASSET_DIR;
};

const Variant kAllVariants[] = {Variant::kKyber512, Variant::kKyber768, Variant::kKyber1024, Variant::kBaby};
const Variant kFullVariants[] = {Variant::kKyber512, Variant::kKyber768, Variant::kKyber1024};

std::string Fmt(double x, int precision = 2) {
  std::ostringstream out;
  out.setf(std::ios::fixed);
  out.precision(precision);
  out << x;
  return out.str();
}

// ---------------------------------------------------------------- 1

Outcome KemCorrectness(const Options& opt) {
  const auto start = Clock::now();
  std::ostringstream detail;
  bool pass = true;
  for (Variant v : kAllVariants) {
    const auto params = KyberParams::For(v);
    int ok = 0;
    const int trials = 1000;
    for (int j = 0; j < trials; ++j) {
      const auto u = static_cast<std::uint64_t>(j);
      const auto kp = KemKeyGen(params, DeriveSeed("acceptance.kem.keygen", {opt.seed, u}));
      const auto enc = Encaps(kp.pk, DeriveSeed("acceptance.kem.encaps", {opt.seed, u}), params);
      ok += Decaps(kp.sk, enc.ct, params) == enc.key;
    }
    pass = pass && ok == trials;
    detail << VariantName(v) << " " << ok << "/" << trials << "; ";
  }
  const double secs = SecondsSince(start);
  pass = pass && secs < 60.0;
  detail << Fmt(secs, 1) << " s (limit 60 s)";
  return {pass, detail.str()};
}

// ---------------------------------------------------------------- 2

SignedPoly Sp(std::vector<Coeff> c) { return SignedPoly{std::move(c)}; }
Poly P(std::vector<Coeff> c) { return Poly{std::move(c)}; }

Outcome BabyFixture(const Options&) {
  const auto params = KyberParams::For(Variant::kBaby);
  const PolyMatrix a = {{P({11, 15, 14, 6}), P({3, 6, 7, 9})}, {P({12, 10, 3, 5}), P({15, 4, 1, 9})}};
  const SignedPolyVec s = {Sp({0, 1, -1, -1}), Sp({0, -1, 0, -1})};
  const SignedPolyVec e = {Sp({0, 0, 1, 0}), Sp({0, -1, 1, 0})};
  const EncryptionCoins coins{{Sp({0, 1, 0, -1}), Sp({-1, 1, 0, 1})},
                              {Sp({1, 0, 1, 0}), Sp({0, 0, 1, 0})},
                              Sp({0, -1, 0, -1})};
  const auto kp = PkeKeyGenFromValues(params, a, s, e);

  // t = A s + e by schoolbook negacyclic products, and the published t.
  bool t_ok = kp.pk.t_hat.size() == 2;
  for (int i = 0; t_ok && i < 2; ++i) {
    auto t = testing::Widen(e[i].coeffs);
    for (int j = 0; j < 2; ++j) {
      t = testing::AddVec(t, testing::NegacyclicMul(testing::Widen(a[i][j].coeffs), testing::Widen(s[j].coeffs)));
    }
    for (auto& x : t) x = testing::Mod(x, params.q);
    t_ok = t_ok && testing::Widen(kp.pk.t_hat[i].coeffs) == t;
  }
  t_ok = t_ok && kp.pk.t_hat[0] == P({4, 1, 14, 12}) && kp.pk.t_hat[1] == P({4, 5, 9, 16});

  int round_trips = 0;
  for (int m = 0; m < 16; ++m) {
    const Bits bits = {static_cast<std::uint8_t>(m & 1), static_cast<std::uint8_t>((m >> 1) & 1),
                       static_cast<std::uint8_t>((m >> 2) & 1), static_cast<std::uint8_t>((m >> 3) & 1)};
    round_trips += PkeDecrypt(kp.sk, PkeEncrypt(kp.pk, bits, coins, params), params) == bits;
  }
  return {t_ok && round_trips == 16, std::string("t = A s + e ") + (t_ok ? "matches" : "MISMATCH") +
                                         "; decrypt(encrypt(m)) = m for " + std::to_string(round_trips) + "/16"};
}

// ---------------------------------------------------------------- 3

Outcome CompressionAlgebra(const Options&) {
  constexpr int q = 3329;
  std::size_t identity_bad = 0, bound_bad = 0, checked = 0;
  for (int d : {1, 4, 5, 10, 11}) {
    for (int y = 0; y < (1 << d); ++y, ++checked) identity_bad += Compress(Decompress(y, d, q), d, q) != y;
  }
  const std::int64_t bound = testing::NearestRatio(q, std::int64_t{1} << 5);
  for (int x = 0; x < q; ++x) {
    const auto err = testing::Centered(Decompress(Compress(x, 4, q), 4, q) - x, q);
    bound_bad += std::abs(err) > bound;
  }
  return {identity_bad == 0 && bound_bad == 0,
          "compress(decompress(y)) = y failed " + std::to_string(identity_bad) + "/" + std::to_string(checked) +
              "; |error| <= " + std::to_string(bound) + " at d=4 failed " + std::to_string(bound_bad) + "/3329"};
}

// ---------------------------------------------------------------- 4

Outcome InequalityFidelity(const Options& opt) {
  std::ostringstream detail;
  bool pass = true;
  for (Variant v : kAllVariants) {
    const auto params = KyberParams::For(v);
    const auto kp = KemKeyGen(params, DeriveSeed("acceptance.fidelity.keygen", {opt.seed}));
    const auto truth = TrueUnknowns(kp);
    std::mt19937_64 rng(opt.seed);
    int trials = 0, agree = 0, draws = 0;
    while (trials < 1000) {
      const auto enc =
          Encaps(kp.pk, DeriveSeed("acceptance.fidelity.encaps", {opt.seed, static_cast<std::uint64_t>(draws++)}),
                 params);
      // Same filter as the attacker: only ciphertexts that decapsulate honestly.
      if (Decaps(kp.sk, enc.ct, params) != enc.key) continue;
      const int i = static_cast<int>(rng() % static_cast<std::uint64_t>(params.n));
      const auto [manipulated, manip] = CraftManipulation(enc.ct, i, params);
      const bool oracle = FaultOracle(kp.sk, manipulated, manip, enc.key, params);
      const bool plain = PkeDecrypt(kp.sk.pke, manipulated, params) == enc.transcript.m;
      const auto ineq = DeriveInequality(enc.transcript, manip, oracle, params);
      const auto d = DecryptionErrorPoly(kp.sk.pke.s, kp.e, enc.transcript.coins, enc.transcript.delta_u,
                                         enc.transcript.delta_v, params);
      agree += oracle == plain && ineq.Evaluate(truth) == d.coeffs[i] && ineq.Holds(truth);
      ++trials;
    }
    pass = pass && agree == trials;
    detail << VariantName(v) << " " << agree << "/" << trials << "; ";
  }
  std::string text = detail.str();
  text.resize(text.size() - 2);
  return {pass, text};
}

// ---------------------------------------------------------------- 5

std::vector<std::vector<double>> BruteForce(const MarginalTable& priors, const std::vector<Inequality>& ineqs) {
  const int eta = priors.eta();
  const std::size_t n = priors.unknowns();
  std::vector<std::vector<double>> mass(n, std::vector<double>(priors.width(), 0.0));
  std::vector<int> x(n, -eta);
  double total = 0.0;
  while (true) {
    bool ok = true;
    for (const auto& q : ineqs) ok = ok && q.Holds(x);
    if (ok) {
      double w = 1.0;
      for (std::size_t v = 0; v < n; ++v) w *= priors.prior(v)[x[v] + eta];
      total += w;
      for (std::size_t v = 0; v < n; ++v) mass[v][x[v] + eta] += w;
    }
    std::size_t d = 0;
    while (d < n && x[d] == eta) x[d++] = -eta;
    if (d == n) break;
    ++x[d];
  }
  for (auto& row : mass)
    for (double& p : row) p /= total;
  return mass;
}

Outcome SolverOracle(const Options& opt) {
  SolverConfig exact;
  exact.mode = SolverMode::kExact;
  std::mt19937_64 rng(opt.seed + 2024);
  double worst = 0.0;
  const int instances = 200;
  for (int inst = 0; inst < instances; ++inst) {
    const std::size_t n = 1 + rng() % 6;
    const int eta = 1 + static_cast<int>(rng() % 2);
    const int m = 1 + static_cast<int>(rng() % 8);
    std::uniform_int_distribution<int> val(-eta, eta), coef(-3, 3), shift(-2, 2);
    std::vector<int> hidden(n);
    for (auto& h : hidden) h = val(rng);
    std::vector<Inequality> ineqs;
    for (int c = 0; c < m; ++c) {
      Inequality q;
      q.coeffs.resize(n);
      for (auto& a : q.coeffs) a = static_cast<std::int8_t>(coef(rng));
      q.constant = shift(rng);
      q.relation = (rng() & 1) ? Relation::kLessThan : Relation::kGreaterOrEqual;
      const auto y = q.Evaluate(hidden);
      q.threshold =
          static_cast<std::int32_t>(q.relation == Relation::kLessThan ? y + 1 + (rng() % 3) : y - (rng() % 3));
      ineqs.push_back(std::move(q));
    }
    std::vector<std::vector<double>> priors(n, std::vector<double>(2 * eta + 1));
    for (auto& row : priors)
      for (double& p : row) p = 0.1 + static_cast<double>(rng() % 100);
    MarginalTable table(eta, priors);
    const auto want = BruteForce(table, ineqs);
    BpUpdate(table, ineqs, exact);
    for (std::size_t v = 0; v < n; ++v)
      for (int x = 0; x < table.width(); ++x) worst = std::max(worst, std::abs(table.row(v)[x] - want[v][x]));
  }

  // Two uniform ternary unknowns under x0 + x1 >= 1.
  MarginalTable worked(1, {{1, 1, 1}, {1, 1, 1}});
  Inequality q;
  q.coeffs = {1, 1};
  q.relation = Relation::kGreaterOrEqual;
  q.threshold = 1;
  const std::vector<Inequality> one = {q};
  BpUpdate(worked, one, exact);
  const bool worked_ok = worked.probability(0, -1) == 0.0 && worked.probability(0, 0) == 1.0 / 3.0 &&
                         worked.probability(0, 1) == 2.0 / 3.0 && worked.probability(1, -1) == 0.0 &&
                         worked.probability(1, 0) == 1.0 / 3.0 && worked.probability(1, 1) == 2.0 / 3.0;
  std::ostringstream detail;
  detail << instances << " instances, max |exact - brute force| = " << worst << " (limit 1e-9); worked posterior ("
         << worked.probability(0, -1) << ", " << worked.probability(0, 0) << ", " << worked.probability(0, 1) << ") "
         << (worked_ok ? "exact" : "NOT exact");
  return {worst < 1e-9 && worked_ok, detail.str()};
}

// ---------------------------------------------------------------- 6

Outcome BabyRecovery(const Options& opt) {
  const auto start = Clock::now();
  int ok = 0;
  for (int t = 0; t < 10; ++t) {
    ok += RunTrial(Variant::kBaby, 200, DeriveTrialSeed(opt.seed, Variant::kBaby, 200, t), t).success;
  }
  const double secs = SecondsSince(start);
  return {ok >= 9 && secs < 60.0,
          std::to_string(ok) + "/10 full recoveries with validation (need 9); " + Fmt(secs, 1) + " s (limit 60 s)"};
}

// ---------------------------------------------------------------- 7, 8, 9

struct VariantSearch {
  Variant variant;
  std::vector<std::size_t> grid;
  std::size_t expected;
  std::vector<PointSummary> points;
  std::optional<std::size_t> threshold;  // smallest count with rate >= 0.8
};

std::vector<ExperimentRecord> Sweep(const Options& opt, Variant v, std::vector<std::size_t> counts, int repeats,
                                    const std::string& tag) {
  SweepConfig c;
  c.variant = v;
  c.counts = std::move(counts);
  c.repeats = repeats;
  c.master_seed = opt.seed;
  c.workers = opt.workers;
  if (!opt.csv_dir.empty()) {
    std::filesystem::create_directories(opt.csv_dir);
    c.out_path = (std::filesystem::path(opt.csv_dir) / (tag + "_" + std::string(VariantName(v)) + ".csv")).string();
  }
  return RunSweep(c);
}

std::vector<VariantSearch> ThresholdSearch(const Options& opt) {
  std::vector<VariantSearch> out = {
      {Variant::kKyber512, ParseCounts("5000:8000:1000"), 7000, {}, {}},
      {Variant::kKyber768, ParseCounts("6000:10000:1000"), 8000, {}, {}},
      {Variant::kKyber1024, ParseCounts("8000:13000:1000"), 11000, {}, {}},
  };
  for (auto& s : out) {
    if (!opt.full) s.grid = {s.grid.front(), (s.grid.front() + s.grid.back()) / 2, s.grid.back()};
    const auto start = Clock::now();
    s.points = Summarize(Sweep(opt, s.variant, s.grid, opt.full ? 5 : 1, "threshold"));
    for (const auto& p : s.points) {
      std::cerr << "  [7] " << VariantName(s.variant) << " @" << p.inequality_count << ": " << p.successes << "/"
                << p.trials << " mean accuracy " << Fmt(p.mean_accuracy, 4) << "\n";
      if (!s.threshold && p.success_rate >= 0.8) s.threshold = p.inequality_count;
    }
    std::cerr << "  [7] " << VariantName(s.variant) << " searched in " << Fmt(SecondsSince(start), 0) << " s\n";
  }
  return out;
}

std::string ThresholdText(const VariantSearch& s) {
  return std::string(VariantName(s.variant)) + "=" + (s.threshold ? std::to_string(*s.threshold) : "none");
}

Outcome ThresholdOrdering(const Options& opt, const std::vector<VariantSearch>& search) {
  std::ostringstream detail;
  detail << (opt.full ? "full grid, 5 repeats" : "smoke grid, 1 repeat") << "; thresholds ";
  bool all_found = true;
  for (std::size_t i = 0; i < search.size(); ++i) {
    detail << (i ? ", " : "") << ThresholdText(search[i]);
    all_found = all_found && search[i].threshold.has_value();
  }
  bool pass = all_found && *search[0].threshold < *search[1].threshold && *search[1].threshold < *search[2].threshold;
  if (opt.full && all_found) {
    for (const auto& s : search) {
      const auto gap = static_cast<long>(*s.threshold) - static_cast<long>(s.expected);
      const bool near = std::abs(gap) <= 1000;
      pass = pass && near;
      if (!near) detail << "; " << VariantName(s.variant) << " is not within 1000 of " << s.expected;
    }
  }
  if (!all_found) detail << "; no >= 80% point for some variant inside its range";
  return {pass, detail.str()};
}

Outcome SuccessBand(const Options& opt) {
  const auto start = Clock::now();
  const auto points = Summarize(Sweep(opt, Variant::kKyber512, {5000, 7000, 8000}, 10, "band"));
  std::map<std::size_t, PointSummary> by;
  for (const auto& p : points) by[p.inequality_count] = p;
  const bool band = by[7000].successes >= 8 && by[8000].successes >= 8;
  const bool unstable = by[5000].success_rate < by[8000].success_rate || by[5000].successes < by[5000].trials;
  std::ostringstream detail;
  detail << "512 successes @5000 " << by[5000].successes << "/10, @7000 " << by[7000].successes << "/10, @8000 "
         << by[8000].successes << "/10 (need >= 8 at 7000 and 8000); mean accuracy @7000 "
         << Fmt(by[7000].mean_accuracy, 4) << ", @8000 " << Fmt(by[8000].mean_accuracy, 4) << "; instability at 5000 "
         << (unstable ? "shown" : "NOT shown") << "; " << Fmt(SecondsSince(start), 0) << " s";
  return {band && unstable, detail.str()};
}

// Best operating point: the threshold count, i.e. the cheapest point that
// reached the success target in the search above.
Outcome BreachTimeOrdering(const std::vector<VariantSearch>& search) {
  std::ostringstream detail;
  std::vector<double> times;
  for (const auto& s : search) {
    if (!s.threshold) {
      detail << VariantName(s.variant) << " has no operating point; ";
      continue;
    }
    for (const auto& p : s.points) {
      if (p.inequality_count == *s.threshold) {
        times.push_back(p.median_success_wall_ms);
        detail << VariantName(s.variant) << " @" << p.inequality_count << " median " << Fmt(p.median_success_wall_ms / 1000.0, 1)
               << " s; ";
      }
    }
  }
  const bool pass = times.size() == 3 && times[0] < times[1] && times[1] < times[2];
  std::string text = detail.str();
  text.resize(text.size() - 2);
  return {pass, text};
}

// ---------------------------------------------------------------- 10

Outcome ItsChannel(const Options& opt) {
  std::ifstream in(opt.asset_dir + "/bsm_sample.txt", std::ios::binary);
  if (!in) return {false, "cannot read " + opt.asset_dir + "/bsm_sample.txt"};
  std::ostringstream text;
  text << in.rdbuf();
  const BsmMessage msg = DeserializeBsm(text.str());
  BsmMessage other = msg;
  other.msg_cnt = 3;
  other.id = "0F0F0F0F";
  other.speed = 0.0;
  other.transmission = TransmissionState::kPark;

  int round_trips = 0, tamper_caught = 0, tamper_tried = 0;
  bool invariant = true;
  for (auto level : {SecurityLevel::kLow, SecurityLevel::kModerate, SecurityLevel::kHigh}) {
    const auto params = KyberParams::For(VariantForLevel(level));
    const auto kp = KemKeyGen(params, DeriveSeed("acceptance.its", {opt.seed, static_cast<std::uint64_t>(level)}));
    const auto sent = SecureSend(kp.pk, level, msg, DeriveSeed("acceptance.its.send", {opt.seed}));
    round_trips += SecureReceive(kp.sk, sent.envelope) == msg;

    auto expect_reject = [&](SecureEnvelope env) {
      ++tamper_tried;
      try {
        SecureReceive(kp.sk, env);
      } catch (const AuthenticationError&) {
        ++tamper_caught;
      }
    };
    auto env = sent.envelope;
    env.payload_ct[env.payload_ct.size() / 2] ^= 0x01;
    expect_reject(env);
    env = sent.envelope;
    env.auth_tag[0] ^= 0x80;
    expect_reject(env);
    env = sent.envelope;
    env.kem_ct.c2[0] = static_cast<std::uint16_t>((env.kem_ct.c2[0] + 1) % (1 << params.dv));
    expect_reject(env);

    auto collect = [&](const BsmMessage& m) {
      CollectOptions options;
      options.source = [&kp, level, m](const Seed& seed) { return SecureSend(kp.pk, level, m, seed).encaps; };
      return CollectInequalities(kp, 100, opt.seed, params, options).Inequalities();
    };
    invariant = invariant && collect(msg) == collect(other);
  }
  return {round_trips == 3 && tamper_caught == tamper_tried && invariant,
          "round trips " + std::to_string(round_trips) + "/3; tampering rejected " + std::to_string(tamper_caught) +
              "/" + std::to_string(tamper_tried) + "; inequality sets for two payloads " +
              (invariant ? "identical" : "DIFFER")};
}

// ---------------------------------------------------------------- 11

std::string CsvWithoutWallTime(std::vector<ExperimentRecord> rows) {
  for (auto& r : rows) r.wall_ms = 0.0;
  std::ostringstream out;
  WriteCsv(out, rows);
  return out.str();
}

Outcome Determinism(const Options& opt) {
  const int many = std::max(opt.workers, 4);
  bool same = true;
  std::size_t rows = 0;
  for (Variant v : {Variant::kBaby, Variant::kKyber512}) {
    const std::vector<std::size_t> counts =
        v == Variant::kBaby ? std::vector<std::size_t>{50, 100, 200} : std::vector<std::size_t>{100, 300};
    Options one = opt, n = opt;
    one.workers = 1;
    n.workers = many;
    one.csv_dir.clear();
    n.csv_dir.clear();
    const auto a = Sweep(one, v, counts, 3, "");
    const auto b = Sweep(n, v, counts, 3, "");
    same = same && CsvWithoutWallTime(a) == CsvWithoutWallTime(b);
    rows += a.size();
  }
  return {same, std::to_string(rows) + " rows, 1 vs " + std::to_string(many) + " workers: CSV minus wall_ms " +
                    (same ? "byte-identical" : "DIFFERS")};
}

}  // namespace
}  // namespace kyberlab

int main(int argc, char** argv) {
  using namespace kyberlab;
  CLI::App app{"kyberlab acceptance runner"};
  Options opt;
  std::vector<int> only;
  app.add_flag("--full", opt.full, "Full threshold grid with 5 repeats (hours) instead of the smoke grid");
  app.add_option("--workers", opt.workers, "Worker threads for sweeps")->check(CLI::PositiveNumber);
  app.add_option("--seed", opt.seed, "Master seed")->capture_default_str();
  app.add_option("--only", only, "Run only these criteria (1-11)")->delimiter(',')->check(CLI::Range(1, 11));
  app.add_option("--csv-dir", opt.csv_dir, "Keep sweep CSVs for criteria 7 and 8 here");
  app.add_option("--assets", opt.asset_dir, "Directory holding bsm_sample.txt")->capture_default_str();
  CLI11_PARSE(app, argc, argv);

  const std::set<int> selected(only.begin(), only.end());
  auto wanted = [&](int c) { return selected.empty() || selected.count(c) > 0; };

  int failures = 0;
  auto report = [&](int id, const char* title, const std::function<Outcome()>& run) {
    if (!wanted(id)) return;
    const auto start = Clock::now();
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    failures += !o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << " [" << id << "] " << title << ": " << o.detail << " ("
              << Fmt(SecondsSince(start), 1) << " s)" << std::endl;
  };

  report(1, "KEM correctness", [&] { return KemCorrectness(opt); });
  report(2, "Baby fixture", [&] { return BabyFixture(opt); });
  report(3, "Compression algebra", [&] { return CompressionAlgebra(opt); });
  report(4, "Inequality fidelity", [&] { return InequalityFidelity(opt); });
  report(5, "Solver oracle equivalence", [&] { return SolverOracle(opt); });
  report(6, "Baby end-to-end recovery", [&] { return BabyRecovery(opt); });

  std::vector<VariantSearch> search;
  double search_secs = 0.0;
  if (wanted(7) || wanted(9)) {
    const auto start = Clock::now();
    try {
      search = ThresholdSearch(opt);
    } catch (const std::exception& e) {
      std::cerr << "threshold search threw: " << e.what() << "\n";
    }
    search_secs = SecondsSince(start);
  }
  report(7, "Threshold ordering", [&] {
    if (search.empty()) return Outcome{false, "threshold search did not run"};
    auto o = ThresholdOrdering(opt, search);
    o.detail += "; search " + Fmt(search_secs, 0) + " s";
    return o;
  });
  report(8, "K512 success-rate band", [&] { return SuccessBand(opt); });
  report(9, "Breach-time ordering", [&] {
    if (search.empty()) return Outcome{false, "threshold search did not run"};
    return BreachTimeOrdering(search);
  });
  report(10, "ITS channel", [&] { return ItsChannel(opt); });
  report(11, "Sweep determinism", [&] { return Determinism(opt); });

  std::cout << (failures == 0 ? "ALL PASS" : std::to_string(failures) + " criteria failed") << std::endl;
  return failures == 0 ? 0 : 1;
}
