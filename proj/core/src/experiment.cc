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

#include "kyberlab/experiment.h"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <exception>
#include <fstream>
#include <istream>
#include <map>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include "kyberlab/attack.h"
#include "kyberlab/errors.h"
#include "kyberlab/kem.h"
#include "kyberlab/symmetric.h"

namespace kyberlab {
namespace {

std::uint64_t LittleEndian64(const Seed& s) {
  std::uint64_t v = 0;
  for (int b = 0; b < 8; ++b) v |= static_cast<std::uint64_t>(s[b]) << (8 * b);
  return v;
}

std::string FormatDouble(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::vector<std::string_view> SplitCommas(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (true) {
    const std::size_t comma = line.find(',', pos);
    out.push_back(line.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos));
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return out;
}

template <typename T>
T ParseField(std::string_view field, std::string_view text) {
  T value{};
  const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || res.ec != std::errc() || res.ptr != text.data() + text.size()) {
    throw ParseError(std::string(field), "malformed value '" + std::string(text) + "'");
  }
  return value;
}

}  // namespace

SolverConfig ExperimentSolverConfig(const KyberParams& params) {
  SolverConfig config = DefaultSolverConfig(params);
  if (config.mode == SolverMode::kNormalApprox) {
    config.max_iterations = 80;
    config.damping = 0.5;
  }
  return config;
}

std::uint64_t DeriveTrialSeed(std::uint64_t master_seed, Variant variant, std::size_t count, int trial) {
  return LittleEndian64(DeriveSeed("kyberlab.experiment.trial",
                                   {master_seed, static_cast<std::uint64_t>(variant), count,
                                    static_cast<std::uint64_t>(trial)}));
}

ExperimentRecord RunTrial(Variant variant, std::size_t count, std::uint64_t seed, int trial,
                          const std::optional<SolverConfig>& solver) {
  const KyberParams params = KyberParams::For(variant);
  const SolverConfig config = solver.value_or(ExperimentSolverConfig(params));
  const KemKeyPair kp = KemKeyGen(params, DeriveSeed("kyberlab.experiment.keygen", {seed}));
  const std::vector<int> truth = TrueUnknowns(kp);

  ExperimentRecord rec;
  rec.variant = variant;
  rec.inequality_count = count;
  rec.trial = trial;
  rec.seed = seed;

  const auto start = std::chrono::steady_clock::now();
  const AttackTranscript transcript = CollectInequalities(kp, count, seed, params);
  const std::vector<Inequality> ineqs = transcript.Inequalities();
  const ValidatedRecovery out = RecoverAndValidate(ineqs, kp.pk, params, config, std::span<const int>(truth));
  const auto stop = std::chrono::steady_clock::now();

  rec.iterations = out.result.iterations;
  rec.coeff_accuracy = out.result.accuracy.value_or(0.0);
  rec.success = rec.coeff_accuracy == 1.0 && out.validated;
  rec.wall_ms = std::chrono::duration<double, std::milli>(stop - start).count();
  return rec;
}

std::vector<ExperimentRecord> RunSweep(const SweepConfig& config) {
  if (config.counts.empty()) throw ConfigurationError("no inequality counts given");
  if (config.repeats < 1) throw ConfigurationError("repeats must be at least 1");
  if (config.counts.front() == 0) throw ConfigurationError("counts must be positive");
  for (std::size_t i = 1; i < config.counts.size(); ++i) {
    if (config.counts[i] <= config.counts[i - 1]) throw ConfigurationError("counts must be strictly ascending");
  }

  std::ofstream csv, summary;
  if (!config.out_path.empty()) {
    csv.open(config.out_path, std::ios::binary | std::ios::trunc);
    if (!csv) throw IoError("cannot open " + config.out_path + " for writing");
    const std::string spath = SummaryPath(config.out_path);
    summary.open(spath, std::ios::binary | std::ios::trunc);
    if (!summary) throw IoError("cannot open " + spath + " for writing");
  }

  struct Job {
    std::size_t count;
    int trial;
  };
  std::vector<Job> jobs;
  for (std::size_t c : config.counts) {
    for (int t = 0; t < config.repeats; ++t) jobs.push_back({c, t});
  }
  std::vector<ExperimentRecord> records(jobs.size());

  // Each trial runs single-threaded; the pool spreads whole trials.
  std::optional<SolverConfig> solver = config.solver;
  if (solver) solver->workers = 1;
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  auto work = [&] {
    while (true) {
      const std::size_t j = next.fetch_add(1);
      if (j >= jobs.size()) return;
      try {
        const Job& job = jobs[j];
        records[j] = RunTrial(config.variant, job.count,
                              DeriveTrialSeed(config.master_seed, config.variant, job.count, job.trial),
                              job.trial, solver);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mu);
        if (!failure) failure = std::current_exception();
        next = jobs.size();
      }
    }
  };
  const int workers = std::max(1, std::min<int>(config.workers, static_cast<int>(jobs.size())));
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);

  if (csv.is_open()) {
    WriteCsv(csv, records);
    WriteSummaryCsv(summary, Summarize(records));
    csv.flush();
    summary.flush();
    if (!csv || !summary) throw IoError("failed writing sweep output");
  }
  return records;
}

std::vector<PointSummary> Summarize(const std::vector<ExperimentRecord>& records) {
  std::map<std::pair<int, std::size_t>, std::vector<const ExperimentRecord*>> groups;
  for (const auto& r : records) groups[{static_cast<int>(r.variant), r.inequality_count}].push_back(&r);
  std::vector<PointSummary> out;
  for (const auto& [key, rows] : groups) {
    PointSummary s;
    s.variant = static_cast<Variant>(key.first);
    s.inequality_count = key.second;
    s.trials = static_cast<int>(rows.size());
    std::vector<double> success_times;
    double acc = 0.0, wall = 0.0;
    for (const auto* r : rows) {
      acc += r->coeff_accuracy;
      wall += r->wall_ms;
      if (r->success) {
        ++s.successes;
        success_times.push_back(r->wall_ms);
      }
    }
    s.success_rate = static_cast<double>(s.successes) / s.trials;
    s.mean_accuracy = acc / s.trials;
    s.mean_wall_ms = wall / s.trials;
    if (!success_times.empty()) {
      std::sort(success_times.begin(), success_times.end());
      const std::size_t m = success_times.size();
      s.median_success_wall_ms = m % 2 ? success_times[m / 2] : 0.5 * (success_times[m / 2 - 1] + success_times[m / 2]);
    }
    out.push_back(s);
  }
  return out;
}

void WriteCsv(std::ostream& out, const std::vector<ExperimentRecord>& records) {
  out << kCsvHeader << '\n';
  for (const auto& r : records) {
    out << VariantName(r.variant) << ',' << r.inequality_count << ',' << r.trial << ',' << r.seed << ','
        << (r.success ? 1 : 0) << ',' << FormatDouble(r.coeff_accuracy) << ',' << r.iterations << ','
        << FormatDouble(r.wall_ms) << '\n';
  }
}

std::vector<ExperimentRecord> ReadCsv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError("header", "empty input");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kCsvHeader) throw ParseError("header", "unexpected columns '" + line + "'");
  std::vector<ExperimentRecord> out;
  static constexpr const char* kNames[] = {"variant", "ineq_count", "trial", "seed",
                                           "success", "coeff_accuracy", "iterations", "wall_ms"};
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto cols = SplitCommas(line);
    if (cols.size() != 8) throw ParseError("row", "expected 8 columns in '" + line + "'");
    ExperimentRecord r;
    try {
      r.variant = ParseVariant(cols[0]);
    } catch (const ConfigurationError& e) {
      throw ParseError(kNames[0], e.what());
    }
    r.inequality_count = ParseField<std::size_t>(kNames[1], cols[1]);
    r.trial = ParseField<int>(kNames[2], cols[2]);
    r.seed = ParseField<std::uint64_t>(kNames[3], cols[3]);
    const int success = ParseField<int>(kNames[4], cols[4]);
    if (success != 0 && success != 1) throw ParseError(kNames[4], "must be 0 or 1");
    r.success = success == 1;
    r.coeff_accuracy = ParseField<double>(kNames[5], cols[5]);
    r.iterations = ParseField<int>(kNames[6], cols[6]);
    r.wall_ms = ParseField<double>(kNames[7], cols[7]);
    out.push_back(r);
  }
  return out;
}

void WriteSummaryCsv(std::ostream& out, const std::vector<PointSummary>& summary) {
  out << kSummaryHeader << '\n';
  for (const auto& s : summary) {
    out << VariantName(s.variant) << ',' << s.inequality_count << ',' << s.trials << ',' << s.successes << ','
        << FormatDouble(s.success_rate) << ',' << FormatDouble(s.mean_accuracy) << ','
        << FormatDouble(s.mean_wall_ms) << ',' << FormatDouble(s.median_success_wall_ms) << '\n';
  }
}

std::string SummaryPath(const std::string& csv_path) {
  constexpr std::string_view kExt = ".csv";
  if (csv_path.size() > kExt.size() && csv_path.compare(csv_path.size() - kExt.size(), kExt.size(), kExt) == 0) {
    return csv_path.substr(0, csv_path.size() - kExt.size()) + ".summary.csv";
  }
  return csv_path + ".summary.csv";
}

std::vector<std::size_t> ParseCounts(std::string_view text) {
  std::vector<std::size_t> out;
  if (text.find(':') != std::string_view::npos) {
    std::vector<std::size_t> parts;
    std::size_t pos = 0;
    while (true) {
      const std::size_t colon = text.find(':', pos);
      parts.push_back(ParseField<std::size_t>("ineq", text.substr(pos, colon == std::string_view::npos ? colon : colon - pos)));
      if (colon == std::string_view::npos) break;
      pos = colon + 1;
    }
    if (parts.size() != 3 || parts[2] == 0 || parts[0] > parts[1]) {
      throw ConfigurationError("range must be start:stop:step with start <= stop and step > 0");
    }
    for (std::size_t c = parts[0]; c <= parts[1]; c += parts[2]) out.push_back(c);
  } else {
    for (auto piece : SplitCommas(text)) out.push_back(ParseField<std::size_t>("ineq", piece));
  }
  if (out.empty()) throw ConfigurationError("no inequality counts given");
  if (out.front() == 0) throw ConfigurationError("counts must be positive");
  for (std::size_t i = 1; i < out.size(); ++i) {
    if (out[i] <= out[i - 1]) throw ConfigurationError("counts must be strictly ascending");
  }
  return out;
}

}  // namespace kyberlab
