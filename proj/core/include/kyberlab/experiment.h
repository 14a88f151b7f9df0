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

#ifndef KYBERLAB_EXPERIMENT_H_
#define KYBERLAB_EXPERIMENT_H_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "kyberlab/params.h"
#include "kyberlab/solver.h"

namespace kyberlab {

struct SweepConfig {
  Variant variant = Variant::kKyber512;
  std::vector<std::size_t> counts;  // ascending, positive
  int repeats = 5;
  std::uint64_t master_seed = 1;
  int workers = 1;
  std::string out_path;  // empty: no files written
  std::optional<SolverConfig> solver;  // empty: ExperimentSolverConfig
};

struct ExperimentRecord {
  Variant variant = Variant::kBaby;
  std::size_t inequality_count = 0;
  int trial = 0;
  std::uint64_t seed = 0;
  bool success = false;
  double coeff_accuracy = 0.0;
  int iterations = 0;
  double wall_ms = 0.0;

  bool operator==(const ExperimentRecord&) const = default;
};

struct PointSummary {
  Variant variant = Variant::kBaby;
  std::size_t inequality_count = 0;
  int trials = 0;
  int successes = 0;
  double success_rate = 0.0;
  double mean_accuracy = 0.0;
  double mean_wall_ms = 0.0;
  double median_success_wall_ms = 0.0;  // 0 when nothing succeeded
};

// Seeds one trial from (master, variant, count, trial) alone.
// Solver settings for attack trials: DefaultSolverConfig, but approximate
// mode runs up to 80 sweeps with damping 0.5. Damping 0.9 reaches the same
// fixed points several times slower.
SolverConfig ExperimentSolverConfig(const KyberParams& params);

std::uint64_t DeriveTrialSeed(std::uint64_t master_seed, Variant variant, std::size_t count, int trial);

// Keygen from the seed, then collect `count` inequalities, recover and
// validate. Only collection and recovery are timed.
ExperimentRecord RunTrial(Variant variant, std::size_t count, std::uint64_t seed, int trial = 0,
                          const std::optional<SolverConfig>& solver = std::nullopt);

// Rows come back in (count, trial) order for any worker count. Writes the
// CSV and its summary when out_path is set.
std::vector<ExperimentRecord> RunSweep(const SweepConfig& config);

std::vector<PointSummary> Summarize(const std::vector<ExperimentRecord>& records);

inline constexpr std::string_view kCsvHeader =
    "variant,ineq_count,trial,seed,success,coeff_accuracy,iterations,wall_ms";
inline constexpr std::string_view kSummaryHeader =
    "variant,ineq_count,trials,successes,success_rate,mean_accuracy,mean_wall_ms,median_success_wall_ms";

void WriteCsv(std::ostream& out, const std::vector<ExperimentRecord>& records);
std::vector<ExperimentRecord> ReadCsv(std::istream& in);
void WriteSummaryCsv(std::ostream& out, const std::vector<PointSummary>& summary);

// foo.csv -> foo.summary.csv; other names get ".summary.csv" appended.
std::string SummaryPath(const std::string& csv_path);

// "5000:8000:1000" (inclusive range) or "50,100,200".
std::vector<std::size_t> ParseCounts(std::string_view text);

}  // namespace kyberlab

#endif  // KYBERLAB_EXPERIMENT_H_
