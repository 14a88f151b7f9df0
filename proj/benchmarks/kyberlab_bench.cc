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


#include <benchmark/benchmark.h>

#include <vector>

#include "kyberlab/attack.h"
#include "kyberlab/kem.h"
#include "kyberlab/params.h"
#include "kyberlab/ring.h"
#include "kyberlab/solver.h"
#include "kyberlab/symmetric.h"

namespace kyberlab {
namespace {

const KyberParams& ParamsArg(const benchmark::State& state) {
  static const KyberParams all[] = {KyberParams::For(Variant::kKyber512), KyberParams::For(Variant::kKyber768),
                                    KyberParams::For(Variant::kKyber1024), KyberParams::For(Variant::kBaby)};
  return all[state.range(0)];
}

void LabelVariant(benchmark::State& state) { state.SetLabel(std::string(VariantName(ParamsArg(state).variant))); }

Poly SamplePoly(const KyberParams& p, std::uint64_t tag) {
  const Bytes bytes = Shake256(DeriveSeed("bench.poly", {tag}), 2 * p.n);
  Poly a;
  a.coeffs.resize(p.n);
  for (int i = 0; i < p.n; ++i) a.coeffs[i] = static_cast<Coeff>((bytes[2 * i] | (bytes[2 * i + 1] << 8)) % p.q);
  return a;
}

void BM_PolyMulNtt(benchmark::State& state) {
  const auto p = KyberParams::For(Variant::kKyber512);
  const Poly a = SamplePoly(p, 1), b = SamplePoly(p, 2);
  for (auto _ : state) benchmark::DoNotOptimize(PolyMul(a, b, p));
}
BENCHMARK(BM_PolyMulNtt);

void BM_PolyMulSchoolbook(benchmark::State& state) {
  const auto p = KyberParams::For(Variant::kKyber512);
  const Poly a = SamplePoly(p, 1), b = SamplePoly(p, 2);
  for (auto _ : state) benchmark::DoNotOptimize(PolyMulSchoolbook(a, b, p.q));
}
BENCHMARK(BM_PolyMulSchoolbook);

void BM_KeyGen(benchmark::State& state) {
  const auto& p = ParamsArg(state);
  std::uint64_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(KemKeyGen(p, DeriveSeed("bench.keygen", {i++})));
  LabelVariant(state);
}
BENCHMARK(BM_KeyGen)->DenseRange(0, 3);

void BM_Encaps(benchmark::State& state) {
  const auto& p = ParamsArg(state);
  const auto kp = KemKeyGen(p, DeriveSeed("bench.keygen", {0}));
  std::uint64_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(Encaps(kp.pk, DeriveSeed("bench.encaps", {i++}), p));
  LabelVariant(state);
}
BENCHMARK(BM_Encaps)->DenseRange(0, 3);

void BM_Decaps(benchmark::State& state) {
  const auto& p = ParamsArg(state);
  const auto kp = KemKeyGen(p, DeriveSeed("bench.keygen", {0}));
  const auto enc = Encaps(kp.pk, DeriveSeed("bench.encaps", {0}), p);
  for (auto _ : state) benchmark::DoNotOptimize(Decaps(kp.sk, enc.ct, p));
  LabelVariant(state);
}
BENCHMARK(BM_Decaps)->DenseRange(0, 3);

// One fault trial per iteration, including the honest-decryption filter.
void BM_CollectInequalities(benchmark::State& state) {
  const auto& p = ParamsArg(state);
  const auto kp = KemKeyGen(p, DeriveSeed("bench.keygen", {0}));
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(CollectInequalities(kp, 100, seed++, p));
  state.SetItemsProcessed(state.iterations() * 100);
  LabelVariant(state);
}
BENCHMARK(BM_CollectInequalities)->DenseRange(0, 3)->Unit(benchmark::kMillisecond);

// One synchronous belief-propagation sweep over 2000 inequalities.
void BM_BpSweep(benchmark::State& state) {
  const auto& p = ParamsArg(state);
  const auto kp = KemKeyGen(p, DeriveSeed("bench.keygen", {0}));
  const auto ineqs = CollectInequalities(kp, 2000, 1, p).Inequalities();
  SolverConfig config;
  config.workers = static_cast<int>(state.range(1));
  for (auto _ : state) {
    state.PauseTiming();
    MarginalTable table = InitPriors(p);
    state.ResumeTiming();
    benchmark::DoNotOptimize(BpUpdate(table, ineqs, config));
  }
  LabelVariant(state);
}
BENCHMARK(BM_BpSweep)->ArgsProduct({{0, 1, 2}, {1, 4}})->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace kyberlab

BENCHMARK_MAIN();
