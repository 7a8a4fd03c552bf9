/*
 * Copyright 2026 The upspec Authors
 *
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

#include <random>
#include <vector>

#include "benchmark/benchmark.h"
#include "upspec/upspec.hpp"

namespace upspec {
namespace {

Signal RandomSignal(std::size_t n) {
  std::mt19937_64 rng(n);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> v(n);
  for (auto& x : v) x = u(rng);
  return Signal(std::move(v));
}

// Powers of two take the radix-2 path; the odd sizes go through Bluestein.
void BM_Dft(benchmark::State& state) {
  const Signal x = RandomSignal(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(dft(x));
}
BENCHMARK(BM_Dft)->Arg(256)->Arg(257)->Arg(1024)->Arg(1000)->Arg(4096)->Arg(4099);

void BM_Dft2(benchmark::State& state) {
  const auto side = static_cast<std::size_t>(state.range(0));
  const Signal flat = RandomSignal(side * side * 3);
  const Image img(side, side, 3, flat.to_vector());
  for (auto _ : state) benchmark::DoNotOptimize(dft2(img));
}
BENCHMARK(BM_Dft2)->Arg(32)->Arg(64)->Arg(128);

void BM_TransposedConv(benchmark::State& state) {
  const Signal x = RandomSignal(4096);
  const KernelSpec k(std::vector<double>(static_cast<std::size_t>(state.range(0)), 0.1), 2);
  for (auto _ : state) benchmark::DoNotOptimize(transposed_conv(x, k));
}
BENCHMARK(BM_TransposedConv)->Arg(3)->Arg(11)->Arg(31);

void BM_FourierPad(benchmark::State& state) {
  const Signal x = RandomSignal(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(fourier_pad_upsample(x, UpsampleFactor(2)));
}
BENCHMARK(BM_FourierPad)->Arg(512)->Arg(2048);

void BM_FitClosedForm(benchmark::State& state) {
  FitProblem p;
  p.n = static_cast<std::size_t>(state.range(0));
  p.factor = 2;
  p.kernel_size = 11;
  for (auto _ : state) benchmark::DoNotOptimize(fit_closed_form(p));
}
BENCHMARK(BM_FitClosedForm)->Arg(16)->Arg(32)->Arg(64);

void BM_ResidualSweep(benchmark::State& state) {
  const std::vector<std::size_t> sizes{2, 3, 7, 11, 15, 32};
  for (auto _ : state) benchmark::DoNotOptimize(residual_sweep(16, 2, sizes));
}
BENCHMARK(BM_ResidualSweep);

}  // namespace
}  // namespace upspec

BENCHMARK_MAIN();
