// Copyright 2026 The qdos Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include "qdos/evolve.hpp"
#include "qdos/model.hpp"
#include "qdos/spectral.hpp"
#include "qdos/statevec.hpp"

namespace qdos {
namespace {

static void BM_DiagonalPhaseChain(benchmark::State &state) {
    const int l = static_cast<int>(state.range(0));
    const auto h = build_chain(l);
    const DiagonalPhase phase(h, Axis::z, 0.05);
    StateVector psi = random_state(l, RandomStateKind::RandomSign, 7);
    for (auto _ : state) {
        apply_diagonal_phase(psi, phase);
        benchmark::DoNotOptimize(psi.amplitudes().data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(psi.dimension()));
}
BENCHMARK(BM_DiagonalPhaseChain)->DenseRange(12, 20, 2);

static void BM_DiagonalPhaseTriangular(benchmark::State &state) {
    const int rows = static_cast<int>(state.range(0));
    const auto h = build_triangular({rows, -1.0});
    const DiagonalPhase phase(h, Axis::z, 0.05);
    StateVector psi = random_state(h.num_spins(), RandomStateKind::RandomSign, 7);
    for (auto _ : state) {
        apply_diagonal_phase(psi, phase);
        benchmark::DoNotOptimize(psi.amplitudes().data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(psi.dimension()));
}
BENCHMARK(BM_DiagonalPhaseTriangular)->DenseRange(3, 6);

static void BM_RotationLayer(benchmark::State &state) {
    const int l = static_cast<int>(state.range(0));
    StateVector psi = random_state(l, RandomStateKind::RandomSign, 7);
    const Gate2 g = AxisRotation{RotationAxis::x, RotationDirection::forward}.matrix();
    for (auto _ : state) {
        apply_single_qubit_layer(psi, g);
        benchmark::DoNotOptimize(psi.amplitudes().data());
    }
    state.SetItemsProcessed(state.iterations() * l * static_cast<std::int64_t>(psi.dimension()));
}
BENCHMARK(BM_RotationLayer)->DenseRange(12, 20, 2);

static void BM_TrotterStepTriangular(benchmark::State &state) {
    const int rows = static_cast<int>(state.range(0));
    const TrotterPlan plan(build_triangular({rows, -1.0}), 0.05);
    StateVector psi = random_state(plan.num_spins(), RandomStateKind::RandomSign, 7);
    for (auto _ : state) {
        evolve(psi, plan, 1);
        benchmark::DoNotOptimize(psi.amplitudes().data());
    }
}
BENCHMARK(BM_TrotterStepTriangular)->DenseRange(3, 6)->Unit(benchmark::kMillisecond);

static void BM_DosFromSeries(benchmark::State &state) {
    const int n = static_cast<int>(state.range(0));
    std::vector<Complex> series(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) series[static_cast<std::size_t>(k)] = std::polar(8.0, 0.75 * k * 0.1);
    for (auto _ : state) {
        auto dos = dos_from_series(series, 0.1);
        benchmark::DoNotOptimize(dos.density.data());
    }
}
BENCHMARK(BM_DosFromSeries)->RangeMultiplier(4)->Range(64, 4096);

} // namespace
} // namespace qdos

BENCHMARK_MAIN();
