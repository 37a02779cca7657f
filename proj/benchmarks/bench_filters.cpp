#include <benchmark/benchmark.h>

#include <numbers>
#include <vector>

#include "fastgabor/bank.hpp"
#include "fastgabor/gabor.hpp"
#include "fastgabor/gaussian.hpp"
#include "fastgabor/sdft.hpp"
#include "fastgabor/tools/bench.hpp"

namespace {

using namespace fastgabor;

void BM_SmoothIir(benchmark::State& state) {
    const double sigma = static_cast<double>(state.range(0));
    const RealImage f = tools::synthetic_image(4096, 1, 7);
    const Smoother s(RecursiveIir{}, sigma);
    std::vector<double> out(f.width());
    OpCounters c;
    for (auto _ : state) {
        s.smooth(f.row(0), out, c);
        benchmark::DoNotOptimize(out.data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(f.width()));
}
BENCHMARK(BM_SmoothIir)->Arg(2)->Arg(8)->Arg(32);

void BM_SmoothFir(benchmark::State& state) {
    const double sigma = static_cast<double>(state.range(0));
    const RealImage f = tools::synthetic_image(4096, 1, 7);
    const Smoother s(ExactFir{}, sigma);
    std::vector<double> out(f.width());
    OpCounters c;
    for (auto _ : state) {
        s.smooth(f.row(0), out, c);
        benchmark::DoNotOptimize(out.data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(f.width()));
}
BENCHMARK(BM_SmoothFir)->Arg(2)->Arg(8)->Arg(32);

void BM_GaborFilter(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const RealImage f = tools::synthetic_image(n, n, 11);
    const GaborParams p = GaborParams::make(0.5, std::numbers::pi / 8.0, 4.0 * std::numbers::pi);
    for (auto _ : state) {
        OpCounters c;
        benchmark::DoNotOptimize(gabor_filter(f, p, RecursiveIir{}, c));
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n * n));
}
BENCHMARK(BM_GaborFilter)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);

template <bool Reuse>
void BM_Bank(benchmark::State& state) {
    const RealImage f = tools::synthetic_image(256, 256, 13);
    BankSpec spec;
    spec.frequencies = {0.5};
    spec.orientations = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) {
        OpCounters c;
        if constexpr (Reuse) {
            benchmark::DoNotOptimize(compute_bank(f, spec, RecursiveIir{}, c));
        } else {
            benchmark::DoNotOptimize(compute_bank_noreuse(f, spec, RecursiveIir{}, c));
        }
    }
}
BENCHMARK(BM_Bank<true>)->Name("BM_BankReuse")->Arg(8)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Bank<false>)->Name("BM_BankNoReuse")->Arg(8)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

template <bool Reuse>
void BM_Sdft(benchmark::State& state) {
    const RealImage f = tools::synthetic_image(128, 128, 17);
    SdftSpec spec;
    spec.mx = spec.my = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) {
        OpCounters c;
        if constexpr (Reuse) {
            benchmark::DoNotOptimize(sdft_full(f, spec, c));
        } else {
            benchmark::DoNotOptimize(sdft_full_noreuse(f, spec, c));
        }
    }
}
BENCHMARK(BM_Sdft<true>)->Name("BM_SdftReuse")->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Sdft<false>)->Name("BM_SdftNoReuse")->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
