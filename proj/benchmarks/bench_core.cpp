#include <benchmark/benchmark.h>

#include <cmath>
#include <complex>
#include <map>
#include <vector>

#include "entclt/convolve.hpp"
#include "entclt/distributions.hpp"
#include "entclt/fft.hpp"
#include "entclt/functionals.hpp"
#include "entclt/grid.hpp"
#include "entclt/ou_flow.hpp"
#include "entclt/poincare.hpp"
#include "entclt/projection.hpp"
#include "entclt/transport.hpp"

using namespace entclt;

namespace {

const GridDensity& fixture(int n_intervals) {
    static std::map<int, GridDensity> cache;
    auto it = cache.find(n_intervals);
    if (it == cache.end())
        it = cache
                 .emplace(n_intervals,
                          make_density(DistributionSpec::make_generalized_gaussian(4.0),
                                       n_intervals))
                 .first;
    return it->second;
}

void bm_fft(benchmark::State& state) {
    const int n = int(state.range(0));
    std::vector<std::complex<double>> x(n);
    for (int i = 0; i < n; ++i) x[i] = {std::sin(0.1 * i), std::cos(0.2 * i)};
    for (auto _ : state) {
        std::vector<std::complex<double>> y = x;
        fft_inplace(y, false);
        benchmark::DoNotOptimize(y.data());
    }
    state.SetComplexityN(n);
}

void bm_convolve(benchmark::State& state) {
    const GridDensity& g = fixture(int(state.range(0)));
    for (auto _ : state) {
        GridDensity out = convolve(g, g);
        benchmark::DoNotOptimize(out.values.data());
    }
    state.SetComplexityN(state.range(0));
}

void bm_clt_pyramid(benchmark::State& state) {
    const GridDensity& g = fixture(2048);
    const int n = int(state.range(0));
    for (auto _ : state) {
        GridDensity out = clt_density(g, n);
        benchmark::DoNotOptimize(out.values.data());
    }
}

void bm_fisher_information(benchmark::State& state) {
    const GridDensity& g = fixture(int(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(fisher_information(g));
}

void bm_relative_entropy(benchmark::State& state) {
    const GridDensity& g = fixture(int(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(relative_entropy_to_gaussian(g));
}

void bm_spectral_gap(benchmark::State& state) {
    const GridDensity& g = fixture(int(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(spectral_gap_1d(g).c_p);
    state.SetComplexityN(state.range(0));
}

void bm_w2_squared(benchmark::State& state) {
    const GridDensity& a = fixture(int(state.range(0)));
    static const GridDensity z =
        make_density(DistributionSpec::make_gaussian(), 4096);
    for (auto _ : state) benchmark::DoNotOptimize(w2_squared_1d(a, z));
}

void bm_ou_evolve(benchmark::State& state) {
    const GridDensity& g = fixture(int(state.range(0)));
    for (auto _ : state) {
        GridDensity out = ou_evolve(g, 0.5);
        benchmark::DoNotOptimize(out.values.data());
    }
}

void bm_projection_report(benchmark::State& state) {
    const GridDensity& g = fixture(int(state.range(0)));
    for (auto _ : state) {
        ProjectionReport rep = projection_report_n2(g);
        benchmark::DoNotOptimize(rep.delta2);
    }
    state.SetComplexityN(state.range(0));
}

BENCHMARK(bm_fft)->RangeMultiplier(4)->Range(1 << 10, 1 << 16)->Complexity();
BENCHMARK(bm_convolve)->Arg(1024)->Arg(2048)->Arg(4096)->Complexity();
BENCHMARK(bm_clt_pyramid)->Arg(8)->Arg(32);
BENCHMARK(bm_fisher_information)->Arg(2048)->Arg(4096);
BENCHMARK(bm_relative_entropy)->Arg(2048)->Arg(4096);
BENCHMARK(bm_spectral_gap)->Arg(1024)->Arg(2048)->Arg(4096)->Complexity();
BENCHMARK(bm_w2_squared)->Arg(2048)->Arg(4096);
BENCHMARK(bm_ou_evolve)->Arg(2048)->Arg(4096);
BENCHMARK(bm_projection_report)->Arg(1024)->Arg(2048)->Complexity();

}  // namespace

BENCHMARK_MAIN();
