#include <benchmark/benchmark.h>

#include <lhchi/algebra.hpp>
#include <lhchi/chisq.hpp>
#include <lhchi/coloring.hpp>
#include <lhchi/latin_square.hpp>
#include <lhchi/montecarlo.hpp>

#include <cstdint>
#include <vector>

namespace {

void BM_EnumerateColorings(benchmark::State& state) {
    const auto s = lhchi::construct_latin_square(static_cast<unsigned>(state.range(0)));
    for (auto _ : state) {
        auto all = lhchi::enumerate_colorings(s);
        std::size_t valid = 0;
        for (const auto& h : all) valid += lhchi::is_latin_hadamard(h) ? 1 : 0;
        benchmark::DoNotOptimize(valid);
    }
}
BENCHMARK(BM_EnumerateColorings)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_ZeroDivisorScan(benchmark::State& state) {
    const auto table = lhchi::cayley_dickson_table(static_cast<unsigned>(state.range(0)));
    for (auto _ : state) {
        auto hits = lhchi::find_zero_divisors(table);
        benchmark::DoNotOptimize(hits.data());
    }
}
BENCHMARK(BM_ZeroDivisorScan)->Arg(4)->Arg(5)->Unit(benchmark::kMillisecond);

void BM_Decompose(benchmark::State& state) {
    const auto p = lhchi::ProbabilityVector::preset('b');
    const auto o = lhchi::eigenbasis_from_latin_hadamard(lhchi::catalog_matrix(2), p);
    const lhchi::CellCounts m(std::vector<std::int64_t>{9, 20, 31, 42, 38, 29, 18, 13});
    for (auto _ : state) {
        auto d = lhchi::decompose(m, p, o);
        benchmark::DoNotOptimize(d.x2);
    }
}
BENCHMARK(BM_Decompose);

void BM_InterlacingCheck(benchmark::State& state) {
    const auto p = lhchi::ProbabilityVector::preset('c');
    for (auto _ : state) benchmark::DoNotOptimize(lhchi::eigen_interlacing_check(p));
}
BENCHMARK(BM_InterlacingCheck);

void BM_SimulatePower(benchmark::State& state) {
    const auto p = lhchi::ProbabilityVector::preset('a');
    lhchi::PowerSimConfig cfg{
        .null = lhchi::DistributionSpec::parse("normal:0,1"),
        .alternative = lhchi::DistributionSpec::parse("t:2"),
        .p = p,
        .basis = lhchi::eigenbasis_from_latin_hadamard(lhchi::catalog_matrix(2), p),
        .reps = static_cast<std::size_t>(state.range(0)),
    };
    for (auto _ : state) {
        auto r = lhchi::simulate_power(cfg);
        benchmark::DoNotOptimize(r.rates.data());
    }
}
BENCHMARK(BM_SimulatePower)->Arg(1000)->Unit(benchmark::kMillisecond);

} // namespace
BENCHMARK_MAIN();
