#include <benchmark/benchmark.h>

#include <polya/arith.hpp>
#include <polya/cf.hpp>
#include <polya/family.hpp>
#include <polya/ideal_oracle.hpp>
#include <polya/quad_field.hpp>

using namespace polya;

namespace {

void BM_Jacobi(benchmark::State& state) {
    Int a = 1234577, n = Int("712021612142868961");
    for (auto _ : state) benchmark::DoNotOptimize(jacobi(a, n));
}
BENCHMARK(BM_Jacobi);

void BM_IsPrime64(benchmark::State& state) {
    Int n = Int("712021612142868961");
    for (auto _ : state) benchmark::DoNotOptimize(is_prime(n));
}
BENCHMARK(BM_IsPrime64);

void BM_CfSignature(benchmark::State& state) {
    // discriminant size grows with the range argument
    Int d = (Int(1) << state.range(0)) + 3;
    while (is_perfect_square(d)) ++d;
    std::uint64_t steps = 0;
    for (auto _ : state) {
        CfSignature sig = cf_signature(d);
        steps = sig.steps;
        benchmark::DoNotOptimize(sig.period);
    }
    state.counters["half_steps"] = double(steps);
}
BENCHMARK(BM_CfSignature)->Arg(24)->Arg(32)->Arg(40)->Arg(48);

void BM_ExplicitUnit(benchmark::State& state) {
    Int d = state.range(0);
    for (auto _ : state) {
        UnitComputation u = cf_fundamental_unit(d);
        benchmark::DoNotOptimize(u.x);
    }
}
BENCHMARK(BM_ExplicitUnit)->Arg(1621)->Arg(9199)->Arg(9949);

void BM_PolyaDirect(benchmark::State& state) {
    QuadraticField k = make_field(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(polya_direct(k).order);
}
BENCHMARK(BM_PolyaDirect)->Arg(210)->Arg(-210);

void BM_FindPrimeTuple(benchmark::State& state) {
    SignMatrix m = trotter_pattern(int(state.range(0)));
    for (auto _ : state) {
        PrimeTuple t = find_prime_tuple(m);
        benchmark::DoNotOptimize(t.primes.back());
    }
}
BENCHMARK(BM_FindPrimeTuple)->Arg(2)->Arg(3)->Arg(4);

} // namespace

BENCHMARK_MAIN();
