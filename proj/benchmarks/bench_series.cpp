// Micro-benchmarks for the hot paths: series arithmetic, infinite products,
// theta sums, and a full identity verification.
#include <benchmark/benchmark.h>

#include "qident/bailey.hpp"
#include "qident/catalog.hpp"
#include "qident/qproducts.hpp"
#include "qident/verifier.hpp"

using namespace qident;

namespace {

QSeries dense_unit(long long order) {
    QSeries s = QSeries::one(order);
    for (long long k = 1; k < order; ++k)
        s += QSeries::monomial((k % 3) - 1 == 0 ? 1 : (k % 3) - 1, k, order);
    return s;
}

void BM_series_mul(benchmark::State& state) {
    long long order = state.range(0);
    QSeries a = euler_inf(order).inverse();
    QSeries b = dense_unit(order);
    for (auto _ : state) benchmark::DoNotOptimize(a * b);
}
BENCHMARK(BM_series_mul)->Arg(100)->Arg(200);

void BM_series_inverse(benchmark::State& state) {
    long long order = state.range(0);
    QSeries e = euler_inf(order);
    for (auto _ : state) benchmark::DoNotOptimize(e.inverse());
}
BENCHMARK(BM_series_inverse)->Arg(100)->Arg(200);

void BM_euler_product(benchmark::State& state) {
    long long order = state.range(0);
    for (auto _ : state) benchmark::DoNotOptimize(euler_inf(order));
}
BENCHMARK(BM_euler_product)->Arg(200)->Arg(400);

void BM_theta(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(theta_f(Monomial(1, 1), Monomial(1, 3), state.range(0)));
}
BENCHMARK(BM_theta)->Arg(200)->Arg(1000);

void BM_quintuple(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(quintuple_product(Monomial(1, 9), Monomial(-1, 1), state.range(0)));
}
BENCHMARK(BM_quintuple)->Arg(100);

void BM_verify_identity(benchmark::State& state) {
    static Catalog cat = Catalog::load_default();
    Verifier v(cat);
    for (auto _ : state) {
        VerificationReport r = v.verify("m18-1", state.range(0));
        if (!r.ok()) state.SkipWithError("identity failed");
    }
}
BENCHMARK(BM_verify_identity)->Arg(100)->Arg(200);

void BM_check_pair_P4(benchmark::State& state) {
    BaileyPair p = make_pair("P4");
    for (auto _ : state) {
        PairCheck pc = check_pair(p, 10, 60);
        if (!pc.pass) state.SkipWithError("pair failed");
    }
}
BENCHMARK(BM_check_pair_P4);

} // namespace

BENCHMARK_MAIN();
