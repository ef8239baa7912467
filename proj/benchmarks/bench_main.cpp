#include "mfspec/covariance.hpp"
#include "mfspec/dgp.hpp"
#include "mfspec/regression.hpp"
#include "mfspec/spec_tests.hpp"

#include <benchmark/benchmark.h>

using namespace mfspec;

namespace {

MixedSample sample(Eigen::Index T, Eigen::Index m) {
    DgpSpec spec;
    spec.T = T;
    spec.m = m;
    spec.seed = 1;
    return simulate(spec);
}

void BM_Simulate(benchmark::State& state) {
    DgpSpec spec;
    spec.T = state.range(0);
    spec.m = state.range(1);
    for (auto _ : state) {
        ++spec.seed;
        benchmark::DoNotOptimize(simulate(spec));
    }
    state.SetItemsProcessed(state.iterations() * (spec.T * spec.m + spec.burn_in));
}
BENCHMARK(BM_Simulate)->Args({125, 4})->Args({125, 365})->Args({512, 365});

void BM_OlsFit(benchmark::State& state) {
    const MixedSample s = sample(state.range(0), 8);
    const DesignMatrix X = DesignMatrix::with_intercept(s.x_high());
    for (auto _ : state) benchmark::DoNotOptimize(ols_fit(X, s.y()));
}
BENCHMARK(BM_OlsFit)->Arg(125)->Arg(512)->Arg(2000);

void BM_HacLongRunCov(benchmark::State& state) {
    const MixedSample s = sample(state.range(0), 3);
    const std::size_t lag = newey_west_bandwidth(s.T());
    for (auto _ : state) benchmark::DoNotOptimize(hac_long_run_cov(s.x_high(), lag));
}
BENCHMARK(BM_HacLongRunCov)->Arg(125)->Arg(512)->Arg(2000);

template <TestOutcome (*Test)(const TestInputs&)>
void BM_Test(benchmark::State& state) {
    const Eigen::Index m = state.range(1);
    const TestInputs in{sample(state.range(0), m), flat_weights(m), HacOptions{}};
    for (auto _ : state) benchmark::DoNotOptimize(Test(in));
}
BENCHMARK(BM_Test<dwh_new_test>)->Name("BM_NewTest")->Args({125, 4})->Args({125, 365})->Args({512, 365});
BENCHMARK(BM_Test<lambda_t_test>)->Name("BM_LambdaTest")->Args({125, 365});
BENCHMARK(BM_Test<miller_vat_test>)->Name("BM_MillerVat")->Args({125, 365});
BENCHMARK(BM_Test<agk_test>)->Name("BM_Agk")->Args({125, 365});

}  // namespace
BENCHMARK_MAIN();
