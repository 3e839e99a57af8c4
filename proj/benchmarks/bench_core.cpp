#include <benchmark/benchmark.h>

#include "hypex/gradmap.hpp"
#include "hypex/hankel.hpp"
#include "hypex/multideg.hpp"
#include "hypex/realroots.hpp"

using namespace hypex;

static void BM_EulerianRow(benchmark::State& st) {
    for (auto _ : st) benchmark::DoNotOptimize(eulerian_row(static_cast<int>(st.range(0))));
}
BENCHMARK(BM_EulerianRow)->Arg(7)->Arg(20);

static void BM_RealRootIsolation(benchmark::State& st) {
    QVec roots;
    for (int k = 0; k < st.range(0); ++k) roots.emplace_back(k * 3 - 7, k + 2);
    const auto p = UniPoly::from_roots(roots);
    for (auto _ : st) benchmark::DoNotOptimize(isolate_real_roots(p));
}
BENCHMARK(BM_RealRootIsolation)->Arg(6)->Arg(12);

static void BM_GradientMapE3(benchmark::State& st) {
    const auto fam = HyperbolicFamily::make(build_elementary_symmetric(static_cast<int>(st.range(0)), 3), QVec(static_cast<std::size_t>(st.range(0)), 1));
    std::vector<double> th(static_cast<std::size_t>(st.range(0)), 1.0);
    th[0] = 1.3;
    for (auto _ : st) benchmark::DoNotOptimize(gradient_map(fam, th));
}
BENCHMARK(BM_GradientMapE3)->Arg(4)->Arg(8);

static void BM_AlphaNumericE3(benchmark::State& st) {
    const auto f = build_elementary_symmetric(5, 3);
    TrackerConfig cfg;
    for (auto _ : st) benchmark::DoNotOptimize(alpha_numeric(f, static_cast<int>(st.range(0)), 1, cfg));
}
BENCHMARK(BM_AlphaNumericE3)->Arg(3)->Arg(5)->Unit(benchmark::kMillisecond);

static void BM_GrassmannianMembership(benchmark::State& st) {
    const int m = static_cast<int>(st.range(0));
    const auto hs = hankel_space(m);
    QVec u;
    for (int k = 0; k < 2 * m - 1; ++k) u.emplace_back((k * k + 1) % 7 + 1, 3);
    const QMat H = hankel_matrix(hs, u);
    for (auto _ : st) benchmark::DoNotOptimize(verify_grassmannian_membership(H, m));
}
BENCHMARK(BM_GrassmannianMembership)->Arg(4)->Arg(6);
BENCHMARK_MAIN();
