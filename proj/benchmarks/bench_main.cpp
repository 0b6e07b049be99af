#include "siegelkit/formats.hpp"
#include "siegelkit/lattice.hpp"
#include "siegelkit/lift.hpp"
#include "siegelkit/siegel_series.hpp"

#include <benchmark/benchmark.h>

#include <cstdlib>

using namespace siegelkit;

namespace {

const EvenLattice& bundled(const std::string& key) {
    static std::map<std::string, EvenLattice> cache;
    auto it = cache.find(key);
    if (it == cache.end()) {
        setenv("SIEGELKIT_DATA_DIR", SIEGELKIT_BENCH_DATA_DIR, 0);
        it = cache.emplace(key, resolve_lattice(key)).first;
    }
    return it->second;
}

void BM_ShortVectorsE8(benchmark::State& state) {
    const EvenLattice& E8 = bundled("e8");
    const long bound = state.range(0);
    for (auto _ : state) benchmark::DoNotOptimize(short_vectors(E8, bound));
}
BENCHMARK(BM_ShortVectorsE8)->Arg(4)->Arg(8)->Arg(12)->Unit(benchmark::kMillisecond);

void BM_AutomorphismOrder(benchmark::State& state, const char* key) {
    const EvenLattice& L = bundled(key);
    for (auto _ : state) benchmark::DoNotOptimize(automorphism_order(L));
}
BENCHMARK_CAPTURE(BM_AutomorphismOrder, D4, "d4")->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_AutomorphismOrder, E8, "e8")->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_AutomorphismOrder, D16plus, "d16plus")->Unit(benchmark::kMillisecond);

void BM_RepresentationCountE8(benchmark::State& state) {
    const EvenLattice& E8 = bundled("e8");
    const HalfIntegralForm xi = HalfIntegralForm::identity(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(representation_count(E8, xi));
}
BENCHMARK(BM_RepresentationCountE8)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_SiegelSeriesLayers(benchmark::State& state) {
    const HalfIntegralForm xi = parse_inline_form("1,1/2;1/2,2");
    const int depth = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(siegel_series_layers(xi, 2, depth));
}
BENCHMARK(BM_SiegelSeriesLayers)->Arg(4)->Arg(6)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_LatticeSumI4(benchmark::State& state) {
    const HalfIntegralForm xi = HalfIntegralForm::identity(4);
    for (auto _ : state) benchmark::DoNotOptimize(siegel_series_lattice_sum(xi, 2, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_LatticeSumI4)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_HPredict(benchmark::State& state) {
    setenv("SIEGELKIT_DATA_DIR", SIEGELKIT_BENCH_DATA_DIR, 0);
    const SatakeData s = read_eigenform_file(resolve_form_file("delta", ".eigen")).satake();
    const PlusFormCoefficients c = read_plusform_file(resolve_form_file("plus13", ".plus")).coefficients();
    for (auto _ : state)
        for (long eta = 1; eta <= 200; ++eta)
            if (eta % 4 == 0 || eta % 4 == 1)
                benchmark::DoNotOptimize(h_coefficient_predict(eta, s, c, PsiSign::kohnen_zagier));
}
BENCHMARK(BM_HPredict)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
