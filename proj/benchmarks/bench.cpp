#include <benchmark/benchmark.h>

#include "quartic/orbit.hpp"
#include "quartic/torsion.hpp"

using namespace quartic;

namespace {

const Surface& v0prime() {
    static Surface s = parse_surface("1,1,-1,-1");
    return s;
}

const ProjPoint& euler() {
    static ProjPoint p = parse_point("133:134:158:59");
    return p;
}

const RulingPair& rulings() {
    static RulingPair r = RulingPair::build(v0prime(), tau_square(euler()));
    return r;
}

// A medium-height orbit point (first endomorphism image of the seed).
const ProjPoint& big_point() {
    static ProjPoint p = apply_endo(v0prime(), rulings(), 1, euler());
    return p;
}

void bm_normalize_point(benchmark::State& state) {
    Vec4I raw;
    for (size_t i = 0; i < 4; ++i) raw[i] = big_point().coords()[i] * 840;
    for (auto _ : state) benchmark::DoNotOptimize(normalize_point(raw));
}
BENCHMARK(bm_normalize_point);

void bm_richmond_pair(benchmark::State& state) {
    const ProjPoint& p = state.range(0) == 0 ? euler() : big_point();
    for (auto _ : state) benchmark::DoNotOptimize(richmond_pair(v0prime(), rulings(), p));
}
BENCHMARK(bm_richmond_pair)->Arg(0)->Arg(1);

void bm_closed_forms(benchmark::State& state) {
    const ProjPoint& p = state.range(0) == 0 ? euler() : big_point();
    derive_validated_forms(v0prime());  // warm the per-surface cache
    for (auto _ : state) benchmark::DoNotOptimize(eval_printed_forms(v0prime(), 1, p));
}
BENCHMARK(bm_closed_forms)->Arg(0)->Arg(1);

void bm_apply_endo(benchmark::State& state) {
    derive_validated_forms(v0prime());
    for (auto _ : state)
        benchmark::DoNotOptimize(apply_endo(v0prime(), rulings(), 1, euler()));
}
BENCHMARK(bm_apply_endo);

void bm_fibre_value(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(rulings().fibre_value(1, big_point()));
}
BENCHMARK(bm_fibre_value);

void bm_curve_map_build(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(fibre_to_weierstrass(v0prime(), rulings(), 1, euler()));
}
BENCHMARK(bm_curve_map_build);

void bm_order_class(benchmark::State& state) {
    derive_validated_forms(v0prime());
    for (auto _ : state)
        benchmark::DoNotOptimize(order_class(v0prime(), rulings(), 1, euler()));
}
BENCHMARK(bm_order_class);

void bm_orbit(benchmark::State& state) {
    Strategy strat;
    strat.max_nodes = static_cast<size_t>(state.range(0));
    strat.max_height_digits = 2000;
    for (auto _ : state)
        benchmark::DoNotOptimize(generate_orbit(v0prime(), rulings(), euler(), strat));
}
BENCHMARK(bm_orbit)->Arg(40)->Arg(120)->Arg(200)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
