#include <benchmark/benchmark.h>

#include "pdga/pdga.hpp"

using namespace pdga;

namespace {

std::vector<Polynomial> parse_all(const Ring& r, std::initializer_list<std::string_view> texts) {
    std::vector<Polynomial> out;
    for (auto t : texts) out.push_back(parse_polynomial(t, r));
    return out;
}

void BM_buchberger_cyclic3(benchmark::State& state) {
    auto r = VariableRing::make({"x", "y", "z"});
    auto gens = parse_all(r, {"x + y + z", "x*y + y*z + z*x", "x*y*z - 1"});
    for (auto _ : state) {
        clear_groebner_cache();
        benchmark::DoNotOptimize(buchberger(r, gens));
    }
}
BENCHMARK(BM_buchberger_cyclic3);

void BM_buchberger_curves(benchmark::State& state) {
    auto r = VariableRing::make({"x", "y", "z"});
    auto gens = parse_all(r, {"x^2 + y^2 + z^2 - 1", "x*y - z", "x - y^2 + z"});
    for (auto _ : state) {
        clear_groebner_cache();
        benchmark::DoNotOptimize(buchberger(r, gens));
    }
}
BENCHMARK(BM_buchberger_curves);

void BM_growth_weyl(benchmark::State& state) {
    auto r = VariableRing::make({"a"});
    auto d = Derivation::partial(PresentedAlgebra::polynomial_ring(r), 0);
    std::vector<OrePolynomial> gens{parse_ore("1", d), parse_ore("a", d), parse_ore("X", d)};
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(growth_sequence(gens, n));
}
BENCHMARK(BM_growth_weyl)->Arg(10)->Arg(20)->Arg(30);

void BM_logdiv(benchmark::State& state) {
    auto r = VariableRing::make({"a", "b"});
    auto A = PresentedAlgebra::polynomial_ring(r);
    std::vector<Derivation> ds{Derivation(A, parse_all(r, {"a", "2*b"}))};
    auto v = Subspace::span(A, parse_all(r, {"1", "a", "b"}));
    auto w = Subspace::span(A, parse_all(r, {"1"}));
    const auto threads = static_cast<unsigned>(state.range(0));
    for (auto _ : state) {
        clear_groebner_cache();
        benchmark::DoNotOptimize(logdiv_count(v, w, ds, threads));
    }
}
BENCHMARK(BM_logdiv)->Arg(1)->Arg(4);

}  // namespace

BENCHMARK_MAIN();
