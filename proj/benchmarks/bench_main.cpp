// Throughput of the main pipeline stages on small fixed sentences.

#include <benchmark/benchmark.h>

#include "ebs/analysis.hpp"
#include "ebs/bmc.hpp"
#include "ebs/edp.hpp"
#include "ebs/ground.hpp"
#include "ebs/parser.hpp"
#include "ebs/translate.hpp"

using namespace ebs;

namespace {

const char* kSerial = "vocab P/2; forall x. exists y. P(x,y);";
const char* kUnary = "vocab P/2, Q/1; exists x. forall z. exists v. (P(v,z) | Q(z)) & (P(x,v) | !Q(v));";
const char* kEven =
    "vocab L/2, C/1;\n"
    "(forall x. !L(x,x)) & (forall x y z. L(x,y) & L(y,z) -> L(x,z)) & (forall x y. x = y | L(x,y) | L(y,x))"
    " & (forall x y. L(x,y) & (forall z. !(L(x,z) & L(z,y))) -> (C(x) <-> !C(y)))"
    " & (forall x. (forall y. !L(y,x)) -> C(x)) & (forall x. (forall y. !L(x,y)) -> !C(x));";

void BM_Parse(benchmark::State& st) {
    for (auto _ : st) benchmark::DoNotOptimize(parse_problem(kEven));
}
BENCHMARK(BM_Parse);

void BM_Classify(benchmark::State& st) {
    Problem p = parse_problem(kUnary);
    PrenexForm pf = to_pcnf(*p.formula);
    for (auto _ : st) benchmark::DoNotOptimize(edp_check(classify(pf, p.vocabulary), {"Q"}));
}
BENCHMARK(BM_Classify);

void BM_Translate(benchmark::State& st) {
    Problem p = parse_problem(kSerial);
    PrenexForm pf = to_pcnf(*p.formula);
    for (auto _ : st) benchmark::DoNotOptimize(to_bsr_equivalent(pf, static_cast<std::uint64_t>(st.range(0))));
}
BENCHMARK(BM_Translate)->DenseRange(1, 4);

void BM_GroundAndSolve(benchmark::State& st) {
    Problem p = parse_problem(kEven);
    int n = static_cast<int>(st.range(0));
    for (auto _ : st) {
        Grounding g = ground_formula(*p.formula, p.vocabulary, n);
        benchmark::DoNotOptimize(dpll_solve(tseitin(g.formula, static_cast<int>(g.atoms.size()) + 1)));
    }
}
BENCHMARK(BM_GroundAndSolve)->DenseRange(2, 5);

void BM_Spectrum(benchmark::State& st) {
    Problem p = parse_problem(kEven);
    for (auto _ : st) benchmark::DoNotOptimize(spectrum(*p.formula, p.vocabulary, static_cast<int>(st.range(0))));
}
BENCHMARK(BM_Spectrum)->Arg(4)->Arg(6);

void BM_BoundedSat(benchmark::State& st) {
    Problem p = parse_problem(kUnary);
    for (auto _ : st) benchmark::DoNotOptimize(decide_sat_bounded(*p.formula, p.vocabulary, 3));
}
BENCHMARK(BM_BoundedSat);

void BM_Bmc(benchmark::State& st) {
    TransitionSystem ts = demo_transition_system();
    for (auto _ : st) benchmark::DoNotOptimize(bmc_solve(ts, static_cast<int>(st.range(0)), UnrollKind::Bmc));
}
BENCHMARK(BM_Bmc)->DenseRange(0, 3);

}  // namespace

BENCHMARK_MAIN();
