#include "common.hpp"
#include "ebs/bmc.hpp"

using namespace ebs;
using namespace ebs::testing;

TEST_CASE("unrolling shape") {
    TransitionSystem ts = demo_transition_system();
    CHECK(step_variable(0, 1) == "s0_1");
    Formula k1 = unroll_bmc(ts, 1);
    CHECK(free_vars(k1).empty());
    // (k+1)·d leading existentials
    for (int k = 0; k <= 3; ++k) {
        Formula f = unroll_bmc(ts, k);
        int lead = 0;
        const Formula* g = &f;
        while (g->kind() == Formula::Kind::Exists) {
            CHECK(g->variable() == step_variable(static_cast<std::size_t>(lead), 1));
            ++lead;
            g = &g->body();
        }
        CHECK(lead == k + 1);
    }
    Formula k0 = unroll_bmc(ts, 0);
    CHECK(format_formula(k0) == "exists s0_1. Q(s0_1) & !Q(s0_1)");
    CHECK_THROWS_AS(unroll_ind(ts, 0), PreconditionError);
    CHECK(free_vars(unroll_ind(ts, 2)).empty());
}

TEST_CASE("demo verdicts and bounds") {
    TransitionSystem ts = demo_transition_system();
    std::vector<std::uint64_t> bounds;
    for (int k = 0; k <= 3; ++k) {
        BmcResult r = bmc_solve(ts, k);
        CAPTURE(k);
        CHECK(r.outcome.verdict == (k % 2 ? SatOutcome::Verdict::Sat : SatOutcome::Verdict::Unsat));
        bounds.push_back(r.bound.bound);
    }
    for (std::size_t i = 1; i + 1 < bounds.size(); ++i) CHECK(bounds[i + 1] - bounds[i] == bounds[i] - bounds[i - 1]);
}

TEST_CASE("unsatisfiable initial states") {
    Problem p = problem(
        "vocab Q/1, P/2;\n@statevars x;\n@init Q(x) & !Q(x);\n@trans P(x, x_next);\n@prop Q(x);\n");
    TransitionSystem ts = transition_system_from(p);
    for (int k = 0; k <= 3; ++k) CHECK(bmc_solve(ts, k).outcome.verdict == SatOutcome::Verdict::Unsat);
}

TEST_CASE("file and demo agree") {
    TransitionSystem a = transition_system_from(parse_problem(demo_transition_system_text()));
    TransitionSystem b = demo_transition_system();
    CHECK(a.init == b.init);
    CHECK(a.trans == b.trans);
    CHECK(a.state_vars == b.state_vars);
}
