#include "../support/corpus.hpp"
#include "../support/oracle.hpp"
#include "common.hpp"
#include "ebs/translate.hpp"

using namespace ebs;
using namespace ebs::testing;

namespace {

std::vector<int> sizes_of(const std::string& text, int n_max) {
    Problem p = problem(text);
    return spectrum(p.sentence(), p.vocabulary, n_max).sizes();
}

}  // namespace

TEST_CASE("bounded decision") {
    Problem c = load(entry("example_c"));
    SatOutcome s = decide_sat_bounded(c.sentence(), c.vocabulary, 3);
    REQUIRE(s.verdict == SatOutcome::Verdict::Sat);
    CHECK(s.model->size() <= 3);
    CHECK(evaluate(*s.model, c.sentence()));

    Problem u = load(entry("contradiction"));
    for (std::uint64_t b : {0, 1, 3}) CHECK(decide_sat_bounded(u.sentence(), u.vocabulary, b).verdict == SatOutcome::Verdict::Unsat);

    Problem two = problem("exists x1 x2. x1 != x2;");
    CHECK(decide_sat_bounded(two.sentence(), two.vocabulary, 1).verdict == SatOutcome::Verdict::Unsat);
    CHECK(decide_sat_bounded(two.sentence(), two.vocabulary, 2).verdict == SatOutcome::Verdict::Sat);
}

TEST_CASE("find_model with constants") {
    Problem p = problem("vocab Q/1; const c, d; c != d & Q(c) & !Q(d);");
    CHECK_FALSE(find_model(p.sentence(), p.vocabulary, 1).has_value());
    auto m = find_model(p.sentence(), p.vocabulary, 2);
    REQUIRE(m.has_value());
    CHECK(evaluate(*m, p.sentence()));
}

TEST_CASE("interleaved search") {
    Problem serial = load(entry("serial"));
    SatOutcome s = interleaved_sat(serial.sentence(), serial.vocabulary, {});
    REQUIRE(s.verdict == SatOutcome::Verdict::Sat);
    CHECK(s.model->size() == 1);
    CHECK(s.model->holds("P", {0, 0}));

    Problem u = load(entry("contradiction"));
    SatOutcome r = interleaved_sat(u.sentence(), u.vocabulary, {});
    CHECK(r.verdict == SatOutcome::Verdict::Unsat);
    CHECK(r.effort.ground_depth == 0);

    Problem dag = load(entry("dag"));
    SatOutcome d = interleaved_sat(dag.sentence(), dag.vocabulary, {4, 2, 100000});
    CHECK(d.verdict == SatOutcome::Verdict::Unknown);
}

TEST_CASE("refutation needs equality reasoning") {
    Problem p = problem("vocab Q/1; exists x y. x = y & Q(x) & !Q(y);");
    SatOutcome r = interleaved_sat(p.sentence(), p.vocabulary, {0, 2, 100000});
    CHECK(r.verdict == SatOutcome::Verdict::Unsat);
}

TEST_CASE("spectra") {
    CHECK(sizes_of("exists x1 x2. x1 != x2;", 4) == std::vector<int>{2, 3, 4});
    CHECK(sizes_of("forall x y. x = y;", 4) == std::vector<int>{1});
    CHECK(sizes_of(entry("contradiction").text, 3).empty());
}

TEST_CASE("even-size sentence") {
    Problem p = problem(
        "vocab L/2, C/1;\n"
        "(forall x. !L(x,x)) & (forall x y z. L(x,y) & L(y,z) -> L(x,z)) & (forall x y. x = y | L(x,y) | L(y,x))"
        " & (forall x y. L(x,y) & (forall z. !(L(x,z) & L(z,y))) -> (C(x) <-> !C(y)))"
        " & (forall x. (forall y. !L(y,x)) -> C(x)) & (forall x. (forall y. !L(x,y)) -> !C(x));");
    CHECK(spectrum(p.sentence(), p.vocabulary, 6).sizes() == std::vector<int>{2, 4, 6});
}

TEST_CASE("spectrum agrees with brute force") {
    for (const auto& name : {"serial", "example_c", "off_diagonal", "const_step", "bsr_two_or_q", "mono_const"}) {
        CAPTURE(name);
        Problem p = load(entry(name));
        CHECK(spectrum(p.sentence(), p.vocabulary, 3).sizes() == brute_spectrum(p.sentence(), p.vocabulary, 3));
    }
}

TEST_CASE("bounded equivalence") {
    Problem s = load(entry("serial"));
    CHECK(bounded_equiv(s.sentence(), s.sentence(), s.vocabulary, 3).equivalent);
    Formula psi = to_formula(to_bsr_equispectral(to_pcnf(s.sentence()), 2).bsr);
    EquivResult e = bounded_equiv(s.sentence(), psi, s.vocabulary, 3);
    REQUIRE_FALSE(e.equivalent);
    REQUIRE(e.countermodel.has_value());
    CHECK(e.countermodel->size() == 3);
    CHECK(e.first_holds);
    CHECK(evaluate(*e.countermodel, s.sentence()));
    CHECK_FALSE(evaluate(*e.countermodel, psi));

    Problem m = load(entry("mono_q"));
    Formula psi0 = to_formula(to_bsr_equivalent(to_pcnf(m.sentence()), 0).bsr);
    CHECK(bounded_equiv(m.sentence(), psi0, m.vocabulary, 3).equivalent);
}

TEST_CASE("extensible bounded sub-model oracle") {
    Problem s = load(entry("serial"));
    EbsVerdict pass = ebs_oracle(s.sentence(), s.vocabulary, {}, 1, 4);
    CHECK(pass.pass);
    CHECK(pass.models_checked == 50977);

    EbsVerdict fail = ebs_oracle(s.sentence(), s.vocabulary, {"P"}, 2, 4);
    REQUIRE_FALSE(fail.pass);
    REQUIRE(fail.model.has_value());
    CHECK(evaluate(*fail.model, s.sentence()));
    CHECK(ebs_replay(fail, s.sentence(), s.vocabulary));
    // the refuting M2 is a set of at most two elements that loses a successor
    REQUIRE(fail.m2.has_value());
    CHECK(fail.m2->size() <= 2);

    Problem u = load(entry("contradiction"));
    CHECK(ebs_oracle(u.sentence(), u.vocabulary, {"Q"}, 0, 4).pass);
}

TEST_CASE("replay rejects a doctored verdict") {
    Problem s = load(entry("serial"));
    EbsVerdict fail = ebs_oracle(s.sentence(), s.vocabulary, {"P"}, 2, 4);
    REQUIRE_FALSE(fail.pass);
    EbsVerdict bad = fail;
    for (auto& e : bad.evidence) e.m2 = std::vector<int>(static_cast<std::size_t>(fail.model->size()));
    for (auto& e : bad.evidence)
        for (int i = 0; i < fail.model->size(); ++i) e.m2[static_cast<std::size_t>(i)] = i;
    CHECK_FALSE(ebs_replay(bad, s.sentence(), s.vocabulary));
}

TEST_CASE("finding the bound") {
    Problem m = load(entry("mono_q"));
    FindBoundResult r = find_bound_bounded(to_pcnf(m.sentence()), m.vocabulary, 3, 3);
    CHECK(r.bound == std::optional<std::uint64_t>(0));
    REQUIRE(r.bsr.has_value());
    CHECK(format_prenex(r.bsr->bsr) == "forall x. Q(x) | !Q(x)");
    CHECK_FALSE(r.caveat.empty());

    Problem b = load(entry("bsr_loop"));
    FindBoundResult rb = find_bound_bounded(to_pcnf(b.sentence()), b.vocabulary, 3, 3);
    REQUIRE(rb.bound.has_value());
    CHECK(*rb.bound <= 1);

    // ψ_B is refuted by the (B+1)-cycle, so every B <= 3 fails once size 4 is checked
    Problem s = load(entry("serial"));
    CHECK_FALSE(find_bound_bounded(to_pcnf(s.sentence()), s.vocabulary, 3, 4).bound.has_value());
}

TEST_CASE("search space note") {
    Vocabulary v;
    v.add_predicate("P", 2);
    v.add_predicate("Q", 1);
    SearchSpaceNote n = edp_nexptime_note(v, 3);
    REQUIRE(n.per_size.size() == 3);
    CHECK(n.per_size[0] == std::optional<std::uint64_t>(4));
    CHECK(n.per_size[1] == std::optional<std::uint64_t>(64));
    CHECK(n.per_size[2] == std::optional<std::uint64_t>(4096));
    CHECK(n.total == std::optional<std::uint64_t>(4164));
    CHECK(edp_nexptime_note(v, 0).per_size.size() == 1);
    for (std::uint64_t b = 0; b < 5; ++b) CHECK(edp_nexptime_note(v, b).log2_total <= edp_nexptime_note(v, b + 1).log2_total);
}
