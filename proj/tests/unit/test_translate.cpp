#include "../support/corpus.hpp"
#include "common.hpp"
#include "ebs/translate.hpp"

using namespace ebs;
using namespace ebs::testing;

TEST_CASE("equivalent translation") {
    PrenexForm serial = pcnf_of("vocab P/2; forall x. exists y. P(x,y);");
    TranslationResult t = to_bsr_equivalent(serial, 2);
    CHECK(format_prenex(t.bsr) == "exists x1. exists x2. forall x. P(x,x1) | P(x,x2) | P(x,x)");
    CHECK(t.fresh == std::vector<std::string>{"x1", "x2"});
    CHECK(t.size.disjuncts == 3);
    CHECK(t.bsr.is_bsr());

    PrenexForm mono = pcnf_of("vocab Q/1; forall x. exists y. Q(y) | !Q(x);");
    CHECK(format_prenex(to_bsr_equivalent(mono, 0).bsr) == "forall x. Q(x) | !Q(x)");

    PrenexForm uni = pcnf_of("vocab P/2; forall x y. P(x,y) | !P(y,x);");
    CHECK(to_bsr_equivalent(uni, 0).bsr == uni);
}

TEST_CASE("equispectral translation") {
    PrenexForm serial = pcnf_of("vocab P/2; forall x. exists y. P(x,y);");
    TranslationResult t = to_bsr_equispectral(serial, 2);
    CHECK(format_prenex(t.bsr) == "exists x1. exists x2. forall x. P(x,x1) | P(x,x2)");
    CHECK(t.pool == std::vector<std::string>{"x1", "x2"});

    PrenexForm bsr = pcnf_of("vocab P/2; exists x. forall y. P(x,y) | !P(y,y);");
    TranslationResult r = to_bsr_equispectral(bsr, 2);
    CHECK(format_prenex(r.bsr) == "exists x. exists x1. exists x2. forall y. P(x,y) | !P(y,y)");
    CHECK(r.size.disjuncts == 1);
}

TEST_CASE("fresh names avoid clashes") {
    PrenexForm pf = pcnf_of("vocab P/2; forall x1. exists y. P(x1,y);");
    TranslationResult t = to_bsr_equispectral(pf, 2);
    CHECK(t.fresh == std::vector<std::string>{"x1_1", "x2"});
}

TEST_CASE("translation only admits models of the source") {
    // ψ ⊨ φ for every corpus sentence at small sizes
    for (const auto& name : {"serial", "example_c", "off_diagonal", "const_step", "mono_q", "negation_closure"}) {
        CAPTURE(name);
        Problem p = load(entry(name));
        PrenexForm pf = to_pcnf(p.sentence());
        Formula psi = to_formula(to_bsr_equivalent(pf, 2).bsr);
        for (int n = 1; n <= 2; ++n) {
            StructureEnumerator it(p.vocabulary, n);
            FiniteStructure m = it.make();
            while (it.next(m))
                if (evaluate(m, psi)) CHECK(evaluate(m, p.sentence()));
        }
    }
}

TEST_CASE("flat layout is unsound") {
    // ∀z0 ∃v ∀z1 v = z1 holds only in size 1; letting v range over z1 yields a valid ψ
    PrenexForm pf = pcnf_of("forall z0. exists v. forall z1. v = z1;");
    TranslateOptions flat;
    flat.flat_layout = true;
    Formula psi_flat = to_formula(to_bsr_equivalent(pf, 1, flat).bsr);
    Formula psi = to_formula(to_bsr_equivalent(pf, 1).bsr);
    FiniteStructure two(Vocabulary{}, 2);
    CHECK(evaluate(two, psi_flat));
    CHECK_FALSE(evaluate(two, to_formula(pf)));
    CHECK_FALSE(evaluate(two, psi));
}

TEST_CASE("flat layout is unsound when the witness would depend on a later universal") {
    // the chosen disjunct may still depend on z2, which is quantified after v1
    Problem p = problem("vocab R/2, S/1, Q/1; forall v0. exists v1. forall v2. (!R(v2,v1) | !S(v2)) & (Q(v2) | !S(v2));");
    PrenexForm pf = to_pcnf(p.sentence());
    FiniteStructure m(p.vocabulary, 2);
    // every element has an S-predecessor, but no element is its own
    for (int a = 0; a < 2; ++a) {
        m.set("S", {a}, true);
        m.set("Q", {a}, true);
        m.set("R", {a, 1 - a}, true);
    }
    REQUIRE_FALSE(evaluate(m, p.sentence()));

    TranslateOptions flat;
    flat.flat_layout = true;
    TranslationResult t = to_bsr_equivalent(pf, 2, flat);
    CHECK(evaluate(m, to_formula(t.bsr)));

    TranslationResult nested = to_bsr_equivalent(pf, 2);
    CHECK(nested.bsr.is_bsr());
    CHECK_FALSE(evaluate(m, to_formula(nested.bsr)));
    CHECK(format_prenex(nested.bsr).find("v2_1") != std::string::npos);
}

TEST_CASE("nested layout matches the flat one without trailing universals") {
    PrenexForm pf = pcnf_of("vocab P/2; forall x. exists y. P(x,y);");
    TranslateOptions flat;
    flat.flat_layout = true;
    for (std::uint64_t b = 0; b <= 2; ++b) {
        CHECK(to_bsr_equivalent(pf, b).bsr == to_bsr_equivalent(pf, b, flat).bsr);
        CHECK(to_bsr_equispectral(pf, b).bsr == to_bsr_equispectral(pf, b, flat).bsr);
    }
}

TEST_CASE("translation caps") {
    PrenexForm pf = pcnf_of("vocab P/2; forall x. exists y z w. P(x,y) & P(y,z) & P(z,w);");
    TranslateOptions o;
    o.disjunct_cap = 10;
    CHECK_THROWS_AS(to_bsr_equispectral(pf, 3, o), CapExceeded);
    TranslateOptions c;
    c.clause_cap = 10;
    CHECK_THROWS_AS(to_bsr_equispectral(pf, 3, c), CapExceeded);
}

TEST_CASE("spectrum synthesis text") {
    Formula two = spectrum_to_bsr({2}, std::nullopt, Vocabulary{});
    CHECK(format_formula(two) == "exists x1. exists x2. forall y. x1 != x2 & (y = x1 | y = x2)");
    Formula three = spectrum_to_bsr({}, 3, Vocabulary{});
    CHECK(format_formula(three) == "exists x1. exists x2. exists x3. x1 != x2 & x1 != x3 & x2 != x3");
    CHECK_THROWS_AS(spectrum_to_bsr({}, std::nullopt, Vocabulary{}), PreconditionError);
    CHECK_THROWS_AS(spectrum_to_bsr({0}, std::nullopt, Vocabulary{}), PreconditionError);
    Vocabulary v;
    v.add_predicate("P", 2);
    Formula withp = spectrum_to_bsr({1}, std::nullopt, v);
    CHECK(to_pcnf(withp).is_bsr());
}
