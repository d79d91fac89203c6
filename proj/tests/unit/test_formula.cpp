#include "common.hpp"

using namespace ebs;
using namespace ebs::testing;

namespace {

Vocabulary pq() {
    Vocabulary v;
    v.add_predicate("P", 2);
    v.add_predicate("Q", 1);
    return v;
}

Formula f(const std::string& text, const std::vector<std::string>& free = {}) {
    return parse_formula(text, pq(), free);
}

}  // namespace

TEST_CASE("free variables") {
    CHECK(free_vars(f("forall x. P(x,y)", {"y"})) == std::set<std::string>{"y"});
    CHECK(free_vars(f("forall x. exists y. P(x,y)")).empty());
    Vocabulary v;
    v.add_predicate("Q", 1);
    v.add_constant("c");
    CHECK(free_vars(parse_formula("Q(c)", v)).empty());
}

TEST_CASE("substitution") {
    CHECK(substitute(f("P(x,y)", {"x", "y"}), {{"y", Term::var("x")}}) == f("P(x,x)", {"x"}));
    // the binder is renamed so y stays free
    Formula s = substitute(f("forall y. P(x,y)", {"x"}), {{"x", Term::var("y")}});
    REQUIRE(s.kind() == Formula::Kind::Forall);
    CHECK(s.variable() != "y");
    CHECK(free_vars(s) == std::set<std::string>{"y"});
    CHECK(s.body().terms()[0].name == "y");
    CHECK(s.body().terms()[1].name == s.variable());

    Formula xi = substitute(f("P(x,v)", {"x", "v"}), {{"v", Term::var("x1")}});
    CHECK(format_formula(xi) == "P(x,x1)");
}

TEST_CASE("negation normal form") {
    CHECK(to_nnf(f("!(Q(x) & Q(y))", {"x", "y"})) == f("!Q(x) | !Q(y)", {"x", "y"}));
    CHECK(to_nnf(f("!forall x. Q(x)")) == f("exists x. !Q(x)"));
    Formula iff = to_nnf(f("Q(x) <-> Q(y)", {"x", "y"}));
    Formula closed_a = Formula::forall("x", Formula::forall("y", iff));
    Formula closed_b = Formula::forall("x", Formula::forall("y", f("(!Q(x) | Q(y)) & (!Q(y) | Q(x))", {"x", "y"})));
    CHECK(agree_up_to(closed_a, closed_b, pq(), 3));
}

TEST_CASE("prenex CNF") {
    PrenexForm pf = to_pcnf(f("exists x. forall y. P(x,y) -> Q(y)"));
    REQUIRE(pf.prefix.size() == 2);
    CHECK(pf.prefix[0] == QuantifiedVar{Quantifier::Exists, "x"});
    CHECK(pf.prefix[1] == QuantifiedVar{Quantifier::Forall, "y"});
    REQUIRE(pf.matrix.size() == 1);
    CHECK(pf.matrix[0].size() == 2);
    CHECK(format_prenex(pf) == "exists x. forall y. !P(x,y) | Q(y)");

    // left-to-right pull order
    PrenexForm two = to_pcnf(f("(forall x. Q(x)) & (exists y. Q(y))"));
    REQUIRE(two.prefix.size() == 2);
    CHECK(two.prefix[0] == QuantifiedVar{Quantifier::Forall, "x"});
    CHECK(two.prefix[1] == QuantifiedVar{Quantifier::Exists, "y"});
    CHECK(two.matrix.size() == 2);

    // fixed point
    PrenexForm again = to_pcnf(to_formula(pf));
    CHECK(again == pf);
}

TEST_CASE("prenex CNF preserves meaning") {
    const char* items[] = {
        "exists x. forall y. P(x,y) -> Q(y)",
        "(forall x. Q(x)) & (exists y. Q(y))",
        "forall x. (exists y. P(x,y)) <-> Q(x)",
        "!(exists x. forall y. P(x,y) | Q(x))",
        "(forall x. exists y. P(x,y)) | (exists x. !Q(x))",
    };
    for (const char* t : items) {
        Formula g = f(t);
        CAPTURE(t);
        CHECK(agree_up_to(g, to_formula(to_pcnf(g)), pq(), 2));
    }
}

TEST_CASE("clashing binders are renamed apart") {
    PrenexForm pf = to_pcnf(f("(forall x. Q(x)) & (forall x. exists y. P(x,y))"));
    std::set<std::string> names;
    for (const auto& q : pf.prefix) CHECK(names.insert(q.name).second);
}

TEST_CASE("normalization cap") {
    NormalizeOptions o;
    o.clause_cap = 4;
    Formula big = f("(Q(a1) & Q(b1)) | (Q(a2) & Q(b2)) | (Q(a3) & Q(b3))", {"a1", "b1", "a2", "b2", "a3", "b3"});
    CHECK_THROWS_AS(to_pcnf(big, o), CapExceeded);
    CHECK(to_pcnf(big).matrix.size() == 8);
}

TEST_CASE("prenex form queries") {
    PrenexForm pf = pcnf_of("vocab P/2; exists a b. forall x. exists y. forall z. P(a,x) | P(y,z);");
    CHECK(pf.leftmost_existentials() == std::vector<std::string>{"a", "b"});
    CHECK(pf.inner_existentials() == std::vector<std::string>{"y"});
    CHECK(pf.universals() == std::vector<std::string>{"x", "z"});
    CHECK(pf.count_existentials() == 3);
    CHECK_FALSE(pf.is_bsr());
    CHECK(pcnf_of("vocab P/2; exists x. forall y. P(x,y);").is_bsr());
    CHECK(pcnf_of("vocab Q/1; exists x. Q(x) & !Q(x);").matrix.size() == 2);
    CHECK(pcnf_of("false;").is_contradiction());
}

TEST_CASE("well-formedness") {
    Vocabulary v = pq();
    CHECK_THROWS_AS(check_well_formed(Formula::atom("P", {Term::var("x")}), v, {"x"}), PreconditionError);
    CHECK_THROWS_AS(check_well_formed(Formula::atom("R", {Term::var("x")}), v, {"x"}), PreconditionError);
    CHECK_THROWS_AS(check_well_formed(Formula::atom("Q", {Term::var("x")}), v), PreconditionError);
    CHECK_NOTHROW(check_well_formed(Formula::atom("Q", {Term::var("x")}), v, {"x"}));
}
