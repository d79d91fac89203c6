#include "../support/corpus.hpp"
#include "common.hpp"

using namespace ebs;
using namespace ebs::testing;

TEST_CASE("parse basics") {
    Problem p = problem("vocab P/2;\nforall x. exists y. P(x,y);");
    CHECK(p.vocabulary.arity("P") == 2);
    CHECK(format_formula(p.sentence()) == "forall x. exists y. P(x,y)");

    Problem q = problem("vocab Q/1; exists x. Q(x) & !Q(x);");
    const Formula& s = q.sentence();
    REQUIRE(s.kind() == Formula::Kind::Exists);
    CHECK(s.body().kind() == Formula::Kind::And);
}

TEST_CASE("precedence and associativity") {
    Vocabulary v;
    for (const char* n : {"A", "B", "C"}) v.add_predicate(n, 0);
    CHECK(parse_formula("A | B & C", v) == Formula::disj({Formula::atom("A", {}), Formula::conj({Formula::atom("B", {}), Formula::atom("C", {})})}));
    Formula imp = parse_formula("A -> B -> C", v);
    REQUIRE(imp.kind() == Formula::Kind::Implies);
    CHECK(imp.children()[1].kind() == Formula::Kind::Implies);
    Formula neg = parse_formula("!A & B", v);
    CHECK(neg.kind() == Formula::Kind::And);
    Formula iff = parse_formula("A -> B <-> C", v);
    CHECK(iff.kind() == Formula::Kind::Iff);
}

TEST_CASE("quantifier scope extends right") {
    Vocabulary v;
    v.add_predicate("Q", 1);
    Formula g = parse_formula("forall x. Q(x) | Q(x)", v);
    REQUIRE(g.kind() == Formula::Kind::Forall);
    CHECK(g.body().kind() == Formula::Kind::Or);
}

TEST_CASE("parse errors carry positions") {
    try {
        parse_problem("vocab P/2;\nP(x);");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 2);
        CHECK(e.column() >= 1);
    }
    CHECK_THROWS_AS(parse_problem("forall x. R(x);"), ParseError);
    CHECK_THROWS_AS(parse_problem("vocab P/2; forall x. P(x,"), ParseError);
}

TEST_CASE("directives and constants") {
    Problem p = problem("# comment\r\nvocab Q/1;\r\nconst c, d;\r\n@sigma Q;\r\n@bound 3;\r\nQ(c) | Q(d);\r\n");
    CHECK(p.vocabulary.constants() == std::vector<std::string>{"c", "d"});
    CHECK(p.directive("sigma") == std::optional<std::string>("Q"));
    CHECK(p.directive("bound") == std::optional<std::string>("3"));
    CHECK(parse_name_list("P, Q ,R") == std::vector<std::string>{"P", "Q", "R"});
}

TEST_CASE("declared free variables") {
    Problem p = problem("vocab P/2;\n@free x;\nexists y. P(x,y);");
    CHECK(p.declared_free == std::vector<std::string>{"x"});
    CHECK_THROWS(problem("vocab P/2;\nexists y. P(x,y);"));
}

TEST_CASE("render round-trips the corpus") {
    for (const auto& e : corpus()) {
        CAPTURE(e.name);
        Problem p = load(e);
        Problem back = parse_problem(render(p));
        CHECK(back == p);
    }
    Problem d = problem("vocab Q/1;\n@sigma Q;\n@bound 2;\nforall x. Q(x);");
    CHECK(parse_problem(render(d)) == d);
}

TEST_CASE("fully parenthesized text parses") {
    Problem p = problem("vocab P/2, Q/1;\n(forall x. ((exists y. (P(x,y))) & (!(Q(x)))));");
    CHECK(p.sentence().kind() == Formula::Kind::Forall);
}
