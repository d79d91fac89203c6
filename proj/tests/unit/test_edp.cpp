#include "../support/corpus.hpp"
#include "common.hpp"

using namespace ebs;
using namespace ebs::testing;

namespace {

using Names = std::vector<std::string>;

const Instance& instance_of(const Classification& c, const std::string& pred, std::size_t nth) {
    std::size_t seen = 0;
    for (const auto& in : c.instances)
        if (in.predicate == pred && seen++ == nth) return in;
    throw std::out_of_range(pred);
}

std::size_t index_of(const Classification& c, const Instance& in) {
    return static_cast<std::size_t>(&in - c.instances.data());
}

bool member(const std::string& name, const std::set<std::string>& sigma, EdpVariant v = EdpVariant::Base) {
    Problem p = load(entry(name));
    return edp_check(to_pcnf(p.sentence()), p.vocabulary, sigma, v).member;
}

}  // namespace

TEST_CASE("classification of the three-predicate example") {
    Classification c = classify_text(entry("example_a").text);
    CHECK(c.leftmost == Names{"y", "u"});
    CHECK(c.universal == Names{"v"});
    CHECK(c.inner == Names{"w"});
    CHECK(c.predicate_class.at("P") == SymbolClass::Free);
    CHECK(c.predicate_class.at("Q") == SymbolClass::Universal);
    CHECK(c.predicate_class.at("R") == SymbolClass::Existential);

    const Instance& p1 = instance_of(c, "P", 0);
    CHECK(p1.free_support == std::set<std::string>{"y"});
    CHECK(p1.universal_support.empty());
    const Instance& p2 = instance_of(c, "P", 1);
    CHECK(p2.free_support == std::set<std::string>{"y", "u"});
    CHECK(instance_of(c, "Q", 0).cls == SymbolClass::Free);
    CHECK(instance_of(c, "Q", 1).cls == SymbolClass::Universal);
    const Instance& r1 = instance_of(c, "R", 0);
    const Instance& r2 = instance_of(c, "R", 1);
    CHECK(r1.cls == SymbolClass::Universal);
    CHECK(r2.cls == SymbolClass::Existential);
    CHECK(r1.positive);
    CHECK_FALSE(r2.positive);
    CHECK(c.pairwise_distinguishable(index_of(c, r1), index_of(c, r2), "w"));
    CHECK_FALSE(c.pairwise_distinguishable(index_of(c, r1), index_of(c, r2), "v"));
    CHECK(c.free_predicates == std::set<std::string>{"P"});
    CHECK(c.universal_predicates == std::set<std::string>{"Q"});
}

TEST_CASE("mixed clause form of the three-predicate example") {
    // & inside the second clause is split by normalization; the roles are unchanged
    Classification c = classify_text(
        "vocab P/2, Q/2, R/2;\n"
        "exists y u. forall v. exists w. (P(y,y) | !Q(u,y) | R(y,v)) & (Q(v,u) | P(y,u) & !R(w,v));");
    CHECK(c.form.matrix.size() == 3);
    CHECK(c.predicate_class.at("P") == SymbolClass::Free);
    CHECK(c.predicate_class.at("Q") == SymbolClass::Universal);
    CHECK(c.predicate_class.at("R") == SymbolClass::Existential);
    CHECK(edp_check(c, {}).member);
}

TEST_CASE("classification corner cases") {
    Classification c = classify_text("vocab P/2; forall x. P(x,x);");
    CHECK(c.leftmost.empty());
    CHECK(c.inner.empty());
    CHECK(c.universal == Names{"x"});
    CHECK(c.predicate_class.at("P") == SymbolClass::Universal);

    Classification e = classify_text(entry("example_c").text);
    CHECK(e.unary_inner == Names{"v"});
    CHECK(e.non_unary_inner.empty());
    CHECK(e.unary == std::set<std::string>{"Q"});

    Classification unused = classify_text("vocab P/2, S/1; forall x. exists y. P(x,y);");
    CHECK(unused.predicate_class.at("S") == SymbolClass::Free);

    Classification eq = classify_text("vocab P/2; exists x. forall z. !P(x,z) | z = x;");
    CHECK(eq.predicate_class.at("=") == SymbolClass::Universal);
}

TEST_CASE("membership of the worked examples") {
    CHECK(member("example_b", {}));
    CHECK(member("example_b", {"R"}));
    CHECK_FALSE(member("example_b", {"P"}));
    CHECK_FALSE(member("example_b", {"P", "R"}));
    CHECK(member("example_c", {"Q"}));
    CHECK_FALSE(member("example_c", {"P", "Q"}));
    CHECK(member("serial", {}));
    CHECK_FALSE(member("serial", {"P"}));
    CHECK_FALSE(member("negation_closure", {}));
}

TEST_CASE("failure diagnostics name the condition") {
    Problem p = load(entry("negation_closure"));
    EdpCheckResult r = edp_check(to_pcnf(p.sentence()), p.vocabulary, {});
    CHECK_FALSE(r.member);
    REQUIRE_FALSE(r.diagnostics.empty());
    CHECK(r.diagnostics[0].find("P") != std::string::npos);
}

TEST_CASE("corpus membership claims") {
    for (const auto& e : corpus()) {
        if (!e.sigma) continue;
        CAPTURE(e.name);
        Problem p = load(e);
        CHECK(edp_check(to_pcnf(p.sentence()), p.vocabulary, sigma_of(e, p.vocabulary)).member);
    }
}

TEST_CASE("simple sigma") {
    CHECK(edp_simple_sigma(classify_text("vocab P/2; forall x. exists y. P(x,y);")) == std::set<std::string>{});
    CHECK(edp_simple_sigma(classify_text("vocab P/2, Q/1; exists x. forall y. P(x,y) | Q(y);")) ==
          std::set<std::string>{"P", "Q"});
    CHECK_FALSE(edp_simple_sigma(classify_text(entry("negation_closure").text)).has_value());
    auto s = edp_simple_sigma(classify_text(entry("example_c").text));
    REQUIRE(s.has_value());
    CHECK(edp_check(classify_text(entry("example_c").text), *s).member);
}

TEST_CASE("base bounds") {
    CHECK(edp_bound(classify_text(entry("example_c").text)).bound == 3);
    CHECK(edp_bound(classify_text(entry("example_b").text)).bound == 4);
    BoundReport s = edp_bound(classify_text(entry("serial").text));
    CHECK(s.bound == 2);
    CHECK(s.terms.at("V") == 0);
    CHECK(s.terms.at("EUbar") == 1);
    CHECK(s.terms.at("2^k") == 1);
    CHECK(edp_bound(classify_text(entry("example_a").text)).bound == 4);
    CHECK_THROWS_AS(edp_bound(classify_text(entry("negation_closure").text)), PreconditionError);
}

TEST_CASE("variant acceptance") {
    CHECK_FALSE(member("eq_free_eu", {}));
    CHECK(member("eq_free_eu", {}, EdpVariant::EqFreeEU));
    CHECK(member("eq_free_eu", {}, EdpVariant::EqEUEU));
    CHECK_FALSE(member("eq_eu_eu", {}, EdpVariant::EqFreeEU));
    CHECK(member("eq_eu_eu", {}, EdpVariant::EqEUEU));
    CHECK_FALSE(member("relaxed_pair", {}));
    CHECK(member("relaxed_pair", {}, EdpVariant::RelaxedDistinguishability));
    CHECK(member("monadic_eq", {}, EdpVariant::Lowenheim));
    CHECK(member("monadic_eq", {}, EdpVariant::LowenheimEqEU));
    CHECK_FALSE(member("monadic_eq", {}, EdpVariant::LowenheimEq));
    CHECK_FALSE(member("serial", {}, EdpVariant::Lowenheim));
    CHECK(variant_from_name("eq-free-EU") == EdpVariant::EqFreeEU);
    for (auto v : all_variants()) CHECK(variant_from_name(variant_name(v)) == v);
    CHECK_FALSE(variant_from_name("nope").has_value());
}

TEST_CASE("experimental variant has no bound") {
    Classification c = classify_text(entry("serial").text);
    CHECK_THROWS_AS(edp_bound(c, EdpVariant::CombinedExperimental), PreconditionError);
}

TEST_CASE("combinations") {
    Problem p = problem("vocab Q/1, P/1; forall x. Q(x) | P(x);");
    Problem q = problem("vocab Q/1, P/1; exists x. Q(x);");
    std::set<std::string> all{"P", "Q"};
    Combined a = combine_and(p.sentence(), 2, all, q.sentence(), 3, all, p.vocabulary);
    CHECK(a.bound.bound == 5);
    CHECK(a.sigma == all);
    CHECK_THROWS_AS(combine_and(p.sentence(), 2, {"P"}, q.sentence(), 3, all, p.vocabulary), PreconditionError);
    Combined o = combine_or(p.sentence(), 2, {"P"}, q.sentence(), 3, all, p.vocabulary);
    CHECK(o.bound.bound == 3);
    CHECK(o.sigma == std::set<std::string>{"P"});
    Combined same = combine_or(p.sentence(), 4, all, p.sentence(), 4, all, p.vocabulary);
    CHECK(same.bound.bound == 4);
    CHECK(agree_up_to(same.formula, p.sentence(), p.vocabulary, 3));
}
