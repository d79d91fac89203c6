#include "corpus.hpp"

#include <stdexcept>

namespace ebs::testing {

const std::vector<Entry>& corpus() {
    static const std::vector<Entry> entries = {
        {"serial", "vocab P/2;\nforall x. exists y. P(x,y);", "", 4, true},
        {"example_a",
         "vocab P/2, Q/2, R/2;\n"
         "exists y u. forall v. exists w. (P(y,y) | !Q(u,y) | R(y,v)) & (Q(v,u) | P(y,u) | !R(w,v));",
         "P,Q", 2, false},
        {"example_b",
         "vocab P/2, R/2;\n"
         "exists x y. forall z. exists v. (P(x,z) | R(y,z)) & (!P(v,y) | P(z,y)) & (!R(x,z) | z = x);",
         "R", 3, false},
        {"example_c", "vocab P/2, Q/1;\nexists x. forall z. exists v. (P(v,z) | Q(z)) & (P(x,v) | !Q(v));", "Q", 4,
         true},
        {"mono_q", "vocab Q/1;\nforall x. exists y. Q(y) | !Q(x);", "Q", 5, true},
        {"mono_qs", "vocab Q/1, S/1;\nexists x. forall y. exists z. Q(x) & (!Q(y) | S(z)) & (!S(z) | Q(z) | y = x);",
         "Q,S", 5, false},
        {"off_diagonal", "vocab P/2;\n(forall x. exists y. P(x,y)) & (forall x y. x = y | P(x,y));", "", 5, true},
        {"off_diagonal_q",
         "vocab P/2, Q/1;\n(forall x. exists y. P(x,y) & Q(y)) & (forall x y. x = y | P(x,y));", "Q", 5, true},
        {"const_step", "vocab P/2;\nconst c;\nforall x. exists y. P(x,y) & !P(y,c);", "", 3, true},
        {"mono_const",
         "vocab Q/1, S/1;\nconst c;\n"
         "Q(c) & (forall x. exists y. !Q(x) | S(y)) & (forall x. !S(x) | !Q(x));",
         "Q,S", 5, false},
        {"bsr_loop", "vocab P/2;\nexists x. forall y. P(x,y) | !P(y,y);", "*", 4, true},
        {"bsr_split", "vocab Q/1, S/1;\nexists x y. forall z. Q(x) & !Q(y) & (Q(z) | S(z));", "*", 5, true},
        {"bsr_source_sink", "vocab P/2;\nexists x y. forall z. P(x,z) & !P(z,y);", "*", 4, true},
        {"bsr_two_or_q", "vocab Q/1;\nexists x y. forall z. x != y & (z = x | z = y | Q(z));", "*", 5, true},
        {"symmetric", "vocab P/2;\nforall x y. P(x,y) | !P(y,x);", "*", 4, true},
        {"contradiction", "vocab Q/1;\nexists x. Q(x) & !Q(x);", "*", 5, true},
        {"tautology", "vocab Q/1;\nforall x. Q(x) | !Q(x);", "*", 5, true},
        {"two_clause",
         "vocab P/2, Q/1;\nforall x. exists y z. (P(x,y) | Q(x)) & (!P(z,z) | !Q(x));", "Q", 3, false},
        {"eq_free_eu", "vocab Q/1;\nconst c;\nforall x. exists y. Q(y) & (y != c | Q(x));", std::nullopt, 0, false},
        {"eq_eu_eu", "vocab Q/1;\nforall x. exists y z. Q(y) & !Q(z) & (y != z | Q(x));", std::nullopt, 0, false},
        {"relaxed_pair", "vocab P/2, Q/1;\nforall x. exists y z. (P(x,y) | Q(y)) & (!P(z,z) | Q(z));", std::nullopt, 0,
         false},
        {"monadic_eq",
         "vocab Q/1, S/1;\nforall x. exists y z. (Q(y) <-> !Q(x)) & S(z) & y != z;", std::nullopt, 0, false},
        {"negation_closure", "vocab P/2;\nforall x. exists y. !P(x,y) & P(y,y);", std::nullopt, 0, false},
        {"dag",
         "vocab R/2;\n(forall x. !R(x,x)) & (forall x y z. R(x,y) & R(y,z) -> R(x,z)) & (forall x. exists y. R(x,y));",
         std::nullopt, 0, false},
        {"functional", "vocab P/2;\n(forall x. exists y. P(x,y)) & (forall x y z. !P(x,y) | !P(x,z) | y = z);",
         std::nullopt, 0, false},
    };
    return entries;
}

const Entry& entry(const std::string& name) {
    for (const auto& e : corpus())
        if (e.name == name) return e;
    throw std::out_of_range("no corpus entry " + name);
}

Problem load(const Entry& e) { return parse_problem(e.text); }

std::set<std::string> sigma_of(const Entry& e, const Vocabulary& vocab) {
    if (!e.sigma) return {};
    if (*e.sigma == "*") return vocab.predicate_names();
    auto names = parse_name_list(*e.sigma);
    return {names.begin(), names.end()};
}

const std::vector<std::string>& bsr_sentences() {
    static const std::vector<std::string> items = {
        "vocab P/2;\nexists x. forall y. P(x,y) | !P(y,y);",
        "vocab Q/1, S/1;\nexists x y. forall z. Q(x) & !Q(y) & (Q(z) | S(z));",
        "vocab P/2;\nexists x y. forall z. P(x,z) & !P(z,y);",
        "vocab Q/1;\nexists x y. forall z. x != y & (z = x | z = y | Q(z));",
        "vocab P/2;\nforall x y. P(x,y) | !P(y,x);",
        "vocab Q/1;\nexists x. Q(x) & !Q(x);",
        "exists x1 x2. x1 != x2;",
        "vocab P/1;\nexists x. forall y. P(x) | !P(y);",
        "vocab Q/1;\n(exists x. !Q(x)) & (forall y. Q(y));",
        "vocab Q/1;\nexists x y. forall z. x != y & Q(x) & !Q(y) & (z = x | z = y) & Q(z);",
        "vocab P/2, Q/1;\nexists x. forall y z. (P(x,y) | Q(y)) & (!P(y,z) | !Q(z) | y = z);",
    };
    return items;
}

}  // namespace ebs::testing
