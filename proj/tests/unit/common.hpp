#pragma once

#include <string>

#include "doctest.h"
#include "ebs/analysis.hpp"
#include "ebs/edp.hpp"
#include "ebs/error.hpp"
#include "ebs/formula.hpp"
#include "ebs/parser.hpp"
#include "ebs/structure.hpp"

namespace ebs::testing {

inline Problem problem(const std::string& text) { return parse_problem(text); }
inline PrenexForm pcnf_of(const std::string& text) { return to_pcnf(parse_problem(text).sentence()); }
inline Classification classify_text(const std::string& text) {
    Problem p = parse_problem(text);
    return classify(to_pcnf(p.sentence()), p.vocabulary);
}

/// Every structure of size <= n_max agrees on f and g.
inline bool agree_up_to(const Formula& f, const Formula& g, const Vocabulary& vocab, int n_max) {
    for (int n = 1; n <= n_max; ++n) {
        StructureEnumerator it(vocab, n);
        FiniteStructure m = it.make();
        while (it.next(m))
            if (evaluate(m, f) != evaluate(m, g)) return false;
    }
    return true;
}

}  // namespace ebs::testing
