#include "random.hpp"

#include <algorithm>

namespace ebs::testing {

Vocabulary random_vocabulary() {
    Vocabulary v;
    v.add_predicate("P", 2);
    v.add_predicate("R", 2);
    v.add_predicate("Q", 1);
    v.add_predicate("S", 1);
    v.add_constant("c");
    return v;
}

PrenexForm random_pcnf(std::mt19937& rng) {
    auto pick = [&](int n) { return static_cast<int>(rng() % static_cast<unsigned>(n)); };
    PrenexForm pf;
    int nv = 1 + pick(4);
    for (int i = 0; i < nv; ++i)
        pf.prefix.push_back({pick(2) ? Quantifier::Forall : Quantifier::Exists, "v" + std::to_string(i)});
    auto term = [&]() {
        if (pick(8) == 0) return Term::constant("c");
        return Term::var("v" + std::to_string(pick(nv)));
    };
    static const char* preds[] = {"P", "R", "Q", "S"};
    int nc = 1 + pick(3);
    for (int c = 0; c < nc; ++c) {
        Clause cl;
        int nl = 1 + pick(3);
        for (int l = 0; l < nl; ++l) {
            Literal lit;
            lit.positive = pick(2) == 0;
            if (pick(7) == 0) {
                lit.atom = {"=", {term(), term()}};
            } else {
                int p = pick(4);
                lit.atom.predicate = preds[p];
                lit.atom.args.push_back(term());
                if (p < 2) lit.atom.args.push_back(term());
            }
            if (std::find(cl.begin(), cl.end(), lit) == cl.end()) cl.push_back(lit);
        }
        pf.matrix.push_back(cl);
    }
    return pf;
}

}  // namespace ebs::testing
