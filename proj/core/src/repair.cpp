// Small-model repair: core selection and the extension M2 -> M2'.

#include <algorithm>
#include <set>

#include "compiled.hpp"
#include "ebs/edp.hpp"
#include "ebs/error.hpp"

namespace ebs {

namespace {

std::vector<int> initial_values(const detail::CompiledPrenex& cp, const PrenexForm& pf, const Assignment& free) {
    std::vector<int> values(static_cast<std::size_t>(cp.slot_count()), 0);
    for (const auto& v : pf.free_vars) {
        auto it = free.find(v);
        if (it == free.end()) throw PreconditionError("no value for free variable " + v);
        values[static_cast<std::size_t>(cp.slot(v))] = it->second;
    }
    return values;
}

// Walks the prefix from `depth`, taking universals from `z` and choosing for each ∃ the
// least element for which the remaining suffix still holds.
void skolem_walk(const detail::CompiledPrenex& cp, const PrenexForm& pf, const FiniteStructure& m,
                 std::vector<int>& values, std::size_t depth, const std::vector<int>& z) {
    std::size_t zi = 0;
    for (std::size_t d = depth; d < pf.prefix.size(); ++d) {
        if (pf.prefix[d].quantifier == Quantifier::Forall) {
            values[d] = z.at(zi++);
            continue;
        }
        bool found = false;
        for (int e = 0; e < m.size() && !found; ++e) {
            values[d] = e;
            std::vector<int> probe = values;
            found = cp.holds_from(d + 1, m, probe);
        }
        if (!found) throw InternalError("no witness for " + pf.prefix[d].name + ": structure is not a model");
    }
}

}  // namespace

std::optional<std::map<std::string, int>> leftmost_witness(const PrenexForm& pf, const FiniteStructure& m,
                                                           const Assignment& free) {
    detail::CompiledPrenex cp(pf, m.vocabulary());
    std::vector<int> values = initial_values(cp, pf, free);
    std::vector<int> probe = values;
    if (!cp.holds_from(0, m, probe)) return std::nullopt;

    std::map<std::string, int> out;
    for (const auto& v : pf.free_vars) out[v] = values[static_cast<std::size_t>(cp.slot(v))];
    std::size_t d = 0;
    for (; d < pf.prefix.size() && pf.prefix[d].quantifier == Quantifier::Exists; ++d) {
        bool found = false;
        for (int e = 0; e < m.size() && !found; ++e) {
            values[d] = e;
            probe = values;
            found = cp.holds_from(d + 1, m, probe);
        }
        if (!found) throw InternalError("witness search lost the model");
        out[pf.prefix[d].name] = values[d];
    }
    return out;
}

CoreSelection edp_core(const PrenexForm& pf, const std::set<std::string>& sigma, const FiniteStructure& m,
                       const std::optional<std::map<std::string, int>>& witness) {
    (void)sigma;
    Classification c = classify(pf, m.vocabulary());
    CoreSelection core;
    if (witness) {
        core.witness = *witness;
    } else {
        if (!pf.free_vars.empty()) throw PreconditionError("free variables need an explicit witness");
        auto w = leftmost_witness(pf, m);
        if (!w) throw PreconditionError("structure is not a model of the sentence");
        core.witness = *w;
    }
    for (const auto& v : c.leftmost)
        if (!core.witness.count(v)) throw PreconditionError("witness lacks " + v);
    for (const auto& v : c.free_variables)
        if (!core.witness.count(v)) throw PreconditionError("witness lacks free variable " + v);

    std::set<int> free_vals(m.constant_values().begin(), m.constant_values().end());
    for (const auto& [v, e] : core.witness) free_vals.insert(e);
    core.free_values.assign(free_vals.begin(), free_vals.end());

    std::set<int> taken = free_vals;
    if (!c.unary_inner.empty()) {
        for (int e = 0; e < m.size(); ++e) {
            if (free_vals.count(e)) continue;
            auto col = m.colour(e);
            if (!core.representative.count(col)) {
                core.representative[col] = e;
                taken.insert(e);
            }
        }
    }
    for (const auto& v : c.non_unary_inner) {
        int pick = -1;
        for (int e = 0; e < m.size(); ++e)
            if (!taken.count(e)) {
                pick = e;
                break;
            }
        if (pick < 0) {
            core.degenerate = true;
            core.fresh.clear();
            core.subset.clear();
            for (int e = 0; e < m.size(); ++e) core.subset.push_back(e);
            return core;
        }
        core.fresh[v] = pick;
        taken.insert(pick);
    }
    core.subset.assign(taken.begin(), taken.end());
    return core;
}

FiniteStructure edp_extend(const PrenexForm& pf, const std::set<std::string>& sigma, const FiniteStructure& m,
                           const CoreSelection& core, const std::vector<int>& mid_in, RepairStats* stats) {
    std::vector<int> mid = mid_in;
    std::sort(mid.begin(), mid.end());
    mid.erase(std::unique(mid.begin(), mid.end()), mid.end());
    for (int e : core.subset)
        if (!std::binary_search(mid.begin(), mid.end(), e))
            throw PreconditionError("intermediate universe must contain the core");

    Substructure base = generated_substructure(m, mid);
    if (core.degenerate) return base.structure;

    const Vocabulary& vocab = m.vocabulary();
    Classification c = classify(pf, vocab);
    for (const auto& s : sigma) {
        auto it = c.predicate_class.find(s);
        if (it != c.predicate_class.end() && it->second == SymbolClass::Existential && vocab.arity(s) != 1)
            throw PreconditionError("sigma contains existential predicate " + s);
    }

    detail::CompiledPrenex cp(pf, vocab);
    const auto& compiled = cp.clauses();
    std::vector<int> relabel(static_cast<std::size_t>(m.size()), -1);
    for (std::size_t i = 0; i < mid.size(); ++i) relabel[static_cast<std::size_t>(mid[i])] = static_cast<int>(i);
    const int k = static_cast<int>(mid.size());

    std::vector<int> values = initial_values(cp, pf, core.witness);
    std::size_t lead = c.leftmost.size();
    for (std::size_t d = 0; d < lead; ++d) values[d] = core.witness.at(pf.prefix[d].name);

    // 0 = untouched, 1 = true, 2 = false, 3 = conflicting
    std::vector<std::vector<std::uint8_t>> state(vocab.predicates().size());
    for (std::size_t p = 0; p < state.size(); ++p) state[p].assign(base.structure.tuple_count(p), 0);
    struct Sources {
        std::set<std::size_t> pos, neg;
    };
    std::map<std::pair<std::size_t, std::size_t>, Sources> sources;

    std::vector<bool> forced_pred(vocab.predicates().size(), false);
    for (std::size_t p = 0; p < vocab.predicates().size(); ++p) {
        const auto& d = vocab.predicates()[p];
        auto it = c.predicate_class.find(d.name);
        forced_pred[p] = d.arity >= 2 && it != c.predicate_class.end() && it->second == SymbolClass::Existential;
    }

    const std::size_t nu = c.universal.size();
    std::vector<int> zdig(nu, 0);
    std::vector<int> z(nu, 0);
    std::vector<int> m3(values.size(), 0);
    RepairStats local;
    while (true) {
        for (std::size_t i = 0; i < nu; ++i) z[i] = mid[static_cast<std::size_t>(zdig[i])];
        std::vector<int> mv = values;
        skolem_walk(cp, pf, m, mv, lead, z);
        ++local.assignments;

        m3 = mv;
        for (const auto& v : c.non_unary_inner) m3[static_cast<std::size_t>(cp.slot(v))] = core.fresh.at(v);
        for (const auto& v : c.unary_inner) {
            auto s = static_cast<std::size_t>(cp.slot(v));
            int d = mv[s];
            if (!std::binary_search(core.free_values.begin(), core.free_values.end(), d))
                m3[s] = core.representative.at(m.colour(d));
        }

        for (std::size_t ci = 0; ci < compiled.size(); ++ci) {
            for (const auto& lit : compiled[ci]) {
                if (lit.pred < 0 || lit.args.empty()) continue;
                auto p = static_cast<std::size_t>(lit.pred);
                std::size_t src = 0;
                std::size_t dst = 0;
                for (int a : lit.args) {
                    int em = a >= 0 ? mv[static_cast<std::size_t>(a)] : m.constant(static_cast<std::size_t>(-a - 1));
                    int e3 = a >= 0 ? m3[static_cast<std::size_t>(a)] : m.constant(static_cast<std::size_t>(-a - 1));
                    int r = relabel[static_cast<std::size_t>(e3)];
                    if (r < 0) throw InternalError("selected element outside the intermediate universe");
                    src = src * static_cast<std::size_t>(m.size()) + static_cast<std::size_t>(em);
                    dst = dst * static_cast<std::size_t>(k) + static_cast<std::size_t>(r);
                }
                bool value;
                if (forced_pred[p]) {
                    value = lit.positive;
                    auto& s = sources[{p, dst}];
                    (lit.positive ? s.pos : s.neg).insert(ci);
                    ++local.forced;
                } else {
                    value = m.holds(p, src);
                }
                std::uint8_t want = value ? 1 : 2;
                auto& cell = state[p][dst];
                if (cell == 0) cell = want;
                else if (cell != want) cell = 3;
            }
        }

        std::size_t i = 0;
        while (i < nu && ++zdig[nu - 1 - i] == k) zdig[nu - 1 - i++] = 0;
        if (i == nu) break;
    }

    FiniteStructure out = base.structure;
    for (std::size_t p = 0; p < state.size(); ++p) {
        for (std::size_t idx = 0; idx < state[p].size(); ++idx) {
            std::uint8_t cell = state[p][idx];
            if (cell == 0) continue;
            if (cell != 3) {
                out.set(p, idx, cell == 1);
                continue;
            }
            const std::string& name = vocab.predicates()[p].name;
            if (!forced_pred[p]) throw InternalError("conflicting copied values for predicate " + name);
            const auto& s = sources.at({p, idx});
            if (s.pos.size() != 1 || s.neg.size() != 1 || *s.pos.begin() != *s.neg.begin())
                throw InternalError("cross-clause conflict on predicate " + name);
            out.set(p, idx, true);
            ++local.cured;
        }
    }
    if (stats) *stats = local;
    return out;
}

}  // namespace ebs
