// Interleaved satisfiability: finite model search against Herbrand refutation.
//
// The refutation arm Skolemizes the prenex form into a private term language (function
// symbols never leave this file), instantiates universals over ground terms of bounded
// depth, adds ground equality axioms over the terms that occur, and asks the propositional
// solver for unsatisfiability.

#include <algorithm>
#include <map>
#include <set>

#include "ebs/analysis.hpp"
#include "ebs/error.hpp"
#include "ebs/ground.hpp"

namespace ebs {

namespace {

struct FnSym {
    std::string name;
    std::vector<std::size_t> deps;  // universal positions the Skolem function depends on
};

struct TermArg {
    enum class Kind { Universal, Function } kind = Kind::Universal;
    std::size_t index = 0;  // universal position, or function symbol
};

struct TemplateLit {
    bool positive = true;
    std::string predicate;
    std::vector<TermArg> args;
};

class TermBank {
public:
    int intern(int fn, std::vector<int> args) {
        auto key = std::make_pair(fn, args);
        auto it = ids_.find(key);
        if (it != ids_.end()) return it->second;
        int id = static_cast<int>(terms_.size());
        terms_.push_back(key);
        ids_.emplace(std::move(key), id);
        return id;
    }
    int fn(int t) const { return terms_[static_cast<std::size_t>(t)].first; }
    const std::vector<int>& args(int t) const { return terms_[static_cast<std::size_t>(t)].second; }

private:
    std::vector<std::pair<int, std::vector<int>>> terms_;
    std::map<std::pair<int, std::vector<int>>, int> ids_;
};

class Refuter {
public:
    Refuter(const PrenexForm& pf, const Vocabulary& vocab) {
        std::map<std::string, std::size_t> universal_pos;
        std::map<std::string, std::size_t> skolem_of;
        for (const auto& c : vocab.constants()) {
            skolem_of[c] = fns_.size();
            fns_.push_back({c, {}});
        }
        for (const auto& q : pf.prefix) {
            if (q.quantifier == Quantifier::Forall) {
                universal_pos[q.name] = universal_count_++;
            } else {
                FnSym f{"sk_" + q.name, {}};
                for (std::size_t i = 0; i < universal_count_; ++i) f.deps.push_back(i);
                skolem_of[q.name] = fns_.size();
                fns_.push_back(std::move(f));
            }
        }
        bool any_constant = false;
        for (const auto& f : fns_) any_constant = any_constant || f.deps.empty();
        if (!any_constant) fns_.push_back({"c0", {}});

        for (const auto& cl : pf.matrix) {
            std::vector<TemplateLit> out;
            for (const auto& l : cl) {
                TemplateLit t{l.positive, l.atom.predicate, {}};
                if (l.atom.is_equality()) uses_eq_ = true;
                for (const auto& a : l.atom.args) {
                    auto u = universal_pos.find(a.name);
                    if (a.is_variable() && u != universal_pos.end()) {
                        t.args.push_back({TermArg::Kind::Universal, u->second});
                    } else {
                        auto s = skolem_of.find(a.name);
                        if (s == skolem_of.end()) throw PreconditionError("refutation needs a sentence");
                        t.args.push_back({TermArg::Kind::Function, s->second});
                    }
                }
                out.push_back(std::move(t));
            }
            clauses_.push_back(std::move(out));
        }
    }

    /// Ground instances over terms of depth <= d. Returns true when refuted; `steps` is
    /// charged with clauses produced and solver conflicts. Throws CapExceeded past `limit`.
    bool refute(int depth, std::uint64_t& steps, std::uint64_t limit, const SearchOptions& options,
                std::uint64_t& clause_count) {
        TermBank bank;
        std::vector<int> universe;
        for (std::size_t f = 0; f < fns_.size(); ++f)
            if (fns_[f].deps.empty()) universe.push_back(bank.intern(static_cast<int>(f), {}));
        for (int level = 0; level < depth; ++level) {
            std::vector<int> next = universe;
            for (std::size_t f = 0; f < fns_.size(); ++f) {
                std::size_t ar = fns_[f].deps.size();
                if (ar == 0) continue;
                std::vector<std::size_t> digit(ar, 0);
                while (true) {
                    std::vector<int> args;
                    for (auto d : digit) args.push_back(universe[d]);
                    int t = bank.intern(static_cast<int>(f), args);
                    if (std::find(next.begin(), next.end(), t) == next.end()) next.push_back(t);
                    std::size_t i = ar;
                    while (i > 0 && ++digit[i - 1] == universe.size()) digit[--i] = 0;
                    if (i == 0) break;
                }
                charge(steps, 1, limit);
            }
            universe = std::move(next);
        }

        AtomTable atoms;
        GroundCnf cnf;
        std::set<int> occurring;
        auto eq_lit = [&](int a, int b, bool positive) -> std::optional<int> {
            if (a == b) return std::nullopt;  // decided: a = a
            int id = atoms.intern({"=", {std::min(a, b), std::max(a, b)}});
            return positive ? id : -id;
        };

        const std::size_t nu = universal_count_;
        std::vector<std::size_t> digit(nu, 0);
        std::vector<int> zs(nu, 0);
        while (true) {
            for (std::size_t i = 0; i < nu; ++i) zs[i] = universe[digit[i]];
            for (const auto& cl : clauses_) {
                std::vector<int> ground;
                bool satisfied = false;
                for (const auto& l : cl) {
                    std::vector<int> args;
                    for (const auto& a : l.args) {
                        if (a.kind == TermArg::Kind::Universal) {
                            args.push_back(zs[a.index]);
                        } else {
                            std::vector<int> sub;
                            for (auto d : fns_[a.index].deps) sub.push_back(zs[d]);
                            args.push_back(bank.intern(static_cast<int>(a.index), sub));
                        }
                    }
                    for (int t : args) occurring.insert(t);
                    if (l.predicate == "=") {
                        auto e = eq_lit(args[0], args[1], l.positive);
                        if (!e) {
                            if (l.positive) satisfied = true;
                            continue;
                        }
                        ground.push_back(*e);
                    } else {
                        int id = atoms.intern({l.predicate, args});
                        ground.push_back(l.positive ? id : -id);
                    }
                }
                if (satisfied) continue;
                cnf.clauses.push_back(std::move(ground));
                charge(steps, 1, limit);
            }
            std::size_t i = nu;
            while (i > 0 && ++digit[i - 1] == universe.size()) digit[--i] = 0;
            if (i == 0) break;
        }

        if (uses_eq_) add_equality_axioms(bank, atoms, cnf, occurring, steps, limit, eq_lit);

        cnf.num_vars = atoms.size();
        clause_count += cnf.clauses.size();
        SolverOptions so;
        so.learning = options.learning;
        if (limit > steps) so.conflict_limit = limit - steps;
        SolveResult r = dpll_solve(cnf, so);
        charge(steps, r.stats.conflicts, UINT64_MAX);
        if (r.status == SolveResult::Status::Unknown) throw CapExceeded("herbrand steps", steps, limit);
        return r.status == SolveResult::Status::Unsat;
    }

private:
    static void charge(std::uint64_t& steps, std::uint64_t amount, std::uint64_t limit) {
        steps += amount;
        if (steps > limit) throw CapExceeded("herbrand steps", steps, limit);
    }

    template <class EqLit>
    void add_equality_axioms(const TermBank& bank, AtomTable& atoms, GroundCnf& cnf, const std::set<int>& occurring,
                             std::uint64_t& steps, std::uint64_t limit, EqLit& eq_lit) {
        std::vector<int> ts(occurring.begin(), occurring.end());
        // transitivity
        for (int a : ts)
            for (int b : ts)
                for (int c : ts) {
                    if (a == b || b == c || a == c || a > c) continue;
                    cnf.clauses.push_back({*eq_lit(a, b, false), *eq_lit(b, c, false), *eq_lit(a, c, true)});
                    charge(steps, 1, limit);
                }
        // function congruence over occurring terms
        for (std::size_t i = 0; i < ts.size(); ++i)
            for (std::size_t j = i + 1; j < ts.size(); ++j) {
                int s = ts[i];
                int t = ts[j];
                if (bank.fn(s) != bank.fn(t) || bank.args(s).empty()) continue;
                std::vector<int> cl;
                for (std::size_t k = 0; k < bank.args(s).size(); ++k)
                    if (auto e = eq_lit(bank.args(s)[k], bank.args(t)[k], false)) cl.push_back(*e);
                cl.push_back(*eq_lit(s, t, true));
                cnf.clauses.push_back(std::move(cl));
                charge(steps, 1, limit);
            }
        // predicate congruence over atoms produced so far
        std::map<std::string, std::vector<int>> by_pred;
        for (int id = 1; id <= atoms.size(); ++id)
            if (atoms.atom(id).predicate != "=") by_pred[atoms.atom(id).predicate].push_back(id);
        for (const auto& [p, ids] : by_pred)
            for (int x : ids)
                for (int y : ids) {
                    if (x == y) continue;
                    std::vector<int> cl;
                    const auto xa = atoms.atom(x).args;
                    const auto ya = atoms.atom(y).args;
                    for (std::size_t k = 0; k < xa.size(); ++k)
                        if (auto e = eq_lit(xa[k], ya[k], false)) cl.push_back(*e);
                    cl.push_back(-x);
                    cl.push_back(y);
                    cnf.clauses.push_back(std::move(cl));
                    charge(steps, 1, limit);
                }
    }

    std::vector<FnSym> fns_;
    std::size_t universal_count_ = 0;
    std::vector<std::vector<TemplateLit>> clauses_;
    bool uses_eq_ = false;
};

}  // namespace

SatOutcome interleaved_sat(const Formula& sentence, const Vocabulary& vocab, const HerbrandBudget& budget,
                           const SearchOptions& options) {
    if (!free_vars(sentence).empty()) throw PreconditionError("interleaved search requires a sentence");
    SatOutcome out;
    PrenexForm pf = to_pcnf(sentence);
    Refuter refuter(pf, vocab);
    std::uint64_t steps = 0;
    bool refutation_live = true;
    const int rounds = std::max(budget.max_size, budget.max_depth + 1);
    for (int level = 0; level < rounds; ++level) {
        if (level + 1 <= budget.max_size) {
            ++out.effort.sizes_tried;
            auto m = find_model(sentence, vocab, level + 1, options, &out.effort);
            if (m) {
                out.verdict = SatOutcome::Verdict::Sat;
                out.model = std::move(m);
                return out;
            }
        }
        if (refutation_live && level <= budget.max_depth) {
            try {
                bool refuted = refuter.refute(level, steps, budget.max_steps, options, out.effort.herbrand_clauses);
                out.effort.ground_depth = level;
                if (refuted) {
                    out.verdict = SatOutcome::Verdict::Unsat;
                    out.note = "ground instances up to term depth " + std::to_string(level) + " are unsatisfiable";
                    return out;
                }
            } catch (const CapExceeded&) {
                refutation_live = false;
            }
        }
    }
    out.verdict = SatOutcome::Verdict::Unknown;
    out.note = "budget exhausted (size " + std::to_string(budget.max_size) + ", depth " +
               std::to_string(budget.max_depth) + ", steps " + std::to_string(budget.max_steps) + ")";
    return out;
}

}  // namespace ebs
