#include "ebs/analysis.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <map>

#include "ebs/error.hpp"
#include "ebs/ground.hpp"

namespace ebs {

std::string verdict_name(SatOutcome::Verdict v) {
    switch (v) {
        case SatOutcome::Verdict::Sat: return "SAT";
        case SatOutcome::Verdict::Unsat: return "UNSAT";
        case SatOutcome::Verdict::Unknown: return "UNKNOWN";
    }
    return "?";
}

std::vector<int> SpectrumResult::sizes() const {
    std::vector<int> out;
    for (int n = 1; n <= n_max; ++n)
        if (realizable[static_cast<std::size_t>(n)]) out.push_back(n);
    return out;
}

namespace {

// Restricted-growth valuations of m constants over n elements.
void for_each_rgs(std::size_t m, int n, const std::function<bool(const std::vector<int>&)>& fn) {
    std::vector<int> v(m, 0);
    std::function<bool(std::size_t, int)> rec = [&](std::size_t i, int top) -> bool {
        if (i == m) return fn(v);
        for (int e = 0; e <= std::min(top + 1, n - 1); ++e) {
            v[i] = e;
            if (!rec(i + 1, std::max(top, e))) return false;
        }
        return true;
    };
    rec(0, -1);
}

std::optional<FiniteStructure> solve_at(const Formula& f, const Vocabulary& vocab, int n,
                                        const std::vector<int>& constants, const SearchOptions& options,
                                        SatEffort* effort) {
    GroundOptions go;
    go.constant_values = constants;
    go.node_cap = options.node_cap;
    Grounding g = ground_formula(f, vocab, n, go);
    GroundCnf cnf = tseitin(g.formula, g.atoms.size() + 1);
    SolverOptions so;
    so.learning = options.learning;
    SolveResult r = dpll_solve(cnf, so);
    if (effort) {
        ++effort->groundings;
        effort->conflicts += r.stats.conflicts;
    }
    if (!r.sat()) return std::nullopt;
    FiniteStructure m = structure_from_assignment(vocab, n, g.atoms, r.assignment, constants);
    if (!evaluate(m, f)) throw InternalError("solver model does not satisfy the sentence");
    return m;
}

// Leading existentials, also under a top-level conjunction, become fresh constants. The
// constant valuations are enumerated up to symmetry anyway, so an ∃ block costs a few
// groundings instead of a disjunction over every tuple.
Formula skolemize_leading(const Formula& f, Vocabulary& ext) {
    if (f.kind() == Formula::Kind::Exists) {
        std::string name = "sk_" + f.variable();
        for (int j = 1; ext.has_constant(name) || ext.has_predicate(name); ++j)
            name = "sk_" + f.variable() + "_" + std::to_string(j);
        ext.add_constant(name);
        return skolemize_leading(substitute(f.body(), {{f.variable(), Term::constant(name)}}), ext);
    }
    if (f.kind() == Formula::Kind::And) {
        std::vector<Formula> parts;
        for (const auto& c : f.children()) parts.push_back(skolemize_leading(c, ext));
        return Formula::conj(std::move(parts));
    }
    return f;
}

FiniteStructure reduct(const FiniteStructure& m, const Vocabulary& vocab) {
    FiniteStructure out(vocab, m.size());
    for (const auto& p : vocab.predicates())
        for (const auto& t : m.tuples(p.name)) out.set(p.name, t, true);
    for (const auto& c : vocab.constants()) out.set_constant(c, m.constant(c));
    return out;
}

}  // namespace

std::optional<FiniteStructure> find_model(const Formula& sentence, const Vocabulary& vocab, int n,
                                          const SearchOptions& options, SatEffort* effort) {
    if (!free_vars(sentence).empty()) throw PreconditionError("model search requires a sentence");
    Vocabulary ext = vocab;
    Formula body = skolemize_leading(sentence, ext);
    std::optional<FiniteStructure> found;
    for_each_rgs(ext.constants().size(), n, [&](const std::vector<int>& cv) {
        found = solve_at(body, ext, n, cv, options, effort);
        return !found;
    });
    if (found && ext.constants().size() != vocab.constants().size()) found = reduct(*found, vocab);
    return found;
}

SatOutcome decide_sat_bounded(const Formula& sentence, const Vocabulary& vocab, std::uint64_t bound,
                              const SearchOptions& options) {
    SatOutcome out;
    int top = static_cast<int>(std::max<std::uint64_t>(bound, 1));
    for (int n = 1; n <= top; ++n) {
        ++out.effort.sizes_tried;
        auto m = find_model(sentence, vocab, n, options, &out.effort);
        if (m) {
            out.verdict = SatOutcome::Verdict::Sat;
            out.model = std::move(m);
            return out;
        }
    }
    out.verdict = SatOutcome::Verdict::Unsat;
    out.note = "no model of size <= " + std::to_string(top) + "; complete only under the bounded-model promise";
    return out;
}

SpectrumResult spectrum(const Formula& sentence, const Vocabulary& vocab, int n_max, const SearchOptions& options) {
    if (n_max < 1) throw PreconditionError("spectrum needs n_max >= 1");
    SpectrumResult r;
    r.n_max = n_max;
    r.realizable.assign(static_cast<std::size_t>(n_max) + 1, false);
    r.witnesses.resize(static_cast<std::size_t>(n_max) + 1);
    for (int n = 1; n <= n_max; ++n) {
        auto m = find_model(sentence, vocab, n, options);
        r.realizable[static_cast<std::size_t>(n)] = m.has_value();
        r.witnesses[static_cast<std::size_t>(n)] = std::move(m);
    }
    return r;
}

EquivResult bounded_equiv(const Formula& f, const Formula& g, const Vocabulary& vocab, int n_cap,
                          const SearchOptions& options) {
    EquivResult r;
    r.n_cap = n_cap;
    if (f == g) return r;
    Formula differ = Formula::negate(Formula::iff(f, g));
    for (int n = 1; n <= n_cap; ++n) {
        auto m = find_model(differ, vocab, n, options);
        if (m) {
            r.equivalent = false;
            r.first_holds = evaluate(*m, f);
            r.countermodel = std::move(m);
            return r;
        }
    }
    return r;
}

// ---------------------------------------------------------------- EBS oracle

bool completable(const Formula& sentence, const FiniteStructure& m2, const std::set<std::string>& sigma,
                 const SearchOptions& options) {
    const Vocabulary& vocab = m2.vocabulary();
    bool all_pinned = true;
    for (const auto& p : vocab.predicates()) all_pinned = all_pinned && sigma.count(p.name);
    if (all_pinned) return evaluate(m2, sentence);
    GroundOptions go;
    go.constant_values = m2.constant_values();
    go.node_cap = options.node_cap;
    go.pinned_predicates = sigma;
    go.pin_source = &m2;
    Grounding g = ground_formula(sentence, vocab, m2.size(), go);
    GroundCnf cnf = tseitin(g.formula, g.atoms.size() + 1);
    SolverOptions so;
    so.learning = options.learning;
    return dpll_solve(cnf, so).sat();
}

namespace {

using Mask = std::uint32_t;

std::vector<int> mask_elements(Mask m) {
    std::vector<int> out;
    for (int i = 0; m; ++i, m >>= 1)
        if (m & 1) out.push_back(i);
    return out;
}

class CompletionCache {
public:
    CompletionCache(const Formula& s, const std::set<std::string>& sigma, const SearchOptions& o)
        : s_(s), sigma_(sigma), o_(o) {}

    bool query(const FiniteStructure& m, Mask subset) {
        Substructure sub = generated_substructure(m, mask_elements(subset));
        std::string key = std::to_string(sub.structure.size()) + ":";
        const Vocabulary& vocab = m.vocabulary();
        for (std::size_t p = 0; p < vocab.predicates().size(); ++p) {
            if (!sigma_.count(vocab.predicates()[p].name)) continue;
            for (auto b : sub.structure.bits(p)) key.push_back(b ? '1' : '0');
            key.push_back('|');
        }
        for (int c : sub.structure.constant_values()) key += std::to_string(c) + ",";
        auto it = cache_.find(key);
        if (it != cache_.end()) return it->second;
        bool r = completable(s_, sub.structure, sigma_, o_);
        cache_.emplace(std::move(key), r);
        return r;
    }

private:
    const Formula& s_;
    const std::set<std::string>& sigma_;
    const SearchOptions& o_;
    std::map<std::string, bool> cache_;
};

// Candidate cores of size <= B that contain every constant value, smallest first.
std::vector<Mask> candidate_cores(const FiniteStructure& m, std::uint64_t bound) {
    const int n = m.size();
    Mask required = 0;
    for (int c : m.constant_values()) required |= Mask{1} << c;
    std::vector<Mask> out;
    for (Mask s = 0; s < (Mask{1} << n); ++s) {
        if ((s & required) != required) continue;
        if (static_cast<std::uint64_t>(std::popcount(s)) > bound) continue;
        out.push_back(s);
    }
    std::stable_sort(out.begin(), out.end(), [](Mask a, Mask b) { return std::popcount(a) < std::popcount(b); });
    return out;
}

// First M2 ⊇ core (by increasing mask) that cannot be completed; 0 if none.
std::optional<Mask> refuting_m2(const FiniteStructure& m, Mask core, CompletionCache& cache) {
    const Mask full = (Mask{1} << m.size()) - 1;
    const Mask rest = full & ~core;
    // enumerate subsets of `rest` in increasing order
    for (Mask add = 0;; add = (add - rest) & rest) {
        Mask m2 = core | add;
        if (m2 != 0 && !cache.query(m, m2)) return m2;
        if (add == rest) break;
    }
    return std::nullopt;
}

}  // namespace

EbsVerdict ebs_oracle(const Formula& sentence, const Vocabulary& vocab, const std::set<std::string>& sigma,
                      std::uint64_t bound, int n_max, const OracleOptions& options) {
    if (!free_vars(sentence).empty()) throw PreconditionError("the oracle requires a sentence");
    if (n_max > 16) throw CapExceeded("oracle universe size", static_cast<std::uint64_t>(n_max), 16);
    for (const auto& s : sigma)
        if (!vocab.has_predicate(s)) throw PreconditionError("sigma names unknown predicate " + s);
    EbsVerdict v;
    v.sigma = sigma;
    v.bound = bound;
    v.n_max = n_max;
    CompletionCache cache(sentence, sigma, options.search);

    for (int n = 1; n <= n_max; ++n) {
        if (static_cast<std::uint64_t>(n) <= bound) continue;
        bool stop = false;
        for_each_rgs(vocab.constants().size(), n, [&](const std::vector<int>& cv) {
            GroundOptions go;
            go.constant_values = cv;
            go.register_all_atoms = true;
            go.node_cap = options.search.node_cap;
            Grounding g = ground_formula(sentence, vocab, n, go);
            const int atoms = g.atoms.size();
            GroundCnf cnf = tseitin(g.formula, atoms + 1);
            std::vector<int> projection;
            for (int id = 1; id <= atoms; ++id) projection.push_back(id);
            all_models(cnf, projection, [&](const std::vector<bool>& proj) {
                if (++v.models_checked > options.model_cap)
                    throw CapExceeded("oracle model count", v.models_checked, options.model_cap);
                std::vector<bool> value(static_cast<std::size_t>(atoms) + 1, false);
                for (int id = 1; id <= atoms; ++id) value[static_cast<std::size_t>(id)] = proj[static_cast<std::size_t>(id - 1)];
                FiniteStructure m = structure_from_assignment(vocab, n, g.atoms, value, cv);
                std::vector<CoreEvidence> evidence;
                for (Mask core : candidate_cores(m, bound)) {
                    auto bad = refuting_m2(m, core, cache);
                    if (!bad) return true;  // this core works; next model
                    evidence.push_back({mask_elements(core), mask_elements(*bad)});
                }
                v.pass = false;
                v.model = m;
                if (!evidence.empty()) v.m2 = evidence.front().m2;
                v.evidence = std::move(evidence);
                stop = true;
                return false;
            });
            return !stop;
        });
        if (stop) break;
    }
    return v;
}

bool ebs_replay(const EbsVerdict& verdict, const Formula& sentence, const Vocabulary& vocab,
                const SearchOptions& options) {
    if (verdict.pass || !verdict.model) return false;
    const FiniteStructure& m = *verdict.model;
    if (!(m.vocabulary() == vocab) || !evaluate(m, sentence)) return false;
    if (static_cast<std::uint64_t>(m.size()) <= verdict.bound) return false;
    std::map<std::vector<int>, std::vector<int>> recorded;
    for (const auto& e : verdict.evidence) recorded[e.core] = e.m2;
    for (Mask core : candidate_cores(m, verdict.bound)) {
        auto it = recorded.find(mask_elements(core));
        if (it == recorded.end()) return false;
        Mask m2 = 0;
        for (int e : it->second) {
            if (e < 0 || e >= m.size()) return false;
            m2 |= Mask{1} << e;
        }
        if ((m2 & core) != core || m2 == 0) return false;
        Substructure sub = generated_substructure(m, it->second);
        if (completable(sentence, sub.structure, verdict.sigma, options)) return false;
    }
    return true;
}

// ---------------------------------------------------------------- bound search

FindBoundResult find_bound_bounded(const PrenexForm& pf, const Vocabulary& vocab, std::uint64_t b_max, int n_cap,
                                   const SearchOptions& options) {
    FindBoundResult r;
    r.n_cap = n_cap;
    r.caveat = "equivalence verified up to size " + std::to_string(n_cap) + " only";
    Formula source = to_formula(pf);
    for (std::uint64_t b = 0; b <= b_max; ++b) {
        TranslationResult t = to_bsr_equivalent(pf, b);
        if (bounded_equiv(source, to_formula(t.bsr), vocab, n_cap, options).equivalent) {
            r.bound = b;
            r.bsr = std::move(t);
            return r;
        }
    }
    return r;
}

SearchSpaceNote edp_nexptime_note(const Vocabulary& vocab, std::uint64_t bound) {
    SearchSpaceNote s;
    s.bound = bound;
    std::uint64_t top = std::max<std::uint64_t>(bound, 1);
    if (top > 64) throw CapExceeded("search space sizes", top, 64);
    std::uint64_t total = 0;
    bool overflow = false;
    double log_sum = -INFINITY;
    for (std::uint64_t n = 1; n <= top; ++n) {
        auto c = structure_count(vocab, static_cast<int>(n));
        s.per_size.push_back(c);
        double lg = 0.0;
        for (const auto& p : vocab.predicates()) lg += std::pow(static_cast<double>(n), p.arity);
        lg += static_cast<double>(vocab.constants().size()) * std::log2(static_cast<double>(n));
        // log2(2^a + 2^b) computed stably
        double hi = std::max(log_sum, lg);
        double lo = std::min(log_sum, lg);
        log_sum = std::isinf(lo) ? hi : hi + std::log2(1.0 + std::exp2(lo - hi));
        if (!c || total > UINT64_MAX - *c) overflow = true;
        else total += *c;
    }
    if (!overflow) s.total = total;
    s.log2_total = log_sum;
    return s;
}

}  // namespace ebs
