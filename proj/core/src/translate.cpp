#include "ebs/translate.hpp"

#include <algorithm>

#include "ebs/error.hpp"

namespace ebs {

std::string mode_name(TranslationMode m) {
    return m == TranslationMode::Equivalent ? "equivalent" : "equispectral";
}

namespace {

std::set<std::string> used_names(const PrenexForm& pf) {
    std::set<std::string> out(pf.free_vars.begin(), pf.free_vars.end());
    for (const auto& q : pf.prefix) out.insert(q.name);
    for (const auto& cl : pf.matrix)
        for (const auto& l : cl) {
            out.insert(l.atom.predicate);
            for (const auto& t : l.atom.args) out.insert(t.name);
        }
    return out;
}

Clause rename(const Clause& cl, const std::map<std::string, std::string>& m) {
    Clause out;
    out.reserve(cl.size());
    for (const auto& l : cl) {
        Literal r = l;
        for (auto& t : r.atom.args)
            if (t.is_variable()) {
                auto it = m.find(t.name);
                if (it != m.end()) t.name = it->second;
            }
        if (std::find(out.begin(), out.end(), r) == out.end()) out.push_back(std::move(r));
    }
    return out;
}

// Walks the prefix after the leftmost block. Each inner ∃ variable branches over its
// candidate terms; each ∀ block met below a branch gets its own copy of the universal
// variables, so a witness never depends on a universal quantified after it. In the
// literal layout all branches share one universal block instead.
class Expansion {
public:
    Expansion(const PrenexForm& pf, TranslationMode mode, const TranslateOptions& options, std::set<std::string>& taken,
              const std::vector<std::string>& pool)
        : pf_(pf), mode_(mode), options_(options), taken_(taken), pool_(pool) {}

    void run(std::size_t from) {
        std::map<std::string, std::string> m;
        std::vector<std::string> visible;
        walk(from, m, visible);
    }

    std::vector<std::vector<Clause>> leaves;
    std::vector<std::string> universals;

private:
    void walk(std::size_t d, std::map<std::string, std::string>& m, std::vector<std::string>& visible) {
        if (d == pf_.prefix.size()) {
            std::vector<Clause> part;
            for (const auto& cl : pf_.matrix) part.push_back(rename(cl, m));
            leaves.push_back(std::move(part));
            return;
        }
        const auto& q = pf_.prefix[d];
        if (q.quantifier == Quantifier::Forall) {
            std::string name = q.name;
            if (!options_.flat_layout && emitted_.count(q.name)) {
                for (int j = 1; taken_.count(name); ++j) name = q.name + "_" + std::to_string(j);
                taken_.insert(name);
            }
            if (emitted_.insert(name).second) universals.push_back(name);
            emitted_.insert(q.name);
            m[q.name] = name;
            visible.push_back(name);
            walk(d + 1, m, visible);
            visible.pop_back();
            return;
        }
        std::vector<std::string> c = pool_;
        if (mode_ == TranslationMode::Equivalent) {
            if (options_.flat_layout) {
                auto all = pf_.universals();
                c.insert(c.end(), all.begin(), all.end());
            } else {
                c.insert(c.end(), visible.begin(), visible.end());
            }
        }
        for (const auto& u : c) {
            m[q.name] = u;
            walk(d + 1, m, visible);
        }
        m.erase(q.name);
    }

    const PrenexForm& pf_;
    TranslationMode mode_;
    const TranslateOptions& options_;
    std::set<std::string>& taken_;
    const std::vector<std::string>& pool_;
    std::set<std::string> emitted_;
};

TranslationResult translate(const PrenexForm& pf, std::uint64_t bound, TranslationMode mode,
                            const TranslateOptions& options) {
    TranslationResult res;
    res.mode = mode;
    std::set<std::string> taken = used_names(pf);
    for (std::uint64_t i = 1; i <= bound; ++i) {
        std::string name = "x" + std::to_string(i);
        for (int j = 1; taken.count(name); ++j) name = "x" + std::to_string(i) + "_" + std::to_string(j);
        taken.insert(name);
        res.fresh.push_back(name);
    }

    std::vector<std::string> leftmost = pf.leftmost_existentials();
    res.pool = pf.free_vars;
    res.pool.insert(res.pool.end(), leftmost.begin(), leftmost.end());
    res.pool.insert(res.pool.end(), res.fresh.begin(), res.fresh.end());

    // number of substituted copies, checked before anything is built
    std::uint64_t count = 1;
    std::size_t seen_universals = 0;
    const std::size_t all_universals = pf.universals().size();
    for (std::size_t d = leftmost.size(); d < pf.prefix.size(); ++d) {
        if (pf.prefix[d].quantifier == Quantifier::Forall) {
            ++seen_universals;
            continue;
        }
        std::uint64_t width = res.pool.size();
        if (mode == TranslationMode::Equivalent) width += options.flat_layout ? all_universals : seen_universals;
        if (width == 0) {
            count = 0;
            break;
        }
        if (count > options.disjunct_cap / width) {
            std::uint64_t need = count > UINT64_MAX / width ? UINT64_MAX : count * width;
            throw CapExceeded("disjunct count", need, options.disjunct_cap);
        }
        count *= width;
    }
    res.size.disjuncts = count;

    Expansion ex(pf, mode, options, taken, res.pool);
    ex.run(leftmost.size());

    for (const auto& v : leftmost) res.bsr.prefix.push_back({Quantifier::Exists, v});
    for (const auto& x : res.fresh) res.bsr.prefix.push_back({Quantifier::Exists, x});
    for (const auto& u : ex.universals) res.bsr.prefix.push_back({Quantifier::Forall, u});
    res.bsr.free_vars = pf.free_vars;

    // CNF of the disjunction: one clause per choice of a clause from every disjunct
    std::vector<Clause> acc{Clause{}};
    for (const auto& part : ex.leaves) {
        if (part.empty()) {
            acc.clear();
            break;
        }
        if (acc.size() * part.size() > options.clause_cap)
            throw CapExceeded("translated clause count", acc.size() * part.size(), options.clause_cap);
        std::vector<Clause> next;
        for (const auto& a : acc)
            for (const auto& b : part) {
                Clause cl = a;
                for (const auto& l : b)
                    if (std::find(cl.begin(), cl.end(), l) == cl.end()) cl.push_back(l);
                if (std::find(next.begin(), next.end(), cl) == next.end()) next.push_back(std::move(cl));
            }
        acc = std::move(next);
    }
    if (count == 0) acc = {Clause{}};
    res.bsr.matrix = std::move(acc);
    res.size.clauses = res.bsr.matrix.size();
    return res;
}

}  // namespace

TranslationResult to_bsr_equivalent(const PrenexForm& pf, std::uint64_t bound, const TranslateOptions& options) {
    return translate(pf, bound, TranslationMode::Equivalent, options);
}

TranslationResult to_bsr_equispectral(const PrenexForm& pf, std::uint64_t bound, const TranslateOptions& options) {
    return translate(pf, bound, TranslationMode::Equispectral, options);
}

namespace {

Formula exactly(int k) {
    std::vector<std::string> xs;
    for (int i = 1; i <= k; ++i) xs.push_back("x" + std::to_string(i));
    std::vector<Formula> parts;
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j)
            parts.push_back(Formula::negate(Formula::equal(Term::var(xs[i]), Term::var(xs[j]))));
    std::vector<Formula> cover;
    for (const auto& x : xs) cover.push_back(Formula::equal(Term::var("y"), Term::var(x)));
    parts.push_back(Formula::disj(std::move(cover)));
    Formula body = Formula::forall("y", Formula::conj(std::move(parts)));
    for (int i = k; i-- > 0;) body = Formula::exists(xs[static_cast<std::size_t>(i)], body);
    return body;
}

Formula at_least(int k) {
    std::vector<std::string> xs;
    for (int i = 1; i <= k; ++i) xs.push_back("x" + std::to_string(i));
    std::vector<Formula> parts;
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j)
            parts.push_back(Formula::negate(Formula::equal(Term::var(xs[i]), Term::var(xs[j]))));
    Formula body = Formula::conj(std::move(parts));
    for (int i = k; i-- > 0;) body = Formula::exists(xs[static_cast<std::size_t>(i)], body);
    return body;
}

}  // namespace

Formula spectrum_to_bsr(const std::set<int>& sizes, std::optional<int> cofinite_from, const Vocabulary& vocab) {
    if (sizes.empty() && !cofinite_from) throw PreconditionError("spectrum needs a size or a cofinite threshold");
    std::vector<Formula> parts;
    for (int k : sizes) {
        if (k < 1) throw PreconditionError("spectrum sizes must be positive");
        parts.push_back(exactly(k));
    }
    if (cofinite_from) {
        if (*cofinite_from < 0) throw PreconditionError("cofinite threshold must be nonnegative");
        parts.push_back(at_least(*cofinite_from));
    }
    Formula f = Formula::disj(std::move(parts));
    if (vocab.predicates().empty()) return f;
    std::vector<Formula> conj{f};
    for (const auto& p : vocab.predicates()) {
        std::vector<Term> args;
        for (int i = 1; i <= p.arity; ++i) args.push_back(Term::var("z" + std::to_string(i)));
        Formula q = Formula::atom(p.name, args);
        for (int i = p.arity; i >= 1; --i) q = Formula::forall("z" + std::to_string(i), q);
        conj.push_back(q);
    }
    return Formula::conj(std::move(conj));
}

}  // namespace ebs
