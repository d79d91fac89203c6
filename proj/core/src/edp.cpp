#include "ebs/edp.hpp"

#include <algorithm>
#include <sstream>

#include "ebs/error.hpp"

namespace ebs {

std::string symbol_class_name(SymbolClass c) {
    switch (c) {
        case SymbolClass::Free: return "free";
        case SymbolClass::Universal: return "universal";
        case SymbolClass::Existential: return "existential";
    }
    return "?";
}

std::string arg_role_name(ArgRole r) {
    switch (r) {
        case ArgRole::Free: return "free";
        case ArgRole::Universal: return "universal";
        case ArgRole::Existential: return "existential";
    }
    return "?";
}

std::string variant_name(EdpVariant v) {
    switch (v) {
        case EdpVariant::Base: return "base";
        case EdpVariant::RelaxedDistinguishability: return "relaxed-distinguishability";
        case EdpVariant::EqFreeEU: return "eq-free-EU";
        case EdpVariant::EqEUEU: return "eq-EU-EU";
        case EdpVariant::Lowenheim: return "lowenheim";
        case EdpVariant::LowenheimEq: return "lowenheim-eq";
        case EdpVariant::LowenheimEqEU: return "lowenheim-eq-EU";
        case EdpVariant::CombinedExperimental: return "combined-experimental";
    }
    return "?";
}

std::vector<EdpVariant> all_variants() {
    return {EdpVariant::Base,       EdpVariant::RelaxedDistinguishability,
            EdpVariant::EqFreeEU,   EdpVariant::EqEUEU,
            EdpVariant::Lowenheim,  EdpVariant::LowenheimEq,
            EdpVariant::LowenheimEqEU, EdpVariant::CombinedExperimental};
}

std::optional<EdpVariant> variant_from_name(const std::string& name) {
    for (auto v : all_variants())
        if (variant_name(v) == name) return v;
    return std::nullopt;
}

// ---------------------------------------------------------------- classification

namespace {

bool contains(const std::vector<std::string>& v, const std::string& x) {
    return std::find(v.begin(), v.end(), x) != v.end();
}

std::string describe(const Instance& in) {
    std::ostringstream os;
    os << (in.positive ? "" : "!") << in.predicate << '(';
    for (std::size_t i = 0; i < in.args.size(); ++i) os << (i ? "," : "") << in.args[i];
    os << ")@clause" << in.clause;
    return os.str();
}

}  // namespace

ArgRole Classification::role_of(const std::string& name) const {
    if (contains(universal, name)) return ArgRole::Universal;
    if (contains(inner, name)) return ArgRole::Existential;
    return ArgRole::Free;
}

bool Classification::is_unary_inner(const std::string& v) const { return contains(unary_inner, v); }
bool Classification::is_non_unary_inner(const std::string& v) const { return contains(non_unary_inner, v); }

bool Classification::pairwise_distinguishable(std::size_t i, std::size_t j, const std::string& v) const {
    const Instance& a = instances.at(i);
    const Instance& b = instances.at(j);
    std::size_t n = std::min(a.args.size(), b.args.size());
    for (std::size_t p = 0; p < n; ++p) {
        if (a.roles[p] == ArgRole::Universal || b.roles[p] == ArgRole::Universal) continue;
        bool in_a = a.args[p] == v;
        bool in_b = b.args[p] == v;
        if (in_a != in_b) return true;
    }
    return false;
}

Classification classify(const PrenexForm& pf, const Vocabulary& vocab) {
    Classification c;
    c.form = pf;
    c.vocabulary = vocab;
    c.leftmost = pf.leftmost_existentials();
    c.inner = pf.inner_existentials();
    c.universal = pf.universals();
    c.free_variables = pf.free_vars;
    c.q = static_cast<int>(pf.prefix.size());
    c.r = static_cast<int>(c.inner.size());
    c.m = static_cast<int>(vocab.constants().size());
    for (const auto& u : vocab.unary_predicates()) c.unary.insert(u);
    c.k = static_cast<int>(c.unary.size());

    std::set<std::string> eu;
    for (std::size_t ci = 0; ci < pf.matrix.size(); ++ci) {
        for (std::size_t li = 0; li < pf.matrix[ci].size(); ++li) {
            const Literal& lit = pf.matrix[ci][li];
            Instance in;
            in.predicate = lit.atom.predicate;
            in.clause = ci;
            in.position = li;
            in.positive = lit.positive;
            for (const auto& t : lit.atom.args) {
                in.args.push_back(t.name);
                ArgRole role = t.is_constant() ? ArgRole::Free : c.role_of(t.name);
                in.roles.push_back(role);
                switch (role) {
                    case ArgRole::Free: in.free_support.insert(t.name); break;
                    case ArgRole::Universal: in.universal_support.insert(t.name); break;
                    case ArgRole::Existential: in.existential_support.insert(t.name); break;
                }
            }
            if (!in.existential_support.empty()) in.cls = SymbolClass::Existential;
            else if (!in.universal_support.empty()) in.cls = SymbolClass::Universal;
            else in.cls = SymbolClass::Free;
            if (!lit.atom.is_equality() && lit.atom.args.size() == 1 && lit.atom.args[0].is_variable() &&
                contains(c.inner, lit.atom.args[0].name))
                eu.insert(lit.atom.args[0].name);
            c.instances.push_back(std::move(in));
        }
    }
    for (const auto& v : c.inner) {
        if (eu.count(v)) c.unary_inner.push_back(v);
        else c.non_unary_inner.push_back(v);
    }

    for (const auto& p : vocab.predicates()) c.predicate_class[p.name] = SymbolClass::Free;
    std::map<std::string, std::pair<bool, bool>> seen;  // (any universal, any existential)
    for (const auto& in : c.instances) {
        auto& s = seen[in.predicate];
        if (in.cls == SymbolClass::Universal) s.first = true;
        if (in.cls == SymbolClass::Existential) s.second = true;
    }
    for (const auto& [name, s] : seen) {
        SymbolClass cls = s.second ? SymbolClass::Existential : s.first ? SymbolClass::Universal : SymbolClass::Free;
        c.predicate_class[name] = cls;
    }
    for (const auto& [name, cls] : c.predicate_class) {
        if (name == "=") continue;
        if (cls == SymbolClass::Free) c.free_predicates.insert(name);
        if (cls == SymbolClass::Universal) c.universal_predicates.insert(name);
    }
    return c;
}

// ---------------------------------------------------------------- membership

namespace {

enum class EqArg { Free, Universal, UnaryInner, OtherInner };

EqArg eq_arg(const Classification& c, const Instance& in, std::size_t pos) {
    switch (in.roles[pos]) {
        case ArgRole::Free: return EqArg::Free;
        case ArgRole::Universal: return EqArg::Universal;
        case ArgRole::Existential:
            return c.is_unary_inner(in.args[pos]) ? EqArg::UnaryInner : EqArg::OtherInner;
    }
    return EqArg::Free;
}

bool equality_allowed(EqArg a, EqArg b, bool free_eu, bool eu_eu) {
    auto plain = [](EqArg x) { return x == EqArg::Free || x == EqArg::Universal; };
    if (plain(a) && plain(b)) return true;
    if (free_eu && ((a == EqArg::Free && b == EqArg::UnaryInner) || (a == EqArg::UnaryInner && b == EqArg::Free)))
        return true;
    if (eu_eu && a == EqArg::UnaryInner && b == EqArg::UnaryInner) return true;
    return false;
}

bool distinguished_by_non_unary(const Classification& c, std::size_t i, std::size_t j) {
    for (const auto& v : c.non_unary_inner)
        if (c.pairwise_distinguishable(i, j, v)) return true;
    return false;
}

// Condition 3 for one predicate: opposite-polarity instances in different clauses are
// distinguished by some E̅_U variable.
bool base_condition(const Classification& c, const std::vector<std::size_t>& ids, std::vector<std::string>* diag) {
    bool ok = true;
    for (std::size_t a = 0; a < ids.size(); ++a)
        for (std::size_t b = a + 1; b < ids.size(); ++b) {
            const Instance& x = c.instances[ids[a]];
            const Instance& y = c.instances[ids[b]];
            if (x.clause == y.clause || x.positive == y.positive) continue;
            if (distinguished_by_non_unary(c, ids[a], ids[b])) continue;
            ok = false;
            if (diag)
                diag->push_back("existential predicate " + x.predicate + ": instances " + describe(x) + " and " +
                                describe(y) + " are not distinguishable by any non-unary inner existential");
        }
    return ok;
}

// Relaxed alternative: every pair of distinct instances with at least one existential is
// (a) distinguished by an E̅_U variable or (b) distinguishable w.r.t. every E_U variable
// occurring in the pair. (b) needs at least one such variable; without it the alternative
// would hold vacuously.
bool relaxed_condition(const Classification& c, const std::vector<std::size_t>& ids, std::vector<std::string>* diag) {
    bool ok = true;
    for (std::size_t a = 0; a < ids.size(); ++a)
        for (std::size_t b = a + 1; b < ids.size(); ++b) {
            const Instance& x = c.instances[ids[a]];
            const Instance& y = c.instances[ids[b]];
            if (x.cls != SymbolClass::Existential && y.cls != SymbolClass::Existential) continue;
            if (distinguished_by_non_unary(c, ids[a], ids[b])) continue;
            std::set<std::string> e12;
            for (const auto* in : {&x, &y})
                for (const auto& arg : in->args)
                    if (c.is_unary_inner(arg)) e12.insert(arg);
            bool all = !e12.empty();
            for (const auto& v : e12) all = all && c.pairwise_distinguishable(ids[a], ids[b], v);
            if (all) continue;
            ok = false;
            if (diag)
                diag->push_back("existential predicate " + x.predicate + ": instances " + describe(x) + " and " +
                                describe(y) + " fail the relaxed distinguishability condition");
        }
    return ok;
}

bool is_lowenheim(EdpVariant v) {
    return v == EdpVariant::Lowenheim || v == EdpVariant::LowenheimEq || v == EdpVariant::LowenheimEqEU;
}

}  // namespace

EdpCheckResult edp_check(const Classification& c, const std::set<std::string>& sigma, EdpVariant variant) {
    EdpCheckResult r;
    auto& diag = r.diagnostics;

    // (1) σ ⊆ U ∪ F ∪ A
    for (const auto& s : sigma) {
        auto ar = c.vocabulary.arity(s);
        if (!ar) {
            diag.push_back("sigma names unknown predicate " + s);
            continue;
        }
        if (*ar == 1) continue;
        auto it = c.predicate_class.find(s);
        SymbolClass cls = it == c.predicate_class.end() ? SymbolClass::Free : it->second;
        if (cls == SymbolClass::Existential)
            diag.push_back("sigma contains existential predicate " + s + " (not unary, free or universal)");
    }

    if (is_lowenheim(variant)) {
        for (const auto& p : c.vocabulary.predicates())
            if (p.arity > 1) diag.push_back("predicate " + p.name + " has arity " + std::to_string(p.arity) +
                                            " (monadic vocabulary required)");
    }

    // (2) equality
    bool free_eu = variant == EdpVariant::EqFreeEU || variant == EdpVariant::EqEUEU ||
                   variant == EdpVariant::LowenheimEq || variant == EdpVariant::LowenheimEqEU ||
                   variant == EdpVariant::CombinedExperimental;
    bool eu_eu = variant == EdpVariant::EqEUEU || variant == EdpVariant::LowenheimEqEU ||
                 variant == EdpVariant::CombinedExperimental;
    if (variant != EdpVariant::Lowenheim) {
        for (std::size_t i = 0; i < c.instances.size(); ++i) {
            const Instance& in = c.instances[i];
            if (in.predicate != "=") continue;
            EqArg a = eq_arg(c, in, 0);
            EqArg b = eq_arg(c, in, 1);
            if (!equality_allowed(a, b, free_eu, eu_eu))
                diag.push_back("equality instance " + describe(in) + " is not allowed by variant " +
                               variant_name(variant));
        }
    }

    // (3) existential predicates of arity >= 2
    if (!is_lowenheim(variant)) {
        std::map<std::string, std::vector<std::size_t>> by_pred;
        for (std::size_t i = 0; i < c.instances.size(); ++i) by_pred[c.instances[i].predicate].push_back(i);
        for (const auto& [name, ids] : by_pred) {
            if (name == "=") continue;
            auto ar = c.vocabulary.arity(name);
            if (!ar || *ar < 2) continue;
            if (c.predicate_class.at(name) != SymbolClass::Existential) continue;
            bool relaxed =
                variant == EdpVariant::RelaxedDistinguishability || variant == EdpVariant::CombinedExperimental;
            if (!relaxed) {
                base_condition(c, ids, &diag);
            } else if (!base_condition(c, ids, nullptr)) {
                std::vector<std::string> base_diag;
                base_condition(c, ids, &base_diag);
                std::vector<std::string> relaxed_diag;
                if (!relaxed_condition(c, ids, &relaxed_diag)) {
                    diag.insert(diag.end(), base_diag.begin(), base_diag.end());
                    diag.insert(diag.end(), relaxed_diag.begin(), relaxed_diag.end());
                }
            }
        }
    }
    r.member = diag.empty();
    return r;
}

EdpCheckResult edp_check(const PrenexForm& pf, const Vocabulary& vocab, const std::set<std::string>& sigma,
                         EdpVariant variant) {
    return edp_check(classify(pf, vocab), sigma, variant);
}

std::optional<std::set<std::string>> edp_simple_sigma(const Classification& c) {
    for (const auto& in : c.instances)
        if (in.predicate == "=" && in.cls == SymbolClass::Existential) return std::nullopt;
    std::map<std::string, std::vector<std::size_t>> by_pred;
    for (std::size_t i = 0; i < c.instances.size(); ++i) by_pred[c.instances[i].predicate].push_back(i);
    for (const auto& [name, ids] : by_pred) {
        if (name == "=") continue;
        auto ar = c.vocabulary.arity(name);
        if (!ar || *ar < 2 || c.predicate_class.at(name) != SymbolClass::Existential) continue;
        bool same_polarity = true;
        bool single_clause = true;
        for (std::size_t i : ids) {
            same_polarity = same_polarity && c.instances[i].positive == c.instances[ids[0]].positive;
            single_clause = single_clause && c.instances[i].clause == c.instances[ids[0]].clause;
        }
        if (!same_polarity && !single_clause) return std::nullopt;
    }
    std::set<std::string> sigma = c.unary;
    sigma.insert(c.free_predicates.begin(), c.free_predicates.end());
    sigma.insert(c.universal_predicates.begin(), c.universal_predicates.end());
    return sigma;
}

// ---------------------------------------------------------------- bounds

BoundReport edp_bound(const Classification& c, EdpVariant variant) {
    if (variant == EdpVariant::CombinedExperimental)
        throw PreconditionError("the combined variant has no established bound");
    auto check = edp_check(c, {}, variant);
    if (!check.member) {
        std::string msg = "formula fails the " + variant_name(variant) + " check";
        if (!check.diagnostics.empty()) msg += ": " + check.diagnostics.front();
        throw PreconditionError(msg);
    }
    BoundReport b;
    b.variant = variant;
    if (c.k >= 63) throw CapExceeded("2^k", UINT64_MAX, std::uint64_t{1} << 62);
    const std::uint64_t pow2k = std::uint64_t{1} << c.k;
    const std::uint64_t v = c.leftmost.size() + c.free_variables.size();
    const std::uint64_t eubar = c.non_unary_inner.size();
    const std::uint64_t eu = c.unary_inner.size();
    const std::uint64_t m = static_cast<std::uint64_t>(c.m);
    b.terms["m"] = m;
    b.terms["2^k"] = pow2k;
    switch (variant) {
        case EdpVariant::Base:
        case EdpVariant::EqFreeEU:
            b.terms["V"] = v;
            b.terms["EUbar"] = eubar;
            b.bound = v + eubar + pow2k + m;
            break;
        case EdpVariant::RelaxedDistinguishability:
        case EdpVariant::EqEUEU:
            b.terms["V"] = v;
            b.terms["EUbar"] = eubar;
            b.terms["EU"] = eu;
            b.bound = v + eubar + eu * pow2k + m;
            break;
        case EdpVariant::Lowenheim:
            b.terms["q"] = static_cast<std::uint64_t>(c.q);
            b.bound = static_cast<std::uint64_t>(c.q) * pow2k + m;
            break;
        case EdpVariant::LowenheimEq:
            b.terms["V"] = v;
            b.bound = v + pow2k + m;
            break;
        case EdpVariant::LowenheimEqEU:
            b.terms["V"] = v;
            b.terms["EU"] = eu;
            b.bound = v + eu * pow2k + m;
            break;
        case EdpVariant::CombinedExperimental: break;
    }
    return b;
}

// ---------------------------------------------------------------- closure

namespace {

Formula rename_bound_apart(const Formula& f, std::set<std::string>& avoid, unsigned& counter) {
    using K = Formula::Kind;
    switch (f.kind()) {
        case K::Forall:
        case K::Exists: {
            std::string v = f.variable();
            Formula body = f.body();
            if (avoid.count(v)) {
                std::string fresh;
                do {
                    fresh = v + "_" + std::to_string(++counter);
                } while (avoid.count(fresh) || all_names(f).count(fresh));
                body = substitute(body, {{v, Term::var(fresh)}});
                v = fresh;
            }
            avoid.insert(v);
            Quantifier q = f.kind() == K::Forall ? Quantifier::Forall : Quantifier::Exists;
            return Formula::quantified(q, v, rename_bound_apart(body, avoid, counter));
        }
        case K::Not: return Formula::negate(rename_bound_apart(f.children()[0], avoid, counter));
        case K::And:
        case K::Or:
        case K::Implies:
        case K::Iff: {
            std::vector<Formula> kids;
            for (const auto& c : f.children()) kids.push_back(rename_bound_apart(c, avoid, counter));
            if (f.kind() == K::And) return Formula::conj(std::move(kids));
            if (f.kind() == K::Or) return Formula::disj(std::move(kids));
            if (f.kind() == K::Implies) return Formula::implies(kids[0], kids[1]);
            return Formula::iff(kids[0], kids[1]);
        }
        default: return f;
    }
}

std::pair<Formula, Formula> apart(const Formula& f1, const Formula& f2) {
    std::set<std::string> avoid = all_names(f1);
    for (const auto& v : free_vars(f2)) avoid.insert(v);
    unsigned counter = 0;
    return {f1, rename_bound_apart(f2, avoid, counter)};
}

}  // namespace

Combined combine_and(const Formula& f1, std::uint64_t b1, const std::set<std::string>& s1, const Formula& f2,
                     std::uint64_t b2, const std::set<std::string>& s2, const Vocabulary& vocab) {
    std::set<std::string> all = vocab.predicate_names();
    if (s1 != all || s2 != all)
        throw PreconditionError("combine_and needs sigma = all predicates for both conjuncts");
    auto [g1, g2] = apart(f1, f2);
    Combined out;
    out.formula = Formula::conj({g1, g2});
    out.bound.bound = b1 + b2;
    out.bound.terms = {{"B1", b1}, {"B2", b2}};
    out.sigma = all;
    return out;
}

Combined combine_or(const Formula& f1, std::uint64_t b1, const std::set<std::string>& s1, const Formula& f2,
                    std::uint64_t b2, const std::set<std::string>& s2, const Vocabulary&) {
    auto [g1, g2] = apart(f1, f2);
    Combined out;
    out.formula = Formula::disj({g1, g2});
    out.bound.bound = std::max(b1, b2);
    out.bound.terms = {{"B1", b1}, {"B2", b2}};
    std::set_intersection(s1.begin(), s1.end(), s2.begin(), s2.end(), std::inserter(out.sigma, out.sigma.end()));
    return out;
}

}  // namespace ebs
