#include "ebs/formula.hpp"

#include <algorithm>
#include <functional>
#include <sstream>
#include <utility>

#include "ebs/error.hpp"

namespace ebs {

// ---------------------------------------------------------------- Vocabulary

void Vocabulary::add_predicate(const std::string& name, int arity) {
    if (name.empty() || name == "=") throw PreconditionError("invalid predicate name '" + name + "'");
    if (arity < 0) throw PreconditionError("negative arity for predicate " + name);
    if (has_predicate(name) || has_constant(name))
        throw PreconditionError("duplicate symbol " + name);
    predicates_.push_back({name, arity});
}

void Vocabulary::add_constant(const std::string& name) {
    if (name.empty() || name == "=") throw PreconditionError("invalid constant name '" + name + "'");
    if (has_predicate(name) || has_constant(name))
        throw PreconditionError("duplicate symbol " + name);
    constants_.push_back(name);
}

std::optional<std::size_t> Vocabulary::predicate_index(std::string_view name) const {
    for (std::size_t i = 0; i < predicates_.size(); ++i)
        if (predicates_[i].name == name) return i;
    return std::nullopt;
}

std::optional<std::size_t> Vocabulary::constant_index(std::string_view name) const {
    for (std::size_t i = 0; i < constants_.size(); ++i)
        if (constants_[i] == name) return i;
    return std::nullopt;
}

std::optional<int> Vocabulary::arity(std::string_view name) const {
    auto i = predicate_index(name);
    if (!i) return std::nullopt;
    return predicates_[*i].arity;
}

std::vector<std::string> Vocabulary::unary_predicates() const {
    std::vector<std::string> out;
    for (const auto& p : predicates_)
        if (p.arity == 1) out.push_back(p.name);
    return out;
}

std::set<std::string> Vocabulary::predicate_names() const {
    std::set<std::string> out;
    for (const auto& p : predicates_) out.insert(p.name);
    return out;
}

// ---------------------------------------------------------------- Formula

struct Formula::Node {
    Kind kind = Kind::True;
    std::string name;  // predicate or bound variable
    std::vector<Term> terms;
    std::vector<Formula> children;
};

namespace {

const std::shared_ptr<const Formula::Node>& true_node() {
    static const auto n = std::make_shared<const Formula::Node>(Formula::Node{Formula::Kind::True, {}, {}, {}});
    return n;
}

const std::shared_ptr<const Formula::Node>& false_node() {
    static const auto n = std::make_shared<const Formula::Node>(Formula::Node{Formula::Kind::False, {}, {}, {}});
    return n;
}

}  // namespace

Formula::Formula() : node_(true_node()) {}

Formula Formula::top() { return Formula(true_node()); }
Formula Formula::bottom() { return Formula(false_node()); }

Formula Formula::atom(std::string predicate, std::vector<Term> args) {
    if (predicate == "=") {
        if (args.size() != 2) throw PreconditionError("equality takes two terms");
        return equal(std::move(args[0]), std::move(args[1]));
    }
    return Formula(std::make_shared<const Node>(Node{Kind::Atom, std::move(predicate), std::move(args), {}}));
}

Formula Formula::equal(Term lhs, Term rhs) {
    return Formula(std::make_shared<const Node>(Node{Kind::Equal, "=", {std::move(lhs), std::move(rhs)}, {}}));
}

Formula Formula::negate(Formula f) {
    return Formula(std::make_shared<const Node>(Node{Kind::Not, {}, {}, {std::move(f)}}));
}

Formula Formula::conj(std::vector<Formula> children) {
    if (children.empty()) return top();
    if (children.size() == 1) return std::move(children[0]);
    return Formula(std::make_shared<const Node>(Node{Kind::And, {}, {}, std::move(children)}));
}

Formula Formula::disj(std::vector<Formula> children) {
    if (children.empty()) return bottom();
    if (children.size() == 1) return std::move(children[0]);
    return Formula(std::make_shared<const Node>(Node{Kind::Or, {}, {}, std::move(children)}));
}

Formula Formula::implies(Formula lhs, Formula rhs) {
    return Formula(std::make_shared<const Node>(Node{Kind::Implies, {}, {}, {std::move(lhs), std::move(rhs)}}));
}

Formula Formula::iff(Formula lhs, Formula rhs) {
    return Formula(std::make_shared<const Node>(Node{Kind::Iff, {}, {}, {std::move(lhs), std::move(rhs)}}));
}

Formula Formula::forall(std::string var, Formula body) {
    return quantified(Quantifier::Forall, std::move(var), std::move(body));
}

Formula Formula::exists(std::string var, Formula body) {
    return quantified(Quantifier::Exists, std::move(var), std::move(body));
}

Formula Formula::quantified(Quantifier q, std::string var, Formula body) {
    Kind k = q == Quantifier::Forall ? Kind::Forall : Kind::Exists;
    return Formula(std::make_shared<const Node>(Node{k, std::move(var), {}, {std::move(body)}}));
}

Formula::Kind Formula::kind() const { return node_->kind; }

bool Formula::is_literal() const {
    switch (kind()) {
        case Kind::Atom:
        case Kind::Equal: return true;
        case Kind::Not: {
            auto k = children()[0].kind();
            return k == Kind::Atom || k == Kind::Equal;
        }
        default: return false;
    }
}

const std::string& Formula::predicate() const { return node_->name; }
const std::vector<Term>& Formula::terms() const { return node_->terms; }
const std::vector<Formula>& Formula::children() const { return node_->children; }
const std::string& Formula::variable() const { return node_->name; }
const Formula& Formula::body() const { return node_->children.at(0); }

bool Formula::operator==(const Formula& other) const {
    if (node_ == other.node_) return true;
    const Node& a = *node_;
    const Node& b = *other.node_;
    return a.kind == b.kind && a.name == b.name && a.terms == b.terms && a.children == b.children;
}

std::size_t Formula::size() const {
    std::size_t n = 1;
    for (const auto& c : children()) n += c.size();
    return n;
}

// ---------------------------------------------------------------- PrenexForm views

bool PrenexForm::is_contradiction() const {
    return matrix.size() == 1 && matrix[0].empty();
}

bool PrenexForm::is_bsr() const {
    bool seen_forall = false;
    for (const auto& q : prefix) {
        if (q.quantifier == Quantifier::Forall) seen_forall = true;
        else if (seen_forall) return false;
    }
    return true;
}

std::vector<std::string> PrenexForm::leftmost_existentials() const {
    std::vector<std::string> out;
    for (const auto& q : prefix) {
        if (q.quantifier != Quantifier::Exists) break;
        out.push_back(q.name);
    }
    return out;
}

std::vector<std::string> PrenexForm::inner_existentials() const {
    std::vector<std::string> out;
    std::size_t i = 0;
    while (i < prefix.size() && prefix[i].quantifier == Quantifier::Exists) ++i;
    for (; i < prefix.size(); ++i)
        if (prefix[i].quantifier == Quantifier::Exists) out.push_back(prefix[i].name);
    return out;
}

std::vector<std::string> PrenexForm::universals() const {
    std::vector<std::string> out;
    for (const auto& q : prefix)
        if (q.quantifier == Quantifier::Forall) out.push_back(q.name);
    return out;
}

std::size_t PrenexForm::count_existentials() const {
    return static_cast<std::size_t>(std::count_if(prefix.begin(), prefix.end(), [](const QuantifiedVar& q) {
        return q.quantifier == Quantifier::Exists;
    }));
}

// ---------------------------------------------------------------- traversal helpers

namespace {

void collect_free(const Formula& f, std::set<std::string>& bound, std::set<std::string>& out) {
    switch (f.kind()) {
        case Formula::Kind::True:
        case Formula::Kind::False: return;
        case Formula::Kind::Atom:
        case Formula::Kind::Equal:
            for (const auto& t : f.terms())
                if (t.is_variable() && !bound.count(t.name)) out.insert(t.name);
            return;
        case Formula::Kind::Forall:
        case Formula::Kind::Exists: {
            bool fresh = bound.insert(f.variable()).second;
            collect_free(f.body(), bound, out);
            if (fresh) bound.erase(f.variable());
            return;
        }
        default:
            for (const auto& c : f.children()) collect_free(c, bound, out);
    }
}

void collect_names(const Formula& f, std::set<std::string>& out) {
    switch (f.kind()) {
        case Formula::Kind::Atom:
            out.insert(f.predicate());
            [[fallthrough]];
        case Formula::Kind::Equal:
            for (const auto& t : f.terms()) out.insert(t.name);
            return;
        case Formula::Kind::Forall:
        case Formula::Kind::Exists:
            out.insert(f.variable());
            collect_names(f.body(), out);
            return;
        default:
            for (const auto& c : f.children()) collect_names(c, out);
    }
}

class FreshNames {
public:
    explicit FreshNames(std::set<std::string> taken) : taken_(std::move(taken)) {}
    std::string fresh(const std::string& base) {
        for (;;) {
            std::string candidate = base + "_" + std::to_string(++counter_);
            if (taken_.insert(candidate).second) return candidate;
        }
    }
    void reserve(const std::string& n) { taken_.insert(n); }

private:
    std::set<std::string> taken_;
    unsigned counter_ = 0;
};

Formula rebuild(const Formula& f, std::vector<Formula> kids) {
    switch (f.kind()) {
        case Formula::Kind::Not: return Formula::negate(std::move(kids[0]));
        case Formula::Kind::And: return Formula::conj(std::move(kids));
        case Formula::Kind::Or: return Formula::disj(std::move(kids));
        case Formula::Kind::Implies: return Formula::implies(std::move(kids[0]), std::move(kids[1]));
        case Formula::Kind::Iff: return Formula::iff(std::move(kids[0]), std::move(kids[1]));
        default: return f;
    }
}

Formula subst_rec(const Formula& f, const Substitution& m, FreshNames& names) {
    if (m.empty()) return f;
    switch (f.kind()) {
        case Formula::Kind::True:
        case Formula::Kind::False: return f;
        case Formula::Kind::Atom:
        case Formula::Kind::Equal: {
            std::vector<Term> args = f.terms();
            bool changed = false;
            for (auto& t : args) {
                if (!t.is_variable()) continue;
                auto it = m.find(t.name);
                if (it != m.end()) {
                    t = it->second;
                    changed = true;
                }
            }
            if (!changed) return f;
            if (f.kind() == Formula::Kind::Equal) return Formula::equal(args[0], args[1]);
            return Formula::atom(f.predicate(), std::move(args));
        }
        case Formula::Kind::Forall:
        case Formula::Kind::Exists: {
            Substitution inner = m;
            inner.erase(f.variable());
            if (inner.empty()) return f;
            std::set<std::string> body_free = free_vars(f.body());
            bool captures = false;
            for (const auto& [v, t] : inner)
                if (body_free.count(v) && t.is_variable() && t.name == f.variable()) captures = true;
            std::string var = f.variable();
            if (captures) {
                var = names.fresh(f.variable());
                inner[f.variable()] = Term::var(var);
            }
            Quantifier q = f.kind() == Formula::Kind::Forall ? Quantifier::Forall : Quantifier::Exists;
            return Formula::quantified(q, var, subst_rec(f.body(), inner, names));
        }
        default: {
            std::vector<Formula> kids;
            kids.reserve(f.children().size());
            for (const auto& c : f.children()) kids.push_back(subst_rec(c, m, names));
            return rebuild(f, std::move(kids));
        }
    }
}

}  // namespace

std::set<std::string> free_vars(const Formula& f) {
    std::set<std::string> bound, out;
    collect_free(f, bound, out);
    return out;
}

std::set<std::string> all_names(const Formula& f) {
    std::set<std::string> out;
    collect_names(f, out);
    return out;
}

std::set<std::string> predicates_of(const Formula& f) {
    std::set<std::string> out;
    std::function<void(const Formula&)> walk = [&](const Formula& g) {
        if (g.kind() == Formula::Kind::Atom) out.insert(g.predicate());
        else if (g.kind() == Formula::Kind::Equal) out.insert("=");
        for (const auto& c : g.children()) walk(c);
    };
    walk(f);
    return out;
}

bool mentions_equality(const Formula& f) { return predicates_of(f).count("=") > 0; }

Formula substitute(const Formula& f, const Substitution& m) {
    std::set<std::string> taken = all_names(f);
    for (const auto& [v, t] : m) {
        taken.insert(v);
        taken.insert(t.name);
    }
    FreshNames names(std::move(taken));
    return subst_rec(f, m, names);
}

Formula substitute(const Formula& f, const Substitution& m, const Vocabulary& vocab) {
    for (const auto& [v, t] : m)
        if (t.is_constant() && !vocab.has_constant(t.name))
            throw PreconditionError("substitution maps " + v + " to undeclared constant " + t.name);
    return substitute(f, m);
}

// ---------------------------------------------------------------- NNF

namespace {

Formula nnf(const Formula& f, bool neg) {
    using K = Formula::Kind;
    switch (f.kind()) {
        case K::True: return neg ? Formula::bottom() : f;
        case K::False: return neg ? Formula::top() : f;
        case K::Atom:
        case K::Equal: return neg ? Formula::negate(f) : f;
        case K::Not: return nnf(f.children()[0], !neg);
        case K::And:
        case K::Or: {
            std::vector<Formula> kids;
            for (const auto& c : f.children()) kids.push_back(nnf(c, neg));
            bool conj = (f.kind() == K::And) != neg;
            return conj ? Formula::conj(std::move(kids)) : Formula::disj(std::move(kids));
        }
        case K::Implies: {
            const Formula& a = f.children()[0];
            const Formula& b = f.children()[1];
            if (!neg) return Formula::disj({nnf(a, true), nnf(b, false)});
            return Formula::conj({nnf(a, false), nnf(b, true)});
        }
        case K::Iff: {
            const Formula& a = f.children()[0];
            const Formula& b = f.children()[1];
            if (!neg)
                return Formula::conj({Formula::disj({nnf(a, true), nnf(b, false)}),
                                      Formula::disj({nnf(b, true), nnf(a, false)})});
            return Formula::conj({Formula::disj({nnf(a, false), nnf(b, false)}),
                                  Formula::disj({nnf(a, true), nnf(b, true)})});
        }
        case K::Forall:
        case K::Exists: {
            bool universal = (f.kind() == K::Forall) != neg;
            return Formula::quantified(universal ? Quantifier::Forall : Quantifier::Exists, f.variable(),
                                       nnf(f.body(), neg));
        }
    }
    return f;
}

}  // namespace

Formula to_nnf(const Formula& f) { return nnf(f, false); }

// ---------------------------------------------------------------- PCNF

namespace {

// Renames quantified variables so that every binder is unique and none clashes with a
// free variable. Input must be in NNF.
Formula standardize(const Formula& f, std::set<std::string>& used, FreshNames& names,
                    std::map<std::string, std::string>& scope) {
    using K = Formula::Kind;
    switch (f.kind()) {
        case K::True:
        case K::False: return f;
        case K::Atom:
        case K::Equal: {
            std::vector<Term> args = f.terms();
            bool changed = false;
            for (auto& t : args) {
                if (!t.is_variable()) continue;
                auto it = scope.find(t.name);
                if (it != scope.end() && it->second != t.name) {
                    t.name = it->second;
                    changed = true;
                }
            }
            if (!changed) return f;
            if (f.kind() == K::Equal) return Formula::equal(args[0], args[1]);
            return Formula::atom(f.predicate(), std::move(args));
        }
        case K::Forall:
        case K::Exists: {
            const std::string& v = f.variable();
            std::string target = v;
            if (!used.insert(v).second) {
                target = names.fresh(v);
                used.insert(target);
            }
            auto saved = scope.find(v);
            std::optional<std::string> previous;
            if (saved != scope.end()) previous = saved->second;
            scope[v] = target;
            Formula body = standardize(f.body(), used, names, scope);
            if (previous) scope[v] = *previous;
            else scope.erase(v);
            Quantifier q = f.kind() == K::Forall ? Quantifier::Forall : Quantifier::Exists;
            return Formula::quantified(q, target, std::move(body));
        }
        default: {
            std::vector<Formula> kids;
            for (const auto& c : f.children()) kids.push_back(standardize(c, used, names, scope));
            return rebuild(f, std::move(kids));
        }
    }
}

Formula pull_quantifiers(const Formula& f, std::vector<QuantifiedVar>& prefix) {
    using K = Formula::Kind;
    switch (f.kind()) {
        case K::Forall:
        case K::Exists:
            prefix.push_back({f.kind() == K::Forall ? Quantifier::Forall : Quantifier::Exists, f.variable()});
            return pull_quantifiers(f.body(), prefix);
        case K::And:
        case K::Or: {
            std::vector<Formula> kids;
            for (const auto& c : f.children()) kids.push_back(pull_quantifiers(c, prefix));
            return rebuild(f, std::move(kids));
        }
        default: return f;
    }
}

Literal to_literal(const Formula& f) {
    bool positive = true;
    const Formula* a = &f;
    if (f.kind() == Formula::Kind::Not) {
        positive = false;
        a = &f.children()[0];
    }
    return Literal{positive, Atom{a->predicate(), a->terms()}};
}

std::vector<Clause> cnf(const Formula& f, std::size_t cap) {
    using K = Formula::Kind;
    switch (f.kind()) {
        case K::True: return {};
        case K::False: return {Clause{}};
        case K::Atom:
        case K::Equal:
        case K::Not: return {Clause{to_literal(f)}};
        case K::And: {
            std::vector<Clause> out;
            for (const auto& c : f.children()) {
                auto part = cnf(c, cap);
                if (out.size() + part.size() > cap)
                    throw CapExceeded("CNF clause count", out.size() + part.size(), cap);
                for (auto& cl : part) out.push_back(std::move(cl));
            }
            return out;
        }
        case K::Or: {
            std::vector<Clause> acc{Clause{}};
            for (const auto& c : f.children()) {
                auto part = cnf(c, cap);
                if (part.empty()) return {};
                if (acc.size() > cap / part.size()) {
                    std::uint64_t needed = acc.size() > UINT64_MAX / part.size() ? UINT64_MAX : acc.size() * part.size();
                    throw CapExceeded("CNF clause count", needed, cap);
                }
                std::vector<Clause> next;
                next.reserve(acc.size() * part.size());
                for (const auto& a : acc)
                    for (const auto& b : part) {
                        Clause cl = a;
                        cl.insert(cl.end(), b.begin(), b.end());
                        next.push_back(std::move(cl));
                    }
                acc = std::move(next);
            }
            return acc;
        }
        default: throw InternalError("cnf: unexpected node after prenexing");
    }
}

}  // namespace

PrenexForm to_pcnf(const Formula& f, const NormalizeOptions& options) {
    Formula n = to_nnf(f);
    std::set<std::string> frees = free_vars(n);
    std::set<std::string> used = frees;
    std::set<std::string> taken = all_names(n);
    FreshNames names(taken);
    std::map<std::string, std::string> scope;
    Formula s = standardize(n, used, names, scope);

    PrenexForm pf;
    Formula matrix = pull_quantifiers(s, pf.prefix);
    pf.matrix = cnf(matrix, options.clause_cap);
    pf.free_vars.assign(frees.begin(), frees.end());
    return pf;
}

Formula literal_formula(const Literal& lit) {
    Formula a = Formula::atom(lit.atom.predicate, lit.atom.args);
    return lit.positive ? a : Formula::negate(a);
}

Formula to_formula(const PrenexForm& pf) {
    std::vector<Formula> clauses;
    clauses.reserve(pf.matrix.size());
    for (const auto& cl : pf.matrix) {
        std::vector<Formula> lits;
        for (const auto& l : cl) lits.push_back(literal_formula(l));
        clauses.push_back(Formula::disj(std::move(lits)));
    }
    Formula body = Formula::conj(std::move(clauses));
    for (auto it = pf.prefix.rbegin(); it != pf.prefix.rend(); ++it)
        body = Formula::quantified(it->quantifier, it->name, std::move(body));
    return body;
}

// ---------------------------------------------------------------- well-formedness

namespace {

void check_rec(const Formula& f, const Vocabulary& vocab, std::set<std::string>& bound,
               const std::set<std::string>& declared) {
    using K = Formula::Kind;
    auto check_term = [&](const Term& t) {
        if (t.is_constant()) {
            if (!vocab.has_constant(t.name)) throw PreconditionError("undeclared constant " + t.name);
        } else if (!bound.count(t.name) && !declared.count(t.name)) {
            throw PreconditionError("unbound variable " + t.name + " is not declared free");
        }
    };
    switch (f.kind()) {
        case K::True:
        case K::False: return;
        case K::Atom: {
            auto ar = vocab.arity(f.predicate());
            if (!ar) throw PreconditionError("undeclared predicate " + f.predicate());
            if (static_cast<std::size_t>(*ar) != f.terms().size())
                throw PreconditionError("predicate " + f.predicate() + " expects " + std::to_string(*ar) +
                                        " arguments, got " + std::to_string(f.terms().size()));
            for (const auto& t : f.terms()) check_term(t);
            return;
        }
        case K::Equal:
            for (const auto& t : f.terms()) check_term(t);
            return;
        case K::Forall:
        case K::Exists: {
            if (vocab.has_constant(f.variable()) || vocab.has_predicate(f.variable()))
                throw PreconditionError("quantified variable " + f.variable() + " clashes with a symbol");
            bool fresh = bound.insert(f.variable()).second;
            check_rec(f.body(), vocab, bound, declared);
            if (fresh) bound.erase(f.variable());
            return;
        }
        default:
            for (const auto& c : f.children()) check_rec(c, vocab, bound, declared);
    }
}

}  // namespace

void check_well_formed(const Formula& f, const Vocabulary& vocab, const std::vector<std::string>& declared_free) {
    std::set<std::string> bound;
    std::set<std::string> declared(declared_free.begin(), declared_free.end());
    check_rec(f, vocab, bound, declared);
}

// ---------------------------------------------------------------- printing

std::string format_term(const Term& t) { return t.name; }

namespace {

bool is_simple(const Formula& f) {
    switch (f.kind()) {
        case Formula::Kind::True:
        case Formula::Kind::False:
        case Formula::Kind::Atom:
        case Formula::Kind::Equal: return true;
        case Formula::Kind::Not: return is_simple(f.children()[0]);
        default: return false;
    }
}

void print(const Formula& f, std::ostream& os);

void print_child(const Formula& f, std::ostream& os) {
    if (is_simple(f)) {
        print(f, os);
    } else {
        os << '(';
        print(f, os);
        os << ')';
    }
}

void print(const Formula& f, std::ostream& os) {
    using K = Formula::Kind;
    switch (f.kind()) {
        case K::True: os << "true"; return;
        case K::False: os << "false"; return;
        case K::Atom: {
            os << f.predicate();
            if (!f.terms().empty()) {
                os << '(';
                for (std::size_t i = 0; i < f.terms().size(); ++i) {
                    if (i) os << ',';
                    os << f.terms()[i].name;
                }
                os << ')';
            }
            return;
        }
        case K::Equal: os << f.terms()[0].name << " = " << f.terms()[1].name; return;
        case K::Not: {
            const Formula& c = f.children()[0];
            if (c.kind() == K::Equal) {
                os << c.terms()[0].name << " != " << c.terms()[1].name;
            } else {
                os << '!';
                print_child(c, os);
            }
            return;
        }
        case K::And:
        case K::Or: {
            const char* op = f.kind() == K::And ? " & " : " | ";
            for (std::size_t i = 0; i < f.children().size(); ++i) {
                if (i) os << op;
                print_child(f.children()[i], os);
            }
            return;
        }
        case K::Implies:
        case K::Iff:
            print_child(f.children()[0], os);
            os << (f.kind() == K::Implies ? " -> " : " <-> ");
            print_child(f.children()[1], os);
            return;
        case K::Forall:
        case K::Exists:
            os << (f.kind() == K::Forall ? "forall " : "exists ") << f.variable() << ". ";
            print(f.body(), os);
            return;
    }
}

}  // namespace

std::string format_formula(const Formula& f) {
    std::ostringstream os;
    print(f, os);
    return os.str();
}

std::string format_literal(const Literal& l) { return format_formula(literal_formula(l)); }

std::string format_prenex(const PrenexForm& pf) { return format_formula(to_formula(pf)); }

}  // namespace ebs
