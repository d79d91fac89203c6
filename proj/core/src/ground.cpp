#include "ebs/ground.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "compiled.hpp"
#include "ebs/error.hpp"

namespace ebs {

// ---------------------------------------------------------------- AtomTable

int AtomTable::intern(const GroundAtom& a) {
    auto it = ids_.find(a);
    if (it != ids_.end()) return it->second;
    atoms_.push_back(a);
    int id = static_cast<int>(atoms_.size());
    ids_.emplace(a, id);
    return id;
}

std::optional<int> AtomTable::find(const GroundAtom& a) const {
    auto it = ids_.find(a);
    if (it == ids_.end()) return std::nullopt;
    return it->second;
}

std::string AtomTable::name(int id) const {
    const GroundAtom& a = atom(id);
    std::ostringstream os;
    os << a.predicate;
    if (!a.args.empty()) {
        os << '(';
        for (std::size_t i = 0; i < a.args.size(); ++i) {
            if (i) os << ',';
            auto e = static_cast<std::size_t>(a.args[i]);
            if (e < element_names_.size()) os << element_names_[e];
            else os << a.args[i];
        }
        os << ')';
    }
    return os.str();
}

// ---------------------------------------------------------------- PropFormula

PropFormula PropFormula::lit(int l) {
    if (l == 0) throw PreconditionError("zero literal");
    PropFormula p(Kind::Lit);
    p.lit_ = l;
    return p;
}

PropFormula PropFormula::conj(std::vector<PropFormula> kids) {
    std::vector<PropFormula> keep;
    for (auto& k : kids) {
        if (k.kind_ == Kind::False) return bottom();
        if (k.kind_ == Kind::True) continue;
        keep.push_back(std::move(k));
    }
    if (keep.empty()) return top();
    if (keep.size() == 1) return std::move(keep[0]);
    PropFormula p(Kind::And);
    p.kids_ = std::move(keep);
    return p;
}

PropFormula PropFormula::disj(std::vector<PropFormula> kids) {
    std::vector<PropFormula> keep;
    for (auto& k : kids) {
        if (k.kind_ == Kind::True) return top();
        if (k.kind_ == Kind::False) continue;
        keep.push_back(std::move(k));
    }
    if (keep.empty()) return bottom();
    if (keep.size() == 1) return std::move(keep[0]);
    PropFormula p(Kind::Or);
    p.kids_ = std::move(keep);
    return p;
}

PropFormula PropFormula::negate(PropFormula p) {
    switch (p.kind_) {
        case Kind::True: return bottom();
        case Kind::False: return top();
        case Kind::Lit: return lit(-p.lit_);
        case Kind::Not: return std::move(p.kids_[0]);
        default: {
            PropFormula n(Kind::Not);
            n.kids_.push_back(std::move(p));
            return n;
        }
    }
}

bool PropFormula::eval(const std::vector<bool>& value) const {
    switch (kind_) {
        case Kind::True: return true;
        case Kind::False: return false;
        case Kind::Lit: {
            bool v = value.at(static_cast<std::size_t>(std::abs(lit_)));
            return lit_ > 0 ? v : !v;
        }
        case Kind::Not: return !kids_[0].eval(value);
        case Kind::And:
            for (const auto& k : kids_)
                if (!k.eval(value)) return false;
            return true;
        case Kind::Or:
            for (const auto& k : kids_)
                if (k.eval(value)) return true;
            return false;
    }
    return false;
}

std::size_t PropFormula::node_count() const {
    std::size_t n = 1;
    for (const auto& k : kids_) n += k.node_count();
    return n;
}

int PropFormula::max_var() const {
    int m = kind_ == Kind::Lit ? std::abs(lit_) : 0;
    for (const auto& k : kids_) m = std::max(m, k.max_var());
    return m;
}

// ---------------------------------------------------------------- grounding

void register_all_atoms(AtomTable& table, const Vocabulary& vocab, int n) {
    for (const auto& p : vocab.predicates()) {
        std::vector<int> args(static_cast<std::size_t>(p.arity), 0);
        for (;;) {
            table.intern({p.name, args});
            int i = p.arity - 1;
            while (i >= 0 && args[static_cast<std::size_t>(i)] == n - 1) args[static_cast<std::size_t>(i--)] = 0;
            if (i < 0) break;
            ++args[static_cast<std::size_t>(i)];
        }
    }
}

PinnedAtoms pin_predicates(const FiniteStructure& m, const std::set<std::string>& sigma) {
    PinnedAtoms out;
    for (const auto& name : sigma) {
        auto p = m.vocabulary().predicate_index(name);
        if (!p) throw PreconditionError("unknown predicate " + name);
        for (std::size_t i = 0; i < m.tuple_count(*p); ++i) out[{name, m.tuple_at(*p, i)}] = m.holds(*p, i);
    }
    return out;
}

namespace {

class Grounder {
public:
    Grounder(const Vocabulary& vocab, int n, const GroundOptions& opt, AtomTable& atoms)
        : vocab_(vocab), n_(n), opt_(opt), atoms_(atoms) {
        if (n < 1) throw PreconditionError("universe size must be at least 1");
        if (opt.constant_values) {
            if (opt.constant_values->size() != vocab.constants().size())
                throw PreconditionError("constant valuation has the wrong length");
            for (int v : *opt.constant_values)
                if (v < 0 || v >= n) throw PreconditionError("constant value outside universe");
        }
        if (!opt.pinned_predicates.empty()) {
            if (!opt.pin_source) throw PreconditionError("pinned predicates need a source structure");
            if (opt.pin_source->size() != n) throw PreconditionError("pin source has a different size");
        }
        if (opt.register_all_atoms) register_all_atoms(atoms_, vocab_, n_);
        for (const auto& p : opt.pinned_predicates) {
            auto idx = vocab.predicate_index(p);
            if (!idx) throw PreconditionError("unknown pinned predicate " + p);
            pinned_.insert(p);
        }
    }

    PropFormula run(const Formula& f) { return ground(f, false); }

private:
    int value_of(const Term& t) const {
        if (t.is_constant()) {
            auto ci = vocab_.constant_index(t.name);
            if (!ci) throw PreconditionError("undeclared constant " + t.name);
            if (!opt_.constant_values) throw PreconditionError("grounding needs values for constants");
            return (*opt_.constant_values)[*ci];
        }
        for (auto it = env_.rbegin(); it != env_.rend(); ++it)
            if (*it->first == t.name) return it->second;
        throw PreconditionError("free variable " + t.name + " during grounding");
    }

    PropFormula count(PropFormula p) {
        if (++nodes_ > opt_.node_cap) throw CapExceeded("ground formula nodes", nodes_, opt_.node_cap);
        return p;
    }

    PropFormula atom(const Formula& f, bool negated) {
        if (f.kind() == Formula::Kind::Equal) {
            bool eq = value_of(f.terms()[0]) == value_of(f.terms()[1]);
            return (eq != negated) ? PropFormula::top() : PropFormula::bottom();
        }
        GroundAtom a{f.predicate(), {}};
        a.args.reserve(f.terms().size());
        for (const auto& t : f.terms()) a.args.push_back(value_of(t));
        if (pinned_.count(a.predicate)) {
            bool v = opt_.pin_source->holds(a.predicate, a.args);
            return (v != negated) ? PropFormula::top() : PropFormula::bottom();
        }
        if (!opt_.fixed.empty()) {
            auto it = opt_.fixed.find(a);
            if (it != opt_.fixed.end()) return (it->second != negated) ? PropFormula::top() : PropFormula::bottom();
        }
        int id = atoms_.intern(a);
        return count(PropFormula::lit(negated ? -id : id));
    }

    PropFormula ground(const Formula& f, bool negated) {
        using K = Formula::Kind;
        switch (f.kind()) {
            case K::True: return negated ? PropFormula::bottom() : PropFormula::top();
            case K::False: return negated ? PropFormula::top() : PropFormula::bottom();
            case K::Atom:
            case K::Equal: return atom(f, negated);
            case K::Not: return ground(f.children()[0], !negated);
            case K::And:
            case K::Or: {
                bool is_and = (f.kind() == K::And) != negated;
                std::vector<PropFormula> kids;
                for (const auto& c : f.children()) {
                    PropFormula g = ground(c, negated);
                    if (is_and && g.kind() == PropFormula::Kind::False) return g;
                    if (!is_and && g.kind() == PropFormula::Kind::True) return g;
                    kids.push_back(std::move(g));
                }
                return count(is_and ? PropFormula::conj(std::move(kids)) : PropFormula::disj(std::move(kids)));
            }
            case K::Implies: {
                // a -> b  ==  !a | b
                Formula d = Formula::disj({Formula::negate(f.children()[0]), f.children()[1]});
                return ground(d, negated);
            }
            case K::Iff: {
                PropFormula a = ground(f.children()[0], false);
                PropFormula b = ground(f.children()[1], false);
                PropFormula na = PropFormula::negate(a);
                PropFormula nb = PropFormula::negate(b);
                PropFormula both = PropFormula::conj({a, b});
                PropFormula neither = PropFormula::conj({na, nb});
                PropFormula mixed1 = PropFormula::conj({a, nb});
                PropFormula mixed2 = PropFormula::conj({na, b});
                if (!negated) return count(PropFormula::disj({std::move(both), std::move(neither)}));
                return count(PropFormula::disj({std::move(mixed1), std::move(mixed2)}));
            }
            case K::Forall:
            case K::Exists: {
                bool is_and = (f.kind() == K::Forall) != negated;
                // vacuous quantifier over a nonempty universe
                if (!binds_free(f)) return ground(f.body(), negated);
                env_.push_back({&f.variable(), 0});
                std::vector<PropFormula> kids;
                PropFormula result = is_and ? PropFormula::top() : PropFormula::bottom();
                bool decided = false;
                for (int e = 0; e < n_; ++e) {
                    env_.back().second = e;
                    PropFormula g = ground(f.body(), negated);
                    if (is_and && g.kind() == PropFormula::Kind::False) {
                        result = std::move(g);
                        decided = true;
                        break;
                    }
                    if (!is_and && g.kind() == PropFormula::Kind::True) {
                        result = std::move(g);
                        decided = true;
                        break;
                    }
                    kids.push_back(std::move(g));
                }
                env_.pop_back();
                if (decided) return result;
                return count(is_and ? PropFormula::conj(std::move(kids)) : PropFormula::disj(std::move(kids)));
            }
        }
        return PropFormula::top();
    }

    bool binds_free(const Formula& f) {
        auto it = vacuous_.find(&f);
        if (it != vacuous_.end()) return it->second;
        bool used = free_vars(f.body()).count(f.variable()) > 0;
        vacuous_.emplace(&f, used);
        return used;
    }

    const Vocabulary& vocab_;
    int n_;
    const GroundOptions& opt_;
    AtomTable& atoms_;
    std::set<std::string> pinned_;
    std::vector<std::pair<const std::string*, int>> env_;
    std::size_t nodes_ = 0;
    std::map<const Formula*, bool> vacuous_;
};

}  // namespace

PropFormula ground_into(const Formula& f, const Vocabulary& vocab, int n, const GroundOptions& options,
                        AtomTable& atoms) {
    if (!free_vars(f).empty()) throw PreconditionError("grounding requires a sentence");
    Grounder g(vocab, n, options, atoms);
    return g.run(f);
}

Grounding ground_formula(const Formula& f, const Vocabulary& vocab, int n, const GroundOptions& options) {
    Grounding out;
    out.formula = ground_into(f, vocab, n, options, out.atoms);
    return out;
}

Grounding ground_fixed_universe(const PrenexForm& pf, const Vocabulary& vocab, int n, const GroundOptions& options) {
    if (!pf.free_vars.empty()) throw PreconditionError("grounding requires a sentence");
    return ground_formula(to_formula(pf), vocab, n, options);
}

FiniteStructure structure_from_assignment(const Vocabulary& vocab, int n, const AtomTable& atoms,
                                          const std::vector<bool>& value, const std::vector<int>& constants) {
    FiniteStructure m(vocab, n);
    for (int id = 1; id <= atoms.size(); ++id) {
        if (static_cast<std::size_t>(id) >= value.size() || !value[static_cast<std::size_t>(id)]) continue;
        const GroundAtom& a = atoms.atom(id);
        m.set(a.predicate, a.args, true);
    }
    for (std::size_t c = 0; c < constants.size(); ++c) m.set_constant(c, constants[c]);
    return m;
}

// ---------------------------------------------------------------- Tseitin

namespace {

class Tseitin {
public:
    explicit Tseitin(int next) : next_(next) {}
    GroundCnf cnf;

    int encode(const PropFormula& p) {
        using K = PropFormula::Kind;
        switch (p.kind()) {
            case K::Lit: return p.literal();
            case K::Not: return -encode(p.children()[0]);
            case K::And:
            case K::Or: {
                std::vector<int> kids;
                for (const auto& c : p.children()) kids.push_back(encode(c));
                int t = next_++;
                if (p.kind() == K::And) {
                    // t <-> k1 & ... & kn
                    std::vector<int> back{t};
                    for (int k : kids) {
                        cnf.clauses.push_back({-t, k});
                        back.push_back(-k);
                    }
                    cnf.clauses.push_back(std::move(back));
                } else {
                    std::vector<int> fwd{-t};
                    for (int k : kids) fwd.push_back(k);
                    cnf.clauses.push_back(std::move(fwd));
                    for (int k : kids) cnf.clauses.push_back({-k, t});
                }
                return t;
            }
            default: throw InternalError("tseitin: constant below the root");
        }
    }
    int next() const { return next_; }

private:
    int next_;
};

}  // namespace

GroundCnf tseitin(const PropFormula& p, int first_fresh) {
    int mv = p.max_var();
    int start = std::max(first_fresh, mv + 1);
    GroundCnf out;
    if (p.kind() == PropFormula::Kind::True) {
        out.num_vars = std::max(mv, first_fresh - 1);
        return out;
    }
    if (p.kind() == PropFormula::Kind::False) {
        out.num_vars = std::max(mv, first_fresh - 1);
        out.clauses.push_back({});
        return out;
    }
    Tseitin t(start);
    int root = t.encode(p);
    out.clauses = std::move(t.cnf.clauses);
    out.clauses.push_back({root});
    out.num_vars = std::max(t.next() - 1, std::max(mv, first_fresh - 1));
    return out;
}

// ---------------------------------------------------------------- BSR grounding

BsrGrounding bsr_ground(const PrenexForm& pf, const Vocabulary& vocab, std::size_t clause_cap) {
    if (!pf.is_bsr()) throw PreconditionError("bsr_ground: prefix is not of the form ∃*∀*");
    if (!pf.free_vars.empty()) throw PreconditionError("bsr_ground: free variables are not allowed");
    BsrGrounding out;
    std::map<std::string, int> const_of;
    for (const auto& c : vocab.constants()) {
        const_of[c] = static_cast<int>(out.constants.size());
        out.constants.push_back(c);
    }
    std::map<std::string, int> var_const;
    std::vector<std::string> universals;
    for (const auto& q : pf.prefix) {
        if (q.quantifier == Quantifier::Exists) {
            var_const[q.name] = static_cast<int>(out.constants.size());
            out.constants.push_back("c_" + q.name);
        } else {
            universals.push_back(q.name);
        }
    }
    if (out.constants.empty()) out.constants.push_back("c_0");
    out.atoms.set_element_names(out.constants);
    const int C = static_cast<int>(out.constants.size());

    bool uses_eq = false;
    std::set<std::string> preds_used;
    for (const auto& cl : pf.matrix)
        for (const auto& l : cl) {
            if (l.atom.is_equality()) uses_eq = true;
            else preds_used.insert(l.atom.predicate);
        }

    auto eq_atom = [&](int i, int j) {
        if (i > j) std::swap(i, j);
        return out.atoms.intern({"=", {i, j}});
    };
    auto push = [&](std::vector<int> cl) {
        if (out.cnf.clauses.size() >= clause_cap)
            throw CapExceeded("BSR ground clauses", out.cnf.clauses.size() + 1, clause_cap);
        out.cnf.clauses.push_back(std::move(cl));
    };

    std::vector<int> uval(universals.size(), 0);
    std::map<std::string, std::size_t> uslot;
    for (std::size_t i = 0; i < universals.size(); ++i) uslot[universals[i]] = i;
    auto term_const = [&](const Term& t) {
        if (t.is_constant()) {
            auto it = const_of.find(t.name);
            if (it == const_of.end()) throw PreconditionError("undeclared constant " + t.name);
            return it->second;
        }
        auto e = var_const.find(t.name);
        if (e != var_const.end()) return e->second;
        return uval[uslot.at(t.name)];
    };
    for (;;) {
        for (const auto& cl : pf.matrix) {
            std::vector<int> g;
            bool sat = false;
            for (const auto& l : cl) {
                if (l.atom.is_equality()) {
                    int a = term_const(l.atom.args[0]);
                    int b = term_const(l.atom.args[1]);
                    if (a == b) {
                        if (l.positive) sat = true;
                        continue;
                    }
                    int id = eq_atom(a, b);
                    g.push_back(l.positive ? id : -id);
                } else {
                    GroundAtom ga{l.atom.predicate, {}};
                    for (const auto& t : l.atom.args) ga.args.push_back(term_const(t));
                    int id = out.atoms.intern(ga);
                    g.push_back(l.positive ? id : -id);
                }
            }
            if (!sat) push(std::move(g));
        }
        std::size_t i = universals.size();
        while (i > 0 && uval[i - 1] == C - 1) uval[--i] = 0;
        if (i == 0) break;
        ++uval[i - 1];
    }

    if (uses_eq && C > 1) {
        for (int a = 0; a < C; ++a)
            for (int b = 0; b < C; ++b)
                for (int c = 0; c < C; ++c) {
                    if (a == b || b == c || a == c) continue;
                    push({-eq_atom(a, b), -eq_atom(b, c), eq_atom(a, c)});
                }
        for (const auto& pname : preds_used) {
            int ar = *vocab.arity(pname);
            if (ar == 0) continue;
            std::vector<int> tup(static_cast<std::size_t>(ar), 0);
            for (;;) {
                for (int pos = 0; pos < ar; ++pos) {
                    int from = tup[static_cast<std::size_t>(pos)];
                    for (int to = 0; to < C; ++to) {
                        if (to == from) continue;
                        GroundAtom src{pname, tup};
                        GroundAtom dst{pname, tup};
                        dst.args[static_cast<std::size_t>(pos)] = to;
                        push({-eq_atom(from, to), -out.atoms.intern(src), out.atoms.intern(dst)});
                    }
                }
                int k = ar - 1;
                while (k >= 0 && tup[static_cast<std::size_t>(k)] == C - 1) tup[static_cast<std::size_t>(k--)] = 0;
                if (k < 0) break;
                ++tup[static_cast<std::size_t>(k)];
            }
        }
    }
    out.cnf.num_vars = out.atoms.size();
    return out;
}

// ---------------------------------------------------------------- DIMACS

std::string export_dimacs(const GroundCnf& cnf) { return export_dimacs(cnf, AtomTable{}); }

std::string export_dimacs(const GroundCnf& cnf, const AtomTable& atoms) {
    std::ostringstream os;
    for (int id = 1; id <= atoms.size(); ++id) os << "c " << id << ' ' << atoms.name(id) << '\n';
    int nv = cnf.num_vars;
    for (const auto& cl : cnf.clauses)
        for (int l : cl) nv = std::max(nv, std::abs(l));
    os << "p cnf " << nv << ' ' << cnf.clauses.size() << '\n';
    for (const auto& cl : cnf.clauses) {
        for (int l : cl) os << l << ' ';
        os << "0\n";
    }
    return os.str();
}

}  // namespace ebs
