#include "ebs/structure.hpp"

#include <algorithm>
#include <nlohmann/json.hpp>
#include <sstream>

#include "compiled.hpp"
#include "ebs/error.hpp"

namespace ebs {

namespace {

std::size_t checked_power(int n, int arity) {
    std::size_t r = 1;
    for (int i = 0; i < arity; ++i) {
        if (r > (std::size_t{1} << 40) / static_cast<std::size_t>(n))
            throw CapExceeded("relation table size", UINT64_MAX, std::uint64_t{1} << 40);
        r *= static_cast<std::size_t>(n);
    }
    return r;
}

}  // namespace

FiniteStructure::FiniteStructure(const Vocabulary& vocab, int n)
    : FiniteStructure(std::make_shared<const Vocabulary>(vocab), n) {}

FiniteStructure::FiniteStructure(std::shared_ptr<const Vocabulary> vocab, int n) : vocab_(std::move(vocab)), n_(n) {
    if (n < 1) throw PreconditionError("universe size must be at least 1");
    for (const auto& p : vocab_->predicates()) bits_.emplace_back(checked_power(n, p.arity), 0);
    constants_.assign(vocab_->constants().size(), 0);
}

std::size_t FiniteStructure::tuple_index(const std::vector<int>& args) const {
    for (int a : args)
        if (a < 0 || a >= n_) throw PreconditionError("element " + std::to_string(a) + " outside universe");
    return detail::tuple_offset(args, n_);
}

std::vector<int> FiniteStructure::tuple_at(std::size_t pred, std::size_t index) const {
    int ar = vocab_->predicates()[pred].arity;
    std::vector<int> out(static_cast<std::size_t>(ar));
    for (int i = ar - 1; i >= 0; --i) {
        out[static_cast<std::size_t>(i)] = static_cast<int>(index % static_cast<std::size_t>(n_));
        index /= static_cast<std::size_t>(n_);
    }
    return out;
}

static std::size_t pred_or_throw(const Vocabulary& v, std::string_view name) {
    auto i = v.predicate_index(name);
    if (!i) throw PreconditionError("unknown predicate " + std::string(name));
    return *i;
}

bool FiniteStructure::holds(std::size_t pred, const std::vector<int>& args) const {
    if (args.size() != static_cast<std::size_t>(vocab_->predicates()[pred].arity))
        throw PreconditionError("arity mismatch for " + vocab_->predicates()[pred].name);
    return bits_[pred][tuple_index(args)] != 0;
}

bool FiniteStructure::holds(std::string_view pred, const std::vector<int>& args) const {
    return holds(pred_or_throw(*vocab_, pred), args);
}

void FiniteStructure::set(std::size_t pred, const std::vector<int>& args, bool value) {
    if (args.size() != static_cast<std::size_t>(vocab_->predicates()[pred].arity))
        throw PreconditionError("arity mismatch for " + vocab_->predicates()[pred].name);
    bits_[pred][tuple_index(args)] = value ? 1 : 0;
}

void FiniteStructure::set(std::string_view pred, const std::vector<int>& args, bool value) {
    set(pred_or_throw(*vocab_, pred), args, value);
}

int FiniteStructure::constant(std::string_view name) const {
    auto i = vocab_->constant_index(name);
    if (!i) throw PreconditionError("unknown constant " + std::string(name));
    return constants_[*i];
}

void FiniteStructure::set_constant(std::size_t index, int value) {
    if (value < 0 || value >= n_) throw PreconditionError("constant value outside universe");
    constants_[index] = value;
}

void FiniteStructure::set_constant(std::string_view name, int value) {
    auto i = vocab_->constant_index(name);
    if (!i) throw PreconditionError("unknown constant " + std::string(name));
    set_constant(*i, value);
}

std::vector<std::vector<int>> FiniteStructure::tuples(std::string_view pred) const {
    std::size_t p = pred_or_throw(*vocab_, pred);
    std::vector<std::vector<int>> out;
    for (std::size_t i = 0; i < bits_[p].size(); ++i)
        if (bits_[p][i]) out.push_back(tuple_at(p, i));
    return out;
}

std::uint64_t FiniteStructure::colour(int element) const {
    std::uint64_t c = 0;
    int bit = 0;
    for (std::size_t p = 0; p < bits_.size(); ++p) {
        if (vocab_->predicates()[p].arity != 1) continue;
        if (bits_[p][static_cast<std::size_t>(element)]) c |= std::uint64_t{1} << bit;
        ++bit;
    }
    return c;
}

bool FiniteStructure::operator==(const FiniteStructure& other) const {
    return n_ == other.n_ && bits_ == other.bits_ && constants_ == other.constants_ &&
           (vocab_ == other.vocab_ || *vocab_ == *other.vocab_);
}

// ---------------------------------------------------------------- evaluation

namespace {

struct Env {
    std::vector<std::pair<const std::string*, int>> stack;
    const Assignment* outer;

    int lookup(const std::string& v) const {
        for (auto it = stack.rbegin(); it != stack.rend(); ++it)
            if (*it->first == v) return it->second;
        auto f = outer->find(v);
        if (f == outer->end()) throw PreconditionError("no value for free variable " + v);
        return f->second;
    }
};

int term_value(const FiniteStructure& m, const Term& t, const Env& env) {
    if (t.is_constant()) return m.constant(t.name);
    return env.lookup(t.name);
}

bool eval_rec(const FiniteStructure& m, const Formula& f, Env& env) {
    using K = Formula::Kind;
    switch (f.kind()) {
        case K::True: return true;
        case K::False: return false;
        case K::Atom: {
            auto p = m.vocabulary().predicate_index(f.predicate());
            if (!p) throw PreconditionError("formula uses predicate " + f.predicate() + " outside the vocabulary");
            std::vector<int> args;
            args.reserve(f.terms().size());
            for (const auto& t : f.terms()) args.push_back(term_value(m, t, env));
            return m.holds(*p, args);
        }
        case K::Equal: return term_value(m, f.terms()[0], env) == term_value(m, f.terms()[1], env);
        case K::Not: return !eval_rec(m, f.children()[0], env);
        case K::And:
            for (const auto& c : f.children())
                if (!eval_rec(m, c, env)) return false;
            return true;
        case K::Or:
            for (const auto& c : f.children())
                if (eval_rec(m, c, env)) return true;
            return false;
        case K::Implies: return !eval_rec(m, f.children()[0], env) || eval_rec(m, f.children()[1], env);
        case K::Iff: return eval_rec(m, f.children()[0], env) == eval_rec(m, f.children()[1], env);
        case K::Forall:
        case K::Exists: {
            bool universal = f.kind() == K::Forall;
            env.stack.push_back({&f.variable(), 0});
            bool result = universal;
            for (int e = 0; e < m.size(); ++e) {
                env.stack.back().second = e;
                bool v = eval_rec(m, f.body(), env);
                if (v != universal) {
                    result = v;
                    break;
                }
            }
            env.stack.pop_back();
            return result;
        }
    }
    return false;
}

}  // namespace

bool evaluate(const FiniteStructure& m, const Formula& f, const Assignment& assignment) {
    Env env{{}, &assignment};
    return eval_rec(m, f, env);
}

bool evaluate(const FiniteStructure& m, const PrenexForm& pf, const Assignment& assignment) {
    detail::CompiledPrenex c(pf, m.vocabulary());
    std::vector<int> values(static_cast<std::size_t>(c.slot_count()), 0);
    for (const auto& v : pf.free_vars) {
        auto it = assignment.find(v);
        if (it == assignment.end()) throw PreconditionError("no value for free variable " + v);
        values[static_cast<std::size_t>(c.slot(v))] = it->second;
    }
    return c.eval(m, values);
}

// ---------------------------------------------------------------- compiled prenex

namespace detail {

CompiledPrenex::CompiledPrenex(const PrenexForm& pf, const Vocabulary& vocab) {
    for (const auto& q : pf.prefix) {
        if (slot_of_.count(q.name)) throw PreconditionError("repeated prefix variable " + q.name);
        slot_of_[q.name] = static_cast<int>(quantifiers_.size());
        quantifiers_.push_back(q.quantifier);
    }
    for (const auto& v : pf.free_vars)
        if (!slot_of_.count(v)) slot_of_[v] = static_cast<int>(slot_of_.size());
    ready_at_.assign(quantifiers_.size() + 1, {});
    for (const auto& cl : pf.matrix) {
        std::vector<CompiledLiteral> lits;
        int level = 0;
        for (const auto& l : cl) {
            CompiledLiteral cl2;
            cl2.positive = l.positive;
            if (!l.atom.is_equality()) {
                auto p = vocab.predicate_index(l.atom.predicate);
                if (!p) throw PreconditionError("predicate " + l.atom.predicate + " outside the vocabulary");
                cl2.pred = static_cast<int>(*p);
                if (l.atom.args.size() != static_cast<std::size_t>(vocab.predicates()[*p].arity))
                    throw PreconditionError("arity mismatch for " + l.atom.predicate);
            }
            for (const auto& t : l.atom.args) {
                if (t.is_constant()) {
                    auto ci = vocab.constant_index(t.name);
                    if (!ci) throw PreconditionError("undeclared constant " + t.name);
                    cl2.args.push_back(-static_cast<int>(*ci) - 1);
                } else {
                    auto it = slot_of_.find(t.name);
                    if (it == slot_of_.end()) throw PreconditionError("unbound matrix variable " + t.name);
                    cl2.args.push_back(it->second);
                    if (it->second < static_cast<int>(quantifiers_.size())) level = std::max(level, it->second + 1);
                }
            }
            lits.push_back(std::move(cl2));
        }
        ready_at_[static_cast<std::size_t>(level)].push_back(clauses_.size());
        clauses_.push_back(std::move(lits));
    }
}

bool CompiledPrenex::literal_true(const CompiledLiteral& l, const FiniteStructure& m,
                                  const std::vector<int>& values) const {
    auto val = [&](int a) {
        return a >= 0 ? values[static_cast<std::size_t>(a)] : m.constant(static_cast<std::size_t>(-a - 1));
    };
    bool v;
    if (l.pred < 0) {
        v = val(l.args[0]) == val(l.args[1]);
    } else {
        std::size_t idx = 0;
        for (int a : l.args) idx = idx * static_cast<std::size_t>(m.size()) + static_cast<std::size_t>(val(a));
        v = m.holds(static_cast<std::size_t>(l.pred), idx);
    }
    return v == l.positive;
}

bool CompiledPrenex::clause_true(std::size_t c, const FiniteStructure& m, const std::vector<int>& values) const {
    for (const auto& l : clauses_[c])
        if (literal_true(l, m, values)) return true;
    return false;
}

bool CompiledPrenex::eval_matrix(const FiniteStructure& m, const std::vector<int>& values) const {
    for (std::size_t c = 0; c < clauses_.size(); ++c)
        if (!clause_true(c, m, values)) return false;
    return true;
}

bool CompiledPrenex::eval_from(std::size_t depth, const FiniteStructure& m, std::vector<int>& values) const {
    for (std::size_t c : ready_at_[depth])
        if (!clause_true(c, m, values)) return false;
    if (depth == quantifiers_.size()) return true;
    bool universal = quantifiers_[depth] == Quantifier::Forall;
    for (int e = 0; e < m.size(); ++e) {
        values[depth] = e;
        if (eval_from(depth + 1, m, values) != universal) return !universal;
    }
    return universal;
}

bool CompiledPrenex::eval(const FiniteStructure& m, std::vector<int>& values) const {
    return eval_from(0, m, values);
}

}  // namespace detail

// ---------------------------------------------------------------- substructures

Substructure generated_substructure(const FiniteStructure& m, const std::vector<int>& subset) {
    std::vector<int> elems = subset;
    std::sort(elems.begin(), elems.end());
    elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
    if (elems.empty()) throw PreconditionError("substructure subset must be nonempty");
    for (int e : elems)
        if (e < 0 || e >= m.size()) throw PreconditionError("subset element outside universe");
    std::vector<int> relabel(static_cast<std::size_t>(m.size()), -1);
    for (std::size_t i = 0; i < elems.size(); ++i) relabel[static_cast<std::size_t>(elems[i])] = static_cast<int>(i);

    FiniteStructure out(m.vocabulary_ptr(), static_cast<int>(elems.size()));
    const auto& vocab = m.vocabulary();
    for (std::size_t c = 0; c < vocab.constants().size(); ++c) {
        int r = relabel[static_cast<std::size_t>(m.constant(c))];
        if (r < 0) throw PreconditionError("constant " + vocab.constants()[c] + " lies outside the subset");
        out.set_constant(c, r);
    }
    const int k = static_cast<int>(elems.size());
    for (std::size_t p = 0; p < vocab.predicates().size(); ++p) {
        int ar = vocab.predicates()[p].arity;
        std::vector<int> digits(static_cast<std::size_t>(ar), 0);
        for (std::size_t idx = 0; idx < out.tuple_count(p); ++idx) {
            std::size_t rem = idx;
            std::size_t parent = 0;
            for (int i = ar - 1; i >= 0; --i) {
                digits[static_cast<std::size_t>(i)] = static_cast<int>(rem % static_cast<std::size_t>(k));
                rem /= static_cast<std::size_t>(k);
            }
            for (int i = 0; i < ar; ++i)
                parent = parent * static_cast<std::size_t>(m.size()) +
                         static_cast<std::size_t>(elems[static_cast<std::size_t>(digits[static_cast<std::size_t>(i)])]);
            out.set(p, idx, m.holds(p, parent));
        }
    }
    return {std::move(out), std::move(elems)};
}

bool restrict_eq(const FiniteStructure& m1, const FiniteStructure& m2, const std::set<std::string>& sigma) {
    if (!(m1.vocabulary() == m2.vocabulary())) throw PreconditionError("restrict_eq: vocabulary mismatch");
    if (m1.size() != m2.size()) throw PreconditionError("restrict_eq: universe sizes differ");
    for (const auto& name : sigma) {
        auto p = m1.vocabulary().predicate_index(name);
        if (!p) throw PreconditionError("restrict_eq: unknown predicate " + name);
        if (m1.bits(*p) != m2.bits(*p)) return false;
    }
    return true;
}

// ---------------------------------------------------------------- enumeration

std::optional<std::uint64_t> structure_count(const Vocabulary& vocab, int n) {
    if (n < 1) throw PreconditionError("universe size must be at least 1");
    std::uint64_t bits = 0;
    for (const auto& p : vocab.predicates()) {
        std::uint64_t t = 1;
        for (int i = 0; i < p.arity; ++i) {
            t *= static_cast<std::uint64_t>(n);
            if (t > 63) return std::nullopt;
        }
        bits += t;
        if (bits > 63) return std::nullopt;
    }
    std::uint64_t count = std::uint64_t{1} << bits;
    for (std::size_t c = 0; c < vocab.constants().size(); ++c) {
        if (count > UINT64_MAX / static_cast<std::uint64_t>(n)) return std::nullopt;
        count *= static_cast<std::uint64_t>(n);
    }
    return count;
}

StructureEnumerator::StructureEnumerator(const Vocabulary& vocab, int n, EnumerationOptions options)
    : vocab_(std::make_shared<const Vocabulary>(vocab)), n_(n), options_(options), current_(vocab_, n) {
    auto c = structure_count(vocab, n);
    if (!c || *c > options.cap) throw CapExceeded("structure enumeration", c ? *c : UINT64_MAX, options.cap);
    count_ = *c;
}

void StructureEnumerator::reset() {
    current_ = FiniteStructure(vocab_, n_);
    started_ = false;
    done_ = false;
}

bool StructureEnumerator::advance_constants() {
    const std::size_t m = vocab_->constants().size();
    for (std::size_t i = m; i-- > 0;) {
        int limit = n_ - 1;
        if (options_.break_constant_symmetry) {
            int mx = -1;
            for (std::size_t j = 0; j < i; ++j) mx = std::max(mx, current_.constant(j));
            limit = std::min(limit, mx + 1);
        }
        if (current_.constant(i) < limit) {
            current_.set_constant(i, current_.constant(i) + 1);
            for (std::size_t j = i + 1; j < m; ++j) current_.set_constant(j, 0);
            return true;
        }
    }
    return false;
}

bool StructureEnumerator::advance_bits() {
    const auto& preds = vocab_->predicates();
    for (std::size_t p = preds.size(); p-- > 0;) {
        for (std::size_t i = current_.tuple_count(p); i-- > 0;) {
            if (!current_.holds(p, i)) {
                current_.set(p, i, true);
                return true;
            }
            current_.set(p, i, false);
        }
    }
    return false;
}

bool StructureEnumerator::next(FiniteStructure& out) {
    if (done_) return false;
    if (!started_) {
        started_ = true;
    } else if (!advance_constants()) {
        for (std::size_t j = 0; j < vocab_->constants().size(); ++j) current_.set_constant(j, 0);
        if (!advance_bits()) {
            done_ = true;
            return false;
        }
    }
    out = current_;
    return true;
}

std::vector<FiniteStructure> enumerate_structures(const Vocabulary& vocab, int n, EnumerationOptions options) {
    StructureEnumerator e(vocab, n, options);
    std::vector<FiniteStructure> out;
    out.reserve(static_cast<std::size_t>(std::min<std::uint64_t>(e.count(), 1u << 20)));
    FiniteStructure m = e.make();
    while (e.next(m)) out.push_back(m);
    return out;
}

// ---------------------------------------------------------------- JSON

std::string structure_to_json(const FiniteStructure& m) {
    nlohmann::ordered_json j;
    j["n"] = m.size();
    nlohmann::ordered_json pred = nlohmann::ordered_json::object();
    for (const auto& p : m.vocabulary().predicates()) pred[p.name] = m.tuples(p.name);
    j["pred"] = pred;
    nlohmann::ordered_json cons = nlohmann::ordered_json::object();
    for (const auto& c : m.vocabulary().constants()) cons[c] = m.constant(c);
    j["const"] = cons;
    return j.dump();
}

FiniteStructure structure_from_json(std::string_view text, const Vocabulary& vocab) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw PreconditionError(std::string("structure JSON: ") + e.what());
    }
    if (!j.contains("n") || !j["n"].is_number_integer()) throw PreconditionError("structure JSON: missing \"n\"");
    FiniteStructure m(vocab, j["n"].get<int>());
    if (j.contains("pred")) {
        for (const auto& [name, tuples] : j["pred"].items()) {
            if (!vocab.has_predicate(name)) throw PreconditionError("structure JSON: unknown predicate " + name);
            for (const auto& t : tuples) m.set(name, t.get<std::vector<int>>(), true);
        }
    }
    for (const auto& c : vocab.constants()) {
        if (!j.contains("const") || !j["const"].contains(c))
            throw PreconditionError("structure JSON: constant " + c + " has no value");
        m.set_constant(c, j["const"][c].get<int>());
    }
    return m;
}

std::string format_structure(const FiniteStructure& m) {
    std::ostringstream os;
    os << "n=" << m.size();
    for (const auto& p : m.vocabulary().predicates()) {
        os << ' ' << p.name << "={";
        bool first = true;
        for (const auto& t : m.tuples(p.name)) {
            if (!first) os << ',';
            first = false;
            os << '(';
            for (std::size_t i = 0; i < t.size(); ++i) os << (i ? "," : "") << t[i];
            os << ')';
        }
        os << '}';
    }
    for (const auto& c : m.vocabulary().constants()) os << ' ' << c << '=' << m.constant(c);
    return os.str();
}

}  // namespace ebs
