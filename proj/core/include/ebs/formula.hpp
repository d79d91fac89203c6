#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace ebs {

struct PredicateDecl {
    std::string name;
    int arity = 0;
    bool operator==(const PredicateDecl&) const = default;
};

/// Relational vocabulary: predicate symbols with arities plus constant symbols.
/// Predicates and constants share one namespace; "=" is reserved.
class Vocabulary {
public:
    void add_predicate(const std::string& name, int arity);
    void add_constant(const std::string& name);

    const std::vector<PredicateDecl>& predicates() const { return predicates_; }
    const std::vector<std::string>& constants() const { return constants_; }

    std::optional<std::size_t> predicate_index(std::string_view name) const;
    std::optional<std::size_t> constant_index(std::string_view name) const;
    std::optional<int> arity(std::string_view name) const;
    bool has_predicate(std::string_view name) const { return predicate_index(name).has_value(); }
    bool has_constant(std::string_view name) const { return constant_index(name).has_value(); }

    /// Names of the arity-1 predicates, in declaration order.
    std::vector<std::string> unary_predicates() const;
    std::set<std::string> predicate_names() const;

    bool operator==(const Vocabulary&) const = default;

private:
    std::vector<PredicateDecl> predicates_;
    std::vector<std::string> constants_;
};

struct Term {
    enum class Kind { Variable, Constant };
    Kind kind = Kind::Variable;
    std::string name;

    static Term var(std::string n) { return {Kind::Variable, std::move(n)}; }
    static Term constant(std::string n) { return {Kind::Constant, std::move(n)}; }
    bool is_variable() const { return kind == Kind::Variable; }
    bool is_constant() const { return kind == Kind::Constant; }

    auto operator<=>(const Term&) const = default;
};

enum class Quantifier { Forall, Exists };

/// Immutable first-order formula. Copies share structure.
class Formula {
public:
    enum class Kind { True, False, Atom, Equal, Not, And, Or, Implies, Iff, Forall, Exists };

    Formula();  // True

    static Formula top();
    static Formula bottom();
    static Formula atom(std::string predicate, std::vector<Term> args);
    static Formula equal(Term lhs, Term rhs);
    static Formula negate(Formula f);
    /// Zero children give True/False; a single child is returned unchanged.
    static Formula conj(std::vector<Formula> children);
    static Formula disj(std::vector<Formula> children);
    static Formula implies(Formula lhs, Formula rhs);
    static Formula iff(Formula lhs, Formula rhs);
    static Formula forall(std::string var, Formula body);
    static Formula exists(std::string var, Formula body);
    static Formula quantified(Quantifier q, std::string var, Formula body);

    Kind kind() const;
    bool is_quantifier() const { return kind() == Kind::Forall || kind() == Kind::Exists; }
    bool is_literal() const;

    /// Atom: predicate name. Equal: "=".
    const std::string& predicate() const;
    /// Atom arguments, or the two sides of an equality.
    const std::vector<Term>& terms() const;
    /// Not (1), And/Or (>= 2), Implies/Iff (2).
    const std::vector<Formula>& children() const;
    /// Bound variable of a quantifier node.
    const std::string& variable() const;
    /// Body of a quantifier node.
    const Formula& body() const;

    bool operator==(const Formula& other) const;
    bool operator!=(const Formula& other) const { return !(*this == other); }

    /// Node count, used for size reports.
    std::size_t size() const;

    struct Node;  // implementation detail

private:
    explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    std::shared_ptr<const Node> node_;
};

struct Atom {
    std::string predicate;  // "=" for equality
    std::vector<Term> args;

    bool is_equality() const { return predicate == "="; }
    auto operator<=>(const Atom&) const = default;
};

struct Literal {
    bool positive = true;
    Atom atom;
    auto operator<=>(const Literal&) const = default;
};

using Clause = std::vector<Literal>;

struct QuantifiedVar {
    Quantifier quantifier = Quantifier::Forall;
    std::string name;
    bool operator==(const QuantifiedVar&) const = default;
};

/// Prenex conjunctive normal form. An empty matrix is the true sentence; the
/// canonical contradiction is a matrix holding exactly one empty clause.
struct PrenexForm {
    std::vector<QuantifiedVar> prefix;
    std::vector<Clause> matrix;
    std::vector<std::string> free_vars;

    bool operator==(const PrenexForm&) const = default;

    bool is_contradiction() const;
    /// ∃*∀* prefix (free variables allowed).
    bool is_bsr() const;
    /// V: the maximal leftmost block of ∃-variables.
    std::vector<std::string> leftmost_existentials() const;
    /// EV: the ∃-variables outside the leftmost block.
    std::vector<std::string> inner_existentials() const;
    /// AV: the ∀-variables.
    std::vector<std::string> universals() const;
    std::size_t count_existentials() const;
};

using Substitution = std::map<std::string, Term>;

struct NormalizeOptions {
    std::size_t clause_cap = 10000;
};

std::set<std::string> free_vars(const Formula& f);

/// Capture-avoiding simultaneous substitution of free variable occurrences.
/// Bound variables that would capture a replacement are renamed to `name_k`.
Formula substitute(const Formula& f, const Substitution& m);
/// As above; additionally rejects replacements by constants that `vocab` does not declare.
Formula substitute(const Formula& f, const Substitution& m, const Vocabulary& vocab);

Formula to_nnf(const Formula& f);

/// Equivalence-preserving prenex CNF. Quantifiers are standardized apart (a repeated
/// name x becomes x_k with a per-call counter k) and then pulled out in left-to-right
/// traversal order, so a quantifier never moves past one that encloses it. The matrix is
/// distributed into CNF; more than `clause_cap` clauses raises CapExceeded.
PrenexForm to_pcnf(const Formula& f, const NormalizeOptions& options = {});

/// Prefix over a conjunction of disjunctions.
Formula to_formula(const PrenexForm& pf);
Formula literal_formula(const Literal& lit);

/// Throws PreconditionError describing the first violation: undeclared symbol, arity
/// mismatch, undeclared constant, or a variable neither bound nor in `declared_free`.
void check_well_formed(const Formula& f, const Vocabulary& vocab,
                       const std::vector<std::string>& declared_free = {});

/// Predicates occurring in `f` ("=" included when equality occurs).
std::set<std::string> predicates_of(const Formula& f);
bool mentions_equality(const Formula& f);
/// All variable names bound or free in `f`, plus constant and predicate names.
std::set<std::string> all_names(const Formula& f);

/// Plain-text rendering in the `.fol` concrete syntax, fully parenthesized.
std::string format_formula(const Formula& f);
std::string format_term(const Term& t);
std::string format_literal(const Literal& l);
std::string format_prenex(const PrenexForm& pf);

}  // namespace ebs
