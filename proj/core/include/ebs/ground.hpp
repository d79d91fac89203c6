#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ebs/formula.hpp"
#include "ebs/structure.hpp"

namespace ebs {

/// Ground atom P(e1, ..., ek) over universe elements (or over constant indices in
/// Herbrand mode; see bsr_ground).
struct GroundAtom {
    std::string predicate;
    std::vector<int> args;
    auto operator<=>(const GroundAtom&) const = default;
};

/// Bijection between ground atoms and the dense ids 1..size().
class AtomTable {
public:
    int intern(const GroundAtom& a);
    std::optional<int> find(const GroundAtom& a) const;
    const GroundAtom& atom(int id) const { return atoms_.at(static_cast<std::size_t>(id - 1)); }
    int size() const { return static_cast<int>(atoms_.size()); }
    /// Element display names used by name(); defaults to the decimal element index.
    void set_element_names(std::vector<std::string> names) { element_names_ = std::move(names); }
    std::string name(int id) const;

private:
    std::vector<GroundAtom> atoms_;
    std::map<GroundAtom, int> ids_;
    std::vector<std::string> element_names_;
};

/// Propositional formula over atom ids. Literals are nonzero ints (sign = polarity).
class PropFormula {
public:
    enum class Kind { True, False, Lit, And, Or, Not };

    static PropFormula top() { return PropFormula(Kind::True); }
    static PropFormula bottom() { return PropFormula(Kind::False); }
    static PropFormula lit(int l);
    /// Simplifying constructors: constants absorbed, singletons unwrapped.
    static PropFormula conj(std::vector<PropFormula> kids);
    static PropFormula disj(std::vector<PropFormula> kids);
    static PropFormula negate(PropFormula p);

    Kind kind() const { return kind_; }
    int literal() const { return lit_; }
    const std::vector<PropFormula>& children() const { return kids_; }
    bool eval(const std::vector<bool>& value) const;  // value[id] for ids 1..n
    std::size_t node_count() const;
    int max_var() const;

private:
    explicit PropFormula(Kind k) : kind_(k) {}
    Kind kind_;
    int lit_ = 0;
    std::vector<PropFormula> kids_;
};

struct GroundCnf {
    int num_vars = 0;
    std::vector<std::vector<int>> clauses;
    bool operator==(const GroundCnf&) const = default;
};

/// Partial interpretation used to pin ground atoms during grounding.
using PinnedAtoms = std::map<GroundAtom, bool>;

struct GroundOptions {
    /// Values of the vocabulary constants (required when the sentence mentions constants).
    std::optional<std::vector<int>> constant_values;
    /// Atoms replaced by truth constants.
    PinnedAtoms fixed;
    /// Every atom of these predicates is replaced by its truth value in `pin_source`.
    std::set<std::string> pinned_predicates;
    const FiniteStructure* pin_source = nullptr;
    /// Pre-register every ground atom of every predicate (so ids do not depend on the sentence).
    bool register_all_atoms = false;
    std::size_t node_cap = 1'000'000;
};

struct Grounding {
    PropFormula formula = PropFormula::top();
    AtomTable atoms;
};

/// Expands ∀ to conjunctions and ∃ to disjunctions over {0..n-1}; concrete equalities are
/// decided on the spot.
Grounding ground_fixed_universe(const PrenexForm& pf, const Vocabulary& vocab, int n, const GroundOptions& options = {});
Grounding ground_formula(const Formula& f, const Vocabulary& vocab, int n, const GroundOptions& options = {});
/// Continues grounding into an existing table.
PropFormula ground_into(const Formula& f, const Vocabulary& vocab, int n, const GroundOptions& options,
                        AtomTable& atoms);

/// Pins every atom of the σ-predicates to its value in `m`.
PinnedAtoms pin_predicates(const FiniteStructure& m, const std::set<std::string>& sigma);

/// Registers every ground atom of the vocabulary at size n, in predicate then tuple order.
void register_all_atoms(AtomTable& table, const Vocabulary& vocab, int n);

/// Builds the structure described by a solver assignment over `atoms`.
FiniteStructure structure_from_assignment(const Vocabulary& vocab, int n, const AtomTable& atoms,
                                          const std::vector<bool>& value, const std::vector<int>& constants = {});

/// Equisatisfiable CNF with one fresh variable per internal node (full equivalence
/// definitions) and a unit clause on the root. Fresh variables start after `first_fresh - 1`
/// (default: the largest id in p).
GroundCnf tseitin(const PropFormula& p, int first_fresh = 0);

struct SolverOptions {
    /// Conflict-driven clause learning (1UIP) with non-chronological backjumping.
    bool learning = false;
    /// Stop after this many conflicts (0 = unlimited); the result is then `unknown`.
    std::uint64_t conflict_limit = 0;
};

struct SolverStats {
    std::uint64_t decisions = 0;
    std::uint64_t propagations = 0;
    std::uint64_t conflicts = 0;
    std::uint64_t learned = 0;
};

struct SolveResult {
    enum class Status { Sat, Unsat, Unknown };
    Status status = Status::Unknown;
    /// Index by variable id (entry 0 unused); size num_vars + 1 when SAT.
    std::vector<bool> assignment;
    SolverStats stats;
    bool sat() const { return status == Status::Sat; }
};

/// DPLL with two watched literals, first-unassigned branching and false-first phase.
SolveResult dpll_solve(const GroundCnf& cnf, const SolverOptions& options = {});

/// Every satisfying assignment restricted to `projection`, each exactly once. The search
/// branches on projection variables first and, after each model, backtracks to the most
/// recent untried projection decision; this is equivalent to adding a blocking clause
/// over the projection. The visitor returns false to stop early.
using ModelVisitor = std::function<bool(const std::vector<bool>& projected)>;
std::uint64_t all_models(const GroundCnf& cnf, const std::vector<int>& projection, const ModelVisitor& visit);
std::vector<std::vector<bool>> all_models(const GroundCnf& cnf, const std::vector<int>& projection);

/// BSR grounding: ∃-variables become constants `c_<var>` (one constant `c_0` if there are
/// none at all), universals range over the constants, and equality between constants
/// becomes a propositional atom `=`(i, j), i < j, with transitivity and congruence clauses.
/// Atom arguments index `constants`.
struct BsrGrounding {
    GroundCnf cnf;
    AtomTable atoms;
    std::vector<std::string> constants;
};
BsrGrounding bsr_ground(const PrenexForm& pf, const Vocabulary& vocab, std::size_t clause_cap = 1'000'000);

/// DIMACS with atom names as leading `c` comments.
std::string export_dimacs(const GroundCnf& cnf, const AtomTable& atoms);
std::string export_dimacs(const GroundCnf& cnf);

}  // namespace ebs
