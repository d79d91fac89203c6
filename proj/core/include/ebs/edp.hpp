#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ebs/formula.hpp"
#include "ebs/structure.hpp"

namespace ebs {

enum class ArgRole { Free, Universal, Existential };
enum class SymbolClass { Free, Universal, Existential };

/// One predicate occurrence (equality included, as predicate "=").
struct Instance {
    std::string predicate;
    std::size_t clause = 0;
    std::size_t position = 0;  // literal index within the clause
    bool positive = true;
    std::vector<std::string> args;  // variable or constant names
    std::vector<ArgRole> roles;
    std::set<std::string> free_support;
    std::set<std::string> universal_support;
    std::set<std::string> existential_support;
    SymbolClass cls = SymbolClass::Free;
};

/// Role analysis of a prenex CNF formula. Free variables and constants count as free
/// arguments alongside the leftmost ∃-block.
struct Classification {
    PrenexForm form;
    Vocabulary vocabulary;

    std::vector<std::string> leftmost;        // V
    std::vector<std::string> inner;           // EV
    std::vector<std::string> universal;       // AV
    std::vector<std::string> unary_inner;     // E_U
    std::vector<std::string> non_unary_inner; // E̅_U = EV \ E_U
    std::vector<std::string> free_variables;  // declared free variables of the form

    std::vector<Instance> instances;
    /// Every vocabulary predicate, plus "=" when equality occurs. Unused predicates are free.
    std::map<std::string, SymbolClass> predicate_class;

    std::set<std::string> unary;                 // U
    std::set<std::string> free_predicates;       // F
    std::set<std::string> universal_predicates;  // A

    int k = 0;  // |U|
    int m = 0;  // number of constants
    int r = 0;  // |EV|
    int q = 0;  // prefix length

    ArgRole role_of(const std::string& name) const;
    bool is_unary_inner(const std::string& v) const;
    bool is_non_unary_inner(const std::string& v) const;
    /// Some position is non-universal in both instances and holds v in exactly one of them.
    bool pairwise_distinguishable(std::size_t i, std::size_t j, const std::string& v) const;
};

Classification classify(const PrenexForm& pf, const Vocabulary& vocab);

enum class EdpVariant {
    Base,
    RelaxedDistinguishability,
    EqFreeEU,
    EqEUEU,
    Lowenheim,
    LowenheimEq,
    LowenheimEqEU,
    CombinedExperimental,
};

std::string variant_name(EdpVariant v);
std::optional<EdpVariant> variant_from_name(const std::string& name);
std::vector<EdpVariant> all_variants();

struct EdpCheckResult {
    bool member = false;
    std::vector<std::string> diagnostics;
};

/// EDP_σ membership for the chosen variant. Never throws on a non-member.
EdpCheckResult edp_check(const Classification& c, const std::set<std::string>& sigma,
                         EdpVariant variant = EdpVariant::Base);
EdpCheckResult edp_check(const PrenexForm& pf, const Vocabulary& vocab, const std::set<std::string>& sigma,
                         EdpVariant variant = EdpVariant::Base);

/// σ = U ∪ F ∪ A when every arity-≥2 existential predicate has only same-polarity or
/// single-clause instances and equality has only free/universal instances.
std::optional<std::set<std::string>> edp_simple_sigma(const Classification& c);

struct BoundReport {
    EdpVariant variant = EdpVariant::Base;
    std::uint64_t bound = 0;
    /// Contributing quantities: "V", "EUbar", "EU", "2^k", "m", "q".
    std::map<std::string, std::uint64_t> terms;
};

/// Bound for the variant. Throws PreconditionError if the σ=∅ check for that variant fails.
BoundReport edp_bound(const Classification& c, EdpVariant variant = EdpVariant::Base);

/// Core of a model M: constants, witness values, one fresh a_i per E̅_U variable and, when
/// E_U is nonempty, the least element of each colour class outside Val(Free).
struct CoreSelection {
    std::vector<int> subset;                  // sorted
    std::vector<int> free_values;             // Val(Free): constants and witness values
    std::map<std::string, int> witness;       // leftmost ∃ and free variables
    std::map<std::string, int> fresh;         // a_i per E̅_U variable
    std::map<std::uint64_t, int> representative;  // colour -> a^c
    bool degenerate = false;                  // universe too small: the whole universe
};

/// Least witness (lexicographic over the leftmost ∃-block) for which the rest of the
/// sentence holds in M; nullopt if M is not a model. Free variables are taken from `free`.
std::optional<std::map<std::string, int>> leftmost_witness(const PrenexForm& pf, const FiniteStructure& m,
                                                           const Assignment& free = {});

CoreSelection edp_core(const PrenexForm& pf, const std::set<std::string>& sigma, const FiniteStructure& m,
                       const std::optional<std::map<std::string, int>>& witness = std::nullopt);

struct RepairStats {
    std::size_t assignments = 0;  // universal instantiations processed
    std::size_t forced = 0;       // atoms set by polarity
    std::size_t cured = 0;        // same-clause conflicts resolved
};

/// Builds M2′ on `mid` (a superset of the core) following the model-repair construction:
/// Selector, 𝒫₁ (instance values), 𝒫₂ (copy from M), and same-clause conflict curing.
/// Conflicts across clauses raise InternalError.
FiniteStructure edp_extend(const PrenexForm& pf, const std::set<std::string>& sigma, const FiniteStructure& m,
                           const CoreSelection& core, const std::vector<int>& mid, RepairStats* stats = nullptr);

struct Combined {
    Formula formula;
    BoundReport bound;
    std::set<std::string> sigma;
};

/// φ1 ∧ φ2 with bound B1 + B2; only for σ1 = σ2 = Σ.
Combined combine_and(const Formula& f1, std::uint64_t b1, const std::set<std::string>& s1, const Formula& f2,
                     std::uint64_t b2, const std::set<std::string>& s2, const Vocabulary& vocab);
/// φ1 ∨ φ2 with bound max(B1, B2) and σ = σ1 ∩ σ2.
Combined combine_or(const Formula& f1, std::uint64_t b1, const std::set<std::string>& s1, const Formula& f2,
                    std::uint64_t b2, const std::set<std::string>& s2, const Vocabulary& vocab);

std::string symbol_class_name(SymbolClass c);
std::string arg_role_name(ArgRole r);

}  // namespace ebs
