#pragma once

#include <string>
#include <vector>

#include "ebs/analysis.hpp"
#include "ebs/edp.hpp"
#include "ebs/formula.hpp"
#include "ebs/parser.hpp"

namespace ebs {

/// States are tuples of first-order variables. `trans` refers to the next state through
/// the variables `<name>_next`.
struct TransitionSystem {
    Vocabulary vocabulary;
    std::vector<std::string> state_vars;
    Formula init;
    Formula trans;
    Formula prop;
};

/// Reads `@statevars`, `@init`, `@trans` and `@prop` from a parsed file.
TransitionSystem transition_system_from(const Problem& p);

/// Shipped demo over {Q/1, P/2}: start in a Q-marked state, step along a P-edge to a
/// different state whose successors are Q-marked or lead back, and look for a state
/// without Q. Counterexamples exist exactly for odd k.
std::string demo_transition_system_text();
TransitionSystem demo_transition_system();

/// Name of component j (1-based) of state i.
std::string step_variable(std::size_t i, std::size_t j);

/// ∃s0..sk I(s0) ∧ T(s0,s1) ∧ ... ∧ T(s(k-1),sk) ∧ P(sk).
Formula unroll_bmc(const TransitionSystem& ts, int k);
/// ∃s0..sk P(s0) ∧ T(s0,s1) ∧ P(s1) ∧ ... ∧ P(s(k-1)) ∧ T(s(k-1),sk) ∧ ¬P(sk); k >= 1.
Formula unroll_ind(const TransitionSystem& ts, int k);

enum class UnrollKind { Bmc, Induction };

struct BmcResult {
    int k = 0;
    UnrollKind kind = UnrollKind::Bmc;
    Formula sentence;
    PrenexForm pcnf;
    BoundReport bound;
    SatOutcome outcome;
};

/// unroll, normalize, check EDP for σ = ∅ (base, eq-free-EU, eq-EU-EU, relaxed, in that
/// order), bound, and decide with the bounded search. Throws PreconditionError listing the
/// diagnostics when no variant accepts the unrolled sentence.
BmcResult bmc_solve(const TransitionSystem& ts, int k, UnrollKind kind = UnrollKind::Bmc,
                    const SearchOptions& options = {});

}  // namespace ebs
