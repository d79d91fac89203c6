#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "ebs/formula.hpp"
#include "ebs/ground.hpp"
#include "ebs/structure.hpp"

// Brute-force references. Nothing here shares code with the engines it checks
// beyond evaluate and the structure enumerator.
namespace ebs::testing {

/// SAT by trying all 2^n assignments; n <= 24.
bool truth_table_sat(const GroundCnf& cnf);
bool satisfies(const GroundCnf& cnf, const std::vector<bool>& assignment);

/// Some structure of size n satisfies f. Stops at the first one.
bool brute_has_model(const Formula& f, const Vocabulary& vocab, int n);

/// Visits every model of f of size n; the visitor returns false to stop.
std::uint64_t brute_models(const Formula& f, const Vocabulary& vocab, int n,
                           const std::function<bool(const FiniteStructure&)>& visit);

/// Sizes 1..n_max with a model.
std::vector<int> brute_spectrum(const Formula& f, const Vocabulary& vocab, int n_max);

/// Every superset of `core` inside {0..n-1}, as sorted vectors.
std::vector<std::vector<int>> supersets(const std::vector<int>& core, int n);

/// Every model of f of size n via the solver's model enumeration (faster than brute
/// force for sparse model sets); each model is checked with evaluate before the visit.
std::uint64_t solver_models(const Formula& f, const Vocabulary& vocab, int n,
                            const std::function<bool(const FiniteStructure&)>& visit);

}  // namespace ebs::testing
