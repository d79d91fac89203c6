#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ebs/formula.hpp"

namespace ebs {

enum class TranslationMode { Equivalent, Equispectral };

std::string mode_name(TranslationMode m);

struct TranslationSize {
    std::size_t clauses = 0;    // clauses of the re-normalized matrix
    std::uint64_t disjuncts = 0;  // substituted copies of the matrix
};

struct TranslationResult {
    PrenexForm bsr;                      // ∃*∀*
    std::vector<std::string> fresh;      // x1..xB as named in the output
    std::vector<std::string> pool;       // free vars, leftmost ∃ block, then fresh
    TranslationMode mode = TranslationMode::Equivalent;
    TranslationSize size;
};

struct TranslateOptions {
    std::uint64_t disjunct_cap = 100000;
    std::size_t clause_cap = 100000;
    /// Flat layout: one shared ∀ block, and in equivalent mode every inner ∃ variable may
    /// take any universal. Kept for comparison; it can admit models of ψ that are not
    /// models of the source when a universal follows an inner ∃.
    bool flat_layout = false;
};

/// ψ = ∃pool ∀z_0 ⋁_{u_1} ∀z_1 ⋁_{u_2} ... matrix[v_i ↦ u_i], prenexed by giving each
/// branch its own copy of the universals below it. u_i ranges over the pool and the
/// universals preceding v_i. Every model of ψ is a model of the source.
TranslationResult to_bsr_equivalent(const PrenexForm& pf, std::uint64_t bound, const TranslateOptions& options = {});

/// Same shape with every u_i ranging over the pool only.
TranslationResult to_bsr_equispectral(const PrenexForm& pf, std::uint64_t bound,
                                      const TranslateOptions& options = {});

/// BSR sentence whose spectrum is `sizes`, plus every size ≥ `cofinite_from` when given.
/// For a nonempty vocabulary each predicate Q contributes a conjunct ∀z Q(z).
Formula spectrum_to_bsr(const std::set<int>& sizes, std::optional<int> cofinite_from, const Vocabulary& vocab);

}  // namespace ebs
