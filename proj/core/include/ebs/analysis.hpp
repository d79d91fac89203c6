#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ebs/formula.hpp"
#include "ebs/structure.hpp"
#include "ebs/translate.hpp"

namespace ebs {

struct SatEffort {
    std::uint64_t sizes_tried = 0;       // universe sizes attempted by model search
    std::uint64_t groundings = 0;        // fixed-universe groundings solved
    std::uint64_t conflicts = 0;         // solver conflicts, summed
    int ground_depth = -1;               // deepest Herbrand level refuted (interleaved only)
    std::uint64_t herbrand_clauses = 0;  // ground clauses produced (interleaved only)
};

struct SatOutcome {
    enum class Verdict { Sat, Unsat, Unknown };
    Verdict verdict = Verdict::Unknown;
    std::optional<FiniteStructure> model;  // Sat only; verified with evaluate
    SatEffort effort;
    std::string note;
};

std::string verdict_name(SatOutcome::Verdict v);

struct SearchOptions {
    std::size_t node_cap = 2'000'000;  // ground formula nodes per size
    bool learning = true;
};

/// A model of exactly size n, or nullopt. Constant valuations are enumerated in
/// restricted-growth order, which covers every valuation up to isomorphism.
std::optional<FiniteStructure> find_model(const Formula& sentence, const Vocabulary& vocab, int n,
                                          const SearchOptions& options = {}, SatEffort* effort = nullptr);

/// Model search over sizes 1..max(B,1). Complete only if the sentence, when satisfiable,
/// has a model of size at most max(B,1); the verdict is never Unknown.
SatOutcome decide_sat_bounded(const Formula& sentence, const Vocabulary& vocab, std::uint64_t bound,
                              const SearchOptions& options = {});

struct HerbrandBudget {
    int max_size = 4;
    int max_depth = 2;
    std::uint64_t max_steps = 100000;  // ground clauses plus solver conflicts
};

/// Alternates finite model search (size 1, 2, ...) with refutation over ground instances
/// of the Skolemized clauses by increasing term depth. Returns the first firm verdict;
/// Unknown when the budget runs out.
SatOutcome interleaved_sat(const Formula& sentence, const Vocabulary& vocab, const HerbrandBudget& budget,
                           const SearchOptions& options = {});

struct SpectrumResult {
    int n_max = 0;
    std::vector<bool> realizable;  // index 1..n_max (entry 0 unused)
    std::vector<std::optional<FiniteStructure>> witnesses;
    std::vector<int> sizes() const;
};

SpectrumResult spectrum(const Formula& sentence, const Vocabulary& vocab, int n_max,
                        const SearchOptions& options = {});

struct EquivResult {
    bool equivalent = true;
    int n_cap = 0;
    std::optional<FiniteStructure> countermodel;
    bool first_holds = false;  // truth of f in the countermodel
};

/// No structure of size <= n_cap tells f and g apart. Sound as a refuter only.
EquivResult bounded_equiv(const Formula& f, const Formula& g, const Vocabulary& vocab, int n_cap,
                          const SearchOptions& options = {});

struct CoreEvidence {
    std::vector<int> core;  // candidate M1
    std::vector<int> m2;    // an M2 with M1 ⊆ M2 ⊆ M that admits no M2′
};

struct EbsVerdict {
    bool pass = true;
    std::set<std::string> sigma;
    std::uint64_t bound = 0;
    int n_max = 0;
    std::uint64_t models_checked = 0;
    std::optional<FiniteStructure> model;  // fail only
    std::optional<std::vector<int>> m2;    // the M2 refuting the first candidate core
    std::vector<CoreEvidence> evidence;    // one entry per candidate core
};

struct OracleOptions {
    std::uint64_t model_cap = 5'000'000;
    SearchOptions search;
};

/// Bounded check of the extensible bounded sub-model property: for every model M with
/// B < |M| <= n_max, some M1 ⊆ M with |M1| <= B containing every constant must make each
/// M2 (M1 ⊆ M2 ⊆ M) completable to a model M2′ on the same universe agreeing with M2 on σ.
/// Models of size <= B pass with M1 = M.
EbsVerdict ebs_oracle(const Formula& sentence, const Vocabulary& vocab, const std::set<std::string>& sigma,
                      std::uint64_t bound, int n_max, const OracleOptions& options = {});

/// Re-checks a fail verdict: the model satisfies the sentence and every candidate core has
/// a recorded M2 for which no σ-preserving completion exists.
bool ebs_replay(const EbsVerdict& verdict, const Formula& sentence, const Vocabulary& vocab,
                const SearchOptions& options = {});

/// True iff some M2′ on M2's universe agrees with M2 on σ and satisfies the sentence.
bool completable(const Formula& sentence, const FiniteStructure& m2, const std::set<std::string>& sigma,
                 const SearchOptions& options = {});

struct FindBoundResult {
    std::optional<std::uint64_t> bound;
    std::optional<TranslationResult> bsr;
    int n_cap = 0;
    std::string caveat;  // equivalence is only verified up to n_cap
};

/// Least B <= b_max whose equivalent-mode translation agrees with the source on every
/// structure of size <= n_cap.
FindBoundResult find_bound_bounded(const PrenexForm& pf, const Vocabulary& vocab, std::uint64_t b_max, int n_cap,
                                   const SearchOptions& options = {});

struct SearchSpaceNote {
    std::uint64_t bound = 0;
    std::vector<std::optional<std::uint64_t>> per_size;  // structures of size n = 1..max(B,1)
    std::optional<std::uint64_t> total;                  // nullopt on overflow
    double log2_total = 0.0;
};

/// Size of the guess-and-check search space behind the bounded decision procedure.
SearchSpaceNote edp_nexptime_note(const Vocabulary& vocab, std::uint64_t bound);

}  // namespace ebs
