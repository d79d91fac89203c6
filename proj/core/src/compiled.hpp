#pragma once

// Slot-compiled prenex matrices for fast repeated evaluation. Internal to ebs_core.

#include <map>
#include <string>
#include <vector>

#include "ebs/formula.hpp"
#include "ebs/structure.hpp"

namespace ebs::detail {

struct CompiledLiteral {
    bool positive = true;
    int pred = -1;           // predicate index, -1 for equality
    std::vector<int> args;   // >= 0: variable slot; < 0: constant -(idx + 1)
};

class CompiledPrenex {
public:
    CompiledPrenex(const PrenexForm& pf, const Vocabulary& vocab);

    /// `values` must hold an entry per slot; free-variable slots are read, the rest written.
    bool eval(const FiniteStructure& m, std::vector<int>& values) const;
    bool eval_matrix(const FiniteStructure& m, const std::vector<int>& values) const;
    /// Truth of the suffix starting at prefix position `depth`, with slots before it fixed.
    /// Clauses that became ground earlier are assumed to hold.
    bool holds_from(std::size_t depth, const FiniteStructure& m, std::vector<int>& values) const {
        return eval_from(depth, m, values);
    }

    int slot(const std::string& var) const { return slot_of_.at(var); }
    bool has_slot(const std::string& var) const { return slot_of_.count(var) > 0; }
    int slot_count() const { return static_cast<int>(slot_of_.size()); }
    std::size_t prefix_size() const { return quantifiers_.size(); }
    bool literal_true(const CompiledLiteral& l, const FiniteStructure& m, const std::vector<int>& values) const;
    const std::vector<std::vector<CompiledLiteral>>& clauses() const { return clauses_; }

private:
    bool eval_from(std::size_t depth, const FiniteStructure& m, std::vector<int>& values) const;
    bool clause_true(std::size_t c, const FiniteStructure& m, const std::vector<int>& values) const;

    std::vector<Quantifier> quantifiers_;  // slot i is bound by quantifiers_[i]
    std::map<std::string, int> slot_of_;
    std::vector<std::vector<CompiledLiteral>> clauses_;
    std::vector<std::vector<std::size_t>> ready_at_;  // clauses fully bound after depth d
};

inline std::size_t tuple_offset(const std::vector<int>& elems, int n) {
    std::size_t idx = 0;
    for (int e : elems) idx = idx * static_cast<std::size_t>(n) + static_cast<std::size_t>(e);
    return idx;
}

}  // namespace ebs::detail
