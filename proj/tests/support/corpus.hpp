#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ebs/parser.hpp"

namespace ebs::testing {

struct Entry {
    std::string name;
    std::string text;
    /// σ under which the sentence is a base EDP member ("*" = every predicate); nullopt if none.
    std::optional<std::string> sigma;
    /// Exhaustive repair check runs on models up to this size; 0 keeps the entry out.
    int repair_nmax = 0;
    /// Member of the equispectral set (EDP for σ = ∅ with a translation small enough to ground at 5).
    bool equispectral = false;
};

const std::vector<Entry>& corpus();
const Entry& entry(const std::string& name);

Problem load(const Entry& e);
std::set<std::string> sigma_of(const Entry& e, const Vocabulary& vocab);

/// Syntactic BSR sentences without constants.
const std::vector<std::string>& bsr_sentences();

}  // namespace ebs::testing
