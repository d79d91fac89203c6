#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "ebs/formula.hpp"

namespace ebs {

using Assignment = std::map<std::string, int>;

/// Finite Σ-structure over the universe {0, ..., n-1}. Each predicate is stored as a
/// bitmap indexed by the tuple read as a base-n number (first argument most significant).
/// Equality is never stored.
class FiniteStructure {
public:
    FiniteStructure(const Vocabulary& vocab, int n);
    FiniteStructure(std::shared_ptr<const Vocabulary> vocab, int n);

    const Vocabulary& vocabulary() const { return *vocab_; }
    const std::shared_ptr<const Vocabulary>& vocabulary_ptr() const { return vocab_; }
    int size() const { return n_; }

    std::size_t tuple_count(std::size_t pred) const { return bits_[pred].size(); }
    std::size_t tuple_index(const std::vector<int>& args) const;
    std::vector<int> tuple_at(std::size_t pred, std::size_t index) const;

    bool holds(std::size_t pred, std::size_t tuple_index) const { return bits_[pred][tuple_index] != 0; }
    bool holds(std::size_t pred, const std::vector<int>& args) const;
    bool holds(std::string_view pred, const std::vector<int>& args) const;
    void set(std::size_t pred, std::size_t tuple_index, bool value) { bits_[pred][tuple_index] = value ? 1 : 0; }
    void set(std::size_t pred, const std::vector<int>& args, bool value);
    void set(std::string_view pred, const std::vector<int>& args, bool value);

    int constant(std::size_t index) const { return constants_[index]; }
    int constant(std::string_view name) const;
    void set_constant(std::size_t index, int value);
    void set_constant(std::string_view name, int value);
    const std::vector<int>& constant_values() const { return constants_; }

    /// Tuples of `pred` in increasing index order.
    std::vector<std::vector<int>> tuples(std::string_view pred) const;
    const std::vector<std::uint8_t>& bits(std::size_t pred) const { return bits_[pred]; }

    /// Colour of an element: bit i set iff the i-th unary predicate (declaration order) holds.
    std::uint64_t colour(int element) const;

    bool operator==(const FiniteStructure& other) const;

private:
    std::shared_ptr<const Vocabulary> vocab_;
    int n_;
    std::vector<std::vector<std::uint8_t>> bits_;
    std::vector<int> constants_;
};

/// Tarskian truth. Throws PreconditionError when a free variable lacks a value.
bool evaluate(const FiniteStructure& m, const Formula& f, const Assignment& assignment = {});
bool evaluate(const FiniteStructure& m, const PrenexForm& pf, const Assignment& assignment = {});

struct Substructure {
    FiniteStructure structure;
    std::vector<int> elements;  // new element i is elements[i] of the parent
};

/// Substructure generated by `subset`; elements are relabeled in sorted order.
Substructure generated_substructure(const FiniteStructure& m, const std::vector<int>& subset);

/// True iff the σ-predicates of m1 and m2 coincide.
bool restrict_eq(const FiniteStructure& m1, const FiniteStructure& m2, const std::set<std::string>& sigma);

/// 2^(Σ n^arity) · n^|constants|, or nullopt on 64-bit overflow.
std::optional<std::uint64_t> structure_count(const Vocabulary& vocab, int n);

struct EnumerationOptions {
    std::uint64_t cap = std::uint64_t{1} << 24;
    /// Only constant valuations in restricted-growth form. Off by default so counts are exact.
    bool break_constant_symmetry = false;
};

/// Streams every structure of size n. Relation bitmaps advance lexicographically (all
/// predicates concatenated in declaration order, tuples in index order) and, for each
/// bitmap, constant valuations advance as an odometer with the last constant fastest.
class StructureEnumerator {
public:
    StructureEnumerator(const Vocabulary& vocab, int n, EnumerationOptions options = {});
    std::uint64_t count() const { return count_; }
    /// Writes the next structure into `out`; false when exhausted.
    bool next(FiniteStructure& out);
    FiniteStructure make() const { return FiniteStructure(vocab_, n_); }
    void reset();

private:
    bool advance_constants();
    bool advance_bits();
    std::shared_ptr<const Vocabulary> vocab_;
    int n_;
    EnumerationOptions options_;
    std::uint64_t count_ = 0;
    FiniteStructure current_;
    bool started_ = false;
    bool done_ = false;
};

std::vector<FiniteStructure> enumerate_structures(const Vocabulary& vocab, int n, EnumerationOptions options = {});

/// {"n":3,"pred":{"P":[[0,1],[1,2]]},"const":{"c":0}}
std::string structure_to_json(const FiniteStructure& m);
FiniteStructure structure_from_json(std::string_view text, const Vocabulary& vocab);
std::string format_structure(const FiniteStructure& m);

}  // namespace ebs
