#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ebs/formula.hpp"

namespace ebs {

struct Directive {
    std::string key;
    std::string value;  // raw text between the key and ';', trimmed, comments removed
    bool operator==(const Directive&) const = default;
};

/// A parsed `.fol` file.
struct Problem {
    Vocabulary vocabulary;
    std::optional<Formula> formula;
    std::vector<std::string> declared_free;  // from `@free`
    std::vector<Directive> directives;       // every other directive, in file order

    bool operator==(const Problem&) const = default;

    /// Value of the first directive named `key`.
    std::optional<std::string> directive(std::string_view key) const;
    /// The formula; throws PreconditionError when the file has none.
    const Formula& sentence() const;
};

/// Grammar:
///   vocab P/2, Q/1;   const c, d;   @key text;   # comment
///   formula with forall x. / exists x y. / ! & | -> <-> = != true false ( )
/// Precedence from tightest: ! & | -> <->. `->` is right-associative, quantifier
/// scope extends as far right as possible. Symbols must be declared before use.
Problem parse_problem(std::string_view text);

/// Parses a stand-alone formula against a vocabulary; variables in `declared_free`
/// may occur unbound.
Formula parse_formula(std::string_view text, const Vocabulary& vocab,
                      const std::vector<std::string>& declared_free = {});

/// Comma-separated identifier list, e.g. the value of `@sigma`.
std::vector<std::string> parse_name_list(std::string_view text);

/// Canonical text; parse_problem(render(p)) == p.
std::string render(const Problem& p);
std::string render_vocabulary(const Vocabulary& v);

}  // namespace ebs
