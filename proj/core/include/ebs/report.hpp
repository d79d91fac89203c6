#pragma once

#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "ebs/analysis.hpp"
#include "ebs/bmc.hpp"
#include "ebs/edp.hpp"
#include "ebs/translate.hpp"

namespace ebs {

using Json = nlohmann::ordered_json;

Json structure_json(const FiniteStructure& m);
Json classification_json(const Classification& c);
Json bound_json(const BoundReport& b);
/// Classification report with the bound fields filled in when a bound is available.
Json classify_report(const Classification& c, const std::optional<BoundReport>& bound);
Json check_report(const EdpCheckResult& r, const std::set<std::string>& sigma, EdpVariant variant,
                  const std::optional<BoundReport>& bound);
Json translation_json(const TranslationResult& t);
Json sat_json(const SatOutcome& s);
Json spectrum_json(const SpectrumResult& s);
Json equiv_json(const EquivResult& e);
Json oracle_json(const EbsVerdict& v, bool replayed);
Json find_bound_json(const FindBoundResult& f);
Json search_space_json(const SearchSpaceNote& n);
Json bmc_json(const BmcResult& r);

/// Two-space indented dump followed by a newline.
std::string dump(const Json& j);

}  // namespace ebs
