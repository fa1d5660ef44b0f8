#pragma once

#include <string>

#include <json.hpp>

#include "omd/budgeted/budgeted.hpp"
#include "omd/core/instance.hpp"
#include "omd/mechanism/mechanism.hpp"
#include "omd/reduction/lexrank.hpp"

namespace omd::io {

using Json = nlohmann::json;

/// Rationals travel as "num/den" strings; "num" and plain JSON integers are
/// accepted on input.
Rational rational_from_json(const Json& j, const std::string& field);
Json rational_to_json(const Rational& r);

/// Sorted 1-based index list.
Subset subset_from_json(const Json& j, int ground_size, const std::string& field);
Json subset_to_json(Subset s);

OmdInstance instance_from_json(const Json& j);
Json instance_to_json(const OmdInstance& inst);

/// {"n", "menu": [{"type", "u", "q", "price"}]} over all 2^n types in mask order.
Json mechanism_to_json(const mechanism::Mechanism& mech);
mechanism::Mechanism mechanism_from_json(const Json& j);

reduction::LexRankInstance lexrank_from_json(const Json& j);
reduction::SubsetSumInstance subsetsum_from_json(const Json& j);
budgeted::BudgetedInstance budgeted_from_json(const Json& j);

/// Reads and parses a whole file; ParseError names the path on failure.
Json read_json_file(const std::string& path);

}  // namespace omd::io
