#pragma once

#include <span>

#include "json.hpp"
#include "quiddity/classify.hpp"
#include "quiddity/irreducible.hpp"
#include "quiddity/search.hpp"

namespace quiddity {

/// Tuples serialize as arrays of element literals, e.g. ["x+1", "0", "x"].
nlohmann::json tuple_to_json(const Ring& ring, std::span<const Elem> entries);
nlohmann::json tuples_to_json(const Ring& ring,
                              const std::vector<std::vector<Elem>>& tuples);

nlohmann::json witness_to_json(const Ring& ring, const ReductionWitness& witness);
nlohmann::json bounds_to_json(const BoundsReport& bounds);
nlohmann::json search_report_to_json(const SearchReport& report);
nlohmann::json classify_report_to_json(const ClassifyReport& report);
nlohmann::json monotonicity_report_to_json(const MonotonicityReport& report);

}  // namespace quiddity
