#include "quiddity/json_io.hpp"

namespace quiddity {

using nlohmann::json;

json tuple_to_json(const Ring& ring, std::span<const Elem> entries) {
  json out = json::array();
  for (Elem e : entries) out.push_back(ring.format_element(e));
  return out;
}

json tuples_to_json(const Ring& ring, const std::vector<std::vector<Elem>>& tuples) {
  json out = json::array();
  for (const auto& t : tuples) out.push_back(tuple_to_json(ring, t));
  return out;
}

json witness_to_json(const Ring& ring, const ReductionWitness& w) {
  return json{
      {"reflected", w.reflected},
      {"rotation", w.rotation},
      {"window", json{{"start", w.window_start}, {"length", w.window_len}}},
      {"alpha", w.alpha},
      {"c1", ring.format_element(w.c1)},
      {"cl", ring.format_element(w.cl)},
      {"left", tuple_to_json(ring, w.left_tuple)},
      {"right", tuple_to_json(ring, w.right_quiddity)},
  };
}

json bounds_to_json(const BoundsReport& b) {
  return json{
      {"sl2_order", b.sl2_order},
      {"sl2_method", b.sl2_method},
      {"theta", b.theta},
      {"coset_bound", b.coset_bound ? json(*b.coset_bound) : json(nullptr)},
      {"lower", b.lower},
  };
}

json search_report_to_json(const SearchReport& r) {
  json sizes = json::array();
  for (const auto& s : r.sizes) {
    sizes.push_back(json{
        {"n", s.n},
        {"quiddities", s.quiddity_count},
        {"irreducible_tuples", s.irreducible_count},
        {"irreducible_classes", s.irreducible_class_count},
        {"normal_forms", tuples_to_json(r.ring, s.normal_forms)},
    });
  }
  return json{
      {"ring", r.ring.name()},
      {"subset", r.subset_members ? tuple_to_json(r.ring, *r.subset_members)
                                  : json(nullptr)},
      {"max_n_requested", r.max_n_requested},
      {"sizes", sizes},
      {"max_irreducible_found", r.max_irreducible_found},
      {"ell_certified",
       r.certified_complete ? json(r.max_irreducible_found) : json(nullptr)},
      {"verified_up_to", r.verified_up_to},
      {"bound_used", r.bound_used},
      {"certified_complete", r.certified_complete},
      {"budget_exceeded", r.budget_exceeded},
      {"nodes", r.nodes},
      {"bounds", bounds_to_json(r.bounds)},
  };
}

json classify_report_to_json(const ClassifyReport& r) {
  json per = json::array();
  for (const auto& c : r.per_size) {
    per.push_back(json{
        {"n", c.n},
        {"expected", c.expected_count},
        {"found", c.found_count},
        {"missing", tuples_to_json(r.ring, c.missing)},
        {"unexpected", tuples_to_json(r.ring, c.unexpected)},
        {"pass", c.pass},
    });
  }
  return json{
      {"ring", r.ring.name()},
      {"fixture", r.fixture_path},
      {"comparison", r.comparison},
      {"scan_to", r.scan_to},
      {"bound_used", r.bound_used},
      {"certified", r.certified},
      {"budget_exceeded", r.budget_exceeded},
      {"per_size", per},
      {"overall_pass", r.overall_pass},
  };
}

json monotonicity_report_to_json(const MonotonicityReport& r) {
  return json{
      {"embedding", r.embedding},
      {"sub", search_report_to_json(r.sub_report)},
      {"super", search_report_to_json(r.super_report)},
      {"both_certified", r.both_certified},
      {"holds", r.holds ? json(*r.holds) : json(nullptr)},
  };
}

}  // namespace quiddity
