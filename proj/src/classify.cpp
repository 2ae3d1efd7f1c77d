#include "quiddity/classify.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>

#include "json.hpp"
#include "quiddity/tuples.hpp"

namespace quiddity {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

json load_fixture_for(const Ring& ring, const std::string& fixture_dir,
                      std::string& path_out) {
  std::vector<std::string> available;
  if (!fs::is_directory(fixture_dir)) {
    throw std::invalid_argument("fixture directory not found: " + fixture_dir);
  }
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(fixture_dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  for (const auto& path : files) {
    std::ifstream in(path);
    json doc;
    try {
      in >> doc;
    } catch (const json::exception&) {
      continue;  // not a fixture
    }
    if (!doc.is_object() || !doc.contains("ring") || !doc["ring"].is_string()) continue;
    const std::string named = doc["ring"].get<std::string>();
    RingSpec spec;
    try {
      spec = parse_ring_spec(named);
    } catch (const ParseError&) {
      continue;
    }
    if (normalize_spec(spec).canonical_text() == ring.name()) {
      path_out = path.string();
      return doc;
    }
    available.push_back(named);
  }
  std::string msg = "no fixture for ring " + ring.name() + " in " + fixture_dir;
  if (!available.empty()) {
    msg += " (available:";
    for (const auto& a : available) msg += " " + a;
    msg += ")";
  }
  throw std::invalid_argument(msg);
}

std::vector<Elem> parse_entry_list(const Ring& ring, const json& arr) {
  std::vector<Elem> out;
  out.reserve(arr.size());
  for (const auto& lit : arr) out.push_back(ring.parse_element(lit.get<std::string>()));
  return out;
}

// Canonical comparison keys for one irreducible class, under the fixture's
// comparison mode.
std::set<std::vector<Elem>> expand_class(const Ring& ring, const std::vector<Elem>& nf,
                                         const std::string& comparison) {
  std::set<std::vector<Elem>> out;
  const std::vector<Elem> rev(nf.rbegin(), nf.rend());
  if (comparison == "raw") {
    for (std::size_t r = 0; r < nf.size(); ++r) {
      out.insert(rotate_left(nf, r));
      out.insert(rotate_left(rev, r));
    }
  } else {
    out.insert(lex_min_rotation(nf));
    out.insert(lex_min_rotation(rev));
  }
  return out;
}

}  // namespace

ClassifyReport classify_against_fixture(const Ring& ring, const std::string& fixture_dir,
                                        const SearchOptions& options) {
  ClassifyReport rep;
  rep.ring = ring;
  json doc = load_fixture_for(ring, fixture_dir, rep.fixture_path);

  rep.comparison = doc.at("comparison").get<std::string>();
  if (rep.comparison != "raw" && rep.comparison != "rotation_classes") {
    throw std::invalid_argument("fixture " + rep.fixture_path +
                                ": comparison must be raw or rotation_classes");
  }
  rep.scan_to = doc.at("scan_to").get<std::uint32_t>();

  const BoundsReport bounds = compute_bounds(ring);
  rep.bound_used = std::min(bounds.theta, bounds.coset_bound.value_or(UINT64_MAX));
  rep.certified = rep.scan_to >= rep.bound_used;

  // Expected tuples per size, canonicalized the same way as search results.
  std::map<std::uint32_t, std::set<std::vector<Elem>>> expected;
  for (const auto& [key, lists] : doc.at("expected").items()) {
    const auto n = static_cast<std::uint32_t>(std::stoul(key));
    for (const auto& arr : lists) {
      std::vector<Elem> t = parse_entry_list(ring, arr);
      if (t.size() != n) {
        throw std::invalid_argument("fixture " + rep.fixture_path + ": a size-" + key +
                                    " entry has " + std::to_string(t.size()) + " elements");
      }
      if (rep.comparison == "rotation_classes") t = lex_min_rotation(t);
      expected[n].insert(std::move(t));
    }
  }

  rep.overall_pass = true;
  std::uint64_t consumed = 0;
  for (std::uint32_t n = 3; n <= rep.scan_to; ++n) {
    SearchOptions per = options;
    per.node_budget = options.node_budget - consumed;
    IrreducibleEnum found = enumerate_irreducible(ring, n, per, nullptr);
    if (found.budget_exceeded) {
      rep.budget_exceeded = true;
      rep.overall_pass = false;
      rep.certified = false;
      break;
    }
    consumed += found.nodes;

    std::set<std::vector<Elem>> got;
    for (const auto& nf : found.normal_forms) {
      auto expanded = expand_class(ring, nf, rep.comparison);
      got.insert(expanded.begin(), expanded.end());
    }
    const auto& want = expected[n];
    if (want.empty() && got.empty()) continue;

    SizeComparison cmp;
    cmp.n = n;
    cmp.expected_count = want.size();
    cmp.found_count = got.size();
    std::set_difference(want.begin(), want.end(), got.begin(), got.end(),
                        std::back_inserter(cmp.missing));
    std::set_difference(got.begin(), got.end(), want.begin(), want.end(),
                        std::back_inserter(cmp.unexpected));
    cmp.pass = cmp.missing.empty() && cmp.unexpected.empty();
    if (!cmp.pass) rep.overall_pass = false;
    rep.per_size.push_back(std::move(cmp));
  }

  // Fixture sizes beyond scan_to would never be checked; treat as an error.
  for (const auto& [n, lists] : expected) {
    if (n > rep.scan_to && !lists.empty()) {
      throw std::invalid_argument("fixture " + rep.fixture_path +
                                  " lists tuples beyond its own scan_to");
    }
  }
  return rep;
}

}  // namespace quiddity
