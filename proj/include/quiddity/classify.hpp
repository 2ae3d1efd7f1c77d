#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "quiddity/search.hpp"

namespace quiddity {

struct SizeComparison {
  std::uint32_t n = 0;
  std::uint64_t expected_count = 0;
  std::uint64_t found_count = 0;
  std::vector<std::vector<Elem>> missing;     // expected but not found
  std::vector<std::vector<Elem>> unexpected;  // found but not expected
  bool pass = false;
};

struct ClassifyReport {
  Ring ring;
  std::string fixture_path;
  /// "raw" compares full tuple sets, "rotation_classes" compares one
  /// lexicographically minimal representative per rotation class.
  std::string comparison;
  std::uint32_t scan_to = 0;
  std::uint64_t bound_used = 0;
  /// scan_to reaches bound_used, so the fixture covers every size there is.
  bool certified = false;
  bool budget_exceeded = false;
  std::vector<SizeComparison> per_size;
  bool overall_pass = false;
};

/// Enumerates irreducible solutions up to the fixture's scan_to size and
/// compares them against the reference lists stored for this ring. The
/// fixture directory is scanned for a *.json file whose "ring" field names
/// the same ring; std::invalid_argument lists the available rings when
/// none matches.
ClassifyReport classify_against_fixture(const Ring& ring, const std::string& fixture_dir,
                                        const SearchOptions& options = {});

}  // namespace quiddity
