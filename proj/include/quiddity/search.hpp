#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "quiddity/irreducible.hpp"
#include "quiddity/ring.hpp"

namespace quiddity {

/// Size bounds for irreducible solutions over a ring A.
struct BoundsReport {
  std::uint64_t sl2_order = 0;
  std::string sl2_method;  // "formula" or "enumeration"
  /// Pigeonhole bound from the unitriangular subgroup:
  /// |SL2(A)| / |A| + 2 in characteristic 2, else |SL2(A)| / (2|A|) + 2.
  std::uint64_t theta = 0;
  /// Sharper bound max(4, |SL2(A)| / |SL2(prime subring)| + 2), available in
  /// characteristic 2 or 3 when the ring properly contains its prime subring.
  std::optional<std::uint64_t> coset_bound;
  /// Every ring admits an irreducible solution of size max(4, car(A)).
  std::uint64_t lower = 0;
};

/// Throws only when |SL2(A)| is not computable (no closed form and the ring
/// is too large to enumerate).
BoundsReport compute_bounds(const Ring& ring);

struct SearchOptions {
  /// Upper limit on search nodes (candidate entries examined). When a scan
  /// would exceed it, that scan's results are discarded entirely rather
  /// than truncated, and the exceeded flag is set. Whether the limit is hit
  /// depends only on the search itself, not on scheduling.
  std::uint64_t node_budget = 1'000'000'000;
  /// Worker threads. Results are byte-identical for any worker count.
  std::uint32_t workers = 1;
};

struct QuiddityCount {
  std::uint64_t count = 0;
  std::uint64_t nodes = 0;
  bool budget_exceeded = false;
};

struct QuiddityEnum {
  /// All solutions of the given size, in lexicographic order.
  std::vector<std::vector<Elem>> tuples;
  std::uint64_t nodes = 0;
  bool budget_exceeded = false;
};

struct IrreducibleEnum {
  /// Canonical (dihedral) normal forms, lexicographically sorted.
  std::vector<std::vector<Elem>> normal_forms;
  /// Number of raw irreducible tuples, i.e. the sum of class orbit sizes.
  std::uint64_t raw_count = 0;
  std::uint64_t nodes = 0;
  bool budget_exceeded = false;
};

/// Number of solutions of size exactly n (ordered tuples).
QuiddityCount count_quiddities(const Ring& ring, std::uint32_t n,
                               const SearchOptions& options = {},
                               const SubsetR* subset = nullptr);

/// Every solution of size exactly n as raw tuples. Intended for small
/// searches; prefer count_quiddities / ell_search for large ones.
QuiddityEnum enumerate_quiddities(const Ring& ring, std::uint32_t n,
                                  const SearchOptions& options = {},
                                  const SubsetR* subset = nullptr);

/// Every irreducible solution of size exactly n, one normal form per
/// equivalence class. With a subset, entries and reduction borders are
/// both constrained to it.
IrreducibleEnum enumerate_irreducible(const Ring& ring, std::uint32_t n,
                                      const SearchOptions& options = {},
                                      const SubsetR* subset = nullptr);

struct SizeScan {
  std::uint32_t n = 0;
  std::uint64_t quiddity_count = 0;
  std::uint64_t irreducible_count = 0;        // raw tuples
  std::uint64_t irreducible_class_count = 0;  // equivalence classes
  std::vector<std::vector<Elem>> normal_forms;
};

struct SearchReport {
  Ring ring;
  std::optional<std::vector<Elem>> subset_members;
  std::uint32_t max_n_requested = 0;
  std::vector<SizeScan> sizes;  // fully scanned sizes, ascending
  /// Largest size with an irreducible solution among scanned sizes; 0 when
  /// none were found.
  std::uint32_t max_irreducible_found = 0;
  /// Last size whose scan completed within budget.
  std::uint32_t verified_up_to = 0;
  /// Sizes above this bound cannot carry irreducible solutions: the best of
  /// theta / coset bound for a plain ring, |SL2(A)| + 2 for a subset run
  /// (border reconstruction from an identity collision stays inside any
  /// additively closed subset).
  std::uint64_t bound_used = 0;
  /// True when verified_up_to >= bound_used, i.e. max_irreducible_found is
  /// the exact maximum over all sizes, not just the scanned ones.
  bool certified_complete = false;
  bool budget_exceeded = false;
  std::uint64_t nodes = 0;
  BoundsReport bounds;
};

/// Scans sizes 3..max_n, counting solutions and collecting irreducible
/// classes per size. Throws std::logic_error if an irreducible solution
/// shows up above bound_used (that would disprove the bound).
SearchReport ell_search(const Ring& ring, std::uint32_t max_n,
                        const SearchOptions& options = {},
                        const SubsetR* subset = nullptr);

/// The all-twos tuple (2, 2, ..., 2) of size car(A), an irreducible
/// solution witnessing lower >= car(A) when car(A) >= 4. Verifies the
/// product matrix is Id before returning; irreducibility is cheap for the
/// caller to confirm via is_irreducible.
std::vector<Elem> certificate_two_tuple(const Ring& ring);

struct MonotonicityReport {
  std::string embedding;  // human-readable description of the map
  SearchReport sub_report;
  SearchReport super_report;
  bool both_certified = false;
  /// max irreducible size of the subring <= that of the superring; nullopt
  /// unless both searches are certified complete.
  std::optional<bool> holds;
};

/// Supported embedding: Z/p into Z/p[x]/(f) as constant polynomials. An
/// inclusion of a factor into a direct product is rejected explicitly (it
/// does not preserve the identity), anything else as unsupported; both via
/// std::invalid_argument.
MonotonicityReport monotonicity_check(const RingSpec& sub, const RingSpec& super,
                                      std::uint32_t max_n,
                                      const SearchOptions& options = {},
                                      const RingConfig& config = {});

}  // namespace quiddity
