#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "quiddity/mat2.hpp"
#include "quiddity/ring.hpp"

namespace quiddity {

/// A verified decomposition t ~ left + right. With
///   v = reflected ? reverse(t) : t,   u = rotate_left(v, rotation),
/// the tuple u equals sum_oplus(left_tuple, right_quiddity) exactly, the
/// right factor is a solution with product matrix alpha * Id, and both
/// factors have size >= 3.
///
/// right_quiddity = (c1, w, cl) where w is the window of v at
/// [window_start, window_start + window_len) (1-based, cyclic) whose
/// continuant is +-1, and c1, cl are the reconstructed borders.
struct ReductionWitness {
  bool reflected = false;
  std::uint32_t rotation = 0;
  std::uint32_t window_start = 0;  // 1-based position in v
  std::uint32_t window_len = 0;
  int alpha = 0;                   // +1 or -1
  Elem c1 = 0;
  Elem cl = 0;
  std::vector<Elem> left_tuple;
  std::vector<Elem> right_quiddity;
};

/// Searches all cyclic windows of t and of t reversed, lengths 1..n-3, for a
/// window with continuant +-1 whose reconstructed borders stay inside the
/// subset (when one is given), and builds the full decomposition from the
/// first hit. Scan order: unreflected before reflected, shorter windows
/// first, then by start position. Returns nullopt when no window works,
/// which for a solution tuple means it is irreducible.
std::optional<ReductionWitness> find_reduction_window(const Ring& ring,
                                                      std::span<const Elem> t,
                                                      const SubsetR* subset = nullptr);

/// For a solution tuple: true iff it cannot be split as a sum of smaller
/// solutions over the (sub)ring. Sizes 1 and 2 are never counted as
/// irreducible. Meaningless for tuples that are not solutions.
bool is_irreducible(const Ring& ring, std::span<const Elem> t,
                    const SubsetR* subset = nullptr);

/// Definition-level reducibility test: tries every equivalent form of t,
/// every split point, and every border pair, checking the right part for
/// being a solution directly. Exponential-free but still O(n^2 |A|^2 n);
/// guarded to size() <= 16 and t.size() <= 10 (std::invalid_argument).
bool brute_force_reducible(const Ring& ring, std::span<const Elem> t,
                           const SubsetR* subset = nullptr);

/// Re-checks every claim inside a witness against t. Used by tests and by
/// the decomposition paths that construct witnesses indirectly.
bool verify_witness(const Ring& ring, std::span<const Elem> t,
                    const ReductionWitness& witness, const SubsetR* subset = nullptr);

// ---------------------------------------------------------------------------
// Coset systems: factor SL2(A) by a small subgroup H and key matrices by
// their right coset H*M. Prefixes of a solution landing in the same coset
// yield a window with continuant +-1, which is how long tuples are split
// without scanning all windows.

enum class CosetKind {
  /// H = {+-[[1, t], [0, 1]]}: |H| = |A| in characteristic 2, else 2|A|.
  kUnitriangular,
  /// H = SL2 of the prime subring; needs characteristic 2 or 3 and a ring
  /// strictly larger than the prime subring.
  kPrimeSubring,
};

class CosetSystem {
 public:
  CosetKind kind() const { return kind_; }
  const Ring& ring() const { return ring_; }
  std::uint64_t subgroup_order() const { return subgroup_order_; }
  /// |SL2(A)| / |H|, the number of right cosets.
  std::uint64_t index() const { return index_; }
  /// Equal keys <=> same right coset H*M (complete invariant).
  std::uint64_t coset_key(const Mat2& m) const;

 private:
  friend CosetSystem build_coset_system(const Ring& ring, CosetKind kind);
  CosetSystem() = default;

  CosetKind kind_ = CosetKind::kUnitriangular;
  Ring ring_;
  std::uint64_t subgroup_order_ = 0;
  std::uint64_t index_ = 0;
  std::vector<Mat2> subgroup_;  // materialized H for the prime-subring kind
};

/// Throws std::invalid_argument when the kind does not apply to the ring
/// (see CosetKind) or the ring is too large to key (prime-subring keys pack
/// four entries, so size must fit in 16 bits).
CosetSystem build_coset_system(const Ring& ring, CosetKind kind);

/// max(index + 3, 5): every solution tuple of size >= threshold is certain
/// to produce a usable prefix collision.
std::uint64_t collision_threshold(const CosetSystem& system);

struct PrefixCollision {
  std::uint32_t i = 0;  // earlier prefix length
  std::uint32_t j = 0;  // later prefix length, window covers entries i+1..j
};

struct DecomposeOutcome {
  /// Whether t.size() >= threshold, i.e. absence of a witness would have
  /// been a hard error rather than an inconclusive answer.
  bool guaranteed = false;
  std::uint64_t threshold = 0;
  std::optional<PrefixCollision> collision;
  std::optional<ReductionWitness> witness;
};

/// Scans prefix matrices M_1..M_{n-2} for coset collisions and converts the
/// first usable one into a reduction witness. Above the threshold a witness
/// is certain for plain-ring inputs (std::logic_error if the scan fails
/// anyway); below it, absence is reported as an empty outcome.
DecomposeOutcome decompose_via_cosets(const Ring& ring, std::span<const Elem> t,
                                      const CosetSystem& system,
                                      const SubsetR* subset = nullptr);

// ---------------------------------------------------------------------------

enum class TargetValue { kZero, kOne, kMinusOne };

struct ContinuantHit {
  std::uint32_t length = 0;  // i: number of consecutive entries
  std::uint32_t start = 0;   // j: 1-based start, window does not wrap
};

/// First (by length, then by start) non-wrapping window of t whose
/// continuant equals the target. Every target in {0, 1, -1} is guaranteed
/// to occur once t.size() >= 3 |SL2(A)| + 1.
std::optional<ContinuantHit> find_continuant_value(const Ring& ring,
                                                   std::span<const Elem> t,
                                                   TargetValue target);

}  // namespace quiddity
