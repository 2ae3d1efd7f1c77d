#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "quiddity/ring.hpp"

namespace quiddity {

/// Which of M_n = Id / M_n = -Id hold. Over characteristic 2 both hold at
/// once for every solution.
struct SignSet {
  bool plus = false;
  bool minus = false;
};

/// Evaluates the generator product of `entries` and reports whether it is
/// plus or minus the identity; nullopt when it is neither.
std::optional<SignSet> quiddity_sign(const Ring& ring, std::span<const Elem> entries);

/// (a_1..a_n) + (b_1..b_m) -> (a_1 + b_m, a_2, ..., a_{n-1}, a_n + b_1,
/// b_2, ..., b_{m-1}), of size n + m - 2. Both operands need size >= 2.
/// The sum of two solutions is a solution, and a sum with a solution on the
/// right is a solution only if the left operand is one.
std::vector<Elem> sum_oplus(const Ring& ring, std::span<const Elem> a,
                            std::span<const Elem> b);

std::vector<Elem> rotate_left(std::span<const Elem> t, std::size_t r);

/// Lexicographically smallest rotation (element indices compared).
std::vector<Elem> lex_min_rotation(std::span<const Elem> t);

/// Lexicographically smallest tuple among all rotations of t and of t
/// reversed: a canonical representative of the equivalence class of t.
std::vector<Elem> dihedral_normal_form(std::span<const Elem> t);

/// True iff the tuples agree up to rotation and reversal.
bool equivalent(std::span<const Elem> a, std::span<const Elem> b);

/// Number of distinct tuples among the 2n rotations/reflections of t.
std::uint64_t dihedral_orbit_size(std::span<const Elem> t);

/// Every solution of size n <= 4, as a sorted list of raw tuples:
///   n = 1: none; n = 2: (0,0);
///   n = 3: (1,1,1) and (-1,-1,-1);
///   n = 4: (-a, b, a, -b) for ab = 0, and (a, b, a, b) for ab = 2.
/// Throws std::invalid_argument for n outside 1..4.
std::vector<std::vector<Elem>> small_classification(const Ring& ring, std::uint32_t n);

/// "[lit, lit, ...]" with the ring's element literals; "[]" is the empty
/// tuple. Commas split at top nesting level only.
std::vector<Elem> parse_tuple(const Ring& ring, std::string_view text);

std::string format_tuple(const Ring& ring, std::span<const Elem> entries);

}  // namespace quiddity
