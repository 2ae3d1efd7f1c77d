#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>

#include "quiddity/ring.hpp"

namespace quiddity {

/// 2x2 matrix over a ring, row major.
struct Mat2 {
  Elem a = 0, b = 0;  // top row
  Elem c = 0, d = 0;  // bottom row

  friend bool operator==(const Mat2&, const Mat2&) = default;
};

Mat2 mat_identity(const Ring& ring);
Mat2 mat_mul(const Ring& ring, const Mat2& lhs, const Mat2& rhs);
Mat2 mat_neg(const Ring& ring, const Mat2& m);
Elem mat_det(const Ring& ring, const Mat2& m);

/// Inverse assuming det = 1: [[d,-b],[-c,a]]. Does not verify the assumption.
Mat2 mat_inverse_det1(const Ring& ring, const Mat2& m);

std::string format_matrix(const Ring& ring, const Mat2& m);

/// The elementary factor [[a, -1], [1, 0]]; always has determinant 1.
Mat2 generator_matrix(const Ring& ring, Elem a);

/// Product M(entries[n-1]) * ... * M(entries[0]): each new factor multiplies
/// on the LEFT. Empty input gives the identity.
Mat2 generator_product(const Ring& ring, std::span<const Elem> entries);

/// Continuant K_n: K of the empty sequence is 1, and
/// K(a_1..a_i) = a_i * K(a_1..a_{i-1}) - K(a_1..a_{i-2}).
Elem continuant(const Ring& ring, std::span<const Elem> entries);

/// Cross-checks generator_product against the closed continuant form
///   [[ K(a_1..a_n),      -K(a_2..a_n)      ],
///    [ K(a_1..a_{n-1}),  -K(a_2..a_{n-1})  ]]
/// entry by entry. Returns true iff all four entries agree.
bool mat_vs_continuant_check(const Ring& ring, std::span<const Elem> entries);

/// Thrown by sl2_order_formula when no closed form applies to the spec.
class FormulaNotApplicable : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// |SL2| by closed form. Handles Z/N, quotients by an irreducible modulus
/// (i.e. fields F_q), and products of such factors. Throws
/// FormulaNotApplicable for quotients by a reducible modulus.
std::uint64_t sl2_order_formula(const RingSpec& spec);

/// |SL2| by direct enumeration of all (a,b,c,d) with ad - bc = 1. Intended
/// for small rings; throws std::invalid_argument when size() > guard.
std::uint64_t sl2_order_enumerate(const Ring& ring, std::uint64_t guard = 64);

/// Closed form when applicable, else enumeration (subject to the same guard).
std::uint64_t sl2_order(const Ring& ring, std::uint64_t guard = 64);

}  // namespace quiddity
