#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace quiddity {

/// Dense element handle. Every element of a built ring is an index in
/// [0, size()); index 0 is always the additive zero.
using Elem = std::uint32_t;

/// Thrown by the ring-spec / element / tuple parsers. `position` is a 0-based
/// offset into the offending input text.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t position, const std::string& message)
      : std::runtime_error(message + " (at offset " + std::to_string(position) + ")"),
        position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

struct RingSpec;

/// Z/NZ with N >= 2. Element index = canonical residue.
struct ZModSpec {
  std::uint64_t modulus = 0;
};

/// (Z/pZ)[x]/(f) for a prime p and a monic modulus f of degree >= 1.
/// `modulus_coeffs` holds f reduced mod p, constant term first, leading
/// coefficient 1. f need not be irreducible. Element index = base-p value of
/// the representative's coefficient vector (constant term least significant).
struct QuotientSpec {
  std::uint32_t base_prime = 0;
  std::vector<std::uint32_t> modulus_coeffs;

  std::uint32_t degree() const {
    return modulus_coeffs.empty() ? 0 : static_cast<std::uint32_t>(modulus_coeffs.size() - 1);
  }
};

/// Direct product of factor rings, componentwise operations. Nested products
/// are flattened and single-factor products unwrapped during normalization.
/// Element index = mixed-radix over the factors, first factor least
/// significant.
struct ProductSpec {
  std::vector<RingSpec> factors;
};

struct RingSpec {
  std::variant<ZModSpec, QuotientSpec, ProductSpec> node;

  /// Round-trips through parse_ring_spec, e.g. "Z/2[x]/(x^2+x+1) x Z/3".
  std::string canonical_text() const;
};

/// Structural equality after normalization (flattening etc.).
bool operator==(const RingSpec& a, const RingSpec& b);

/// Grammar (whitespace-insensitive):
///   spec    := product
///   product := atom { "x" atom }
///   atom    := "Z/" int | "Z/" int "[x]/(" poly ")" | "(" spec ")"
/// Errors (with position): syntax, N < 2, non-prime quotient base, non-monic
/// or degree-0 modulus (after reduction mod p).
RingSpec parse_ring_spec(std::string_view text);

struct RingConfig {
  /// Hard cap on the number of elements.
  std::uint64_t max_ring_size = std::uint64_t{1} << 20;
  /// Operation tables are precomputed for rings up to this size; above it,
  /// operations are evaluated structurally on demand.
  std::uint64_t table_threshold = 4096;
};

/// A built finite commutative unitary ring. Cheap to copy (shared immutable
/// state); thread-safe for concurrent reads.
class Ring {
 public:
  Ring() = default;

  bool valid() const noexcept { return impl_ != nullptr; }
  const RingSpec& spec() const;
  /// Canonical spec text, e.g. "Z/4".
  const std::string& name() const;
  std::uint64_t size() const;
  std::uint64_t characteristic() const;

  Elem zero() const noexcept { return 0; }
  Elem one() const;
  Elem minus_one() const;
  /// k * 1_A for any signed k.
  Elem from_int(std::int64_t k) const;

  Elem add(Elem a, Elem b) const;
  Elem mul(Elem a, Elem b) const;
  Elem neg(Elem a) const;
  Elem sub(Elem a, Elem b) const;

  bool has_tables() const;
  /// Raw row-major size*size tables, or nullptr when not precomputed.
  /// Hot loops may cache these; entry (a,b) sits at index a*size + b.
  const Elem* add_table() const;
  const Elem* mul_table() const;
  const Elem* neg_table() const;

  /// Canonical literal: decimal residue / polynomial in x ("x+1", "2x^2+1",
  /// "0") / "(lit|lit|...)" componentwise for products.
  std::string format_element(Elem a) const;
  /// Accepts anything format_element produces, plus redundant forms (signed
  /// integers, unreduced coefficients/degrees); throws ParseError otherwise.
  Elem parse_element(std::string_view text) const;

  struct Impl;

  friend bool same_ring(const Ring& a, const Ring& b) noexcept {
    return a.impl_ == b.impl_;
  }

 private:
  explicit Ring(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;

  friend Ring build_ring(const RingSpec& spec, const RingConfig& config);
};

/// Validates and builds. Throws std::invalid_argument for malformed specs and
/// size overflows.
Ring build_ring(const RingSpec& spec, const RingConfig& config = {});

/// Flatten nested products, unwrap single-factor products, reduce quotient
/// moduli mod p. build_ring applies this internally.
RingSpec normalize_spec(const RingSpec& spec);

/// A nonempty subset of a ring closed under addition (a submagma of (A, +)).
/// Closure forces 0 to be a member.
struct SubsetR {
  Ring ring;
  std::vector<Elem> members;  // sorted, deduplicated
  std::vector<char> mask;     // one entry per ring element

  bool contains(Elem e) const { return mask[e] != 0; }
};

/// Checks closure of `members` under addition; on failure throws
/// std::invalid_argument naming a witness pair a, b with a + b outside the
/// set. Asserts that zero is a member of the validated set.
SubsetR validate_submagma(const Ring& ring, std::vector<Elem> members);

bool is_prime(std::uint64_t n);

}  // namespace quiddity
