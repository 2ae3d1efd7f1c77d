#include "quiddity/mat2.hpp"

#include <cstdint>

#include "poly_fp.hpp"

namespace quiddity {

Mat2 mat_identity(const Ring& ring) {
  return Mat2{ring.one(), ring.zero(), ring.zero(), ring.one()};
}

Mat2 mat_mul(const Ring& ring, const Mat2& l, const Mat2& r) {
  return Mat2{
      ring.add(ring.mul(l.a, r.a), ring.mul(l.b, r.c)),
      ring.add(ring.mul(l.a, r.b), ring.mul(l.b, r.d)),
      ring.add(ring.mul(l.c, r.a), ring.mul(l.d, r.c)),
      ring.add(ring.mul(l.c, r.b), ring.mul(l.d, r.d)),
  };
}

Mat2 mat_neg(const Ring& ring, const Mat2& m) {
  return Mat2{ring.neg(m.a), ring.neg(m.b), ring.neg(m.c), ring.neg(m.d)};
}

Elem mat_det(const Ring& ring, const Mat2& m) {
  return ring.sub(ring.mul(m.a, m.d), ring.mul(m.b, m.c));
}

Mat2 mat_inverse_det1(const Ring& ring, const Mat2& m) {
  return Mat2{m.d, ring.neg(m.b), ring.neg(m.c), m.a};
}

std::string format_matrix(const Ring& ring, const Mat2& m) {
  return "[[" + ring.format_element(m.a) + ", " + ring.format_element(m.b) + "], [" +
         ring.format_element(m.c) + ", " + ring.format_element(m.d) + "]]";
}

Mat2 generator_matrix(const Ring& ring, Elem a) {
  return Mat2{a, ring.minus_one(), ring.one(), ring.zero()};
}

Mat2 generator_product(const Ring& ring, std::span<const Elem> entries) {
  // Left-multiplying by M(e) sends [[a,b],[c,d]] to [[ea-c, eb-d],[a, b]].
  Mat2 m = mat_identity(ring);
  for (Elem e : entries) {
    Mat2 next;
    next.a = ring.sub(ring.mul(e, m.a), m.c);
    next.b = ring.sub(ring.mul(e, m.b), m.d);
    next.c = m.a;
    next.d = m.b;
    m = next;
  }
  return m;
}

Elem continuant(const Ring& ring, std::span<const Elem> entries) {
  Elem prev = ring.zero();  // K of one-too-short prefix, seeded as K_{-1} = 0
  Elem cur = ring.one();    // K_0 = 1
  for (Elem e : entries) {
    Elem next = ring.sub(ring.mul(e, cur), prev);
    prev = cur;
    cur = next;
  }
  return cur;
}

bool mat_vs_continuant_check(const Ring& ring, std::span<const Elem> entries) {
  Mat2 m = generator_product(ring, entries);
  const std::size_t n = entries.size();
  if (n == 0) return m == mat_identity(ring);
  if (n == 1) return m == generator_matrix(ring, entries[0]);
  Elem k_full = continuant(ring, entries);
  Elem k_head = continuant(ring, entries.first(n - 1));
  Elem k_tail = continuant(ring, entries.subspan(1));
  Elem k_mid = continuant(ring, entries.subspan(1, n - 2));
  return m.a == k_full && m.b == ring.neg(k_tail) && m.c == k_head && m.d == ring.neg(k_mid);
}

namespace {

std::uint64_t checked_mul_order(std::uint64_t a, std::uint64_t b) {
  if (b != 0 && a > UINT64_MAX / b) {
    throw std::overflow_error("SL2 order does not fit in 64 bits");
  }
  return a * b;
}

std::uint64_t zmod_sl2_order(std::uint64_t n) {
  // N^3 * prod over distinct primes p | N of (1 - 1/p^2).
  std::uint64_t order = checked_mul_order(checked_mul_order(n, n), n);
  std::uint64_t rest = n;
  for (std::uint64_t p = 2; p * p <= rest; ++p) {
    if (rest % p) continue;
    while (rest % p == 0) rest /= p;
    order = order / (p * p) * (p * p - 1);
  }
  if (rest > 1) order = order / (rest * rest) * (rest * rest - 1);
  return order;
}

}  // namespace

std::uint64_t sl2_order_formula(const RingSpec& spec) {
  RingSpec norm = normalize_spec(spec);
  if (const auto* z = std::get_if<ZModSpec>(&norm.node)) {
    return zmod_sl2_order(z->modulus);
  }
  if (const auto* q = std::get_if<QuotientSpec>(&norm.node)) {
    if (!polyfp::is_irreducible(q->modulus_coeffs, q->base_prime)) {
      throw FormulaNotApplicable(
          "no closed form for a quotient by a reducible modulus; use enumeration");
    }
    // Field with q = p^d elements: |SL2(F_q)| = q (q^2 - 1).
    std::uint64_t card = 1;
    for (std::uint32_t i = 0; i < q->degree(); ++i) {
      card = checked_mul_order(card, q->base_prime);
    }
    return checked_mul_order(card, checked_mul_order(card, card) - 1);
  }
  const auto& prod = std::get<ProductSpec>(norm.node);
  std::uint64_t order = 1;
  for (const auto& f : prod.factors) {
    order = checked_mul_order(order, sl2_order_formula(f));
  }
  return order;
}

std::uint64_t sl2_order_enumerate(const Ring& ring, std::uint64_t guard) {
  if (ring.size() > guard) {
    throw std::invalid_argument("ring too large for SL2 enumeration (size " +
                                std::to_string(ring.size()) + " > guard " +
                                std::to_string(guard) + ")");
  }
  const Elem n = static_cast<Elem>(ring.size());
  const Elem one = ring.one();
  std::uint64_t count = 0;
  for (Elem a = 0; a < n; ++a) {
    for (Elem d = 0; d < n; ++d) {
      const Elem ad = ring.mul(a, d);
      for (Elem b = 0; b < n; ++b) {
        for (Elem c = 0; c < n; ++c) {
          if (ring.sub(ad, ring.mul(b, c)) == one) ++count;
        }
      }
    }
  }
  return count;
}

std::uint64_t sl2_order(const Ring& ring, std::uint64_t guard) {
  try {
    return sl2_order_formula(ring.spec());
  } catch (const FormulaNotApplicable&) {
    return sl2_order_enumerate(ring, guard);
  }
}

}  // namespace quiddity
