#pragma once

// Dense polynomial arithmetic over Z/pZ for small primes p. Coefficient
// vectors store the constant term first; values lie in [0, p).

#include <cstdint>
#include <vector>

namespace quiddity::polyfp {

using Coeffs = std::vector<std::uint32_t>;

inline void trim(Coeffs& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline int degree(const Coeffs& a) {
  return static_cast<int>(a.size()) - 1;  // -1 for the zero polynomial
}

inline Coeffs add(const Coeffs& a, const Coeffs& b, std::uint32_t p) {
  Coeffs r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < r.size(); ++i) {
    std::uint64_t v = (i < a.size() ? a[i] : 0u);
    v += (i < b.size() ? b[i] : 0u);
    r[i] = static_cast<std::uint32_t>(v % p);
  }
  trim(r);
  return r;
}

inline Coeffs mul(const Coeffs& a, const Coeffs& b, std::uint32_t p) {
  if (a.empty() || b.empty()) return {};
  Coeffs r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      std::uint64_t v = r[i + j] + std::uint64_t{a[i]} * b[j] % p;
      r[i + j] = static_cast<std::uint32_t>(v % p);
    }
  }
  trim(r);
  return r;
}

// Remainder of a modulo the monic polynomial f.
inline Coeffs mod(Coeffs a, const Coeffs& f, std::uint32_t p) {
  trim(a);
  const int df = degree(f);
  while (degree(a) >= df) {
    const std::uint32_t c = a.back();
    const std::size_t shift = a.size() - f.size();
    if (c != 0) {
      for (std::size_t t = 0; t < f.size(); ++t) {
        std::uint64_t sub = std::uint64_t{c} * f[t] % p;
        a[shift + t] = static_cast<std::uint32_t>((a[shift + t] + p - sub) % p);
      }
    }
    a.pop_back();
    trim(a);
  }
  return a;
}

// Trial division by every monic polynomial of degree 1..deg(f)/2. Fine for
// the sizes this project allows (p^deg bounded by the ring-size cap).
inline bool is_irreducible(const Coeffs& f, std::uint32_t p) {
  const int d = degree(f);
  if (d <= 0) return false;
  if (d == 1) return true;
  for (int e = 1; 2 * e <= d; ++e) {
    // Odometer over the e lower coefficients of a monic degree-e divisor.
    Coeffs g(static_cast<std::size_t>(e) + 1, 0);
    g[e] = 1;
    while (true) {
      if (mod(f, g, p).empty()) return false;
      int i = 0;
      while (i < e && g[i] == p - 1) g[i++] = 0;
      if (i == e) break;
      ++g[i];
    }
  }
  return true;
}

}  // namespace quiddity::polyfp
