#include "quiddity/tuples.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "quiddity/mat2.hpp"

namespace quiddity {

std::optional<SignSet> quiddity_sign(const Ring& ring, std::span<const Elem> entries) {
  const Mat2 m = generator_product(ring, entries);
  const Elem zero = ring.zero();
  if (m.b != zero || m.c != zero || m.a != m.d) return std::nullopt;
  SignSet s;
  if (m.a == ring.one()) s.plus = true;
  if (m.a == ring.minus_one()) s.minus = true;
  if (!s.plus && !s.minus) return std::nullopt;  // scalar matrix, but not +-Id
  return s;
}

std::vector<Elem> sum_oplus(const Ring& ring, std::span<const Elem> a,
                            std::span<const Elem> b) {
  if (a.size() < 2 || b.size() < 2) {
    throw std::invalid_argument("sum: both operands need size >= 2");
  }
  const std::size_t n = a.size();
  const std::size_t m = b.size();
  std::vector<Elem> out;
  out.reserve(n + m - 2);
  out.push_back(ring.add(a[0], b[m - 1]));
  for (std::size_t i = 1; i + 1 < n; ++i) out.push_back(a[i]);
  out.push_back(ring.add(a[n - 1], b[0]));
  for (std::size_t i = 1; i + 1 < m; ++i) out.push_back(b[i]);
  return out;
}

std::vector<Elem> rotate_left(std::span<const Elem> t, std::size_t r) {
  const std::size_t n = t.size();
  std::vector<Elem> out(n);
  if (n == 0) return out;
  r %= n;
  for (std::size_t i = 0; i < n; ++i) out[i] = t[(i + r) % n];
  return out;
}

namespace {

void min_rotation_into(std::span<const Elem> t, std::vector<Elem>& best) {
  const std::size_t n = t.size();
  std::vector<Elem> cand(n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t i = 0; i < n; ++i) cand[i] = t[(i + r) % n];
    if (best.empty() || cand < best) best = cand;
  }
}

}  // namespace

std::vector<Elem> lex_min_rotation(std::span<const Elem> t) {
  if (t.empty()) return {};
  std::vector<Elem> best;
  min_rotation_into(t, best);
  return best;
}

std::vector<Elem> dihedral_normal_form(std::span<const Elem> t) {
  if (t.empty()) return {};
  std::vector<Elem> best;
  min_rotation_into(t, best);
  std::vector<Elem> rev(t.rbegin(), t.rend());
  min_rotation_into(rev, best);
  return best;
}

bool equivalent(std::span<const Elem> a, std::span<const Elem> b) {
  if (a.size() != b.size()) return false;
  return dihedral_normal_form(a) == dihedral_normal_form(b);
}

std::uint64_t dihedral_orbit_size(std::span<const Elem> t) {
  const std::size_t n = t.size();
  std::set<std::vector<Elem>> seen;
  std::vector<Elem> rev(t.rbegin(), t.rend());
  for (std::size_t r = 0; r < n; ++r) {
    seen.insert(rotate_left(t, r));
    seen.insert(rotate_left(rev, r));
  }
  return seen.size();
}

std::vector<std::vector<Elem>> small_classification(const Ring& ring, std::uint32_t n) {
  if (n < 1 || n > 4) {
    throw std::invalid_argument("small classification covers sizes 1 to 4 only");
  }
  std::set<std::vector<Elem>> out;
  const Elem size = static_cast<Elem>(ring.size());
  switch (n) {
    case 1:
      break;  // no solutions of size 1 over any ring
    case 2:
      out.insert({ring.zero(), ring.zero()});
      break;
    case 3: {
      const Elem one = ring.one();
      const Elem m1 = ring.minus_one();
      out.insert({one, one, one});
      out.insert({m1, m1, m1});
      break;
    }
    case 4: {
      const Elem zero = ring.zero();
      const Elem two = ring.from_int(2);
      for (Elem a = 0; a < size; ++a) {
        for (Elem b = 0; b < size; ++b) {
          const Elem ab = ring.mul(a, b);
          if (ab == zero) out.insert({ring.neg(a), b, a, ring.neg(b)});
          if (ab == two) out.insert({a, b, a, b});
        }
      }
      break;
    }
  }
  return {out.begin(), out.end()};
}

std::vector<Elem> parse_tuple(const Ring& ring, std::string_view text) {
  std::size_t pos = 0;
  auto skip_ws = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  skip_ws();
  if (pos >= text.size() || text[pos] != '[') {
    throw ParseError(pos, "expected '[' to open a tuple literal");
  }
  ++pos;
  std::vector<Elem> out;
  skip_ws();
  if (pos < text.size() && text[pos] == ']') {
    ++pos;
  } else {
    while (true) {
      skip_ws();
      const std::size_t start = pos;
      int depth = 0;
      while (pos < text.size()) {
        const char ch = text[pos];
        if (ch == '(' || ch == '[') ++depth;
        if (ch == ')' && depth > 0) --depth;
        if (depth == 0 && (ch == ',' || ch == ']')) break;
        ++pos;
      }
      if (pos >= text.size()) {
        throw ParseError(pos, "tuple literal is missing a closing ']'");
      }
      try {
        out.push_back(ring.parse_element(text.substr(start, pos - start)));
      } catch (const ParseError& e) {
        throw ParseError(start + e.position(),
                         "entry " + std::to_string(out.size() + 1) + ": " + e.what());
      }
      if (text[pos] == ']') {
        ++pos;
        break;
      }
      ++pos;  // consume ','
    }
  }
  skip_ws();
  if (pos != text.size()) throw ParseError(pos, "unexpected trailing input after ']'");
  return out;
}

std::string format_tuple(const Ring& ring, std::span<const Elem> entries) {
  std::string out = "[";
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (i) out += ", ";
    out += ring.format_element(entries[i]);
  }
  out += "]";
  return out;
}

}  // namespace quiddity
