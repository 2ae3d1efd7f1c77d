#include "quiddity/ring.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>

#include "poly_fp.hpp"

namespace quiddity {

namespace {

constexpr std::uint64_t kParseIntCap = 1'000'000'000'000ull;

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b, std::uint64_t cap,
                          const char* what) {
  if (b != 0 && a > cap / b) {
    throw std::invalid_argument(std::string(what) + " exceeds the size cap");
  }
  return a * b;
}

// ---------------------------------------------------------------------------
// Spec parsing

struct Cursor {
  std::string_view s;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  bool eof() {
    skip_ws();
    return pos >= s.size();
  }
  char peek() {
    skip_ws();
    return pos < s.size() ? s[pos] : '\0';
  }
  bool consume(char c) {
    if (peek() == c) {
      ++pos;
      return true;
    }
    return false;
  }
  void expect(char c, const char* what) {
    if (!consume(c)) fail(std::string("expected '") + c + "' " + what);
  }
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(pos, msg); }
};

std::uint64_t parse_uint(Cursor& c, const char* what) {
  c.skip_ws();
  if (c.pos >= c.s.size() || !std::isdigit(static_cast<unsigned char>(c.s[c.pos]))) {
    c.fail(std::string("expected ") + what);
  }
  std::uint64_t v = 0;
  while (c.pos < c.s.size() && std::isdigit(static_cast<unsigned char>(c.s[c.pos]))) {
    v = v * 10 + static_cast<std::uint64_t>(c.s[c.pos] - '0');
    if (v > kParseIntCap) c.fail(std::string(what) + " is too large");
    ++c.pos;
  }
  return v;
}

// Reads digits reducing mod m on the fly (no overflow for any literal length).
std::uint64_t parse_residue_digits(Cursor& c, std::uint64_t m) {
  std::uint64_t v = 0;
  while (c.pos < c.s.size() && std::isdigit(static_cast<unsigned char>(c.s[c.pos]))) {
    v = (v * 10 + static_cast<std::uint64_t>(c.s[c.pos] - '0')) % m;
    ++c.pos;
  }
  return v;
}

// poly := [sign] term { ("+"|"-") term }
// term := int [["*"] "x" ["^" int]] | "x" ["^" int]
// Coefficients are reduced mod p while reading.
polyfp::Coeffs parse_poly_mod_p(Cursor& c, std::uint32_t p) {
  polyfp::Coeffs out;
  int sign = +1;
  c.skip_ws();
  if (c.peek() == '+' || c.peek() == '-') {
    sign = (c.s[c.pos] == '-') ? -1 : +1;
    ++c.pos;
  }
  while (true) {
    c.skip_ws();
    bool have_coeff = false;
    std::uint64_t coeff = 0;
    if (c.pos < c.s.size() && std::isdigit(static_cast<unsigned char>(c.s[c.pos]))) {
      coeff = parse_residue_digits(c, p);
      have_coeff = true;
      c.skip_ws();
      if (c.peek() == '*') ++c.pos;
    }
    std::uint64_t power = 0;
    if (c.peek() == 'x') {
      ++c.pos;
      power = 1;
      c.skip_ws();
      if (c.peek() == '^') {
        ++c.pos;
        power = parse_uint(c, "exponent");
        if (power > (1u << 20)) c.fail("exponent is too large");
      }
    } else if (!have_coeff) {
      c.fail("expected a coefficient or 'x'");
    }
    if (!have_coeff) coeff = 1 % p;
    std::uint32_t v = static_cast<std::uint32_t>(coeff);
    if (sign < 0) v = (p - v) % p;
    if (out.size() < power + 1) out.resize(power + 1, 0);
    out[power] = static_cast<std::uint32_t>((out[power] + v) % p);

    char nxt = c.peek();
    if (nxt == '+' || nxt == '-') {
      sign = (nxt == '-') ? -1 : +1;
      ++c.pos;
      continue;
    }
    break;
  }
  polyfp::trim(out);
  return out;
}

RingSpec parse_product(Cursor& c);

RingSpec parse_atom(Cursor& c) {
  if (c.consume('(')) {
    RingSpec inner = parse_product(c);
    c.expect(')', "to close the grouping");
    return inner;
  }
  if (!c.consume('Z')) c.fail("expected 'Z/' or '('");
  c.expect('/', "after 'Z'");
  std::size_t npos = c.pos;
  std::uint64_t n = parse_uint(c, "a modulus");
  c.skip_ws();
  if (c.peek() == '[') {
    if (!is_prime(n)) throw ParseError(npos, "quotient base must be a prime");
    ++c.pos;
    c.expect('x', "as the quotient variable");
    c.expect(']', "after the variable");
    c.expect('/', "before the modulus");
    c.expect('(', "to open the modulus");
    std::size_t ppos = c.pos;
    polyfp::Coeffs f = parse_poly_mod_p(c, static_cast<std::uint32_t>(n));
    c.expect(')', "to close the modulus");
    if (polyfp::degree(f) < 1) {
      throw ParseError(ppos, "modulus must have degree >= 1 after reduction mod p");
    }
    if (f.back() != 1) {
      throw ParseError(ppos, "modulus must be monic");
    }
    return RingSpec{QuotientSpec{static_cast<std::uint32_t>(n), std::move(f)}};
  }
  if (n < 2) throw ParseError(npos, "modulus must be >= 2");
  return RingSpec{ZModSpec{n}};
}

void flatten_into(std::vector<RingSpec>& out, RingSpec spec) {
  if (auto* prod = std::get_if<ProductSpec>(&spec.node)) {
    for (auto& f : prod->factors) flatten_into(out, std::move(f));
  } else {
    out.push_back(std::move(spec));
  }
}

RingSpec parse_product(Cursor& c) {
  std::vector<RingSpec> factors;
  flatten_into(factors, parse_atom(c));
  while (c.peek() == 'x') {
    ++c.pos;
    flatten_into(factors, parse_atom(c));
  }
  if (factors.size() == 1) return std::move(factors.front());
  return RingSpec{ProductSpec{std::move(factors)}};
}

std::string poly_text(const polyfp::Coeffs& f) {
  std::string out;
  for (int i = polyfp::degree(f); i >= 0; --i) {
    std::uint32_t cf = f[static_cast<std::size_t>(i)];
    if (cf == 0) continue;
    if (!out.empty()) out += "+";
    if (i == 0) {
      out += std::to_string(cf);
    } else {
      if (cf != 1) out += std::to_string(cf);
      out += "x";
      if (i > 1) out += "^" + std::to_string(i);
    }
  }
  if (out.empty()) out = "0";
  return out;
}

}  // namespace

RingSpec parse_ring_spec(std::string_view text) {
  Cursor c{text};
  RingSpec spec = parse_product(c);
  if (!c.eof()) c.fail("unexpected trailing input");
  return spec;
}

std::string RingSpec::canonical_text() const {
  if (const auto* z = std::get_if<ZModSpec>(&node)) {
    return "Z/" + std::to_string(z->modulus);
  }
  if (const auto* q = std::get_if<QuotientSpec>(&node)) {
    return "Z/" + std::to_string(q->base_prime) + "[x]/(" + poly_text(q->modulus_coeffs) + ")";
  }
  const auto& prod = std::get<ProductSpec>(node);
  std::string out;
  for (std::size_t i = 0; i < prod.factors.size(); ++i) {
    if (i) out += " x ";
    out += prod.factors[i].canonical_text();
  }
  return out;
}

RingSpec normalize_spec(const RingSpec& spec) {
  if (const auto* q = std::get_if<QuotientSpec>(&spec.node)) {
    QuotientSpec out = *q;
    for (auto& cf : out.modulus_coeffs) cf %= out.base_prime;
    polyfp::trim(out.modulus_coeffs);
    return RingSpec{std::move(out)};
  }
  if (std::get_if<ProductSpec>(&spec.node)) {
    std::vector<RingSpec> flat;
    flatten_into(flat, spec);
    for (auto& f : flat) f = normalize_spec(f);
    if (flat.size() == 1) return std::move(flat.front());
    return RingSpec{ProductSpec{std::move(flat)}};
  }
  return spec;
}

bool operator==(const RingSpec& a, const RingSpec& b) {
  return normalize_spec(a).canonical_text() == normalize_spec(b).canonical_text();
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Built rings

struct Ring::Impl {
  enum class Kind { kZMod, kQuotient, kProduct };

  RingSpec spec;
  std::string name;
  Kind kind = Kind::kZMod;
  std::uint64_t size = 0;
  std::uint64_t characteristic = 1;
  Elem one = 0;
  Elem minus_one = 0;

  // Quotient data.
  std::uint32_t p = 0;
  std::vector<std::uint32_t> mod_coeffs;
  std::uint32_t degree = 0;
  std::vector<std::uint64_t> p_pows;  // p^0 .. p^degree

  // Product data.
  std::vector<Ring> factors;
  std::vector<std::uint64_t> strides;

  // Tables (present when size <= table_threshold).
  std::vector<Elem> add_t, mul_t, neg_t;

  void decode_quot(Elem a, std::uint32_t* out) const {
    std::uint64_t v = a;
    for (std::uint32_t i = 0; i < degree; ++i) {
      out[i] = static_cast<std::uint32_t>(v % p);
      v /= p;
    }
  }
  Elem encode_quot(const std::uint32_t* cf) const {
    std::uint64_t v = 0;
    for (std::uint32_t i = degree; i-- > 0;) v = v * p + cf[i];
    return static_cast<Elem>(v);
  }

  Elem add_structural(Elem a, Elem b) const {
    switch (kind) {
      case Kind::kZMod:
        return static_cast<Elem>((std::uint64_t{a} + b) % size);
      case Kind::kQuotient: {
        std::uint32_t ca[64], cb[64];
        decode_quot(a, ca);
        decode_quot(b, cb);
        for (std::uint32_t i = 0; i < degree; ++i) ca[i] = (ca[i] + cb[i]) % p;
        return encode_quot(ca);
      }
      case Kind::kProduct: {
        std::uint64_t out = 0;
        for (std::size_t i = 0; i < factors.size(); ++i) {
          const std::uint64_t fs = factors[i].size();
          Elem xa = static_cast<Elem>((a / strides[i]) % fs);
          Elem xb = static_cast<Elem>((b / strides[i]) % fs);
          out += strides[i] * factors[i].add(xa, xb);
        }
        return static_cast<Elem>(out);
      }
    }
    return 0;
  }

  Elem mul_structural(Elem a, Elem b) const {
    switch (kind) {
      case Kind::kZMod:
        return static_cast<Elem>((std::uint64_t{a} * b) % size);
      case Kind::kQuotient: {
        std::uint32_t ca[64], cb[64];
        decode_quot(a, ca);
        decode_quot(b, cb);
        std::uint64_t conv[127] = {0};
        for (std::uint32_t i = 0; i < degree; ++i) {
          if (ca[i] == 0) continue;
          for (std::uint32_t j = 0; j < degree; ++j) {
            conv[i + j] += std::uint64_t{ca[i]} * cb[j] % p;
          }
        }
        // Reduce by the monic modulus, top down.
        for (std::uint32_t k = 2 * degree - 2 + 1; k-- > degree;) {
          std::uint64_t c = conv[k] % p;
          if (c == 0) continue;
          conv[k] = 0;
          for (std::uint32_t t = 0; t < degree; ++t) {
            std::uint64_t sub = c * mod_coeffs[t] % p;
            conv[k - degree + t] += p - sub;
          }
        }
        std::uint32_t cf[64];
        for (std::uint32_t i = 0; i < degree; ++i) {
          cf[i] = static_cast<std::uint32_t>(conv[i] % p);
        }
        return encode_quot(cf);
      }
      case Kind::kProduct: {
        std::uint64_t out = 0;
        for (std::size_t i = 0; i < factors.size(); ++i) {
          const std::uint64_t fs = factors[i].size();
          Elem xa = static_cast<Elem>((a / strides[i]) % fs);
          Elem xb = static_cast<Elem>((b / strides[i]) % fs);
          out += strides[i] * factors[i].mul(xa, xb);
        }
        return static_cast<Elem>(out);
      }
    }
    return 0;
  }

  Elem neg_structural(Elem a) const {
    switch (kind) {
      case Kind::kZMod:
        return a == 0 ? 0 : static_cast<Elem>(size - a);
      case Kind::kQuotient: {
        std::uint32_t ca[64];
        decode_quot(a, ca);
        for (std::uint32_t i = 0; i < degree; ++i) ca[i] = (p - ca[i]) % p;
        return encode_quot(ca);
      }
      case Kind::kProduct: {
        std::uint64_t out = 0;
        for (std::size_t i = 0; i < factors.size(); ++i) {
          const std::uint64_t fs = factors[i].size();
          Elem xa = static_cast<Elem>((a / strides[i]) % fs);
          out += strides[i] * factors[i].neg(xa);
        }
        return static_cast<Elem>(out);
      }
    }
    return 0;
  }
};

namespace {

std::shared_ptr<Ring::Impl> build_impl(const RingSpec& normalized, const RingConfig& config) {
  auto impl = std::make_shared<Ring::Impl>();
  impl->spec = normalized;
  impl->name = normalized.canonical_text();

  if (const auto* z = std::get_if<ZModSpec>(&normalized.node)) {
    if (z->modulus < 2) throw std::invalid_argument("ring spec: modulus must be >= 2");
    if (z->modulus > config.max_ring_size) {
      throw std::invalid_argument("ring spec: Z/" + std::to_string(z->modulus) +
                                  " exceeds the size cap");
    }
    impl->kind = Ring::Impl::Kind::kZMod;
    impl->size = z->modulus;
    impl->characteristic = z->modulus;
    impl->one = 1;
  } else if (const auto* q = std::get_if<QuotientSpec>(&normalized.node)) {
    if (!is_prime(q->base_prime)) {
      throw std::invalid_argument("ring spec: quotient base must be prime");
    }
    if (q->degree() < 1 || q->modulus_coeffs.back() != 1) {
      throw std::invalid_argument("ring spec: quotient modulus must be monic of degree >= 1");
    }
    if (q->degree() > 60) throw std::invalid_argument("ring spec: modulus degree too large");
    impl->kind = Ring::Impl::Kind::kQuotient;
    impl->p = q->base_prime;
    impl->mod_coeffs = q->modulus_coeffs;
    impl->degree = q->degree();
    std::uint64_t sz = 1;
    impl->p_pows.assign(1, 1);
    for (std::uint32_t i = 0; i < impl->degree; ++i) {
      sz = checked_mul(sz, impl->p, config.max_ring_size, "ring spec: quotient size");
      impl->p_pows.push_back(sz);
    }
    impl->size = sz;
    impl->characteristic = impl->p;
    impl->one = 1;  // constant polynomial 1 (degree >= 1, so always in range)
  } else {
    const auto& prod = std::get<ProductSpec>(normalized.node);
    if (prod.factors.empty()) {
      throw std::invalid_argument("ring spec: product needs at least one factor");
    }
    impl->kind = Ring::Impl::Kind::kProduct;
    std::uint64_t sz = 1;
    std::uint64_t car = 1;
    std::uint64_t one = 0;
    for (const auto& fspec : prod.factors) {
      Ring f = build_ring(fspec, config);
      impl->strides.push_back(sz);
      sz = checked_mul(sz, f.size(), config.max_ring_size, "ring spec: product size");
      car = std::lcm(car, f.characteristic());
      impl->factors.push_back(std::move(f));
    }
    for (std::size_t i = 0; i < impl->factors.size(); ++i) {
      one += impl->strides[i] * impl->factors[i].one();
    }
    impl->size = sz;
    impl->characteristic = car;
    impl->one = static_cast<Elem>(one);
  }

  impl->minus_one = impl->neg_structural(impl->one);

  if (impl->size <= config.table_threshold) {
    const std::size_t n = static_cast<std::size_t>(impl->size);
    impl->neg_t.resize(n);
    for (std::size_t a = 0; a < n; ++a) {
      impl->neg_t[a] = impl->neg_structural(static_cast<Elem>(a));
    }
    impl->add_t.resize(n * n);
    impl->mul_t.resize(n * n);
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = a; b < n; ++b) {
        Elem s = impl->add_structural(static_cast<Elem>(a), static_cast<Elem>(b));
        Elem m = impl->mul_structural(static_cast<Elem>(a), static_cast<Elem>(b));
        impl->add_t[a * n + b] = s;
        impl->add_t[b * n + a] = s;
        impl->mul_t[a * n + b] = m;
        impl->mul_t[b * n + a] = m;
      }
    }
  }
  return impl;
}

}  // namespace

Ring build_ring(const RingSpec& spec, const RingConfig& config) {
  return Ring(build_impl(normalize_spec(spec), config));
}

const RingSpec& Ring::spec() const { return impl_->spec; }
const std::string& Ring::name() const { return impl_->name; }
std::uint64_t Ring::size() const { return impl_->size; }
std::uint64_t Ring::characteristic() const { return impl_->characteristic; }
Elem Ring::one() const { return impl_->one; }
Elem Ring::minus_one() const { return impl_->minus_one; }

Elem Ring::add(Elem a, Elem b) const {
  const auto& im = *impl_;
  if (!im.add_t.empty()) return im.add_t[static_cast<std::size_t>(a) * im.size + b];
  return im.add_structural(a, b);
}

Elem Ring::mul(Elem a, Elem b) const {
  const auto& im = *impl_;
  if (!im.mul_t.empty()) return im.mul_t[static_cast<std::size_t>(a) * im.size + b];
  return im.mul_structural(a, b);
}

Elem Ring::neg(Elem a) const {
  const auto& im = *impl_;
  if (!im.neg_t.empty()) return im.neg_t[a];
  return im.neg_structural(a);
}

Elem Ring::sub(Elem a, Elem b) const { return add(a, neg(b)); }

bool Ring::has_tables() const { return !impl_->add_t.empty(); }
const Elem* Ring::add_table() const {
  return impl_->add_t.empty() ? nullptr : impl_->add_t.data();
}
const Elem* Ring::mul_table() const {
  return impl_->mul_t.empty() ? nullptr : impl_->mul_t.data();
}
const Elem* Ring::neg_table() const {
  return impl_->neg_t.empty() ? nullptr : impl_->neg_t.data();
}

Elem Ring::from_int(std::int64_t k) const {
  const std::int64_t car = static_cast<std::int64_t>(characteristic());
  std::int64_t r = k % car;
  if (r < 0) r += car;
  Elem acc = zero();
  Elem base = one();
  std::uint64_t e = static_cast<std::uint64_t>(r);
  while (e != 0) {
    if (e & 1) acc = add(acc, base);
    base = add(base, base);
    e >>= 1;
  }
  return acc;
}

std::string Ring::format_element(Elem a) const {
  const auto& im = *impl_;
  switch (im.kind) {
    case Impl::Kind::kZMod:
      return std::to_string(a);
    case Impl::Kind::kQuotient: {
      std::uint32_t cf[64];
      im.decode_quot(a, cf);
      polyfp::Coeffs v(cf, cf + im.degree);
      polyfp::trim(v);
      return poly_text(v);
    }
    case Impl::Kind::kProduct: {
      std::string out = "(";
      for (std::size_t i = 0; i < im.factors.size(); ++i) {
        if (i) out += "|";
        Elem comp = static_cast<Elem>((a / im.strides[i]) % im.factors[i].size());
        out += im.factors[i].format_element(comp);
      }
      out += ")";
      return out;
    }
  }
  return "";
}

Elem Ring::parse_element(std::string_view text) const {
  const auto& im = *impl_;
  Cursor c{text};
  Elem result = 0;
  switch (im.kind) {
    case Impl::Kind::kZMod: {
      c.skip_ws();
      bool negate = false;
      if (c.peek() == '-') {
        negate = true;
        ++c.pos;
      } else if (c.peek() == '+') {
        ++c.pos;
      }
      c.skip_ws();
      if (c.pos >= c.s.size() || !std::isdigit(static_cast<unsigned char>(c.s[c.pos]))) {
        c.fail("expected an integer literal for " + im.name);
      }
      std::uint64_t v = parse_residue_digits(c, im.size);
      result = static_cast<Elem>(v);
      if (negate) result = neg(result);
      break;
    }
    case Impl::Kind::kQuotient: {
      polyfp::Coeffs v = parse_poly_mod_p(c, im.p);
      v = polyfp::mod(std::move(v), im.mod_coeffs, im.p);
      std::uint32_t cf[64] = {0};
      for (std::size_t i = 0; i < v.size(); ++i) cf[i] = v[i];
      result = im.encode_quot(cf);
      break;
    }
    case Impl::Kind::kProduct: {
      c.expect('(', "to open a product element literal");
      std::uint64_t out = 0;
      for (std::size_t i = 0; i < im.factors.size(); ++i) {
        // Component literals contain no '(', ')' or '|'.
        std::size_t start = c.pos;
        while (c.pos < c.s.size() && c.s[c.pos] != '|' && c.s[c.pos] != ')') ++c.pos;
        std::string_view part = c.s.substr(start, c.pos - start);
        Elem comp;
        try {
          comp = im.factors[i].parse_element(part);
        } catch (const ParseError& e) {
          throw ParseError(start + e.position(), std::string("component ") +
                                                     std::to_string(i + 1) + ": " + e.what());
        }
        out += im.strides[i] * comp;
        if (i + 1 < im.factors.size()) {
          if (c.pos >= c.s.size() || c.s[c.pos] != '|') {
            c.fail("expected '|' between product components (ring has " +
                   std::to_string(im.factors.size()) + " factors)");
          }
          ++c.pos;
        }
      }
      if (c.pos >= c.s.size() || c.s[c.pos] != ')') {
        c.fail("expected ')' after " + std::to_string(im.factors.size()) + " components");
      }
      ++c.pos;
      result = static_cast<Elem>(out);
      break;
    }
  }
  if (!c.eof()) c.fail("unexpected trailing input in element literal");
  return result;
}

SubsetR validate_submagma(const Ring& ring, std::vector<Elem> members) {
  if (members.empty()) throw std::invalid_argument("submagma: member list is empty");
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  for (Elem e : members) {
    if (e >= ring.size()) throw std::invalid_argument("submagma: element index out of range");
  }
  std::vector<char> mask(static_cast<std::size_t>(ring.size()), 0);
  for (Elem e : members) mask[e] = 1;
  for (Elem a : members) {
    for (Elem b : members) {
      Elem s = ring.add(a, b);
      if (!mask[s]) {
        throw std::invalid_argument(
            "submagma: not closed under addition: " + ring.format_element(a) + " + " +
            ring.format_element(b) + " = " + ring.format_element(s) + " is not a member");
      }
    }
  }
  if (!mask[0]) {
    // Closure of a nonempty finite set under + always reaches 0; reaching this
    // line would mean the closure check above is broken.
    throw std::logic_error("submagma: closed set unexpectedly misses zero");
  }
  return SubsetR{ring, std::move(members), std::move(mask)};
}

}  // namespace quiddity
