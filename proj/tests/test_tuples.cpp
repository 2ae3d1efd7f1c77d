#include <algorithm>
#include <set>
#include <vector>

#include "doctest.h"
#include "quiddity/search.hpp"
#include "quiddity/tuples.hpp"

using namespace quiddity;

namespace {

Ring ring_of(const std::string& text) { return build_ring(parse_ring_spec(text)); }

std::vector<Elem> tup(const Ring& ring, std::initializer_list<int> xs) {
  std::vector<Elem> out;
  for (int x : xs) out.push_back(ring.from_int(x));
  return out;
}

}  // namespace

TEST_CASE("quiddity sign detection") {
  const Ring z5 = ring_of("Z/5");
  const auto ones = tup(z5, {1, 1, 1});
  auto sign = quiddity_sign(z5, ones);
  REQUIRE(sign.has_value());
  CHECK(!sign->plus);
  CHECK(sign->minus);

  // (2,1,2,1) multiplies out to -Id over any ring.
  sign = quiddity_sign(z5, tup(z5, {2, 1, 2, 1}));
  REQUIRE(sign.has_value());
  CHECK(sign->minus);

  CHECK(!quiddity_sign(z5, tup(z5, {1, 2, 3})).has_value());
  CHECK(!quiddity_sign(z5, tup(z5, {0})).has_value());

  // (0,0) gives -Id; in characteristic 2 both signs coincide.
  sign = quiddity_sign(z5, tup(z5, {0, 0}));
  REQUIRE(sign.has_value());
  CHECK(sign->minus);
  CHECK(!sign->plus);

  const Ring f4 = ring_of("Z/2[x]/(x^2+x+1)");
  sign = quiddity_sign(f4, tup(f4, {0, 0}));
  REQUIRE(sign.has_value());
  CHECK(sign->plus);
  CHECK(sign->minus);

  // Empty product is +Id.
  sign = quiddity_sign(z5, {});
  REQUIRE(sign.has_value());
  CHECK(sign->plus);
}

TEST_CASE("sum operation follows the border formula") {
  const Ring z9 = ring_of("Z/9");
  CHECK(sum_oplus(z9, tup(z9, {1, 2, 3}), tup(z9, {1, 0, -2, 4})) ==
        tup(z9, {5, 2, 4, 0, -2}));
  CHECK(sum_oplus(z9, tup(z9, {-1, 1, 0, 2}), tup(z9, {2, 2, 2})) ==
        tup(z9, {1, 1, 0, 4, 2}));

  const Ring z13 = ring_of("Z/13");
  CHECK(sum_oplus(z13, tup(z13, {2, 1, -1, 0, -3}), tup(z13, {2, 3, 1, 1})) ==
        tup(z13, {3, 1, -1, 0, -1, 3, 1}));

  CHECK_THROWS_AS(sum_oplus(z9, tup(z9, {1}), tup(z9, {1, 1})), std::invalid_argument);
  CHECK_THROWS_AS(sum_oplus(z9, tup(z9, {1, 1}), std::vector<Elem>{}),
                  std::invalid_argument);
}

TEST_CASE("summing with (0,0) is exact on the right, a rotation on the left") {
  const Ring z7 = ring_of("Z/7");
  const auto zz = tup(z7, {0, 0});
  const auto t = tup(z7, {3, 1, 4, 1, 5});
  CHECK(sum_oplus(z7, t, zz) == t);
  CHECK(sum_oplus(z7, zz, t) == rotate_left(t, t.size() - 1));
  CHECK(equivalent(sum_oplus(z7, zz, t), t));
}

TEST_CASE("sum is neither commutative nor associative") {
  const Ring z3 = ring_of("Z/3");
  const auto a = tup(z3, {1, 0, 0});
  const auto b = tup(z3, {0, 1, 0});
  const auto c = tup(z3, {0, 0, 1});
  CHECK(sum_oplus(z3, a, b) != sum_oplus(z3, b, a));
  CHECK(sum_oplus(z3, sum_oplus(z3, a, b), c) != sum_oplus(z3, a, sum_oplus(z3, b, c)));
}

TEST_CASE("sum with a solution on the right preserves solutions exactly") {
  const Ring z4 = ring_of("Z/4");
  const auto quiddities3 = enumerate_quiddities(z4, 3).tuples;
  const auto quiddities4 = enumerate_quiddities(z4, 4).tuples;
  REQUIRE(!quiddities3.empty());
  REQUIRE(!quiddities4.empty());
  for (const auto& left : quiddities4) {
    for (const auto& right : quiddities3) {
      CHECK(quiddity_sign(z4, sum_oplus(z4, left, right)).has_value());
    }
  }
  // Conversely: non-solution left + solution right never gives a solution.
  const auto not_solution = tup(z4, {1, 0, 3});
  REQUIRE(!quiddity_sign(z4, not_solution).has_value());
  for (const auto& right : quiddities4) {
    CHECK(!quiddity_sign(z4, sum_oplus(z4, not_solution, right)).has_value());
  }
}

TEST_CASE("rotations, reflections, normal forms") {
  const Ring z5 = ring_of("Z/5");
  const auto t = tup(z5, {2, 0, 1, 1});
  CHECK(rotate_left(t, 0) == t);
  CHECK(rotate_left(t, 1) == tup(z5, {0, 1, 1, 2}));
  CHECK(rotate_left(t, 4) == t);
  CHECK(rotate_left(t, 6) == rotate_left(t, 2));

  const auto nf = dihedral_normal_form(t);
  CHECK(nf == tup(z5, {0, 1, 1, 2}));
  for (std::size_t r = 0; r < t.size(); ++r) {
    auto rot = rotate_left(t, r);
    CHECK(dihedral_normal_form(rot) == nf);
    CHECK(!std::lexicographical_compare(rot.begin(), rot.end(), nf.begin(), nf.end()));
    std::reverse(rot.begin(), rot.end());
    CHECK(dihedral_normal_form(rot) == nf);
  }

  CHECK(equivalent(t, rotate_left(t, 3)));
  auto rev = t;
  std::reverse(rev.begin(), rev.end());
  CHECK(equivalent(t, rev));
  CHECK(!equivalent(t, tup(z5, {2, 0, 1, 2})));
  CHECK(!equivalent(t, tup(z5, {2, 0, 1})));

  CHECK(lex_min_rotation(tup(z5, {3, 1, 2})) == tup(z5, {1, 2, 3}));
}

TEST_CASE("dihedral orbit sizes") {
  const Ring z4 = ring_of("Z/4");
  CHECK(dihedral_orbit_size(tup(z4, {0, 0, 0, 0})) == 1);
  CHECK(dihedral_orbit_size(tup(z4, {0, 2, 0, 2})) == 2);
  CHECK(dihedral_orbit_size(tup(z4, {1, 1, 2})) == 3);     // rotations only; reversal repeats
  CHECK(dihedral_orbit_size(tup(z4, {1, 2, 3})) == 6);
  CHECK(dihedral_orbit_size(tup(z4, {0, 1, 0, 2})) == 4);  // reversal-symmetric
  CHECK(dihedral_orbit_size(tup(z4, {0, 1, 2, 3})) == 8);

  // Orbit size equals the brute-force orbit cardinality.
  for (auto t : {tup(z4, {0, 1, 2}), tup(z4, {1, 1, 0, 2}), tup(z4, {0, 1, 1, 2, 3})}) {
    std::set<std::vector<Elem>> orbit;
    auto rev = t;
    std::reverse(rev.begin(), rev.end());
    for (std::size_t r = 0; r < t.size(); ++r) {
      orbit.insert(rotate_left(t, r));
      orbit.insert(rotate_left(rev, r));
    }
    CHECK(dihedral_orbit_size(t) == orbit.size());
  }
}

TEST_CASE("small classification matches brute enumeration") {
  for (const char* text : {"Z/4", "Z/5", "Z/6", "Z/2[x]/(x^2+x+1)", "Z/2 x Z/2", "Z/9"}) {
    CAPTURE(text);
    const Ring ring = ring_of(text);
    CHECK(small_classification(ring, 1).empty());
    CHECK(small_classification(ring, 2) ==
          std::vector<std::vector<Elem>>{{ring.zero(), ring.zero()}});
    for (std::uint32_t n = 2; n <= 4; ++n) {
      auto expected = small_classification(ring, n);
      auto found = enumerate_quiddities(ring, n).tuples;
      std::sort(expected.begin(), expected.end());
      std::sort(found.begin(), found.end());
      CHECK(expected == found);
    }
  }
  CHECK_THROWS_AS(small_classification(ring_of("Z/4"), 5), std::invalid_argument);
  CHECK_THROWS_AS(small_classification(ring_of("Z/4"), 0), std::invalid_argument);
}

TEST_CASE("tuple literals parse and format") {
  const Ring z4 = ring_of("Z/4");
  CHECK(parse_tuple(z4, "[1, 2, 3]") == tup(z4, {1, 2, 3}));
  CHECK(parse_tuple(z4, "[ -1 , 6 ]") == tup(z4, {3, 2}));
  CHECK(parse_tuple(z4, "[]").empty());
  CHECK(format_tuple(z4, tup(z4, {0, 2, 1})) == "[0, 2, 1]");
  CHECK(parse_tuple(z4, format_tuple(z4, tup(z4, {3, 3, 0}))) == tup(z4, {3, 3, 0}));

  const Ring prod = ring_of("Z/2 x Z/3");
  const auto pt = parse_tuple(prod, "[(1|2), (0|0), (1|0)]");
  CHECK(pt.size() == 3);
  CHECK(format_tuple(prod, pt) == "[(1|2), (0|0), (1|0)]");

  CHECK_THROWS_AS(parse_tuple(z4, "[1, 2"), ParseError);
  CHECK_THROWS_AS(parse_tuple(z4, "1, 2]"), ParseError);
  CHECK_THROWS_AS(parse_tuple(z4, "[1,, 2]"), ParseError);
  CHECK_THROWS_AS(parse_tuple(z4, "[1] tail"), ParseError);
  CHECK_THROWS_AS(parse_tuple(prod, "[(1|2]"), ParseError);
}
