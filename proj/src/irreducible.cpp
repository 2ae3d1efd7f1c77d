#include "quiddity/irreducible.hpp"

#include <unordered_map>

#include "quiddity/tuples.hpp"

namespace quiddity {

namespace {

bool is_pm_one(const Ring& ring, Elem e) {
  return e == ring.one() || e == ring.minus_one();
}

// +1 / -1 for an element known to be +-1. In characteristic 2 the two
// coincide and +1 is used.
int sign_of_pm_one(const Ring& ring, Elem e) { return e == ring.one() ? +1 : -1; }

std::vector<Elem> reflect(std::span<const Elem> t) {
  return std::vector<Elem>(t.rbegin(), t.rend());
}

// Builds the full decomposition from a cyclic window of v := reflected ?
// reverse(t) : t at [start0, start0 + len) (0-based) whose continuant is
// +-1. Returns nullopt if the continuant is not +-1 or a border falls
// outside the subset.
std::optional<ReductionWitness> make_witness(const Ring& ring, std::span<const Elem> t,
                                             bool reflected, std::size_t start0,
                                             std::size_t len, const SubsetR* subset) {
  const std::size_t n = t.size();
  std::vector<Elem> v = reflected ? reflect(t) : std::vector<Elem>(t.begin(), t.end());

  std::vector<Elem> w(len);
  for (std::size_t k = 0; k < len; ++k) w[k] = v[(start0 + k) % n];

  const Elem k_full = continuant(ring, w);
  if (!is_pm_one(ring, k_full)) return std::nullopt;
  const int eps = sign_of_pm_one(ring, k_full);

  // Borders making (c1, w, cl) a solution with matrix -eps * Id:
  //   c1 = eps * K(w_2..w_len),   cl = eps * K(w_1..w_{len-1}).
  std::span<const Elem> ws(w);
  Elem c1 = continuant(ring, ws.subspan(1));
  Elem cl = continuant(ring, ws.first(len - 1));
  if (eps < 0) {
    c1 = ring.neg(c1);
    cl = ring.neg(cl);
  }

  // Rotate v so the window sits at the very end.
  const std::size_t rot = (start0 + len) % n;
  std::vector<Elem> u = rotate_left(v, rot);
  const std::size_t m = n - len;  // size of the left factor

  std::vector<Elem> left(u.begin(), u.begin() + static_cast<std::ptrdiff_t>(m));
  left[0] = ring.sub(left[0], cl);
  left[m - 1] = ring.sub(left[m - 1], c1);

  if (subset != nullptr) {
    if (!subset->contains(c1) || !subset->contains(cl) || !subset->contains(left[0]) ||
        !subset->contains(left[m - 1])) {
      return std::nullopt;
    }
  }

  ReductionWitness out;
  out.reflected = reflected;
  out.rotation = static_cast<std::uint32_t>(rot);
  out.window_start = static_cast<std::uint32_t>(start0 + 1);
  out.window_len = static_cast<std::uint32_t>(len);
  out.alpha = -eps;
  out.c1 = c1;
  out.cl = cl;
  out.left_tuple = std::move(left);
  out.right_quiddity.reserve(len + 2);
  out.right_quiddity.push_back(c1);
  out.right_quiddity.insert(out.right_quiddity.end(), w.begin(), w.end());
  out.right_quiddity.push_back(cl);
  return out;
}

}  // namespace

std::optional<ReductionWitness> find_reduction_window(const Ring& ring,
                                                      std::span<const Elem> t,
                                                      const SubsetR* subset) {
  const std::size_t n = t.size();
  if (n < 4) return std::nullopt;
  for (int refl = 0; refl < 2; ++refl) {
    const bool reflected = refl != 0;
    const std::vector<Elem> v =
        reflected ? reflect(t) : std::vector<Elem>(t.begin(), t.end());
    for (std::size_t len = 1; len + 3 <= n; ++len) {
      for (std::size_t start0 = 0; start0 < n; ++start0) {
        Elem prev = ring.zero();
        Elem cur = ring.one();
        for (std::size_t k = 0; k < len; ++k) {
          const Elem next = ring.sub(ring.mul(v[(start0 + k) % n], cur), prev);
          prev = cur;
          cur = next;
        }
        if (!is_pm_one(ring, cur)) continue;
        auto witness = make_witness(ring, t, reflected, start0, len, subset);
        if (witness) return witness;
      }
    }
  }
  return std::nullopt;
}

bool is_irreducible(const Ring& ring, std::span<const Elem> t, const SubsetR* subset) {
  if (t.size() < 3) return false;
  return !find_reduction_window(ring, t, subset).has_value();
}

bool brute_force_reducible(const Ring& ring, std::span<const Elem> t,
                           const SubsetR* subset) {
  if (ring.size() > 16 || t.size() > 10) {
    throw std::invalid_argument("brute-force reducibility is guarded to |A| <= 16, n <= 10");
  }
  const std::size_t n = t.size();
  if (n < 4) return false;

  std::vector<Elem> all_elems;
  if (subset == nullptr) {
    all_elems.resize(static_cast<std::size_t>(ring.size()));
    for (std::size_t e = 0; e < all_elems.size(); ++e) all_elems[e] = static_cast<Elem>(e);
  }
  const std::vector<Elem>& candidates = subset ? subset->members : all_elems;
  auto in_set = [&](Elem e) { return subset == nullptr || subset->contains(e); };

  for (int refl = 0; refl < 2; ++refl) {
    const std::vector<Elem> base =
        refl ? reflect(t) : std::vector<Elem>(t.begin(), t.end());
    for (std::size_t rot = 0; rot < n; ++rot) {
      const std::vector<Elem> v = rotate_left(base, rot);
      for (std::size_t m = 3; m + 1 <= n; ++m) {
        // v = s (+) u with |s| = m: the inside of u is forced to
        // v_{m+1}..v_n and only its two borders are free.
        std::vector<Elem> u;
        u.reserve(n - m + 2);
        u.push_back(0);
        u.insert(u.end(), v.begin() + static_cast<std::ptrdiff_t>(m), v.end());
        u.push_back(0);
        for (Elem u1 : candidates) {
          for (Elem ul : candidates) {
            u.front() = u1;
            u.back() = ul;
            if (!quiddity_sign(ring, u)) continue;
            if (in_set(ring.sub(v[0], ul)) && in_set(ring.sub(v[m - 1], u1))) return true;
          }
        }
      }
    }
  }
  return false;
}

bool verify_witness(const Ring& ring, std::span<const Elem> t,
                    const ReductionWitness& witness, const SubsetR* subset) {
  const std::size_t n = t.size();
  const auto& left = witness.left_tuple;
  const auto& right = witness.right_quiddity;
  if (left.size() < 3 || right.size() < 3) return false;
  if (left.size() + right.size() != n + 2) return false;
  if (right.size() != static_cast<std::size_t>(witness.window_len) + 2) return false;
  if (witness.alpha != 1 && witness.alpha != -1) return false;
  if (right.front() != witness.c1 || right.back() != witness.cl) return false;

  // The window recorded must be the inside of the right factor.
  if (witness.window_start < 1 || witness.window_start > n) return false;
  const std::vector<Elem> v =
      witness.reflected ? reflect(t) : std::vector<Elem>(t.begin(), t.end());
  for (std::size_t k = 0; k < witness.window_len; ++k) {
    if (v[(witness.window_start - 1 + k) % n] != right[k + 1]) return false;
  }

  // Right factor: a solution with matrix alpha * Id.
  const Mat2 mr = generator_product(ring, right);
  const Mat2 expect = witness.alpha > 0
                          ? mat_identity(ring)
                          : mat_neg(ring, mat_identity(ring));
  if (mr != expect) return false;

  // Border formulas, with eps = -alpha.
  std::span<const Elem> w(right.data() + 1, witness.window_len);
  Elem c1 = continuant(ring, w.subspan(1));
  Elem cl = continuant(ring, w.first(w.size() - 1));
  if (witness.alpha > 0) {  // eps = -1
    c1 = ring.neg(c1);
    cl = ring.neg(cl);
  }
  if (c1 != witness.c1 || cl != witness.cl) return false;

  // Exact recomposition.
  if (sum_oplus(ring, left, right) != rotate_left(v, witness.rotation)) return false;

  if (subset != nullptr) {
    for (Elem e : left) {
      if (!subset->contains(e)) return false;
    }
    for (Elem e : right) {
      if (!subset->contains(e)) return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------

std::uint64_t CosetSystem::coset_key(const Mat2& m) const {
  const std::uint64_t size = ring_.size();
  if (kind_ == CosetKind::kUnitriangular) {
    // Bottom row up to a global sign is a complete right-coset invariant.
    const std::uint64_t k1 = std::uint64_t{m.c} * size + m.d;
    const std::uint64_t k2 = std::uint64_t{ring_.neg(m.c)} * size + ring_.neg(m.d);
    return k1 < k2 ? k1 : k2;
  }
  std::uint64_t best = UINT64_MAX;
  for (const Mat2& h : subgroup_) {
    const Mat2 hm = mat_mul(ring_, h, m);
    const std::uint64_t key =
        ((std::uint64_t{hm.a} * size + hm.b) * size + hm.c) * size + hm.d;
    if (key < best) best = key;
  }
  return best;
}

CosetSystem build_coset_system(const Ring& ring, CosetKind kind) {
  CosetSystem sys;
  sys.kind_ = kind;
  sys.ring_ = ring;
  const std::uint64_t order = sl2_order(ring);

  if (kind == CosetKind::kUnitriangular) {
    sys.subgroup_order_ = ring.characteristic() == 2 ? ring.size() : 2 * ring.size();
  } else {
    const std::uint64_t car = ring.characteristic();
    if (car != 2 && car != 3) {
      throw std::invalid_argument(
          "prime-subring cosets need characteristic 2 or 3 (got " + std::to_string(car) +
          ")");
    }
    if (ring.size() <= car) {
      throw std::invalid_argument(
          "prime-subring cosets need a ring strictly larger than its prime subring");
    }
    if (ring.size() > 65535) {
      throw std::invalid_argument("ring too large for prime-subring coset keys");
    }
    const Elem one = ring.one();
    std::vector<Elem> img(car);
    for (std::uint64_t i = 0; i < car; ++i) img[i] = ring.from_int(static_cast<std::int64_t>(i));
    for (Elem a : img) {
      for (Elem b : img) {
        for (Elem c : img) {
          for (Elem d : img) {
            if (ring.sub(ring.mul(a, d), ring.mul(b, c)) == one) {
              sys.subgroup_.push_back(Mat2{a, b, c, d});
            }
          }
        }
      }
    }
    sys.subgroup_order_ = sys.subgroup_.size();
  }

  if (order % sys.subgroup_order_ != 0) {
    throw std::logic_error("subgroup order does not divide the SL2 order");
  }
  sys.index_ = order / sys.subgroup_order_;
  return sys;
}

std::uint64_t collision_threshold(const CosetSystem& system) {
  const std::uint64_t t = system.index() + 3;
  return t < 5 ? 5 : t;
}

DecomposeOutcome decompose_via_cosets(const Ring& ring, std::span<const Elem> t,
                                      const CosetSystem& system, const SubsetR* subset) {
  DecomposeOutcome out;
  out.threshold = collision_threshold(system);
  const std::size_t n = t.size();
  out.guaranteed = n >= out.threshold;
  if (n < 4) return out;

  // Prefix matrices M_0 = Id, M_k = M(a_k) ... M(a_1).
  std::vector<Mat2> prefix(n - 1);
  prefix[0] = mat_identity(ring);
  {
    Mat2 m = prefix[0];
    for (std::size_t k = 1; k + 1 < n; ++k) {
      const Elem e = t[k - 1];
      m = Mat2{ring.sub(ring.mul(e, m.a), m.c), ring.sub(ring.mul(e, m.b), m.d), m.a, m.b};
      prefix[k] = m;
    }
  }

  std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> seen;
  for (std::uint32_t j = 1; j + 1 < n; ++j) {
    auto& bucket = seen[system.coset_key(prefix[j])];
    for (std::uint32_t i : bucket) {
      // Candidate windows implied by M_j M_i^{-1} lying in H, as 0-based
      // (start, length) pairs over t.
      std::vector<std::pair<std::size_t, std::size_t>> windows;
      const std::uint32_t g = j - i;
      if (system.kind() == CosetKind::kUnitriangular) {
        windows.emplace_back(i, g);
      } else if (g == 1) {
        const Elem e = t[i];
        if (is_pm_one(ring, e)) {
          windows.emplace_back(i, 1);
        } else if (e == ring.zero()) {
          windows.emplace_back(i, 2);  // K(0, y) = -1 for any y
        }
      } else {
        const Mat2 w = mat_mul(ring, prefix[j], mat_inverse_det1(ring, prefix[i]));
        // w = [[K(full), -K(tail)], [K(head), *]]; entries lie in {0,+-1},
        // and not all of the first three can vanish (det = 1).
        if (is_pm_one(ring, w.a)) windows.emplace_back(i, g);
        if (is_pm_one(ring, w.c)) windows.emplace_back(i, g - 1);
        if (is_pm_one(ring, ring.neg(w.b))) windows.emplace_back(i + 1, g - 1);
      }
      for (const auto& [start0, len] : windows) {
        if (len < 1 || len + 3 > n) continue;
        auto witness = make_witness(ring, t, false, start0, len, subset);
        if (witness) {
          out.collision = PrefixCollision{i, j};
          out.witness = std::move(witness);
          return out;
        }
      }
    }
    bucket.push_back(j);
  }

  if (out.guaranteed && subset == nullptr) {
    throw std::logic_error(
        "prefix-collision scan found no usable window above the guarantee threshold");
  }
  return out;
}

// ---------------------------------------------------------------------------

std::optional<ContinuantHit> find_continuant_value(const Ring& ring,
                                                   std::span<const Elem> t,
                                                   TargetValue target) {
  Elem target_elem = ring.zero();
  if (target == TargetValue::kOne) target_elem = ring.one();
  if (target == TargetValue::kMinusOne) target_elem = ring.minus_one();

  const std::size_t n = t.size();
  // Row i holds K_i(a_j .. a_{j+i-1}) for every start j; roll three rows.
  std::vector<Elem> prev2(n + 1, ring.zero());  // K_{-1} = 0
  std::vector<Elem> prev1(n + 1, ring.one());   // K_0 = 1
  std::vector<Elem> cur(n + 1);
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = 0; j + i <= n; ++j) {
      cur[j] = ring.sub(ring.mul(t[j + i - 1], prev1[j]), prev2[j]);
      if (cur[j] == target_elem) {
        return ContinuantHit{static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j + 1)};
      }
    }
    std::swap(prev2, prev1);
    std::swap(prev1, cur);
  }
  return std::nullopt;
}

}  // namespace quiddity
