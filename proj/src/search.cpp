#include "quiddity/search.hpp"

#include <algorithm>
#include <atomic>
#include <set>
#include <thread>

#include "quiddity/mat2.hpp"
#include "quiddity/tuples.hpp"

namespace quiddity {

namespace {

enum class Mode { kCountAll, kListAll, kIrreducible };

struct TaskResult {
  std::uint64_t count = 0;
  std::vector<std::vector<Elem>> found;
};

struct Engine {
  Engine(const Ring& r, const SubsetR* s, std::uint32_t size, Mode m, std::uint64_t b)
      : ring(r), subset(s), n(size), mode(m), budget(b) {}

  const Ring& ring;
  const SubsetR* subset;
  const std::uint32_t n;
  const Mode mode;
  const std::uint64_t budget;

  std::vector<Elem> candidates;
  std::uint32_t seed_depth = 0;
  std::vector<std::vector<Elem>> tasks;
  std::vector<TaskResult> results;

  std::atomic<std::size_t> next_task{0};
  std::atomic<std::uint64_t> nodes{0};
  std::atomic<bool> stop{false};
};

// One DFS context. Each worker owns one; the seeding pass on the main
// thread uses one as well, so node accounting and pruning behave
// identically there.
class Walker {
 public:
  explicit Walker(Engine& eng)
      : eng_(eng),
        ring_(eng.ring),
        zero_(ring_.zero()),
        one_(ring_.one()),
        minus_one_(ring_.minus_one()),
        size_(ring_.size()),
        add_t_(ring_.add_table()),
        mul_t_(ring_.mul_table()),
        neg_t_(ring_.neg_table()),
        prune_(eng.mode == Mode::kIrreducible && eng.subset == nullptr) {
    entries_.resize(eng_.n);
    mats_.resize(eng_.n);
    mats_[0] = mat_identity(ring_);
    cols_.assign(eng_.n, {});
    for (auto& col : cols_) col.resize(eng_.n + 1);
  }

  // Enumerates prefixes of length seed_depth into eng_.tasks.
  void seed() {
    result_ = nullptr;
    seed_descend(0);
    flush();
  }

  void work_loop() {
    while (!eng_.stop.load(std::memory_order_relaxed)) {
      const std::size_t idx = eng_.next_task.fetch_add(1, std::memory_order_relaxed);
      if (idx >= eng_.tasks.size()) break;
      run_task(idx);
    }
    flush();
  }

 private:
  Elem mul(Elem a, Elem b) const {
    return mul_t_ ? mul_t_[std::size_t{a} * size_ + b] : ring_.mul(a, b);
  }
  Elem sub(Elem a, Elem b) const {
    return add_t_ ? add_t_[std::size_t{a} * size_ + neg_t_[b]] : ring_.sub(a, b);
  }

  void flush() {
    if (pending_ == 0) return;
    const std::uint64_t total =
        eng_.nodes.fetch_add(pending_, std::memory_order_relaxed) + pending_;
    pending_ = 0;
    if (total > eng_.budget) eng_.stop.store(true, std::memory_order_relaxed);
  }

  // Accounts one search node; false means the budget tripped and the
  // search is being abandoned.
  bool note_node() {
    if (++pending_ >= 4096) flush();
    return !eng_.stop.load(std::memory_order_relaxed);
  }

  // entries_[0..k-1] and mats_[k] are in place; places entry k.
  void push(std::uint32_t k, Elem e) {
    entries_[k] = e;
    const Mat2& m = mats_[k];
    mats_[k + 1] =
        Mat2{sub(mul(e, m.a), m.c), sub(mul(e, m.b), m.d), m.a, m.b};
    if (prune_) {
      // cols_[d][j] = continuant of entries j..d (1-based), for j = 1..d.
      const std::uint32_t d = k + 1;
      auto& col = cols_[d - 1];
      for (std::uint32_t j = 1; j <= d; ++j) {
        const Elem c1 = j <= d - 1 ? cols_[d - 2][j] : one_;
        const Elem c2 = j + 2 <= d ? cols_[d - 3][j] : (j + 1 == d ? one_ : zero_);
        col[j] = sub(mul(e, c1), c2);
      }
    }
  }

  // Any window ending at depth d of usable length with continuant +-1
  // makes every completion reducible (plain-ring mode only).
  bool pruned_at(std::uint32_t d) const {
    if (!prune_ || eng_.n < 4) return false;
    const std::uint32_t max_len = eng_.n - 3;
    const std::uint32_t j_lo = d > max_len ? d - max_len + 1 : 1;
    const auto& col = cols_[d - 1];
    for (std::uint32_t j = j_lo; j <= d; ++j) {
      if (col[j] == one_ || col[j] == minus_one_) return true;
    }
    return false;
  }

  bool seed_descend(std::uint32_t k) {
    if (k == eng_.seed_depth) {
      eng_.tasks.emplace_back(entries_.begin(),
                              entries_.begin() + static_cast<std::ptrdiff_t>(k));
      return true;
    }
    return loop_candidates(k, [this](std::uint32_t next) { return seed_descend(next); });
  }

  bool solve_descend(std::uint32_t k) {
    if (k == eng_.n - 1) return emit();
    return loop_candidates(k, [this](std::uint32_t next) { return solve_descend(next); });
  }

  template <typename Recurse>
  bool loop_candidates(std::uint32_t k, Recurse recurse) {
    const bool min_first = eng_.mode == Mode::kIrreducible && k >= 1;
    const Elem floor = min_first ? entries_[0] : 0;
    for (Elem e : eng_.candidates) {
      if (e < floor) continue;
      if (!note_node()) return false;
      push(k, e);
      if (pruned_at(k + 1)) continue;
      if (!recurse(k + 1)) return false;
    }
    return true;
  }

  bool emit() {
    const Mat2& m = mats_[eng_.n - 1];
    bool plus = false;
    if (m.a == zero_ && m.b == one_ && m.c == minus_one_) {
      if (!finish(m.d)) return false;
      plus = true;
    }
    // In characteristic 2 this condition coincides with the one above.
    if (!plus && m.a == zero_ && m.b == minus_one_ && m.c == one_) {
      if (!finish(ring_.neg(m.d))) return false;
    }
    return true;
  }

  bool finish(Elem last) {
    if (eng_.subset != nullptr && !eng_.subset->contains(last)) return true;
    if (eng_.mode == Mode::kIrreducible && eng_.n > 1 && last < entries_[0]) return true;
    if (!note_node()) return false;
    entries_[eng_.n - 1] = last;
    switch (eng_.mode) {
      case Mode::kCountAll:
        ++result_->count;
        break;
      case Mode::kListAll:
        result_->found.push_back(entries_);
        break;
      case Mode::kIrreducible:
        if (!find_reduction_window(ring_, entries_, eng_.subset)) {
          result_->found.push_back(entries_);
        }
        break;
    }
    return true;
  }

  void run_task(std::size_t idx) {
    const auto& prefix = eng_.tasks[idx];
    result_ = &eng_.results[idx];
    // Replay the prefix (seed() already accounted for its nodes).
    for (std::size_t k = 0; k < prefix.size(); ++k) push(static_cast<std::uint32_t>(k), prefix[k]);
    solve_descend(static_cast<std::uint32_t>(prefix.size()));
  }

  Engine& eng_;
  const Ring& ring_;
  const Elem zero_, one_, minus_one_;
  const std::size_t size_;
  const Elem* add_t_;
  const Elem* mul_t_;
  const Elem* neg_t_;
  const bool prune_;

  std::vector<Elem> entries_;
  std::vector<Mat2> mats_;
  std::vector<std::vector<Elem>> cols_;
  TaskResult* result_ = nullptr;
  std::uint64_t pending_ = 0;
};

struct RawRun {
  bool exceeded = false;
  std::uint64_t nodes = 0;
  std::uint64_t count = 0;
  std::vector<std::vector<Elem>> found;
};

RawRun run_search(const Ring& ring, std::uint32_t n, Mode mode,
                  const SearchOptions& options, const SubsetR* subset) {
  if (!ring.valid()) throw std::invalid_argument("search: ring is not built");
  if (n == 0) throw std::invalid_argument("search: size must be >= 1");
  if (subset != nullptr && !same_ring(subset->ring, ring)) {
    throw std::invalid_argument("search: subset belongs to a different ring");
  }

  Engine eng(ring, subset, n, mode, options.node_budget);
  if (subset != nullptr) {
    eng.candidates = subset->members;
  } else {
    eng.candidates.resize(static_cast<std::size_t>(ring.size()));
    for (std::size_t e = 0; e < eng.candidates.size(); ++e) {
      eng.candidates[e] = static_cast<Elem>(e);
    }
  }
  eng.seed_depth = std::min<std::uint32_t>(2, n - 1);

  Walker seeder(eng);
  seeder.seed();
  eng.results.resize(eng.tasks.size());

  const std::uint32_t workers = std::max<std::uint32_t>(1, options.workers);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::uint32_t w = 0; w < workers; ++w) {
    pool.emplace_back([&eng] { Walker(eng).work_loop(); });
  }
  for (auto& th : pool) th.join();

  RawRun out;
  out.nodes = eng.nodes.load();
  if (out.nodes > options.node_budget) {
    out.exceeded = true;  // results are dropped wholesale, never truncated
    return out;
  }
  for (auto& slot : eng.results) {
    out.count += slot.count;
    for (auto& t : slot.found) out.found.push_back(std::move(t));
  }
  return out;
}

}  // namespace

BoundsReport compute_bounds(const Ring& ring) {
  BoundsReport r;
  try {
    r.sl2_order = sl2_order_formula(ring.spec());
    r.sl2_method = "formula";
  } catch (const FormulaNotApplicable&) {
    r.sl2_order = sl2_order_enumerate(ring);
    r.sl2_method = "enumeration";
  }
  const std::uint64_t car = ring.characteristic();
  const std::uint64_t h = car == 2 ? ring.size() : 2 * ring.size();
  r.theta = r.sl2_order / h + 2;
  if ((car == 2 || car == 3) && ring.size() > car) {
    const std::uint64_t prime_sl2 = car == 2 ? 6 : 24;
    r.coset_bound = std::max<std::uint64_t>(4, r.sl2_order / prime_sl2 + 2);
  }
  r.lower = std::max<std::uint64_t>(4, car);
  return r;
}

QuiddityCount count_quiddities(const Ring& ring, std::uint32_t n,
                               const SearchOptions& options, const SubsetR* subset) {
  RawRun run = run_search(ring, n, Mode::kCountAll, options, subset);
  return QuiddityCount{run.count, run.nodes, run.exceeded};
}

QuiddityEnum enumerate_quiddities(const Ring& ring, std::uint32_t n,
                                  const SearchOptions& options, const SubsetR* subset) {
  RawRun run = run_search(ring, n, Mode::kListAll, options, subset);
  QuiddityEnum out;
  out.nodes = run.nodes;
  out.budget_exceeded = run.exceeded;
  out.tuples = std::move(run.found);
  return out;
}

IrreducibleEnum enumerate_irreducible(const Ring& ring, std::uint32_t n,
                                      const SearchOptions& options,
                                      const SubsetR* subset) {
  RawRun run = run_search(ring, n, Mode::kIrreducible, options, subset);
  IrreducibleEnum out;
  out.nodes = run.nodes;
  out.budget_exceeded = run.exceeded;
  if (run.exceeded) return out;

  std::set<std::vector<Elem>> classes;
  for (const auto& t : run.found) classes.insert(dihedral_normal_form(t));
  out.normal_forms.assign(classes.begin(), classes.end());
  for (const auto& nf : out.normal_forms) out.raw_count += dihedral_orbit_size(nf);
  return out;
}

SearchReport ell_search(const Ring& ring, std::uint32_t max_n,
                        const SearchOptions& options, const SubsetR* subset) {
  SearchReport rep;
  rep.ring = ring;
  rep.max_n_requested = max_n;
  if (subset != nullptr) rep.subset_members = subset->members;
  rep.bounds = compute_bounds(ring);
  rep.bound_used = subset != nullptr
                       ? rep.bounds.sl2_order + 2
                       : std::min(rep.bounds.theta,
                                  rep.bounds.coset_bound.value_or(UINT64_MAX));

  std::uint64_t consumed = 0;
  for (std::uint32_t n = 3; n <= max_n; ++n) {
    SearchOptions per = options;
    per.node_budget = options.node_budget - consumed;
    QuiddityCount qc = count_quiddities(ring, n, per, subset);
    if (qc.budget_exceeded) {
      rep.budget_exceeded = true;
      break;
    }
    consumed += qc.nodes;

    per.node_budget = options.node_budget - consumed;
    IrreducibleEnum ir = enumerate_irreducible(ring, n, per, subset);
    if (ir.budget_exceeded) {
      rep.budget_exceeded = true;
      break;
    }
    consumed += ir.nodes;

    if (ir.raw_count > 0) {
      if (n > rep.bound_used) {
        throw std::logic_error(
            "found an irreducible solution of size " + std::to_string(n) +
            " above the bound " + std::to_string(rep.bound_used));
      }
      rep.max_irreducible_found = n;
    }
    SizeScan scan;
    scan.n = n;
    scan.quiddity_count = qc.count;
    scan.irreducible_count = ir.raw_count;
    scan.irreducible_class_count = ir.normal_forms.size();
    scan.normal_forms = std::move(ir.normal_forms);
    rep.sizes.push_back(std::move(scan));
    rep.verified_up_to = n;
  }
  rep.nodes = consumed;
  rep.certified_complete = rep.verified_up_to >= rep.bound_used;
  return rep;
}

std::vector<Elem> certificate_two_tuple(const Ring& ring) {
  const std::uint64_t car = ring.characteristic();
  if (car < 4) {
    throw std::invalid_argument("the all-twos certificate needs characteristic >= 4");
  }
  std::vector<Elem> t(static_cast<std::size_t>(car), ring.from_int(2));
  auto sign = quiddity_sign(ring, t);
  if (!sign || !sign->plus) {
    throw std::logic_error("all-twos certificate failed its product check");
  }
  return t;
}

MonotonicityReport monotonicity_check(const RingSpec& sub, const RingSpec& super,
                                      std::uint32_t max_n, const SearchOptions& options,
                                      const RingConfig& config) {
  const RingSpec s = normalize_spec(sub);
  const RingSpec sup = normalize_spec(super);
  const auto* z = std::get_if<ZModSpec>(&s.node);
  if (z == nullptr || !is_prime(z->modulus)) {
    throw std::invalid_argument(
        "unsupported embedding: the subring must be Z/p for a prime p");
  }
  if (const auto* prod = std::get_if<ProductSpec>(&sup.node)) {
    for (const auto& f : prod->factors) {
      if (f == s) {
        throw std::invalid_argument(
            "inclusion of " + s.canonical_text() + " as a direct factor of " +
            sup.canonical_text() +
            " is not unital: it sends 1 to (1|0|...), not to the identity");
      }
    }
    throw std::invalid_argument(
        "unsupported embedding: expected Z/p into Z/p[x]/(f)");
  }
  const auto* q = std::get_if<QuotientSpec>(&sup.node);
  if (q == nullptr || q->base_prime != z->modulus) {
    throw std::invalid_argument(
        "unsupported embedding: expected Z/p into Z/p[x]/(f) with the same p");
  }

  MonotonicityReport rep;
  rep.embedding =
      s.canonical_text() + " -> " + sup.canonical_text() + " (constant polynomials)";
  const Ring ring_sub = build_ring(s, config);
  const Ring ring_super = build_ring(sup, config);
  rep.sub_report = ell_search(ring_sub, max_n, options);
  rep.super_report = ell_search(ring_super, max_n, options);
  rep.both_certified =
      rep.sub_report.certified_complete && rep.super_report.certified_complete;
  if (rep.both_certified) {
    rep.holds =
        rep.sub_report.max_irreducible_found <= rep.super_report.max_irreducible_found;
  }
  return rep;
}

}  // namespace quiddity
