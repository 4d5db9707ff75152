#include "lowerset/enumerate.hpp"

#include <algorithm>
#include <cstring>
#include <exception>
#include <unordered_set>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace lowerset {

namespace {

// The generation walks sets point by point in canonical (sum, lex) order.
// A state is a prefix: the points added so far (always a lower set), the
// membership hash, and the sorted list of addable points canonically greater
// than the last added one.  Child candidate lists come from the parent's
// suffix plus the points newly enabled by the added point, so no state is
// ever produced twice.

using Key = std::vector<Coord>;  // fixed-width coordinate vector

struct KeyHash {
  size_t operator()(const Key& v) const {
    uint64_t h = 1469598103934665603ull;
    for (Coord c : v) {
      h ^= c;
      h *= 1099511628211ull;
    }
    return static_cast<size_t>(h);
  }
};

uint64_t key_sum(const Key& k) {
  uint64_t s = 0;
  for (Coord c : k) s += c;
  return s;
}

bool key_canonical_less(const Key& a, const Key& b) {
  uint64_t sa = key_sum(a), sb = key_sum(b);
  if (sa != sb) return sa < sb;
  return a < b;
}

// Depth cap keeping the recursive walk well inside the thread stack; the
// node budget makes anything deeper unreachable for d >= 2 in practice.
constexpr uint64_t kMaxEnumerationSize = 20000;

struct Walker {
  uint32_t axes = 0;
  uint64_t target = 0;
  Budget* budget = nullptr;
  std::atomic<bool>* stop = nullptr;
  const std::unordered_set<Key, KeyHash>* container = nullptr;
  bool visit_internal = false;
  std::function<void(const Walker&)> on_visit;

  std::vector<Key> cur;
  std::unordered_set<Key, KeyHash> members;
  std::vector<std::vector<Key>> cands;  // per depth

  bool addable(const Key& t, uint32_t known_axis) const {
    if (container && !container->count(t)) return false;
    Key pred = t;
    for (uint32_t b = 0; b < axes; ++b) {
      if (b == known_axis || t[b] == 0) continue;
      --pred[b];
      bool ok = members.count(pred) != 0;
      ++pred[b];
      if (!ok) return false;
    }
    return true;
  }

  void visit_if_due() {
    if (cur.size() == target || visit_internal) on_visit(*this);
  }

  void dfs(size_t depth) {
    const auto& list = cands[depth];
    for (size_t i = 0; i < list.size(); ++i) {
      if (stop && stop->load(std::memory_order_relaxed)) return;
      budget->charge(1);
      Key q = list[i];
      cur.push_back(q);
      members.insert(q);
      visit_if_due();
      if (cur.size() < target) {
        auto& child = cands[depth + 1];
        child.assign(list.begin() + static_cast<ptrdiff_t>(i) + 1, list.end());
        size_t mid = child.size();
        for (uint32_t a = axes; a-- > 0;) {  // descending axis = ascending canonical
          Key t = q;
          ++t[a];
          if (addable(t, a)) child.push_back(std::move(t));
        }
        std::inplace_merge(child.begin(), child.begin() + static_cast<ptrdiff_t>(mid),
                           child.end(), key_canonical_less);
        dfs(depth + 1);
      }
      members.erase(q);
      cur.pop_back();
    }
  }

  // Full walk from the origin.
  void run() {
    cur.clear();
    members.clear();
    cands.assign(target + 1, {});
    Key origin(axes, 0);
    if (container && !container->count(origin)) return;
    budget->charge(1);
    cur.push_back(origin);
    members.insert(origin);
    visit_if_due();
    if (target > 1) {
      auto& root = cands[1];
      for (uint32_t a = axes; a-- > 0;) {
        Key t(axes, 0);
        t[a] = 1;
        if (!container || container->count(t)) root.push_back(std::move(t));
      }
      dfs(1);
    }
  }

  // Resume from a previously collected prefix (its nodes are already paid
  // for); rebuilds the membership hash and the candidate list.
  void run_from(const std::vector<Key>& prefix) {
    cur = prefix;
    members.clear();
    members.insert(prefix.begin(), prefix.end());
    cands.assign(target + 1, {});
    const Key& last = cur.back();
    std::vector<Key> cs;
    std::unordered_set<Key, KeyHash> seen;
    for (const Key& p : cur) {
      for (uint32_t a = 0; a < axes; ++a) {
        Key t = p;
        ++t[a];
        if (!key_canonical_less(last, t)) continue;
        if (members.count(t) || seen.count(t)) continue;
        if (addable(t, kNoAxis)) {
          seen.insert(t);
          cs.push_back(std::move(t));
        }
      }
    }
    std::sort(cs.begin(), cs.end(), key_canonical_less);
    size_t depth = cur.size();
    cands[depth] = std::move(cs);
    if (cur.size() < target) dfs(depth);
  }

  static constexpr uint32_t kNoAxis = UINT32_MAX;
};

void validate_enum_input(uint64_t d, uint64_t n) {
  if (d < 1) throw std::invalid_argument("enumeration requires d >= 1");
  if (d > kMaxEnumerationDim)
    throw std::invalid_argument(
        "enumeration materializes coordinates and requires d <= 1024; "
        "use the decomposition counting method for larger dimensions");
  if (n > kMaxEnumerationSize)
    throw std::invalid_argument("enumeration requires n <= 20000");
}

// Exact number of size-s prefixes, used to pick the parallel split level.
uint64_t prefix_states(uint64_t d, uint64_t s) {
  switch (s) {
    case 2:
      return d;
    case 3:
      return d + d * (d - 1) / 2;
    case 4:
      return (d + 2) * (d + 1) * d / 6 + d * (d - 1) / 2;
    default:
      return UINT64_MAX;
  }
}

uint64_t choose_split(uint64_t d, uint64_t n) {
  uint64_t split = 2;
  for (uint64_t s : {3ull, 4ull})
    if (s < n && prefix_states(d, s) <= 16384) split = s;
  return split;
}

// Runs the walk in parallel over prefix subtrees.  Visit results are merged
// through Local (one per task) and Fold; totals are schedule-independent.
template <typename Local, typename LeafFn, typename Fold>
void parallel_leaf_walk(uint64_t d, uint64_t n, Budget& budget, LeafFn leaf, Fold fold) {
  std::vector<std::vector<Key>> prefixes;
  uint64_t split = choose_split(d, n);
  {
    Walker collect;
    collect.axes = static_cast<uint32_t>(d);
    collect.target = split;
    collect.budget = &budget;
    collect.on_visit = [&prefixes](const Walker& w) { prefixes.push_back(w.cur); };
    collect.run();
  }
  std::atomic<bool> stop{false};
  std::atomic<bool> budget_hit{false};
  std::exception_ptr eptr = nullptr;
#ifdef _OPENMP
#pragma omp parallel
#endif
  {
    Local local{};
    Walker w;
    w.axes = static_cast<uint32_t>(d);
    w.target = n;
    w.budget = &budget;
    w.stop = &stop;
    w.on_visit = [&local, &leaf](const Walker& wk) { leaf(wk, local); };
#ifdef _OPENMP
#pragma omp for schedule(dynamic, 1) nowait
#endif
    for (long i = 0; i < static_cast<long>(prefixes.size()); ++i) {
      if (stop.load(std::memory_order_relaxed)) continue;
      try {
        w.run_from(prefixes[static_cast<size_t>(i)]);
      } catch (const BudgetExceeded&) {
        budget_hit.store(true);
        stop.store(true);
      } catch (...) {
#ifdef _OPENMP
#pragma omp critical(lowerset_walk_eptr)
#endif
        {
          if (!eptr) eptr = std::current_exception();
        }
        stop.store(true);
      }
    }
#ifdef _OPENMP
#pragma omp critical(lowerset_walk_fold)
#endif
    {
      fold(local);
    }
  }
  if (eptr) std::rethrow_exception(eptr);
  if (budget_hit.load()) throw BudgetExceeded("work budget exceeded");
}

uint64_t maximal_count(const Walker& w) {
  uint64_t m = 0;
  for (const Key& p : w.cur) {
    bool maximal = true;
    Key t = p;
    for (uint32_t a = 0; a < w.axes && maximal; ++a) {
      ++t[a];
      if (w.members.count(t)) maximal = false;
      --t[a];
    }
    m += maximal;
  }
  return m;
}

}  // namespace

void enumerate_lower_sets(uint64_t d, uint64_t n, Budget& budget,
                          const std::function<void(const LowerSet&)>& visit) {
  validate_enum_input(d, n);
  if (n == 0) {
    budget.charge(1);
    visit(LowerSet(d));
    return;
  }
  if (d == 1) {  // single column; avoids deep recursion
    budget.charge(n);
    std::vector<Point> pts;
    pts.reserve(n);
    for (uint64_t z = 0; z < n; ++z)
      pts.emplace_back(z == 0 ? std::vector<Coord>{}
                              : std::vector<Coord>{static_cast<Coord>(z)});
    visit(LowerSet::from_valid_points(1, std::move(pts)));
    return;
  }
  Walker w;
  w.axes = static_cast<uint32_t>(d);
  w.target = n;
  w.budget = &budget;
  w.on_visit = [&](const Walker& wk) {
    std::vector<Point> pts;
    pts.reserve(wk.cur.size());
    for (const Key& k : wk.cur) pts.emplace_back(k);
    visit(LowerSet::from_valid_points(d, std::move(pts)));
  };
  w.run();
}

mpz_class count_by_enumeration_serial(uint64_t d, uint64_t n, Budget& budget) {
  validate_enum_input(d, n);
  if (n == 0) {
    budget.charge(1);
    return 1;
  }
  if (d == 1) {
    budget.charge(n);
    return 1;
  }
  uint64_t count = 0;
  Walker w;
  w.axes = static_cast<uint32_t>(d);
  w.target = n;
  w.budget = &budget;
  w.on_visit = [&count](const Walker&) { ++count; };
  w.run();
  return mpz_class(static_cast<unsigned long>(count));
}

mpz_class count_by_enumeration(uint64_t d, uint64_t n, Budget& budget) {
  validate_enum_input(d, n);
  if (n <= 4 || d == 1) return count_by_enumeration_serial(d, n, budget);
  uint64_t total = 0;
  parallel_leaf_walk<uint64_t>(
      d, n, budget, [](const Walker&, uint64_t& local) { ++local; },
      [&total](const uint64_t& local) { total += local; });
  return mpz_class(static_cast<unsigned long>(total));
}

uint64_t max_maximal_points_serial(uint64_t d, uint64_t n, Budget& budget) {
  validate_enum_input(d, n);
  if (n == 0) throw std::invalid_argument("max_maximal_points requires n >= 1");
  if (d == 1) {
    budget.charge(n);
    return 1;
  }
  uint64_t best = 0;
  Walker w;
  w.axes = static_cast<uint32_t>(d);
  w.target = n;
  w.budget = &budget;
  w.on_visit = [&best](const Walker& wk) { best = std::max(best, maximal_count(wk)); };
  w.run();
  return best;
}

uint64_t max_maximal_points(uint64_t d, uint64_t n, Budget& budget) {
  validate_enum_input(d, n);
  if (n == 0) throw std::invalid_argument("max_maximal_points requires n >= 1");
  if (n <= 4 || d == 1) return max_maximal_points_serial(d, n, budget);
  uint64_t best = 0;
  parallel_leaf_walk<uint64_t>(
      d, n, budget,
      [](const Walker& wk, uint64_t& local) { local = std::max(local, maximal_count(wk)); },
      [&best](const uint64_t& local) { best = std::max(best, local); });
  return best;
}

void for_each_contained_lower_set(const LowerSet& L, uint64_t max_size, Budget& budget,
                                  const std::function<void(const std::vector<Point>&)>& visit) {
  if (L.empty() || max_size == 0) return;
  std::unordered_set<Key, KeyHash> container;
  for (const Point& p : L.points()) container.insert(p.coords);
  Walker w;
  w.axes = L.width();
  w.target = std::min<uint64_t>(max_size, L.size());
  w.budget = &budget;
  w.container = &container;
  w.visit_internal = true;
  std::vector<Point> pts;
  w.on_visit = [&](const Walker& wk) {
    pts.clear();
    pts.reserve(wk.cur.size());
    for (const Key& k : wk.cur) pts.emplace_back(k);
    visit(pts);
  };
  w.run();
}

}  // namespace lowerset
