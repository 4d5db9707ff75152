#include "lowerset/count.hpp"

#include <list>
#include <stdexcept>
#include <unordered_map>

#include "lowerset/series.hpp"

namespace lowerset {

namespace {

/* ------------------------------------------------------------------ */
/* Nested-slice dynamic program                                        */
/*                                                                     */
/* A d-dimensional lower set of size n is exactly a chain of nested    */
/* (d-1)-dimensional lower sets L_0 >= L_1 >= ... (the slices along    */
/* the last axis) with sizes summing to n.  chain_count(L, r) counts   */
/* the ways to extend a chain whose current slice is L using r more    */
/* points; states are memoized on (canonical slice bytes, r) with LRU  */
/* eviction at a fixed entry cap.                                      */
/* ------------------------------------------------------------------ */

constexpr size_t kDpMemoCap = 1u << 20;

class DpMemo {
 public:
  explicit DpMemo(size_t cap) : cap_(cap) {}

  const mpz_class* find(const std::string& key) {
    auto it = map_.find(key);
    if (it == map_.end()) return nullptr;
    order_.splice(order_.begin(), order_, it->second);  // touch
    return &it->second->second;
  }

  void insert(std::string key, mpz_class value) {
    auto it = map_.find(key);
    if (it != map_.end()) return;  // first writer wins
    order_.emplace_front(key, std::move(value));
    map_.emplace(std::move(key), order_.begin());
    if (map_.size() > cap_) {
      map_.erase(order_.back().first);
      order_.pop_back();
    }
  }

 private:
  size_t cap_;
  std::list<std::pair<std::string, mpz_class>> order_;  // front = most recent
  std::unordered_map<std::string, std::list<std::pair<std::string, mpz_class>>::iterator> map_;
};

std::string memo_key(const LowerSet& L, uint64_t r) {
  std::string key = L.canonical_key();
  uint64_t v = r;
  do {
    uint8_t b = v & 0x7f;
    v >>= 7;
    if (v) b |= 0x80;
    key.push_back(static_cast<char>(b));
  } while (v);
  return key;
}

mpz_class chain_count(const LowerSet& L, uint64_t r, DpMemo& memo, Budget& budget) {
  if (r == 0) return 1;
  std::string key = memo_key(L, r);
  if (const mpz_class* hit = memo.find(key)) return *hit;
  budget.charge(1);  // one DP state
  mpz_class total = 0;
  for_each_contained_lower_set(L, r, budget, [&](const std::vector<Point>& pts) {
    LowerSet next = LowerSet::from_valid_points(L.dim(), pts);
    total += chain_count(next, r - next.size(), memo, budget);
  });
  memo.insert(std::move(key), total);
  return total;
}

mpz_class count_by_dp(uint64_t d, uint64_t n, Budget& budget) {
  budget.charge(1);
  if (n == 0 || d == 1) return 1;
  DpMemo memo(kDpMemoCap);
  mpz_class total = 0;
  for (uint64_t s = 1; s <= n; ++s) {
    enumerate_lower_sets(d - 1, s, budget, [&](const LowerSet& L0) {
      total += chain_count(L0, n - s, memo, budget);
    });
  }
  return total;
}

mpz_class count_by_series(uint64_t d, uint64_t n, Budget& budget) {
  if (d != 2 && d != 3)
    throw std::invalid_argument("series counting requires d in {2, 3}");
  // The expansion touches ~n^2/k coefficients per factor; charge the
  // quadratic cost (saturating) so huge n refuses instead of stalling.
  uint64_t cells = n + 1;
  uint64_t quad = cells > 0xFFFFFFFFull ? UINT64_MAX : cells * cells;
  budget.charge(quad);
  SeriesTable t = series_expand(d == 2 ? SeriesFamily::Euler : SeriesFamily::MacMahon, d, n);
  return t.coeffs[n];
}

mpz_class count_by_decomposition(uint64_t d, uint64_t n, Budget& budget) {
  budget.charge(1);
  if (n == 0) return 1;
  uint64_t j_max = std::min<uint64_t>(d, n - 1);
  std::vector<mpz_class> q = essential_counts(n, j_max, budget);
  mpz_class total = 0;
  mpz_class binom;
  for (uint64_t j = 0; j <= j_max; ++j) {
    mpz_bin_uiui(binom.get_mpz_t(), static_cast<unsigned long>(d),
                 static_cast<unsigned long>(j));
    total += binom * q[j];
  }
  return total;
}

}  // namespace

CountResult count_exact(uint64_t d, uint64_t n, CountMethod method, Budget& budget) {
  if (d < 1) throw std::invalid_argument("count_exact requires d >= 1");
  CountMethod chosen = method;
  if (chosen == CountMethod::Auto) {
    if (d == 1)
      chosen = CountMethod::DP;
    else if (d <= 3)
      chosen = CountMethod::Series;
    else if (d > n)
      chosen = CountMethod::Decomposition;
    else
      chosen = CountMethod::DP;
  }
  CountResult res;
  res.d = d;
  res.n = n;
  res.method = chosen;
  switch (chosen) {
    case CountMethod::Enumeration:
      res.value = count_by_enumeration(d, n, budget);
      break;
    case CountMethod::DP:
      res.value = count_by_dp(d, n, budget);
      break;
    case CountMethod::Series:
      res.value = count_by_series(d, n, budget);
      break;
    case CountMethod::Decomposition:
      res.value = count_by_decomposition(d, n, budget);
      break;
    case CountMethod::Auto:
      throw std::logic_error("count_exact: unresolved method");
  }
  return res;
}

std::vector<mpz_class> essential_counts(uint64_t n, uint64_t j_max, Budget& budget) {
  // p_i(n) for i = 0..j_max; i stays below n in every useful call, so the
  // small-dimension methods always apply.
  std::vector<mpz_class> p(j_max + 1);
  for (uint64_t i = 0; i <= j_max; ++i) {
    if (i == 0)
      p[i] = (n <= 1) ? 1 : 0;
    else if (i == 1)
      p[i] = 1;
    else if (i <= 3)
      p[i] = count_by_series(i, n, budget);
    else
      p[i] = count_by_dp(i, n, budget);
  }
  std::vector<mpz_class> q(j_max + 1);
  mpz_class binom;
  for (uint64_t j = 0; j <= j_max; ++j) {
    mpz_class acc = 0;
    for (uint64_t i = 0; i <= j; ++i) {
      mpz_bin_uiui(binom.get_mpz_t(), static_cast<unsigned long>(j),
                   static_cast<unsigned long>(i));
      if ((j - i) % 2 == 0)
        acc += binom * p[i];
      else
        acc -= binom * p[i];
    }
    q[j] = acc;
  }
  return q;
}

mpz_class subset_count(const LowerSet& S, uint64_t k, Budget& budget) {
  uint64_t count = 0;
  enumerate_lower_subsets(S, k, [&](const LowerSet&) {
    budget.charge(1);
    ++count;
  });
  return mpz_class(static_cast<unsigned long>(count));
}

const char* count_method_name(CountMethod m) {
  switch (m) {
    case CountMethod::Auto:
      return "auto";
    case CountMethod::Enumeration:
      return "enum";
    case CountMethod::DP:
      return "dp";
    case CountMethod::Series:
      return "series";
    case CountMethod::Decomposition:
      return "decomp";
  }
  return "?";
}

CountMethod count_method_from_name(const std::string& name) {
  if (name == "auto") return CountMethod::Auto;
  if (name == "enum") return CountMethod::Enumeration;
  if (name == "dp") return CountMethod::DP;
  if (name == "series") return CountMethod::Series;
  if (name == "decomp") return CountMethod::Decomposition;
  throw std::invalid_argument("unknown count method: " + name);
}

}  // namespace lowerset
