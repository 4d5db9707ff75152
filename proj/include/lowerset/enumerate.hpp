#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

#include "lowerset/lattice.hpp"

namespace lowerset {

class BudgetExceeded : public std::runtime_error {
 public:
  explicit BudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

// Shared work budget: every enumeration-tree node and DP state costs one
// unit.  Exceeding the limit aborts the whole computation (never a partial
// answer), and whether a computation fits depends only on its inputs, not on
// the thread schedule.
class Budget {
 public:
  static constexpr uint64_t kDefaultLimit = 100000000ull;  // 1e8 nodes

  explicit Budget(uint64_t limit = kDefaultLimit) : limit_(limit) {}
  uint64_t limit() const { return limit_; }
  uint64_t used() const { return used_.load(std::memory_order_relaxed); }
  void charge(uint64_t k = 1) {
    uint64_t prev = used_.fetch_add(k, std::memory_order_relaxed);
    uint64_t now = prev + k;
    if (now < prev) {  // saturating: a wrapped counter stays exceeded
      used_.store(UINT64_MAX, std::memory_order_relaxed);
      throw BudgetExceeded("work budget exceeded");
    }
    if (now > limit_) throw BudgetExceeded("work budget exceeded");
  }

 private:
  uint64_t limit_;
  std::atomic<uint64_t> used_{0};
};

// Enumeration materializes coordinates, so the ambient dimension is capped;
// counting at larger dimensions goes through the decomposition method.
inline constexpr uint64_t kMaxEnumerationDim = 1024;

// Visit every d-dimensional lower set of size n exactly once, in a fixed
// order.  Generation adds points in canonical (sum, lex) order; every prefix
// of the generated sequence is itself a lower set, which is what makes the
// enumeration duplicate-free.
void enumerate_lower_sets(uint64_t d, uint64_t n, Budget& budget,
                          const std::function<void(const LowerSet&)>& visit);

// Counting kernels over the same tree.  The serial walk is the reference
// implementation; the default kernel work-splits the first branching levels
// across OpenMP threads (identical results regardless of schedule).
mpz_class count_by_enumeration_serial(uint64_t d, uint64_t n, Budget& budget);
mpz_class count_by_enumeration(uint64_t d, uint64_t n, Budget& budget);

// T(n, d): maximum size of the maximal-available subset M(Q) over all
// d-dimensional lower sets Q of size n.
uint64_t max_maximal_points_serial(uint64_t d, uint64_t n, Budget& budget);
uint64_t max_maximal_points(uint64_t d, uint64_t n, Budget& budget);

// Visit every nonempty lower set contained in L of size <= max_size (the
// container's ambient dimension is inherited).  Serial; used by the
// nested-slice dynamic program.
void for_each_contained_lower_set(const LowerSet& L, uint64_t max_size, Budget& budget,
                                  const std::function<void(const std::vector<Point>&)>& visit);

}  // namespace lowerset
