#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "lowerset/enumerate.hpp"
#include "lowerset/lattice.hpp"

namespace lowerset {

enum class CountMethod { Auto, Enumeration, DP, Series, Decomposition };

struct CountResult {
  uint64_t d = 0;
  uint64_t n = 0;
  mpz_class value;
  CountMethod method = CountMethod::Auto;  // method actually used
};

// p_d(n): the number of d-dimensional lower sets of size n.  Auto picks
// series for d in {2,3}, decomposition for d > n (valid up to d ~ 1e12),
// and the nested-slice dynamic program otherwise.
CountResult count_exact(uint64_t d, uint64_t n, CountMethod method, Budget& budget);

// q_j(n) for j = 0..j_max, where q_j(n) counts j-dimensional lower sets of
// size n containing every unit vector e_1..e_j.  Obtained from p_i(n) by
// inclusion-exclusion; p_d(n) = sum_j C(d, j) q_j(n), and q_j(n) = 0 for
// j >= n, which is what makes huge ambient dimensions tractable.
std::vector<mpz_class> essential_counts(uint64_t n, uint64_t j_max, Budget& budget);

// C(Q, k, d): the number of lower subsets of S with at least |S| - k points.
mpz_class subset_count(const LowerSet& S, uint64_t k, Budget& budget);

const char* count_method_name(CountMethod m);
CountMethod count_method_from_name(const std::string& name);

}  // namespace lowerset
