#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "lowerset/enumerate.hpp"
#include "lowerset/lattice.hpp"

namespace lowerset {

enum class BoundKind { Lower, Upper, Asymptotic };
const char* bound_kind_name(BoundKind k);

// One evaluated estimate of log p_d(n).  log_value may be infinite only for
// degenerate entries, which always carry precondition_met = false or bound a
// trivially true side.
struct BoundValue {
  std::string name;
  BoundKind kind = BoundKind::Upper;
  double log_value = 0.0;
  bool precondition_met = false;
  std::string precondition;  // comma-free condition text
};

// Allowed floating-point slack when comparing bound values against exact
// counts (relative to max(1, |log exact|)).
inline constexpr double kLogBracketTolerance = 1e-9;

// Principal asymptotic terms of log p_d(n) for the two classic dimensions.
double log_p2_asymptotic(uint64_t n);  // pre: n >= 1
double log_p3_asymptotic(uint64_t n);  // pre: n >= 1

// Constants of the two-sided estimate C1(d) n^(1-1/d) <= log p_d(n)
//                                      <= C2(d) n^(1-1/d)   (for n > 55^d):
//   C1(d) = 0.9 d (d!)^(-1/d) log 2,   C2(d) = pi sqrt(2/3) d^(log d).
struct ScalingConstants {
  double c_lower;
  double c_upper;
};
ScalingConstants scaling_constants(uint64_t d);  // pre: d >= 1

// Dimension-free window: n^(1-1/d) <= log p_d(n) <= 7200 n^(1-1/d) once
// n >= (30 d)^(2 d^2); the precondition is compared exactly in integers.
std::pair<BoundValue, BoundValue> absolute_window(uint64_t d, uint64_t n);

// Weaker window with constants (1, d^2), valid once n >= d^(12 d log d);
// the precondition is compared in log domain.
std::pair<BoundValue, BoundValue> dimension_window(uint64_t d, uint64_t n);

// The five cited coarse bounds: 2^(d n), d^(n-1) (n-1)!, C(d+n-2, n-1),
// d^(n-1), and the zeta-flavored d zeta(d)^(1/d) n^(1-1/d) + (d-1) log n
// (the last bounds log p_d(n) directly).
std::vector<BoundValue> classic_bounds(uint64_t d, uint64_t n);

// Sparse-regime sandwich: for d > n^3/2,
//   1 <= p_d(n) / C(d+n-2, d-1) < 1 / (1 - n^3/(2d)),
// verified in exact integer arithmetic.
struct SandwichCheck {
  uint64_t d = 0, n = 0;
  bool applicable = false;  // 2 d > n^3
  mpz_class count;          // p_d(n)
  mpz_class binom;          // C(d+n-2, d-1)
  bool lower_ok = false;    // count >= binom
  bool upper_ok = false;    // count (2d - n^3) < binom 2d
  double log_lower = 0.0;   // log binom
  double log_upper = 0.0;   // log binom - log(1 - n^3/(2d))
};
SandwichCheck binomial_sandwich(uint64_t d, uint64_t n, Budget& budget);  // pre: n >= 1

// Composition-sum upper bound on p_d(n): sum over m = 2..n and tuples
// (s_0..s_t), s_i >= 2 for i < t, s_t >= 1, sum s_i = m, of
//   e^m 2^-m (2pi)^(-(t+1)/2) (s_0...s_t)^(-1/2)
//   (2d)^(s_0) s_0^(2s_1-s_0) ... s_(t-1)^(2s_t-s_(t-1)) s_t^(-s_t),
// accumulated by stable log-sum-exp.  The sum is empty for n = 2 (reported
// as -inf with the degenerate flag; it does not dominate p_d(2)).
struct CompositionSumBound {
  double log_value = 0.0;
  bool degenerate = false;
};
CompositionSumBound composition_sum_upper(uint64_t d, uint64_t n);  // pre: 2 <= n <= 30

// Mid-range upper bound, valid for d <= n^2/4:
//   p_d(n) < 4 e^(c n) n^(n + 2 sqrt(d)) max{2^-n, (2n)^(-sqrt(d))},
// with c = 3/(2e) + 1.  Evaluated mechanically for any d, n >= 1.
double midrange_upper(uint64_t d, uint64_t n);

// Constructive lower bounds B_i = C(d, i) C(i(i-1)/2, n-i) on p_d(n+1);
// their sum also bounds p_d(n+1).  guide_i = floor(n / psi).
struct PairConstructionBound {
  uint64_t guide_i = 0;
  double log_guide = 0.0;
  uint64_t best_i = 0;
  double log_best = 0.0;
  mpz_class sum;
};
PairConstructionBound pair_construction_lower(uint64_t d, uint64_t n, double psi);

// High-dimension upper bound: for xi >= 2/n and d >= xi n^2,
//   p_d(n) <= 3 a^(2n) e^(125 n / xi) n^2 e^n (d/n)^n,  a = max{2 e^3.5 / xi, 1}.
double highdim_upper(uint64_t d, uint64_t n, double xi);

// Upper bounds on the subset count C(Q, k, d) for Q = S, n = |S|:
//   (max{8, 4 e T(n)/k})^k           (always valid),
//   (e^4 max{1, n^(1-1/d)/k})^k      and
//   2^(2k + 4 n^(1-1/d))             (both need n >= d^(6 d log d)).
struct SubsetCountBounds {
  double log_top_width = 0.0;
  double log_e4 = 0.0;
  double log_plain_power = 0.0;
  bool asymptotic_precondition_met = false;
  uint64_t top_antichain = 0;  // T(n, d) used by the first bound
};
SubsetCountBounds subset_count_bounds(const LowerSet& S, uint64_t k, Budget& budget);

// Everything applicable at (d, n) in one report.  exact is present when the
// auto-selected counting method fits the budget.  Bounds with met
// preconditions are checked against the exact value (within
// kLogBracketTolerance); a violation is a logic error.
struct BoundReport {
  uint64_t d = 0, n = 0;
  bool has_exact = false;
  mpz_class exact;
  double log_exact = 0.0;
  std::vector<BoundValue> bounds;
};
BoundReport bound_report(uint64_t d, uint64_t n, Budget& budget);  // pre: d >= 2

std::string report_to_json(const BoundReport& r);
std::string report_to_csv(const BoundReport& r);

}  // namespace lowerset
