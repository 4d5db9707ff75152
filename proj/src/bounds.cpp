#include "lowerset/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "lowerset/count.hpp"
#include "lowerset/logmath.hpp"

namespace lowerset {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kLog2 = 0.69314718055994531;
// Pinned numeric value of zeta'(-1); it only enters the d = 3 asymptotic.
constexpr double kZetaPrimeMinusOne = -0.165421;
// The pair-construction sum walks i = 1..n with one big binomial per step;
// past this size the report omits it rather than stall.
constexpr uint64_t kPairConstructionMaxN = 4096;

double pow_n_frac(uint64_t n, uint64_t d) {
  return std::pow(static_cast<double>(n), 1.0 - 1.0 / static_cast<double>(d));
}

void require_positive(uint64_t v, const char* what) {
  if (v == 0) throw std::invalid_argument(std::string(what) + " must be positive");
}

// Composition enumerator shared state: parts all >= 2 except a final >= 1,
// at least two parts, summing to m.  Deterministic order (m ascending, then
// lexicographic by prefix) keeps the log-sum-exp reduction byte-stable.
struct CompositionAccum {
  double log2d = 0.0;
  uint64_t m = 0;
  std::vector<uint32_t> parts;
  std::vector<double> terms;

  void emit() {
    size_t t = parts.size() - 1;
    double lg = static_cast<double>(m) * (1.0 - kLog2) -
                0.5 * static_cast<double>(t + 1) * std::log(2.0 * kPi);
    for (uint32_t s : parts) lg -= 0.5 * std::log(static_cast<double>(s));
    lg += static_cast<double>(parts[0]) * log2d;
    for (size_t i = 0; i + 1 < parts.size(); ++i) {
      double si = static_cast<double>(parts[i]);
      double sn = static_cast<double>(parts[i + 1]);
      lg += (2.0 * sn - si) * std::log(si);
    }
    double st = static_cast<double>(parts.back());
    lg -= st * std::log(st);
    terms.push_back(lg);
  }

  void tail(uint64_t r) {
    parts.push_back(static_cast<uint32_t>(r));
    emit();
    parts.pop_back();
    for (uint64_t a = 2; a + 1 <= r; ++a) {
      parts.push_back(static_cast<uint32_t>(a));
      tail(r - a);
      parts.pop_back();
    }
  }
};

}  // namespace

const char* bound_kind_name(BoundKind k) {
  switch (k) {
    case BoundKind::Lower: return "lower";
    case BoundKind::Upper: return "upper";
    case BoundKind::Asymptotic: return "asymptotic";
  }
  return "unknown";
}

double log_p2_asymptotic(uint64_t n) {
  require_positive(n, "log_p2_asymptotic: n");
  double x = static_cast<double>(n);
  return kPi * std::sqrt(2.0 * x / 3.0) - std::log(4.0 * std::sqrt(3.0) * x);
}

double log_p3_asymptotic(uint64_t n) {
  require_positive(n, "log_p3_asymptotic: n");
  double x = static_cast<double>(n);
  double z3 = zeta(3.0);
  return 3.0 * std::cbrt(z3) * std::pow(2.0, -2.0 / 3.0) * std::pow(x, 2.0 / 3.0) -
         25.0 / 36.0 * std::log(x) + 7.0 / 36.0 * std::log(2.0 * z3) +
         kZetaPrimeMinusOne - 0.5 * std::log(2.0 * kPi);
}

ScalingConstants scaling_constants(uint64_t d) {
  require_positive(d, "scaling_constants: d");
  double dd = static_cast<double>(d);
  double inv_fact_root = std::exp(-std::lgamma(dd + 1.0) / dd);
  double logd = std::log(dd);
  return {0.9 * dd * inv_fact_root * kLog2,
          kPi * std::sqrt(2.0 / 3.0) * std::exp(logd * logd)};
}

std::pair<BoundValue, BoundValue> absolute_window(uint64_t d, uint64_t n) {
  if (d < 2) throw std::invalid_argument("absolute_window: d must be at least 2");
  require_positive(n, "absolute_window: n");
  bool met;
  unsigned __int128 e = static_cast<unsigned __int128>(2) * d * d;
  if (e >= 128) {
    met = false;  // (30 d)^(2 d^2) > 2^127 exceeds every 64-bit n
  } else {
    met = integer_ge_power(n, 30 * d, static_cast<uint64_t>(e));
  }
  double v = pow_n_frac(n, d);
  const char* pre = "n >= (30 d)^(2 d^2)";
  return {BoundValue{"lower-window-absolute", BoundKind::Lower, v, met, pre},
          BoundValue{"upper-window-absolute", BoundKind::Upper, 7200.0 * v, met, pre}};
}

std::pair<BoundValue, BoundValue> dimension_window(uint64_t d, uint64_t n) {
  if (d < 2) throw std::invalid_argument("dimension_window: d must be at least 2");
  require_positive(n, "dimension_window: n");
  double logd = std::log(static_cast<double>(d));
  bool met = std::log(static_cast<double>(n)) >= 12.0 * static_cast<double>(d) * logd * logd;
  double v = pow_n_frac(n, d);
  const char* pre = "log n >= 12 d (log d)^2";
  return {BoundValue{"lower-window-dimension", BoundKind::Lower, v, met, pre},
          BoundValue{"upper-window-dimension", BoundKind::Upper,
                     static_cast<double>(d) * static_cast<double>(d) * v, met, pre}};
}

std::vector<BoundValue> classic_bounds(uint64_t d, uint64_t n) {
  if (d < 2) throw std::invalid_argument("classic_bounds: d must be at least 2");
  require_positive(n, "classic_bounds: n");
  double dd = static_cast<double>(d);
  double x = static_cast<double>(n);
  double logd = std::log(dd);
  std::vector<BoundValue> out;
  out.push_back({"upper-exp-dn", BoundKind::Upper, dd * x * kLog2, true, "none"});
  out.push_back({"upper-power-factorial", BoundKind::Upper,
                 (x - 1.0) * logd + std::lgamma(x), true, "none"});
  out.push_back({"lower-binomial", BoundKind::Lower,
                 log_binomial(d + n - 2, n - 1), true, "none"});
  out.push_back({"upper-power", BoundKind::Upper, (x - 1.0) * logd, true, "none"});
  out.push_back({"upper-zeta-power", BoundKind::Upper,
                 dd * std::pow(zeta(dd), 1.0 / dd) * pow_n_frac(n, d) + (dd - 1.0) * std::log(x),
                 true, "none"});
  return out;
}

SandwichCheck binomial_sandwich(uint64_t d, uint64_t n, Budget& budget) {
  require_positive(d, "binomial_sandwich: d");
  require_positive(n, "binomial_sandwich: n");
  SandwichCheck chk;
  chk.d = d;
  chk.n = n;
  mpz_class nz(static_cast<unsigned long>(n));
  mpz_class n3 = nz * nz * nz;
  mpz_class twod = mpz_class(static_cast<unsigned long>(d)) * 2;
  chk.applicable = twod > n3;
  if (!chk.applicable) return chk;
  mpz_bin_uiui(chk.binom.get_mpz_t(), static_cast<unsigned long>(d + n - 2),
               static_cast<unsigned long>(n - 1));
  chk.count = count_exact(d, n, CountMethod::Auto, budget).value;
  chk.lower_ok = chk.count >= chk.binom;
  chk.upper_ok = chk.count * (twod - n3) < chk.binom * twod;
  chk.log_lower = log_mpz(chk.binom);
  double frac = mpz_get_d(n3.get_mpz_t()) / mpz_get_d(twod.get_mpz_t());
  chk.log_upper = chk.log_lower - std::log1p(-frac);
  return chk;
}

CompositionSumBound composition_sum_upper(uint64_t d, uint64_t n) {
  require_positive(d, "composition_sum_upper: d");
  if (n < 2 || n > 30)
    throw std::invalid_argument("composition_sum_upper: n must lie in [2, 30]");
  CompositionAccum acc;
  acc.log2d = std::log(2.0 * static_cast<double>(d));
  for (uint64_t m = 2; m <= n; ++m) {
    acc.m = m;
    for (uint64_t s0 = 2; s0 + 1 <= m; ++s0) {
      acc.parts.push_back(static_cast<uint32_t>(s0));
      acc.tail(m - s0);
      acc.parts.pop_back();
    }
  }
  CompositionSumBound out;
  if (acc.terms.empty()) {
    out.log_value = -std::numeric_limits<double>::infinity();
    out.degenerate = true;
    return out;
  }
  out.log_value = log_sum_exp(acc.terms);
  return out;
}

double midrange_upper(uint64_t d, uint64_t n) {
  require_positive(d, "midrange_upper: d");
  require_positive(n, "midrange_upper: n");
  double x = static_cast<double>(n);
  double sd = std::sqrt(static_cast<double>(d));
  double c = 3.0 / (2.0 * std::exp(1.0)) + 1.0;
  double tail = std::max(-x * kLog2, -sd * std::log(2.0 * x));
  return std::log(4.0) + c * x + (x + 2.0 * sd) * std::log(x) + tail;
}

PairConstructionBound pair_construction_lower(uint64_t d, uint64_t n, double psi) {
  require_positive(d, "pair_construction_lower: d");
  require_positive(n, "pair_construction_lower: n");
  if (n > 100000)
    throw std::invalid_argument("pair_construction_lower: n too large for the exact sum");
  if (!(psi >= 1.0))
    throw std::invalid_argument("pair_construction_lower: psi must be at least 1");
  PairConstructionBound out;
  out.sum = 0;
  uint64_t imax = std::min(d, n);
  mpz_class best = 0;
  mpz_class guide = 0;
  uint64_t gi = static_cast<uint64_t>(static_cast<double>(n) / psi);
  gi = std::max<uint64_t>(1, std::min(gi, imax));
  out.guide_i = gi;
  for (uint64_t i = 1; i <= imax; ++i) {
    uint64_t pairs = i * (i - 1) / 2;
    uint64_t rest = n - i;
    if (rest > pairs) continue;
    mpz_class bi, ci;
    mpz_bin_uiui(bi.get_mpz_t(), static_cast<unsigned long>(d), static_cast<unsigned long>(i));
    mpz_bin_uiui(ci.get_mpz_t(), static_cast<unsigned long>(pairs),
                 static_cast<unsigned long>(rest));
    bi *= ci;
    out.sum += bi;
    if (bi > best) {
      best = bi;
      out.best_i = i;
    }
    if (i == gi) guide = bi;
  }
  double neg_inf = -std::numeric_limits<double>::infinity();
  out.log_guide = guide > 0 ? log_mpz(guide) : neg_inf;
  out.log_best = best > 0 ? log_mpz(best) : neg_inf;
  return out;
}

double highdim_upper(uint64_t d, uint64_t n, double xi) {
  require_positive(d, "highdim_upper: d");
  require_positive(n, "highdim_upper: n");
  if (!(xi > 0.0)) throw std::invalid_argument("highdim_upper: xi must be positive");
  double x = static_cast<double>(n);
  double a = std::max(2.0 * std::exp(3.5) / xi, 1.0);
  return std::log(3.0) + 2.0 * x * std::log(a) + 125.0 * x / xi + 2.0 * std::log(x) + x +
         x * std::log(static_cast<double>(d) / x);
}

SubsetCountBounds subset_count_bounds(const LowerSet& S, uint64_t k, Budget& budget) {
  uint64_t n = S.size();
  uint64_t d = S.dim();
  if (n == 0 || k == 0 || k > n)
    throw std::invalid_argument("subset_count_bounds: need 1 <= k <= |S|");
  SubsetCountBounds out;
  out.top_antichain = max_maximal_points(d, n, budget);
  double kk = static_cast<double>(k);
  out.log_top_width =
      kk * std::log(std::max(8.0, 4.0 * std::exp(1.0) * static_cast<double>(out.top_antichain) / kk));
  double nf = pow_n_frac(n, d);
  out.log_e4 = kk * (4.0 + std::max(0.0, std::log(nf) - std::log(kk)));
  out.log_plain_power = (2.0 * kk + 4.0 * nf) * kLog2;
  double logd = std::log(static_cast<double>(d));
  out.asymptotic_precondition_met =
      std::log(static_cast<double>(n)) >= 6.0 * static_cast<double>(d) * logd * logd;
  return out;
}

BoundReport bound_report(uint64_t d, uint64_t n, Budget& budget) {
  if (d < 2) throw std::invalid_argument("bound_report: d must be at least 2");
  BoundReport r;
  r.d = d;
  r.n = n;
  if (n == 0) {
    r.has_exact = true;
    r.exact = 1;
    r.log_exact = 0.0;
    return r;
  }
  try {
    r.exact = count_exact(d, n, CountMethod::Auto, budget).value;
    r.has_exact = true;
    r.log_exact = log_mpz(r.exact);
  } catch (const BudgetExceeded&) {
    r.has_exact = false;
  }

  if (d == 2)
    r.bounds.push_back({"asymptotic-p2", BoundKind::Asymptotic, log_p2_asymptotic(n), true, "d == 2"});
  if (d == 3)
    r.bounds.push_back({"asymptotic-p3", BoundKind::Asymptotic, log_p3_asymptotic(n), true, "d == 3"});

  double v = pow_n_frac(n, d);
  ScalingConstants sc = scaling_constants(d);
  bool sc_met = integer_gt_power(n, 55, d);
  r.bounds.push_back({"lower-scaling", BoundKind::Lower, sc.c_lower * v, sc_met, "n > 55^d"});
  r.bounds.push_back({"upper-scaling", BoundKind::Upper, sc.c_upper * v, sc_met, "n > 55^d"});

  auto aw = absolute_window(d, n);
  r.bounds.push_back(std::move(aw.first));
  r.bounds.push_back(std::move(aw.second));
  auto dw = dimension_window(d, n);
  r.bounds.push_back(std::move(dw.first));
  r.bounds.push_back(std::move(dw.second));
  for (auto& b : classic_bounds(d, n)) r.bounds.push_back(std::move(b));

  mpz_class nz(static_cast<unsigned long>(n));
  mpz_class n3 = nz * nz * nz;
  mpz_class twod = mpz_class(static_cast<unsigned long>(d)) * 2;
  if (twod > n3) {
    mpz_class binom;
    mpz_bin_uiui(binom.get_mpz_t(), static_cast<unsigned long>(d + n - 2),
                 static_cast<unsigned long>(n - 1));
    double lb = log_mpz(binom);
    double frac = mpz_get_d(n3.get_mpz_t()) / mpz_get_d(twod.get_mpz_t());
    r.bounds.push_back({"lower-sandwich-binomial", BoundKind::Lower, lb, true, "2 d > n^3"});
    r.bounds.push_back(
        {"upper-sandwich-binomial", BoundKind::Upper, lb - std::log1p(-frac), true, "2 d > n^3"});
  }

  if (n >= 2 && n <= 30) {
    CompositionSumBound cs = composition_sum_upper(d, n);
    r.bounds.push_back(
        {"upper-composition-sum", BoundKind::Upper, cs.log_value, !cs.degenerate, "3 <= n <= 30"});
  }

  bool mid_met = static_cast<unsigned __int128>(4) * d <=
                 static_cast<unsigned __int128>(n) * n;
  r.bounds.push_back({"upper-midrange", BoundKind::Upper, midrange_upper(d, n), mid_met, "4 d <= n^2"});

  if (n >= 2 && n - 1 <= kPairConstructionMaxN) {
    uint64_t m = n - 1;
    double psi = std::max(1.0, std::log(static_cast<double>(std::max<uint64_t>(m, 3))));
    PairConstructionBound pc = pair_construction_lower(d, m, psi);
    double lv = pc.sum > 0 ? log_mpz(pc.sum) : -std::numeric_limits<double>::infinity();
    // The construction places n - 1 points on i axes and i(i-1)/2 planes; it
    // reaches that many points only when d (d + 1) / 2 >= n - 1.
    r.bounds.push_back({"lower-pair-construction", BoundKind::Lower, lv, pc.sum > 0,
                        "d (d + 1) / 2 >= n - 1"});
  }

  {
    double xi = static_cast<double>(d) / (static_cast<double>(n) * static_cast<double>(n));
    bool hd_met = static_cast<unsigned __int128>(d) >= static_cast<unsigned __int128>(2) * n;
    r.bounds.push_back({"upper-highdim", BoundKind::Upper, highdim_upper(d, n, xi), hd_met, "d >= 2 n"});
  }

  if (r.has_exact) {
    double tol = kLogBracketTolerance * std::max(1.0, std::abs(r.log_exact));
    for (const auto& b : r.bounds) {
      if (!b.precondition_met || !std::isfinite(b.log_value)) continue;
      if (b.kind == BoundKind::Lower && b.log_value > r.log_exact + tol)
        throw std::logic_error("bound_report: lower bound " + b.name + " exceeds the exact count");
      if (b.kind == BoundKind::Upper && b.log_value < r.log_exact - tol)
        throw std::logic_error("bound_report: upper bound " + b.name + " falls below the exact count");
    }
  }
  return r;
}

std::string report_to_json(const BoundReport& r) {
  nlohmann::ordered_json j;
  j["d"] = r.d;
  j["n"] = r.n;
  if (r.has_exact) {
    j["exact"] = r.exact.get_str();
    j["log_exact"] = r.log_exact;
  } else {
    j["exact"] = nullptr;
    j["log_exact"] = nullptr;
  }
  auto arr = nlohmann::ordered_json::array();
  for (const auto& b : r.bounds) {
    nlohmann::ordered_json e;
    e["name"] = b.name;
    e["kind"] = bound_kind_name(b.kind);
    if (std::isfinite(b.log_value))
      e["log_value"] = b.log_value;
    else
      e["log_value"] = nullptr;
    e["precondition_met"] = b.precondition_met;
    e["precondition"] = b.precondition;
    arr.push_back(std::move(e));
  }
  j["bounds"] = std::move(arr);
  return j.dump();
}

std::string report_to_csv(const BoundReport& r) {
  auto num = [](double x) -> std::string {
    if (!std::isfinite(x)) return "";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
  };
  std::string out = "name,kind,log_value,precondition_met,precondition\n";
  if (r.has_exact) out += "exact,exact," + num(r.log_exact) + ",true,none\n";
  for (const auto& b : r.bounds) {
    out += b.name;
    out += ',';
    out += bound_kind_name(b.kind);
    out += ',';
    out += num(b.log_value);
    out += ',';
    out += b.precondition_met ? "true" : "false";
    out += ',';
    out += b.precondition;
    out += '\n';
  }
  return out;
}

}  // namespace lowerset
