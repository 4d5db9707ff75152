#include <doctest.h>

#include <cmath>
#include <limits>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "lowerset/bounds.hpp"
#include "lowerset/count.hpp"
#include "lowerset/logmath.hpp"

using namespace lowerset;

namespace {

const double kInf = std::numeric_limits<double>::infinity();

bool close(double a, double b, double tol = 1e-9) {
  return std::fabs(a - b) <= tol * std::max(1.0, std::max(std::fabs(a), std::fabs(b)));
}

const BoundValue& find_bound(const BoundReport& r, const std::string& name) {
  for (const auto& b : r.bounds)
    if (b.name == name) return b;
  FAIL("missing bound " << name);
  static BoundValue dummy;
  return dummy;
}

bool has_bound(const BoundReport& r, const std::string& name) {
  for (const auto& b : r.bounds)
    if (b.name == name) return true;
  return false;
}

}  // namespace

TEST_CASE("log-domain helpers") {
  CHECK(close(log_add_exp(std::log(2.0), std::log(3.0)), std::log(5.0)));
  CHECK(log_add_exp(-kInf, 1.5) == 1.5);
  CHECK(log_add_exp(1.5, -kInf) == 1.5);
  CHECK(log_sum_exp({}) == -kInf);
  CHECK(close(log_sum_exp({std::log(1.0), std::log(2.0), std::log(3.0)}), std::log(6.0)));
  CHECK(close(log_factorial(5), std::log(120.0)));
  CHECK(close(log_mpz(mpz_class(1) << 200), 200 * std::log(2.0), 1e-14));
  CHECK_THROWS_AS(log_mpz(mpz_class(0)), std::invalid_argument);
}

TEST_CASE("log_binomial stays accurate at astronomical arguments") {
  // The naive lgamma difference loses ~a log(a) eps of absolute precision;
  // at a = 10^9 that once pushed a tight lower bound above the exact count.
  struct Case { unsigned long a, b; };
  for (auto [a, b] : {Case{10, 3}, Case{64, 32}, Case{65, 32}, Case{130, 65},
                      Case{1000, 500}, Case{1000000000, 1}, Case{1000000000, 2},
                      Case{1000000000, 6}, Case{1000000000000ull, 65},
                      Case{2000000, 999983}}) {
    mpz_class z;
    mpz_bin_uiui(z.get_mpz_t(), a, b);
    CHECK(close(log_binomial(a, b), log_mpz(z), 1e-12));
  }
  CHECK(log_binomial(5, 6) == -kInf);
  CHECK(log_binomial(5, 0) == 0.0);
  CHECK(log_binomial(5, 5) == 0.0);
}

TEST_CASE("zeta evaluation") {
  CHECK(close(zeta(2.0), 1.64493406684822643647, 1e-12));
  CHECK(close(zeta(3.0), 1.20205690315959428540, 1e-12));
  CHECK(close(zeta(6.0), 1.01734306198444913971, 1e-12));
  CHECK(zeta(100.0) == 1.0);
  CHECK_THROWS_AS(zeta(1.0), std::invalid_argument);
}

TEST_CASE("exact integer-power comparisons") {
  CHECK(integer_ge_power(8, 2, 3));
  CHECK_FALSE(integer_gt_power(8, 2, 3));
  CHECK(integer_gt_power(9, 2, 3));
  CHECK_FALSE(integer_ge_power(7, 2, 3));
  CHECK(integer_ge_power(1, 7, 0));  // anything >= x^0
  // 60^8 = 167961600000000: the first size where the absolute window applies
  // in dimension 2.
  CHECK(integer_ge_power(167961600000000ull, 60, 8));
  CHECK_FALSE(integer_ge_power(167961599999999ull, 60, 8));
  // Powers beyond 64 bits are never reached by a uint64.
  CHECK_FALSE(integer_ge_power(UINT64_MAX, 2, 64));
  CHECK_FALSE(integer_ge_power(UINT64_MAX, 90, 18));
  CHECK(integer_gt_power(UINT64_MAX, 2, 63));
}

TEST_CASE("asymptotic main terms at frozen points") {
  CHECK(close(log_p2_asymptotic(10), 3.87337175349923264536));
  CHECK(close(log_p2_asymptotic(100), 19.11022591179524507831));
  CHECK(close(log_p2_asymptotic(1000), 72.27221773503615542247));
  CHECK(close(log_p3_asymptotic(10), 6.81420662381841725104));
  CHECK(close(log_p3_asymptotic(50), 23.64189437294569692965));
  CHECK_THROWS_AS(log_p2_asymptotic(0), std::invalid_argument);
  CHECK_THROWS_AS(log_p3_asymptotic(0), std::invalid_argument);
}

TEST_CASE("asymptotics converge on exact counts") {
  Budget budget(UINT64_MAX);
  auto rel_err_p2 = [&](uint64_t n) {
    mpz_class p = count_exact(2, n, CountMethod::Series, budget).value;
    return std::fabs(std::expm1(log_p2_asymptotic(n) - log_mpz(p)));
  };
  CHECK(rel_err_p2(1000) < rel_err_p2(100));
  CHECK(rel_err_p2(100) < rel_err_p2(10));
  auto rel_err_p3 = [&](uint64_t n) {
    mpz_class p = count_exact(3, n, CountMethod::Series, budget).value;
    return std::fabs(std::expm1(log_p3_asymptotic(n) - log_mpz(p)));
  };
  CHECK(rel_err_p3(50) < rel_err_p3(10));
}

TEST_CASE("scaling constants") {
  CHECK(close(scaling_constants(3).c_lower, 1.02992470334341527516));
  CHECK(close(scaling_constants(2).c_lower, 0.88223232912169247254));
  CHECK(close(scaling_constants(2).c_upper, 4.14727024577625701600));
  CHECK(close(scaling_constants(100).c_lower, 1.64198026847175712754));
  // The lower constant exceeds 1 in every dimension from 3 up.
  for (uint64_t d = 3; d <= 100; ++d) CHECK(scaling_constants(d).c_lower > 1.0);
  CHECK(scaling_constants(2).c_lower < 1.0);
  CHECK_THROWS_AS(scaling_constants(0), std::invalid_argument);
}

TEST_CASE("absolute window evaluates its precondition exactly") {
  auto on = absolute_window(2, 167961600000000ull);  // n = 60^8 exactly
  CHECK(on.first.precondition_met);
  CHECK(on.second.precondition_met);
  CHECK(on.first.name == "lower-window-absolute");
  CHECK(on.first.kind == BoundKind::Lower);
  CHECK(on.second.kind == BoundKind::Upper);
  CHECK(close(on.second.log_value, 7200.0 * on.first.log_value));
  CHECK(close(on.first.log_value, std::pow(167961600000000.0, 0.5)));
  auto off = absolute_window(2, 167961599999999ull);  // one below the cutoff
  CHECK_FALSE(off.first.precondition_met);
  CHECK_FALSE(off.second.precondition_met);
  // In dimension 3 the cutoff (90)^18 already exceeds every uint64.
  CHECK_FALSE(absolute_window(3, UINT64_MAX).first.precondition_met);
  // From dimension 8 on, the exponent 2 d^2 alone overflows 128-bit powers.
  CHECK_FALSE(absolute_window(8, UINT64_MAX).first.precondition_met);
  CHECK_THROWS_AS(absolute_window(1, 5), std::invalid_argument);
}

TEST_CASE("dimension window scales with d^2") {
  auto w = dimension_window(2, 1000000);
  CHECK(w.first.precondition_met);  // log 1e6 = 13.8 >= 12 * 2 * (log 2)^2 = 11.53
  CHECK(close(w.second.log_value, 4.0 * w.first.log_value));
  CHECK_FALSE(dimension_window(2, 10000).first.precondition_met);
  CHECK_FALSE(dimension_window(5, 1000000000).first.precondition_met);
  CHECK_THROWS_AS(dimension_window(1, 5), std::invalid_argument);
}

TEST_CASE("classic bounds evaluate their formulas") {
  auto cb = classic_bounds(3, 5);
  REQUIRE(cb.size() == 5);
  CHECK(cb[0].name == "upper-exp-dn");
  CHECK(close(cb[0].log_value, 15.0 * std::log(2.0)));
  CHECK(cb[1].name == "upper-power-factorial");
  CHECK(close(cb[1].log_value, 4.0 * std::log(3.0) + std::lgamma(5.0)));
  CHECK(cb[2].name == "lower-binomial");
  CHECK(close(cb[2].log_value, std::log(15.0)));  // C(6, 4)
  CHECK(cb[2].kind == BoundKind::Lower);
  CHECK(cb[3].name == "upper-power");
  CHECK(close(cb[3].log_value, 4.0 * std::log(3.0)));
  CHECK(cb[4].name == "upper-zeta-power");
  CHECK(close(cb[4].log_value,
              3.0 * std::pow(zeta(3.0), 1.0 / 3.0) * std::pow(5.0, 2.0 / 3.0) +
                  2.0 * std::log(5.0)));
  for (const auto& b : cb) CHECK(b.precondition_met);
  CHECK_THROWS_AS(classic_bounds(1, 5), std::invalid_argument);
}

TEST_CASE("binomial sandwich in the sparse regime") {
  Budget budget;
  // Boundary of applicability: 2d > n^3.
  CHECK_FALSE(binomial_sandwich(4, 2, budget).applicable);   // 8 = 8
  CHECK(binomial_sandwich(5, 2, budget).applicable);         // 10 > 8
  SandwichCheck chk = binomial_sandwich(1000, 4, budget);
  REQUIRE(chk.applicable);
  CHECK(chk.count == 167666500);  // C(1002,3) + C(1000,2)
  CHECK(chk.binom == 167167000);  // C(1002,3)
  CHECK(chk.lower_ok);
  CHECK(chk.upper_ok);
  CHECK(close(chk.log_lower, log_mpz(chk.binom)));
  CHECK(close(chk.log_upper, chk.log_lower - std::log1p(-64.0 / 2000.0)));
  CHECK(chk.log_upper > chk.log_lower);
  CHECK_THROWS_AS(binomial_sandwich(0, 2, budget), std::invalid_argument);
}

TEST_CASE("composition sum bound at frozen points") {
  CHECK(close(composition_sum_upper(2, 3).log_value, 1.50869652387062717115));
  CHECK(close(composition_sum_upper(2, 4).log_value, 2.74437232602519121851));
  CHECK(close(composition_sum_upper(7, 5).log_value, 7.62664714041776178948));
  // No composition of 2 has a first part >= 2 and a second part >= 1.
  CompositionSumBound empty = composition_sum_upper(9, 2);
  CHECK(empty.degenerate);
  CHECK(empty.log_value == -kInf);
  CHECK_FALSE(composition_sum_upper(2, 3).degenerate);
  CHECK_THROWS_AS(composition_sum_upper(2, 1), std::invalid_argument);
  CHECK_THROWS_AS(composition_sum_upper(2, 31), std::invalid_argument);
  // It really is an upper bound at small sizes.
  Budget budget;
  for (uint64_t d = 2; d <= 5; ++d)
    for (uint64_t n = 3; n <= 8; ++n)
      CHECK(composition_sum_upper(d, n).log_value >
            log_mpz(count_exact(d, n, CountMethod::Auto, budget).value));
}

TEST_CASE("midrange and high-dimension bounds at frozen points") {
  CHECK(close(midrange_upper(4, 4), 15.91133717486788826141));
  CHECK(close(midrange_upper(2, 10), 42.20642583219372878046));
  CHECK(close(highdim_upper(50, 5, 2.0), 368.33041357850653886069));
  CHECK_THROWS_AS(midrange_upper(0, 4), std::invalid_argument);
  CHECK_THROWS_AS(highdim_upper(50, 5, 0.0), std::invalid_argument);
}

TEST_CASE("pair construction sums exact binomial products") {
  // d = 3, n = 3: two unit vectors plus their pair point, or three unit
  // vectors; C(3,2) C(1,1) + C(3,3) C(3,0) = 4.
  PairConstructionBound pc = pair_construction_lower(3, 3, 1.0);
  CHECK(pc.sum == 4);
  CHECK(pc.best_i == 2);
  CHECK(close(pc.log_best, std::log(3.0)));
  CHECK(pc.guide_i == 3);
  CHECK(close(pc.log_guide, 0.0, 1e-15));
  // Huge dimension, exact sum frozen from independent big-integer arithmetic.
  PairConstructionBound big = pair_construction_lower(1000000, 4, std::log(4.0));
  CHECK(big.sum == mpz_class("41666916665625000750000"));
  CHECK(close(log_mpz(big.sum), 52.08399440146615103678));
  CHECK(big.guide_i == 2);  // floor(4 / log 4) = 2, a vacuous 0-term index
  CHECK(big.log_guide == -kInf);
  // Vacuous once d(d+1)/2 < n: three axes offer at most 3 pair slots.
  PairConstructionBound none = pair_construction_lower(3, 7, 1.5);
  CHECK(none.sum == 0);
  CHECK(none.log_best == -kInf);
  CHECK_THROWS_AS(pair_construction_lower(3, 200000, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(pair_construction_lower(3, 3, 0.5), std::invalid_argument);
  // The sum at argument n - 1 never exceeds the count it bounds.
  Budget budget;
  for (uint64_t d = 2; d <= 5; ++d)
    for (uint64_t n = 2; n <= 9; ++n) {
      PairConstructionBound b = pair_construction_lower(d, n - 1, 1.0);
      CHECK(b.sum <= count_exact(d, n, CountMethod::Auto, budget).value);
    }
}

TEST_CASE("subset count ceilings") {
  std::vector<Point> sq;
  for (Coord x = 0; x < 2; ++x)
    for (Coord y = 0; y < 2; ++y) sq.push_back(Point{{x, y}});
  LowerSet S = LowerSet::from_points(2, std::move(sq));
  Budget budget;
  SubsetCountBounds sb = subset_count_bounds(S, 2, budget);
  CHECK(sb.top_antichain == 2);  // T(4, 2): the partition {3,1} has two corners
  CHECK(close(sb.log_top_width, 4.77258872223978123767));
  CHECK_FALSE(sb.asymptotic_precondition_met);
  // The always-valid ceiling covers the true subset count.
  CHECK(log_mpz(subset_count(S, 2, budget)) < sb.log_top_width);
  CHECK(sb.log_e4 > 0.0);
  CHECK(sb.log_plain_power > 0.0);
  CHECK_THROWS_AS(subset_count_bounds(S, 0, budget), std::invalid_argument);
  CHECK_THROWS_AS(subset_count_bounds(S, 5, budget), std::invalid_argument);
}

TEST_CASE("bound report shape and bracketing") {
  Budget budget;
  BoundReport r = bound_report(3, 8, budget);
  CHECK(r.has_exact);
  CHECK(r.exact == 160);
  CHECK(close(r.log_exact, std::log(160.0)));
  // Applicability at (3, 8): no d=2 asymptotic, no sandwich (6 < 512), the
  // pair construction present but vacuous (3 axes < 7 points).
  CHECK_FALSE(has_bound(r, "asymptotic-p2"));
  CHECK(has_bound(r, "asymptotic-p3"));
  CHECK_FALSE(has_bound(r, "lower-sandwich-binomial"));
  CHECK(find_bound(r, "upper-composition-sum").precondition_met);
  const BoundValue& pair = find_bound(r, "lower-pair-construction");
  CHECK_FALSE(pair.precondition_met);
  CHECK(pair.log_value == -kInf);
  CHECK(find_bound(r, "upper-midrange").precondition_met);  // 4 d = 12 <= 64 = n^2
  const BoundValue& lb = find_bound(r, "lower-binomial");
  CHECK(lb.precondition_met);
  CHECK(lb.log_value <= r.log_exact + 1e-9);
  for (const auto& b : r.bounds) {
    if (!b.precondition_met || !std::isfinite(b.log_value)) continue;
    if (b.kind == BoundKind::Lower) CHECK(b.log_value <= r.log_exact + 1e-6);
    if (b.kind == BoundKind::Upper) CHECK(b.log_value >= r.log_exact - 1e-6);
  }
}

TEST_CASE("bound report applicability toggles") {
  Budget budget;
  BoundReport sparse = bound_report(6, 2, budget);
  CHECK(has_bound(sparse, "lower-sandwich-binomial"));  // 12 > 8
  CHECK(has_bound(sparse, "upper-sandwich-binomial"));
  CHECK(find_bound(sparse, "upper-highdim").precondition_met);  // 6 >= 4
  CHECK(find_bound(sparse, "upper-composition-sum").precondition_met == false);  // degenerate n=2
  CHECK(sparse.exact == 6);

  BoundReport dense = bound_report(2, 12, budget);
  CHECK(has_bound(dense, "asymptotic-p2"));
  CHECK_FALSE(has_bound(dense, "lower-sandwich-binomial"));  // 4 < 1728
  CHECK(find_bound(dense, "upper-midrange").precondition_met);  // 8 <= 144
  CHECK_FALSE(find_bound(dense, "upper-highdim").precondition_met);
  CHECK_FALSE(find_bound(dense, "lower-pair-construction").precondition_met);  // 3 pair slots < 11
  CHECK(dense.exact == 77);

  BoundReport tiny = bound_report(2, 1, budget);
  CHECK_FALSE(has_bound(tiny, "upper-composition-sum"));
  CHECK_FALSE(has_bound(tiny, "lower-pair-construction"));
  CHECK(tiny.exact == 1);

  BoundReport empty = bound_report(5, 0, budget);
  CHECK(empty.has_exact);
  CHECK(empty.exact == 1);
  CHECK(empty.bounds.empty());

  CHECK_THROWS_AS(bound_report(1, 5, budget), std::invalid_argument);
}

TEST_CASE("bound report survives budget refusal of the exact count") {
  Budget tiny(10);
  BoundReport r = bound_report(5, 40, tiny);
  CHECK_FALSE(r.has_exact);
  CHECK(!r.bounds.empty());
  // Serialization reports the missing count as null / an absent row.
  auto j = nlohmann::json::parse(report_to_json(r));
  CHECK(j["exact"].is_null());
  CHECK(j["log_exact"].is_null());
  std::string csv = report_to_csv(r);
  CHECK(csv.find("\nexact,") == std::string::npos);
  CHECK(csv.rfind("exact,exact,", 0) != 0);
}

TEST_CASE("report serialization is structured and deterministic") {
  Budget b1, b2;
  BoundReport r1 = bound_report(4, 9, b1);
  BoundReport r2 = bound_report(4, 9, b2);
  std::string json1 = report_to_json(r1);
  CHECK(json1 == report_to_json(r2));
  std::string csv1 = report_to_csv(r1);
  CHECK(csv1 == report_to_csv(r2));

  auto j = nlohmann::json::parse(json1);
  CHECK(j["d"] == 4);
  CHECK(j["n"] == 9);
  CHECK(j["exact"] == "1464");
  REQUIRE(j["bounds"].is_array());
  CHECK(j["bounds"].size() == r1.bounds.size());
  std::set<std::string> kinds;
  for (const auto& e : j["bounds"]) {
    CHECK(e.contains("name"));
    CHECK(e.contains("kind"));
    CHECK(e.contains("log_value"));
    CHECK(e.contains("precondition_met"));
    CHECK(e.contains("precondition"));
    kinds.insert(e["kind"].get<std::string>());
  }
  CHECK(kinds == std::set<std::string>{"lower", "upper"});

  // CSV: header, exact pseudo-row, one row per bound; commas only as
  // separators (five fields per row).
  CHECK(csv1.rfind("name,kind,log_value,precondition_met,precondition\n", 0) == 0);
  CHECK(csv1.find("exact,exact,") != std::string::npos);
  size_t lines = 0, commas = 0;
  for (char c : csv1) {
    if (c == '\n') ++lines;
    if (c == ',') ++commas;
  }
  CHECK(lines == 2 + r1.bounds.size());
  CHECK(commas == 4 * lines);
}

TEST_CASE("kind names") {
  CHECK(std::string(bound_kind_name(BoundKind::Lower)) == "lower");
  CHECK(std::string(bound_kind_name(BoundKind::Upper)) == "upper");
  CHECK(std::string(bound_kind_name(BoundKind::Asymptotic)) == "asymptotic");
}
