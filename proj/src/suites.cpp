#include "lowerset/suites.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "lowerset/bounds.hpp"
#include "lowerset/count.hpp"
#include "lowerset/lattice.hpp"
#include "lowerset/logmath.hpp"
#include "lowerset/random_set.hpp"
#include "lowerset/series.hpp"

namespace lowerset {

namespace {

std::string fmt(const char* pattern, ...) {
  va_list args;
  va_start(args, pattern);
  char buf[256];
  std::vsnprintf(buf, sizeof buf, pattern, args);
  va_end(args);
  return buf;
}

uint64_t mix_seed(uint64_t base, uint64_t i) {
  uint64_t z = base + 0x9E3779B97F4A7C15ull * (i + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

// |M| <= d n^(1-1/d), compared as m^d <= d^d n^(d-1) in exact integers.
bool maximal_bound_holds(uint64_t m, uint64_t d, uint64_t n) {
  mpz_class lhs, dp, np;
  mpz_ui_pow_ui(lhs.get_mpz_t(), m, d);
  mpz_ui_pow_ui(dp.get_mpz_t(), d, d);
  mpz_ui_pow_ui(np.get_mpz_t(), n, d - 1);
  return lhs <= dp * np;
}

struct Recorder {
  SuiteResult* out;
  void fail(std::string description, std::string repro) {
    out->failures.push_back({std::move(description), std::move(repro)});
  }
  void expect(bool ok, const std::string& description, const std::string& repro) {
    ++out->cases;
    if (!ok) fail(description, repro);
  }
};

void run_closure(SuiteResult& res, const SuiteLimits& limits) {
  Recorder rec{&res};
  // Exhaustive: every enumerated set is closed, roundtrips through the text
  // and height-array forms, and all its canonical prefixes are lower sets.
  for (uint64_t d = 2; d <= 3; ++d) {
    for (uint64_t n = 0; n <= 8; ++n) {
      Budget budget(limits.budget_limit);
      uint64_t index = 0;
      enumerate_lower_sets(d, n, budget, [&](const LowerSet& S) {
        std::string repro = fmt("suite=closure d=%llu n=%llu index=%llu",
                                (unsigned long long)d, (unsigned long long)n,
                                (unsigned long long)index);
        rec.expect(S.size() == n && is_lower_set(d, S.points()), "enumerated set not closed", repro);
        rec.expect(lower_set_from_text(d, to_text(S)) == S, "text roundtrip changed the set", repro);
        if (n > 0) {
          rec.expect(from_partition_array(to_partition_array(S)) == S,
                     "height-array roundtrip changed the set", repro);
        }
        bool prefixes_ok = true;
        for (size_t len = 0; len <= S.size(); ++len) {
          std::vector<Point> prefix(S.points().begin(), S.points().begin() + len);
          if (!is_lower_set(d, prefix)) prefixes_ok = false;
        }
        rec.expect(prefixes_ok, "canonical prefix is not a lower set", repro);
        ++index;
      });
    }
  }
  // Random growth across dimensions, including ambient dimensions far beyond
  // the materialization cap.
  uint64_t cases = std::max<uint64_t>(1, limits.random_cases / 10);
  const uint64_t dims[] = {1, 2, 4, 7, 40, 1000000007ull};
  for (uint64_t i = 0; i < cases; ++i) {
    uint64_t d = dims[i % (sizeof dims / sizeof dims[0])];
    uint64_t n = 1 + (i % 24);
    uint64_t seed = mix_seed(limits.seed, i);
    LowerSet S = random_lower_set(d, n, seed);
    std::string repro = fmt("suite=closure d=%llu n=%llu seed=%llu", (unsigned long long)d,
                            (unsigned long long)n, (unsigned long long)seed);
    rec.expect(S.size() == n && is_lower_set(d, S.points()), "random set not closed", repro);
    rec.expect(lower_set_from_text(d, to_text(S)) == S, "text roundtrip changed the set", repro);
    rec.expect(from_partition_array(to_partition_array(S)) == S,
               "height-array roundtrip changed the set", repro);
    bool prefixes_ok = true;
    for (size_t len = 0; len <= S.size(); ++len) {
      std::vector<Point> prefix(S.points().begin(), S.points().begin() + len);
      if (!is_lower_set(d, prefix)) prefixes_ok = false;
    }
    rec.expect(prefixes_ok, "canonical prefix is not a lower set", repro);
  }
}

void run_mbound(SuiteResult& res, const SuiteLimits& limits) {
  Recorder rec{&res};
  for (uint64_t d = 2; d <= 3; ++d) {
    for (uint64_t n = 1; n <= 10; ++n) {
      Budget budget(limits.budget_limit);
      uint64_t index = 0;
      enumerate_lower_sets(d, n, budget, [&](const LowerSet& S) {
        uint64_t m = maximal_available_subset(S).size();
        rec.expect(maximal_bound_holds(m, d, n), "maximal-subset bound violated",
                   fmt("suite=mbound d=%llu n=%llu index=%llu", (unsigned long long)d,
                       (unsigned long long)n, (unsigned long long)index));
        ++index;
      });
    }
  }
  for (uint64_t i = 0; i < limits.random_cases; ++i) {
    uint64_t d = 2 + (i % 5);
    uint64_t n = 1 + (i % 14);
    uint64_t seed = mix_seed(limits.seed ^ 0xABCDull, i);
    LowerSet S = random_lower_set(d, n, seed);
    uint64_t m = maximal_available_subset(S).size();
    rec.expect(maximal_bound_holds(m, d, n), "maximal-subset bound violated",
               fmt("suite=mbound d=%llu n=%llu seed=%llu", (unsigned long long)d,
                   (unsigned long long)n, (unsigned long long)seed));
  }
}

void run_subset(SuiteResult& res, const SuiteLimits& limits) {
  Recorder rec{&res};
  for (uint64_t d = 2; d <= 3; ++d) {
    for (uint64_t n = 1; n <= 9; ++n) {
      Budget tb(limits.budget_limit);
      uint64_t top = max_maximal_points(d, n, tb);  // T(n) in this dimension
      Budget budget(limits.budget_limit);
      uint64_t index = 0;
      enumerate_lower_sets(d, n, budget, [&](const LowerSet& S) {
        for (uint64_t k = 1; k <= n; ++k) {
          Budget cb(limits.budget_limit);
          mpz_class c = subset_count(S, k, cb);
          double log_c = log_mpz(c);
          double cap = static_cast<double>(k) *
                       std::log(std::max(8.0, 4.0 * std::exp(1.0) * static_cast<double>(top) /
                                                  static_cast<double>(k)));
          rec.expect(log_c <= cap + 1e-9, "subset count exceeds its ceiling",
                     fmt("suite=subset d=%llu n=%llu index=%llu k=%llu", (unsigned long long)d,
                         (unsigned long long)n, (unsigned long long)index,
                         (unsigned long long)k));
          // The two asymptotic ceilings need log n >= 6 d (log d)^2, far out
          // of exhaustive range; record them as skipped rather than checked.
          ++res.skipped;
        }
        ++index;
      });
    }
  }
}

void run_sandwich(SuiteResult& res, const SuiteLimits& limits) {
  Recorder rec{&res};
  for (uint64_t n = 2; n <= 6; ++n) {
    uint64_t n3 = n * n * n;
    const uint64_t dims[] = {n3 / 2 + 1, 10 * n3, 1000000ull};
    for (uint64_t d : dims) {
      Budget budget(limits.budget_limit);
      SandwichCheck chk = binomial_sandwich(d, n, budget);
      std::string repro =
          fmt("suite=sandwich d=%llu n=%llu", (unsigned long long)d, (unsigned long long)n);
      rec.expect(chk.applicable, "sparse-regime precondition unexpectedly unmet", repro);
      if (!chk.applicable) continue;
      rec.expect(chk.lower_ok, "count fell below the binomial lower estimate", repro);
      rec.expect(chk.upper_ok, "count reached the binomial upper estimate", repro);
    }
  }
}

void run_series(SuiteResult& res, const SuiteLimits& limits) {
  Recorder rec{&res};
  for (uint64_t d = 2; d <= 3; ++d) {
    SeriesFamily family = d == 2 ? SeriesFamily::Euler : SeriesFamily::MacMahon;
    uint64_t n_max = d == 2 ? 40 : 25;
    SeriesTable table = series_expand(family, d, n_max);
    SeriesTable guess = series_expand(SeriesFamily::MacMahonConjecture, d, n_max);
    for (uint64_t n = 0; n <= n_max; ++n) {
      rec.expect(table.coeffs[n] == guess.coeffs[n],
                 "product-series guess deviates where it must collapse",
                 fmt("suite=series d=%llu n=%llu", (unsigned long long)d, (unsigned long long)n));
    }
    uint64_t dp_max = d == 2 ? 12 : 10;
    for (uint64_t n = 0; n <= dp_max; ++n) {
      Budget budget(limits.budget_limit);
      rec.expect(table.coeffs[n] == count_exact(d, n, CountMethod::DP, budget).value,
                 "series coefficient disagrees with the nested-slice count",
                 fmt("suite=series d=%llu n=%llu", (unsigned long long)d, (unsigned long long)n));
    }
    uint64_t enum_max = d == 2 ? 10 : 9;
    for (uint64_t n = 0; n <= enum_max; ++n) {
      Budget budget(limits.budget_limit);
      rec.expect(table.coeffs[n] == count_exact(d, n, CountMethod::Enumeration, budget).value,
                 "series coefficient disagrees with direct enumeration",
                 fmt("suite=series d=%llu n=%llu", (unsigned long long)d, (unsigned long long)n));
    }
  }
}

void run_discrepancy(SuiteResult& res, const SuiteLimits& limits) {
  Recorder rec{&res};
  const uint64_t d = 4, n_star = 6;
  SeriesTable guess = series_expand(SeriesFamily::MacMahonConjecture, d, n_star);
  for (uint64_t n = 0; n < n_star; ++n) {
    Budget budget(limits.budget_limit);
    rec.expect(guess.coeffs[n] == count_exact(d, n, CountMethod::DP, budget).value,
               "product-series guess should still match below the breakpoint",
               fmt("suite=discrepancy d=%llu n=%llu", (unsigned long long)d,
                   (unsigned long long)n));
  }
  Budget b1(limits.budget_limit), b2(limits.budget_limit);
  mpz_class exact_dp = count_exact(d, n_star, CountMethod::DP, b1).value;
  mpz_class exact_enum = count_exact(d, n_star, CountMethod::Enumeration, b2).value;
  std::string repro = fmt("suite=discrepancy d=%llu n=%llu", (unsigned long long)d,
                          (unsigned long long)n_star);
  rec.expect(exact_dp == exact_enum, "independent exact counts disagree", repro);
  rec.expect(exact_dp == 140, "exact count at the breakpoint is off", repro);
  rec.expect(guess.coeffs[n_star] == 141, "guess coefficient at the breakpoint is off", repro);
  rec.expect(exact_dp != guess.coeffs[n_star],
             "the known counterexample failed to appear", repro);
}

void run_bracket(SuiteResult& res, const SuiteLimits& limits) {
  Recorder rec{&res};
  auto check = [&](uint64_t d, uint64_t n) {
    Budget budget(limits.budget_limit);
    std::string repro =
        fmt("suite=bracket d=%llu n=%llu", (unsigned long long)d, (unsigned long long)n);
    try {
      BoundReport r = bound_report(d, n, budget);
      rec.expect(r.has_exact, "exact count unavailable inside the grid", repro);
    } catch (const BudgetExceeded&) {
      ++res.skipped;
    } catch (const std::logic_error& e) {
      ++res.cases;
      rec.fail(e.what(), repro);
    }
  };
  for (uint64_t d = 2; d <= 6; ++d)
    for (uint64_t n = 1; n <= 12; ++n) check(d, n);
  const uint64_t big[] = {1000ull, 1000000ull, 1000000000ull};
  for (uint64_t d : big)
    for (uint64_t n = 2; n <= 6; ++n) check(d, n);
}

using SuiteFn = void (*)(SuiteResult&, const SuiteLimits&);

const std::pair<const char*, SuiteFn> kSuites[] = {
    {"closure", run_closure},   {"mbound", run_mbound},           {"subset", run_subset},
    {"sandwich", run_sandwich}, {"series", run_series},           {"discrepancy", run_discrepancy},
    {"bracket", run_bracket},
};

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& s : kSuites) v.push_back(s.first);
    return v;
  }();
  return names;
}

SuiteResult run_suite(const std::string& name, const SuiteLimits& limits) {
  for (const auto& s : kSuites) {
    if (name != s.first) continue;
    SuiteResult res;
    res.suite = name;
    auto start = std::chrono::steady_clock::now();
    s.second(res, limits);
    res.millis = static_cast<uint64_t>(std::chrono::duration_cast<std::chrono::milliseconds>(
                                           std::chrono::steady_clock::now() - start)
                                           .count());
    std::sort(res.failures.begin(), res.failures.end(),
              [](const SuiteFailure& a, const SuiteFailure& b) {
                if (a.repro != b.repro) return a.repro < b.repro;
                return a.description < b.description;
              });
    return res;
  }
  throw std::invalid_argument("unknown suite: " + name);
}

std::vector<SuiteResult> run_all_suites(const SuiteLimits& limits) {
  std::vector<SuiteResult> out;
  for (const auto& s : kSuites) out.push_back(run_suite(s.first, limits));
  return out;
}

std::string suite_to_json(const SuiteResult& r) {
  nlohmann::ordered_json j;
  j["suite"] = r.suite;
  j["cases"] = r.cases;
  j["skipped"] = r.skipped;
  auto arr = nlohmann::ordered_json::array();
  for (const auto& f : r.failures) {
    nlohmann::ordered_json e;
    e["description"] = f.description;
    e["repro"] = f.repro;
    arr.push_back(std::move(e));
  }
  j["failures"] = std::move(arr);
  j["millis"] = r.millis;
  return j.dump();
}

}  // namespace lowerset
