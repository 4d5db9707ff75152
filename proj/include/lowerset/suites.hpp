#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lowerset/enumerate.hpp"

namespace lowerset {

// Scale knobs for the self-check suites.  Defaults match the scales the
// acceptance harness runs at; smaller values keep interactive runs quick.
struct SuiteLimits {
  uint64_t random_cases = 10000;
  uint64_t seed = 20260813;
  uint64_t budget_limit = Budget::kDefaultLimit;
};

struct SuiteFailure {
  std::string description;
  std::string repro;  // enough to replay the single failing case
};

struct SuiteResult {
  std::string suite;
  uint64_t cases = 0;
  uint64_t skipped = 0;
  std::vector<SuiteFailure> failures;
  uint64_t millis = 0;

  bool ok() const { return failures.empty(); }
};

// Registered suites, in canonical execution order:
//   closure     structural validity of generated sets and representation
//               roundtrips (text, height arrays, canonical prefixes)
//   mbound      |M(Q)| <= d n^(1-1/d), compared exactly in integers
//   subset      lower-subset counts against their closed-form ceilings
//   sandwich    two-sided binomial estimate in the sparse regime d > n^3/2
//   series      generating-function coefficients against independent counts
//   discrepancy the d = 4 failure of the naive product-series guess (the
//               suite passes when the mismatch is reproduced exactly)
//   bracket     every applicable closed-form bound against exact counts over
//               a dimension/size grid
const std::vector<std::string>& suite_names();

SuiteResult run_suite(const std::string& name, const SuiteLimits& limits = {});
std::vector<SuiteResult> run_all_suites(const SuiteLimits& limits = {});

std::string suite_to_json(const SuiteResult& r);

}  // namespace lowerset
