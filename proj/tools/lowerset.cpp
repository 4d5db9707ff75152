#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "lowerset/bounds.hpp"
#include "lowerset/count.hpp"
#include "lowerset/enumerate.hpp"
#include "lowerset/lattice.hpp"
#include "lowerset/series.hpp"
#include "lowerset/suites.hpp"

namespace {

// Exit codes: 0 success, 1 failed verification or violated bracket,
// 2 invalid arguments, 3 work budget exceeded.
constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitBadArgs = 2;
constexpr int kExitBudget = 3;

uint64_t budget_from_env() {
  const char* v = std::getenv("LOWERSET_BUDGET");
  if (!v || !*v) return lowerset::Budget::kDefaultLimit;
  char* end = nullptr;
  unsigned long long parsed = std::strtoull(v, &end, 10);
  if (end == v || *end != '\0')
    throw std::invalid_argument("LOWERSET_BUDGET must be a plain nonnegative integer");
  return parsed;
}

void print_error(const std::string& message) {
  nlohmann::ordered_json j;
  j["error"] = message;
  std::fprintf(stderr, "%s\n", j.dump().c_str());
}

void print_partition_block(const lowerset::LowerSet& S) {
  lowerset::PartitionArray A = lowerset::to_partition_array(S);
  std::string out;
  for (const auto& [key, h] : A.heights) {
    for (uint64_t a = 0; a < A.dim; ++a) {
      out += std::to_string(a < key.size() ? key[a] : 0);
      out += ' ';
    }
    out += std::to_string(h);
    out += '\n';
  }
  std::fputs(out.c_str(), stdout);
}

int run(int argc, char** argv) {
  CLI::App app{"exact counts, enumeration, and closed-form estimates for d-dimensional lower sets"};
  app.require_subcommand(1);
  uint64_t budget_limit = budget_from_env();

  uint64_t d = 0, n = 0;
  std::string method = "auto";
  auto* count_cmd = app.add_subcommand("count", "exact number of lower sets of a given size");
  count_cmd->add_option("--dim", d, "ambient dimension")->required();
  count_cmd->add_option("--n", n, "number of points")->required();
  count_cmd->add_option("--method", method, "auto|enum|dp|series|decomp");
  count_cmd->add_option("--budget", budget_limit, "work budget in nodes");

  std::string family;
  uint64_t series_d = 0, series_n = 0;
  auto* series_cmd = app.add_subcommand("series", "generating-function coefficient table as CSV");
  series_cmd->add_option("--family", family, "euler|macmahon|macmahon-conjecture")->required();
  series_cmd->add_option("--dim", series_d, "dimension (macmahon-conjecture only)");
  series_cmd->add_option("--n", series_n, "largest size to expand to")->required();

  uint64_t bounds_d = 0, bounds_n = 0;
  bool bounds_csv = false;
  auto* bounds_cmd = app.add_subcommand("bounds", "every applicable closed-form estimate at (d, n)");
  bounds_cmd->add_option("--dim", bounds_d, "ambient dimension (>= 2)")->required();
  bounds_cmd->add_option("--n", bounds_n, "number of points")->required();
  bounds_cmd->add_flag("--csv", bounds_csv, "emit CSV instead of JSON");
  bounds_cmd->add_option("--budget", budget_limit, "work budget in nodes");

  uint64_t enum_d = 0, enum_n = 0;
  std::string format = "points";
  auto* enum_cmd = app.add_subcommand("enumerate", "list every lower set of a given size");
  enum_cmd->add_option("--dim", enum_d, "ambient dimension")->required();
  enum_cmd->add_option("--n", enum_n, "number of points")->required();
  enum_cmd->add_option("--format", format)->check(CLI::IsMember({"points", "partition"}));
  enum_cmd->add_option("--budget", budget_limit, "work budget in nodes");

  std::string suite;
  lowerset::SuiteLimits limits;
  auto* verify_cmd = app.add_subcommand("verify", "run the self-check suites");
  verify_cmd->add_option("--suite", suite, "single suite to run")
      ->check(CLI::IsMember(lowerset::suite_names()));
  verify_cmd->add_option("--random-cases", limits.random_cases, "randomized cases per suite");
  verify_cmd->add_option("--seed", limits.seed, "base seed for randomized cases");
  verify_cmd->add_option("--budget", budget_limit, "work budget in nodes");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    std::fputs(app.help().c_str(), stdout);
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    std::fputs(app.help("", CLI::AppFormatMode::All).c_str(), stdout);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    print_error(e.what());
    return kExitBadArgs;
  }

  if (*count_cmd) {
    lowerset::Budget budget(budget_limit);
    lowerset::CountResult r =
        lowerset::count_exact(d, n, lowerset::count_method_from_name(method), budget);
    nlohmann::ordered_json j;
    j["d"] = r.d;
    j["n"] = r.n;
    j["value"] = r.value.get_str();
    j["method"] = lowerset::count_method_name(r.method);
    std::printf("%s\n", j.dump().c_str());
    return kExitOk;
  }

  if (*series_cmd) {
    lowerset::SeriesFamily fam = lowerset::series_family_from_name(family);
    if (fam == lowerset::SeriesFamily::MacMahonConjecture && series_d == 0)
      throw std::invalid_argument("series: --dim is required for macmahon-conjecture");
    lowerset::SeriesTable t = lowerset::series_expand(fam, series_d, series_n);
    std::fputs(lowerset::series_to_csv(t).c_str(), stdout);
    return kExitOk;
  }

  if (*bounds_cmd) {
    lowerset::Budget budget(budget_limit);
    lowerset::BoundReport r = lowerset::bound_report(bounds_d, bounds_n, budget);
    if (bounds_csv)
      std::fputs(lowerset::report_to_csv(r).c_str(), stdout);
    else
      std::printf("%s\n", lowerset::report_to_json(r).c_str());
    return kExitOk;
  }

  if (*enum_cmd) {
    lowerset::Budget budget(budget_limit);
    bool first = true;
    lowerset::enumerate_lower_sets(enum_d, enum_n, budget, [&](const lowerset::LowerSet& S) {
      if (!first) std::fputs("\n", stdout);
      first = false;
      if (format == "points")
        std::fputs(lowerset::to_text(S).c_str(), stdout);
      else
        print_partition_block(S);
    });
    return kExitOk;
  }

  if (*verify_cmd) {
    limits.budget_limit = budget_limit;
    std::vector<std::string> names =
        suite.empty() ? lowerset::suite_names() : std::vector<std::string>{suite};
    bool all_ok = true;
    for (const auto& name : names) {
      lowerset::SuiteResult r = lowerset::run_suite(name, limits);
      std::printf("%s\n", lowerset::suite_to_json(r).c_str());
      if (!r.ok()) all_ok = false;
    }
    return all_ok ? kExitOk : kExitCheckFailed;
  }

  return kExitBadArgs;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const lowerset::BudgetExceeded& e) {
    print_error(e.what());
    return kExitBudget;
  } catch (const std::invalid_argument& e) {
    print_error(e.what());
    return kExitBadArgs;
  } catch (const std::logic_error& e) {
    // A checked mathematical invariant failed (e.g. a bound fell on the
    // wrong side of an exact count): same class as a failing suite.
    print_error(e.what());
    return kExitCheckFailed;
  } catch (const std::exception& e) {
    print_error(e.what());
    return kExitBadArgs;
  }
}
