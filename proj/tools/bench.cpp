#include <chrono>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <vector>

#include <CLI11.hpp>
#ifdef _OPENMP
#include <omp.h>
#endif

#include "lowerset/enumerate.hpp"

namespace {

double seconds_of(const std::function<void()>& fn) {
  auto start = std::chrono::steady_clock::now();
  fn();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

struct Row {
  uint64_t d, n;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"serial vs work-split kernel timings"};
  bool quick = false;
  app.add_flag("--quick", quick, "tiny sizes for a smoke run");
  CLI11_PARSE(app, argc, argv);

#ifdef _OPENMP
  std::printf("threads: %d\n", omp_get_max_threads());
#else
  std::printf("threads: 1 (built without OpenMP)\n");
#endif
  std::printf("%-10s %4s %4s %12s %12s %8s %s\n", "task", "d", "n", "serial_s", "parallel_s",
              "speedup", "check");

  std::vector<Row> count_rows =
      quick ? std::vector<Row>{{2, 12}, {3, 9}} : std::vector<Row>{{2, 40}, {3, 28}, {4, 19}, {6, 13}};
  std::vector<Row> t_rows = quick ? std::vector<Row>{{3, 8}} : std::vector<Row>{{3, 24}, {4, 16}};

  bool all_ok = true;
  for (const Row& row : count_rows) {
    lowerset::Budget b1(UINT64_MAX), b2(UINT64_MAX);
    mpz_class serial, parallel;
    double ts = seconds_of([&] { serial = lowerset::count_by_enumeration_serial(row.d, row.n, b1); });
    double tp = seconds_of([&] { parallel = lowerset::count_by_enumeration(row.d, row.n, b2); });
    bool ok = serial == parallel;
    all_ok = all_ok && ok;
    std::printf("%-10s %4llu %4llu %12.3f %12.3f %7.2fx %s\n", "count", (unsigned long long)row.d,
                (unsigned long long)row.n, ts, tp, tp > 0 ? ts / tp : 0.0,
                ok ? "ok" : "MISMATCH");
  }
  for (const Row& row : t_rows) {
    lowerset::Budget b1(UINT64_MAX), b2(UINT64_MAX);
    uint64_t serial = 0, parallel = 0;
    double ts =
        seconds_of([&] { serial = lowerset::max_maximal_points_serial(row.d, row.n, b1); });
    double tp = seconds_of([&] { parallel = lowerset::max_maximal_points(row.d, row.n, b2); });
    bool ok = serial == parallel;
    all_ok = all_ok && ok;
    std::printf("%-10s %4llu %4llu %12.3f %12.3f %7.2fx %s\n", "max-top", (unsigned long long)row.d,
                (unsigned long long)row.n, ts, tp, tp > 0 ? ts / tp : 0.0,
                ok ? "ok" : "MISMATCH");
  }
  return all_ok ? 0 : 1;
}
