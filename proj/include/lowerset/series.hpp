#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace lowerset {

enum class SeriesFamily { Euler, MacMahon, MacMahonConjecture };

struct SeriesTable {
  SeriesFamily family = SeriesFamily::Euler;
  uint64_t d = 2;
  uint64_t max_n = 0;
  std::vector<mpz_class> coeffs;  // index n = 0..max_n
};

// Coefficients of prod_{k>=1} (1 - x^k)^(-e_k) up to x^max_n, with
//   Euler:              e_k = 1            (counts for d = 2)
//   MacMahon:           e_k = k            (counts for d = 3)
//   MacMahonConjecture: e_k = C(k+d-3, k-1)  (any d >= 2; collapses to the
//                       two classic families at d = 2, 3 and is known to
//                       stop matching exact counts at d = 4, n = 6)
SeriesTable series_expand(SeriesFamily family, uint64_t d, uint64_t max_n);

// CSV with header "n,coefficient".
std::string series_to_csv(const SeriesTable& t);

const char* series_family_name(SeriesFamily f);
SeriesFamily series_family_from_name(const std::string& name);

}  // namespace lowerset
