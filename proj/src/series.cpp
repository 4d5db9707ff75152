#include "lowerset/series.hpp"

#include <sstream>
#include <stdexcept>

namespace lowerset {

namespace {

// Exponent e_k of the family's product form.
mpz_class exponent_for(SeriesFamily family, uint64_t d, uint64_t k) {
  switch (family) {
    case SeriesFamily::Euler:
      return 1;
    case SeriesFamily::MacMahon:
      return mpz_class(static_cast<unsigned long>(k));
    case SeriesFamily::MacMahonConjecture: {
      // C(k + d - 3, k - 1); for d = 2 this is 1, for d = 3 it is k.
      mpz_class top(static_cast<unsigned long>(k + d - 3));
      mpz_class out;
      mpz_bin_ui(out.get_mpz_t(), top.get_mpz_t(), static_cast<unsigned long>(k - 1));
      return out;
    }
  }
  throw std::invalid_argument("series_expand: unknown family");
}

}  // namespace

SeriesTable series_expand(SeriesFamily family, uint64_t d, uint64_t max_n) {
  if (family == SeriesFamily::Euler) d = 2;
  if (family == SeriesFamily::MacMahon) d = 3;
  if (d < 2) throw std::invalid_argument("series_expand: d must be >= 2");

  SeriesTable t;
  t.family = family;
  t.d = d;
  t.max_n = max_n;
  t.coeffs.assign(max_n + 1, 0);
  t.coeffs[0] = 1;

  std::vector<mpz_class> next(max_n + 1);
  for (uint64_t k = 1; k <= max_n; ++k) {
    mpz_class e = exponent_for(family, d, k);
    if (e == 0) continue;
    // multiply by (1 - x^k)^(-e) = sum_j C(e + j - 1, j) x^(k j)
    for (uint64_t i = 0; i <= max_n; ++i) next[i] = t.coeffs[i];
    mpz_class binom = 1;  // C(e + j - 1, j), starting at j = 0
    for (uint64_t j = 1; j * k <= max_n; ++j) {
      binom *= e + static_cast<unsigned long>(j) - 1;
      mpz_divexact_ui(binom.get_mpz_t(), binom.get_mpz_t(), static_cast<unsigned long>(j));
      for (uint64_t i = j * k; i <= max_n; ++i)
        next[i] += binom * t.coeffs[i - j * k];
    }
    t.coeffs.swap(next);
  }
  return t;
}

std::string series_to_csv(const SeriesTable& t) {
  std::ostringstream os;
  os << "n,coefficient\n";
  for (uint64_t i = 0; i <= t.max_n; ++i)
    os << i << ',' << t.coeffs[i].get_str() << '\n';
  return os.str();
}

const char* series_family_name(SeriesFamily f) {
  switch (f) {
    case SeriesFamily::Euler:
      return "euler";
    case SeriesFamily::MacMahon:
      return "macmahon";
    case SeriesFamily::MacMahonConjecture:
      return "macmahon-conjecture";
  }
  return "?";
}

SeriesFamily series_family_from_name(const std::string& name) {
  if (name == "euler") return SeriesFamily::Euler;
  if (name == "macmahon") return SeriesFamily::MacMahon;
  if (name == "macmahon-conjecture") return SeriesFamily::MacMahonConjecture;
  throw std::invalid_argument("unknown series family: " + name);
}

}  // namespace lowerset
