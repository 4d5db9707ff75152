#include "lowerset/logmath.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace lowerset {

double log_add_exp(double a, double b) {
  if (a == -std::numeric_limits<double>::infinity()) return b;
  if (b == -std::numeric_limits<double>::infinity()) return a;
  double hi = std::max(a, b), lo = std::min(a, b);
  return hi + std::log1p(std::exp(lo - hi));
}

double log_sum_exp(const std::vector<double>& xs) {
  double m = -std::numeric_limits<double>::infinity();
  for (double x : xs) m = std::max(m, x);
  if (m == -std::numeric_limits<double>::infinity()) return m;
  double s = 0.0;
  for (double x : xs) s += std::exp(x - m);
  return m + std::log(s);
}

double log_binomial(uint64_t a, uint64_t b) {
  if (b > a) return -std::numeric_limits<double>::infinity();
  uint64_t k = std::min(b, a - b);
  if (k == 0) return 0.0;
  if (k <= 64) {
    // Direct product: error stays relative to the result, not to lgamma(a).
    double s = 0.0;
    for (uint64_t i = 1; i <= k; ++i)
      s += std::log(static_cast<double>(a - k + i)) - std::log(static_cast<double>(i));
    return s;
  }
  // lgamma(a+1) - lgamma(a-k+1) via Stirling with the large terms cancelled
  // symbolically; the naive difference loses ~a*log(a)*eps of absolute
  // precision, which dwarfs the result when k << a.
  double ap = static_cast<double>(a) + 1.0;
  double m = static_cast<double>(a - k) + 1.0;
  double kd = static_cast<double>(k);
  double diff = (m - 0.5) * std::log1p(kd / m) + kd * std::log(ap) - kd;
  double ap2 = ap * ap, m2 = m * m;
  double ap3 = ap2 * ap, m3 = m2 * m;
  diff -= kd / (12.0 * ap * m);
  diff += kd * (ap2 + ap * m + m2) / (360.0 * ap3 * m3);
  diff -= kd * (ap2 * ap2 + ap3 * m + ap2 * m2 + ap * m3 + m2 * m2) /
          (1260.0 * ap3 * ap2 * m3 * m2);
  return diff - std::lgamma(kd + 1.0);
}

double log_factorial(uint64_t n) { return std::lgamma(static_cast<double>(n) + 1.0); }

double log_mpz(const mpz_class& z) {
  if (z <= 0) throw std::invalid_argument("log_mpz requires a positive value");
  signed long e2 = 0;
  double m = mpz_get_d_2exp(&e2, z.get_mpz_t());
  return std::log(m) + static_cast<double>(e2) * std::log(2.0);
}

double zeta(double s) {
  if (!(s > 1.0)) throw std::invalid_argument("zeta requires s > 1");
  if (s > 64.0) return 1.0;  // 2^-s is already below double epsilon
  constexpr double K = 10000.0;
  double sum = 0.0;
  for (double k = K - 1.0; k >= 1.0; k -= 1.0) sum += std::pow(k, -s);
  // Euler-Maclaurin tail from K.
  double tail = std::pow(K, 1.0 - s) / (s - 1.0) + 0.5 * std::pow(K, -s) +
                s * std::pow(K, -s - 1.0) / 12.0 -
                s * (s + 1.0) * (s + 2.0) * std::pow(K, -s - 3.0) / 720.0;
  return sum + tail;
}

namespace {

bool power_fits(uint64_t base, uint64_t exp, mpz_class& out) {
  if (exp == 0) {
    out = 1;
    return true;
  }
  if (base <= 1) {
    out = static_cast<unsigned long>(base);
    return true;
  }
  if (exp >= 128) return false;  // base >= 2: power > 2^127 > any uint64
  mpz_ui_pow_ui(out.get_mpz_t(), static_cast<unsigned long>(base),
                static_cast<unsigned long>(exp));
  return true;
}

}  // namespace

bool integer_ge_power(uint64_t n, uint64_t base, uint64_t exp) {
  mpz_class p;
  if (!power_fits(base, exp, p)) return false;
  mpz_class zn;
  mpz_import(zn.get_mpz_t(), 1, 1, sizeof(n), 0, 0, &n);
  return zn >= p;
}

bool integer_gt_power(uint64_t n, uint64_t base, uint64_t exp) {
  mpz_class p;
  if (!power_fits(base, exp, p)) return false;
  mpz_class zn;
  mpz_import(zn.get_mpz_t(), 1, 1, sizeof(n), 0, 0, &n);
  return zn > p;
}

}  // namespace lowerset
