#pragma once

#include <cstdint>
#include <vector>

#include <gmpxx.h>

namespace lowerset {

// log(e^a + e^b), stable for any mix of finite and -inf inputs.
double log_add_exp(double a, double b);

// log(sum e^x) over the values in their given order (deterministic).
double log_sum_exp(const std::vector<double>& xs);

// log C(a, b); -inf when b > a.
double log_binomial(uint64_t a, uint64_t b);

double log_factorial(uint64_t n);

// Natural log of a positive big integer.
double log_mpz(const mpz_class& z);

// Riemann zeta for real s > 1 by direct summation with an Euler-Maclaurin
// tail; accurate to full double precision (>= 12 significant digits).
double zeta(double s);

// Exact comparisons of an integer against an integer power.  Powers needing
// more than 128 bits exceed any uint64, so those compare false immediately.
bool integer_ge_power(uint64_t n, uint64_t base, uint64_t exp);
bool integer_gt_power(uint64_t n, uint64_t base, uint64_t exp);

}  // namespace lowerset
