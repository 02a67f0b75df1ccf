#pragma once

#include <gmpxx.h>

#include <stdexcept>

namespace kdyck {

// All counts are exact; arithmetic never overflows or rounds.
using ExactInt = mpz_class;

struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

// binom(a,b) with the convention that it vanishes for a < 0, b < 0, or b > a.
inline ExactInt binom_guarded(long a, long b) {
  if (a < 0 || b < 0 || b > a) return ExactInt(0);
  ExactInt result;
  mpz_bin_uiui(result.get_mpz_t(), static_cast<unsigned long>(a),
               static_cast<unsigned long>(b));
  return result;
}

// Raney number R_{k,r}(n) = r/(kn+r) * binom(kn+r, n), an exact integer.
// Conventions: n < 0 or r < 0 give 0; r == 0 gives [n == 0] so that
// raney(k,0,.) are the coefficients of the constant series 1.
inline ExactInt raney(long k, long r, long n) {
  if (k < 2) throw DomainError("raney: k must be >= 2");
  if (n < 0 || r < 0) return ExactInt(0);
  if (r == 0) return ExactInt(n == 0 ? 1 : 0);
  const long m = k * n + r;
  ExactInt numerator = binom_guarded(m, n) * r;
  ExactInt result;
  mpz_divexact_ui(result.get_mpz_t(), numerator.get_mpz_t(),
                  static_cast<unsigned long>(m));
  return result;
}

}  // namespace kdyck
