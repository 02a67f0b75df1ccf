#pragma once

#include <algorithm>

#include "kdyck/exact.hpp"
#include "kdyck/series.hpp"
#include "kdyck/shape.hpp"

namespace kdyck {

// Paths of shape (alpha,beta) whose least height is exactly m.
struct MinHeightQuery {
  PathClassQuery base;
  long m = 0;
};

// Paths of shape (alpha,beta) with exactly rho down steps landing on y=0.
struct ReturnsQuery {
  PathClassQuery base;
  long rho = 0;
};

// ---------------------------------------------------------------------------
// Minimum height
// ---------------------------------------------------------------------------

// Decomposition at the rightmost minimum:
//   {_m}C_{k,(alpha,beta)}(t) = C_{k,(alpha-m,0)}(t) * C_k(t)^{beta-m}.
// Out-of-range m yields the zero series (partition sums iterate rectangles).
inline TruncatedSeries minheight_series(long k, Shape s, long m,
                                        std::size_t truncation_order) {
  PathClassQuery{k, 0, s}.validate();
  if (m < 0 || m > std::min(s.alpha, s.beta))
    return TruncatedSeries::zero(truncation_order);
  return shape_series(k, Shape{s.alpha - m, 0}, truncation_order) *
         pow(catalan_series(k, truncation_order),
             static_cast<unsigned long>(s.beta - m));
}

// Double alternating-convolution closed form, derived from the series above:
//   sum_i (-1)^i R_{k,beta-m+1}(n-i) binom(alpha-m-(k-1)i, i)
//     - sum_i (-1)^i R_{k,beta-m}(n-i) binom(alpha-m-1-(k-1)i, i).
inline ExactInt minheight_count_convolution(long k, long n, Shape s, long m) {
  PathClassQuery{k, n, s}.validate();
  if (m < 0 || m > std::min(s.alpha, s.beta)) return ExactInt(0);
  ExactInt acc = 0;
  for (long i = 0; i <= n; ++i) {
    const long a = s.alpha - m - (k - 1) * i;
    if (a < i) break;
    ExactInt term = raney(k, s.beta - m + 1, n - i) * binom_guarded(a, i);
    acc += (i % 2 == 0) ? term : -term;
  }
  for (long i = 0; i <= n; ++i) {
    const long a = s.alpha - m - 1 - (k - 1) * i;
    if (a < i) break;
    ExactInt term = raney(k, s.beta - m, n - i) * binom_guarded(a, i);
    acc -= (i % 2 == 0) ? term : -term;
  }
  return acc;
}

// Fast path for alpha - m <= k - 1: one or two Raney terms.
inline ExactInt minheight_count_small_drop(long k, long n, Shape s, long m) {
  PathClassQuery{k, n, s}.validate();
  if (m < 0 || m > std::min(s.alpha, s.beta)) return ExactInt(0);
  if (s.alpha - m > k - 1)
    throw std::invalid_argument(
        "minheight_count_small_drop: requires alpha - m <= k-1");
  if (m == s.alpha) return raney(k, s.beta - m + 1, n);
  return raney(k, s.beta - m + 1, n) - raney(k, s.beta - m, n);
}

// k=2 fast path: a single Raney value at a shifted index.
inline ExactInt minheight_count_k2(long n, Shape s, long m) {
  PathClassQuery{2, n, s}.validate();
  if (m < 0 || m > std::min(s.alpha, s.beta)) return ExactInt(0);
  return raney(2, s.alpha + s.beta + 1 - 2 * m, n - s.alpha + m);
}

// Difference of lower-bounded classes, shifted down by m.
inline ExactInt minheight_count_via_difference(long k, long n, Shape s,
                                               long m) {
  PathClassQuery{k, n, s}.validate();
  if (m < 0 || m > std::min(s.alpha, s.beta)) return ExactInt(0);
  ExactInt lowered = count_closed({k, n, Shape{s.alpha - m, s.beta - m}});
  if (s.alpha - m - 1 < 0 || s.beta - m - 1 < 0) return lowered;
  return lowered - count_closed({k, n, Shape{s.alpha - m - 1, s.beta - m - 1}});
}

inline ExactInt minheight_count(long k, long n, Shape s, long m) {
  PathClassQuery{k, n, s}.validate();
  if (m < 0 || m > std::min(s.alpha, s.beta)) return ExactInt(0);
  if (k == 2) return minheight_count_k2(n, s, m);
  if (s.alpha - m <= k - 1) return minheight_count_small_drop(k, n, s, m);
  return minheight_count_convolution(k, n, s, m);
}

// Partition of the unfiltered series by minimal height.
inline TruncatedSeries shape_series_by_minheight(long k, Shape s,
                                                 std::size_t truncation_order) {
  PathClassQuery{k, 0, s}.validate();
  TruncatedSeries acc = TruncatedSeries::zero(truncation_order);
  for (long m = 0; m <= std::min(s.alpha, s.beta); ++m)
    acc = acc + minheight_series(k, s, m, truncation_order);
  return acc;
}

// ---------------------------------------------------------------------------
// Returns to ground
// ---------------------------------------------------------------------------

// Generating function of paths with exactly rho returns.
inline TruncatedSeries returns_series(long k, Shape s, long rho,
                                      std::size_t truncation_order) {
  PathClassQuery{k, 0, s}.validate();
  if (rho < 0) return TruncatedSeries::zero(truncation_order);
  TruncatedSeries c = catalan_series(k, truncation_order);
  if (s.alpha == 0) {
    return TruncatedSeries::monomial(static_cast<std::size_t>(rho),
                                     truncation_order) *
           pow(c, static_cast<unsigned long>(s.beta + rho * (k - 1)));
  }
  if (rho == 0) {
    if (s.beta == 0) return TruncatedSeries::zero(truncation_order);
    return shape_series(k, Shape{s.alpha - 1, s.beta - 1}, truncation_order);
  }
  return TruncatedSeries::monomial(static_cast<std::size_t>(rho),
                                   truncation_order) *
         shape_series(k, Shape{s.alpha - 1, k - 2}, truncation_order) *
         pow(c, static_cast<unsigned long>(s.beta + (rho - 1) * (k - 1)));
}

// Closed form for alpha = 0: a single Raney value (with the r = 0
// degenerate convention covering beta = rho = 0).
inline ExactInt returns_count_ground_start(long k, long n, long beta,
                                           long rho) {
  return raney(k, beta + (k - 1) * rho, n - rho);
}

// General alpha > 0 route: no-return branch plus the finite convolution.
inline ExactInt returns_count_convolution(long k, long n, Shape s, long rho) {
  PathClassQuery{k, n, s}.validate();
  if (rho < 0 || rho > n) return ExactInt(0);
  if (s.alpha == 0) return returns_count_ground_start(k, n, s.beta, rho);
  if (rho == 0) {
    if (s.beta == 0) return ExactInt(0);
    return count_closed({k, n, Shape{s.alpha - 1, s.beta - 1}});
  }
  ExactInt acc = 0;
  for (long i = 0; i <= n - rho; ++i)
    acc += count_closed({k, i, Shape{s.alpha - 1, k - 2}}) *
           raney(k, s.beta + (rho - 1) * (k - 1), n - rho - i);
  return acc;
}

// Fast path for 0 < alpha <= k.  The closed two-term difference only covers
// rho >= 1 when alpha = k; the rho = 0 and n = 0 cells are the convolution
// route's case split.
inline ExactInt returns_count_small_alpha(long k, long n, Shape s, long rho) {
  PathClassQuery{k, n, s}.validate();
  if (s.alpha < 1 || s.alpha > k)
    throw std::invalid_argument(
        "returns_count_small_alpha: requires 0 < alpha <= k");
  if (rho < 0 || rho > n) return ExactInt(0);
  if (n == 0) return ExactInt(s.alpha <= s.beta ? 1 : 0);
  const long r = s.beta + (k - 1) * rho;
  if (s.alpha <= k - 1) return raney(k, r, n - rho);
  if (rho == 0) return returns_count_convolution(k, n, s, rho);
  return raney(k, r, n - rho) - raney(k, r - (k - 1), n - rho);
}

// k=2 fast path.
inline ExactInt returns_count_k2(long n, Shape s, long rho) {
  PathClassQuery{2, n, s}.validate();
  if (s.alpha < 1)
    throw std::invalid_argument("returns_count_k2: requires alpha > 0");
  if (rho < 0 || rho > n) return ExactInt(0);
  if (rho == 0) {
    ExactInt acc = 0;
    for (long i = 0; i <= std::min(s.alpha - 1, s.beta - 1); ++i)
      acc += raney(2, s.alpha + s.beta - 1 - 2 * i, n - s.alpha + 1 + i);
    return acc;
  }
  return raney(2, s.alpha + s.beta + rho - 1, n - rho - s.alpha + 1);
}

inline ExactInt returns_count(long k, long n, Shape s, long rho) {
  PathClassQuery{k, n, s}.validate();
  if (rho < 0 || rho > n) return ExactInt(0);
  if (s.alpha == 0) return returns_count_ground_start(k, n, s.beta, rho);
  if (k == 2) return returns_count_k2(n, s, rho);
  if (s.alpha <= k) return returns_count_small_alpha(k, n, s, rho);
  return returns_count_convolution(k, n, s, rho);
}

}  // namespace kdyck
