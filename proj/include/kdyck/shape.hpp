#pragma once

#include <algorithm>
#include <map>
#include <stdexcept>
#include <utility>

#include "kdyck/exact.hpp"
#include "kdyck/series.hpp"

namespace kdyck {

// Starting and ending heights of a raised k-Dyck path.
struct Shape {
  long alpha = 0;
  long beta = 0;
};

// A class of raised k-Dyck paths: down steps D = (1, 1-k), n of them, with
// the given shape.  The implied path length is k*n + beta - alpha; the class
// is empty when that is negative.
struct PathClassQuery {
  long k = 2;
  long n = 0;
  Shape shape;

  long length() const { return k * n + shape.beta - shape.alpha; }

  void validate() const {
    if (k < 2) throw DomainError("PathClassQuery: k must be >= 2");
    if (n < 0) throw DomainError("PathClassQuery: n must be >= 0");
    if (shape.alpha < 0 || shape.beta < 0)
      throw DomainError("PathClassQuery: heights must be >= 0");
  }
};

namespace detail {

// The finite polynomial sum_i (-1)^i binom(top - (k-1)i, i) t^i.  The
// binomial vanishes once top - (k-1)i < i, so at most floor(top/k)+1 terms.
inline TruncatedSeries alternating_binomial_poly(long top, long k,
                                                 std::size_t order) {
  TruncatedSeries p(order);
  for (long i = 0; i <= static_cast<long>(order); ++i) {
    const long a = top - (k - 1) * i;
    if (a < i) break;
    ExactInt b = binom_guarded(a, i);
    p.set(static_cast<std::size_t>(i), (i % 2 == 0) ? b : -b);
  }
  return p;
}

}  // namespace detail

// C_{k,(alpha,beta)}(t) mod t^(N+1):
//   C_k(t)^{beta+1} * sum_i (-1)^i binom(alpha-(k-1)i, i) t^i
//     - sum_i (-1)^i binom(alpha-beta-1-(k-1)i, i) t^i.
inline TruncatedSeries shape_series(long k, Shape s,
                                    std::size_t truncation_order) {
  PathClassQuery{k, 0, s}.validate();
  TruncatedSeries head =
      pow(catalan_series(k, truncation_order),
          static_cast<unsigned long>(s.beta + 1)) *
      detail::alternating_binomial_poly(s.alpha, k, truncation_order);
  TruncatedSeries tail = detail::alternating_binomial_poly(
      s.alpha - s.beta - 1, k, truncation_order);
  return head - tail;
}

// C^k_{n,(alpha,beta)} by the two-part closed formula:
//   sum_i (-1)^i R_{k,beta+1}(n-i) binom(alpha-(k-1)i, i)
//     - (-1)^n binom(alpha-beta-1-(k-1)n, n).
inline ExactInt count_closed(const PathClassQuery& q) {
  q.validate();
  const long alpha = q.shape.alpha;
  const long beta = q.shape.beta;
  ExactInt acc = 0;
  for (long i = 0; i <= q.n; ++i) {
    const long a = alpha - (q.k - 1) * i;
    if (a < i) break;
    ExactInt term = raney(q.k, beta + 1, q.n - i) * binom_guarded(a, i);
    if (i % 2 == 0)
      acc += term;
    else
      acc -= term;
  }
  ExactInt tail = binom_guarded(alpha - beta - 1 - (q.k - 1) * q.n, q.n);
  if (q.n % 2 == 0)
    acc -= tail;
  else
    acc += tail;
  return acc;
}

// C^k_{n,(alpha,beta)} by memoized first-step decomposition:
//   C^k_{n,(a,b)} = C^k_{n,(a+1,b)} + C^k_{n-1,(a-k+1,b)}.
// The ascent in alpha terminates because the count vanishes once
// alpha > k*n + beta (no path can shed that much height).
inline ExactInt count_recurrence(const PathClassQuery& q) {
  q.validate();
  const long k = q.k;
  const long beta = q.shape.beta;
  std::map<std::pair<long, long>, ExactInt> memo;

  auto rec = [&](auto&& self, long n, long alpha) -> ExactInt {
    if (n < 0 || alpha < 0) return ExactInt(0);
    if (k * n + beta - alpha < 0) return ExactInt(0);
    if (alpha > k * n + beta) return ExactInt(0);
    if (n == 0 && alpha == beta) return ExactInt(1);
    auto key = std::make_pair(n, alpha);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    ExactInt value = self(self, n, alpha + 1) + self(self, n - 1, alpha - k + 1);
    memo.emplace(key, value);
    return value;
  };
  return rec(rec, q.n, q.shape.alpha);
}

// Single-term specialization for starting heights below k.
inline ExactInt count_small_alpha(const PathClassQuery& q) {
  q.validate();
  if (q.shape.alpha > q.k - 1)
    throw std::invalid_argument("count_small_alpha: requires alpha <= k-1");
  if (q.n == 0) return ExactInt(q.shape.alpha <= q.shape.beta ? 1 : 0);
  return raney(q.k, q.shape.beta + 1, q.n);
}

inline TruncatedSeries shape_series_small_alpha(long k, Shape s,
                                                std::size_t truncation_order) {
  PathClassQuery{k, 0, s}.validate();
  if (s.alpha > k - 1)
    throw std::invalid_argument(
        "shape_series_small_alpha: requires alpha <= k-1");
  TruncatedSeries p = pow(catalan_series(k, truncation_order),
                          static_cast<unsigned long>(s.beta + 1));
  if (s.alpha > s.beta) p = p - TruncatedSeries::one(truncation_order);
  return p;
}

// k=2 decomposition by lowest point:
//   sum_{i=0}^{min(alpha,beta)} t^{alpha-i} C_2(t)^{alpha+beta+1-2i}.
inline TruncatedSeries k2_shape_series(Shape s, std::size_t truncation_order) {
  PathClassQuery{2, 0, s}.validate();
  TruncatedSeries c2 = catalan_series(2, truncation_order);
  TruncatedSeries acc = TruncatedSeries::zero(truncation_order);
  const long top = std::min(s.alpha, s.beta);
  for (long i = 0; i <= top; ++i) {
    acc = acc + TruncatedSeries::monomial(static_cast<std::size_t>(s.alpha - i),
                                          truncation_order) *
                    pow(c2, static_cast<unsigned long>(s.alpha + s.beta + 1 -
                                                       2 * i));
  }
  return acc;
}

// k=2 closed form, each summand an exact Raney value at a shifted index.
inline ExactInt k2_count(long n, Shape s) {
  PathClassQuery{2, n, s}.validate();
  ExactInt acc = 0;
  const long top = std::min(s.alpha, s.beta);
  for (long i = 0; i <= top; ++i)
    acc += raney(2, s.alpha + s.beta + 1 - 2 * i, n - s.alpha + i);
  return acc;
}

enum class CountMethod { Dispatch, Closed, Recurrence, Series, SmallAlpha };

// Default dispatch prefers the single-term specialization when it applies.
inline ExactInt count(const PathClassQuery& q,
                      CountMethod method = CountMethod::Dispatch) {
  switch (method) {
    case CountMethod::Closed:
      return count_closed(q);
    case CountMethod::Recurrence:
      return count_recurrence(q);
    case CountMethod::Series: {
      q.validate();
      return shape_series(q.k, q.shape,
                          static_cast<std::size_t>(q.n))[
          static_cast<std::size_t>(q.n)];
    }
    case CountMethod::SmallAlpha:
      return count_small_alpha(q);
    case CountMethod::Dispatch:
    default:
      q.validate();
      if (q.shape.alpha <= q.k - 1) return count_small_alpha(q);
      return count_closed(q);
  }
}

}  // namespace kdyck
