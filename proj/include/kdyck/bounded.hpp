#pragma once

#include "kdyck/exact.hpp"
#include "kdyck/series.hpp"
#include "kdyck/shape.hpp"

namespace kdyck {

// Paths with a height ceiling M (or exact maximum M, per operation).
struct BoundedQuery {
  PathClassQuery base;
  long max = 0;
};

namespace detail {

// 1 + C_{k,(M+1,M)}(t) is a unit: the shape series has zero constant term
// because its starting height exceeds its ending height.
inline TruncatedSeries bounded_denominator_recip(long k, long ceiling,
                                                 std::size_t order) {
  return recip(TruncatedSeries::one(order) +
               shape_series(k, Shape{ceiling + 1, ceiling}, order));
}

}  // namespace detail

// U^M_{k,(alpha,M)}(t) = C_{k,(alpha,M)}(t) / (1 + C_{k,(M+1,M)}(t)).
inline TruncatedSeries bounded_top_series(long k, long alpha, long ceiling,
                                          std::size_t truncation_order) {
  PathClassQuery{k, 0, Shape{alpha, 0}}.validate();
  if (ceiling < 0 || alpha > ceiling)
    return TruncatedSeries::zero(truncation_order);
  return shape_series(k, Shape{alpha, ceiling}, truncation_order) *
         detail::bounded_denominator_recip(k, ceiling, truncation_order);
}

// U^M_{k,(alpha,beta)}(t); zero unless both endpoints lie weakly below M.
// Accepts M = -1 (zero series) so the max-height difference needs no
// special case at M = 0.
inline TruncatedSeries bounded_series(long k, Shape s, long ceiling,
                                      std::size_t truncation_order) {
  PathClassQuery{k, 0, s}.validate();
  if (ceiling < 0 || s.alpha > ceiling || s.beta > ceiling)
    return TruncatedSeries::zero(truncation_order);
  return shape_series(k, s, truncation_order) -
         shape_series(k, Shape{s.alpha, ceiling}, truncation_order) *
             shape_series(k, Shape{ceiling + 1, s.beta}, truncation_order) *
             detail::bounded_denominator_recip(k, ceiling, truncation_order);
}

// H^M_{k,(alpha,beta)}(t) = U^M - U^{M-1}: paths peaking at exactly M.
inline TruncatedSeries max_height_series(long k, Shape s, long peak,
                                         std::size_t truncation_order) {
  return bounded_series(k, s, peak, truncation_order) -
         bounded_series(k, s, peak - 1, truncation_order);
}

inline ExactInt bounded_count(const BoundedQuery& q) {
  q.base.validate();
  const std::size_t n = static_cast<std::size_t>(q.base.n);
  return bounded_series(q.base.k, q.base.shape, q.max, n)[n];
}

inline ExactInt max_height_count(const BoundedQuery& q) {
  q.base.validate();
  const std::size_t n = static_cast<std::size_t>(q.base.n);
  return max_height_series(q.base.k, q.base.shape, q.max, n)[n];
}

}  // namespace kdyck
