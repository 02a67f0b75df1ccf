#include <catch2/catch_amalgamated.hpp>

#include "kdyck/bounded.hpp"
#include "kdyck/oracle.hpp"

using namespace kdyck;

namespace {

TruncatedSeries from_longs(std::vector<long> v) {
  std::vector<ExactInt> c(v.begin(), v.end());
  return TruncatedSeries(std::move(c));
}

ExactInt dp_bounded(long k, long n, Shape s, long ceiling) {
  PathFilter f;
  f.ceiling = ceiling;
  return oracle_count({k, n, s}, f);
}

}  // namespace

TEST_CASE("bounded_top_series examples") {
  CHECK(bounded_top_series(2, 0, 0, 3) == from_longs({1, 0, 0, 0}));
  CHECK(bounded_top_series(2, 0, 1, 3) == from_longs({1, 1, 1, 1}));
  CHECK(bounded_top_series(3, 1, 2, 2) == from_longs({1, 1, 1}));
  CHECK(bounded_top_series(2, 3, 2, 4) == TruncatedSeries::zero(4));
}

TEST_CASE("bounded_series examples") {
  CHECK(bounded_series(2, {0, 0}, 1, 4) == from_longs({1, 1, 1, 1, 1}));
  CHECK(bounded_series(2, {0, 0}, 2, 4) == from_longs({1, 1, 2, 4, 8}));
  CHECK(bounded_series(4, {1, 0}, 2, 6) == TruncatedSeries::zero(6));
  CHECK(bounded_series(2, {0, 0}, -1, 4) == TruncatedSeries::zero(4));
}

TEST_CASE("max_height_series examples") {
  CHECK(max_height_series(2, {0, 0}, 0, 3) == from_longs({1, 0, 0, 0}));
  CHECK(max_height_series(2, {0, 0}, 2, 3)[2] == 1);
  CHECK(max_height_series(3, {0, 0}, 1, 3)[1] == 0);
}

TEST_CASE("count extraction examples") {
  CHECK(bounded_count({{2, 3, {0, 0}}, 2}) == 4);
  CHECK(max_height_count({{2, 2, {0, 0}}, 1}) == 1);
  CHECK(bounded_count({{3, 5, {2, 2}}, 1}) == 0);
}

TEST_CASE("degenerate low-ceiling regime") {
  // For M < k-1 no D step fits under the ceiling: the only surviving path
  // is the all-U staircase, present iff alpha <= beta <= M.
  const std::size_t N = 6;
  for (long k = 2; k <= 5; ++k)
    for (long ceiling = 0; ceiling < k - 1; ++ceiling)
      for (long alpha = 0; alpha <= ceiling; ++alpha)
        for (long beta = 0; beta <= ceiling; ++beta) {
          auto s = bounded_series(k, {alpha, beta}, ceiling, N);
          INFO("k=" << k << " M=" << ceiling << " alpha=" << alpha
                    << " beta=" << beta);
          if (alpha <= beta)
            CHECK(s == TruncatedSeries::one(N));
          else
            CHECK(s == TruncatedSeries::zero(N));
        }
}

TEST_CASE("coefficients are monotone in the ceiling and exhaust") {
  for (long k = 2; k <= 3; ++k)
    for (long alpha = 0; alpha <= 2; ++alpha)
      for (long beta = 0; beta <= 2; ++beta)
        for (long n = 0; n <= 6; ++n) {
          const long top = (k - 1) * n + beta;
          ExactInt prev = 0;
          for (long ceiling = std::max(alpha, beta); ceiling <= top + 1;
               ++ceiling) {
            ExactInt cur = bounded_count({{k, n, {alpha, beta}}, ceiling});
            CHECK(cur >= prev);
            prev = cur;
          }
          CHECK(bounded_count({{k, n, {alpha, beta}}, top}) ==
                count_closed({k, n, {alpha, beta}}));
        }
}

TEST_CASE("max-height partition sums to the unfiltered count") {
  for (long k = 2; k <= 3; ++k)
    for (long alpha = 0; alpha <= 3; ++alpha)
      for (long beta = 0; beta <= 3; ++beta)
        for (long n = 0; n <= 6; ++n) {
          ExactInt sum = 0;
          for (long peak = std::max(alpha, beta); peak <= (k - 1) * n + beta;
               ++peak)
            sum += max_height_count({{k, n, {alpha, beta}}, peak});
          CHECK(sum == count_closed({k, n, {alpha, beta}}));
        }
}

TEST_CASE("bounded_series matches the height-capped DP") {
  for (long k = 2; k <= 3; ++k)
    for (long ceiling = 0; ceiling <= 5; ++ceiling)
      for (long alpha = 0; alpha <= ceiling; ++alpha)
        for (long beta = 0; beta <= ceiling; ++beta) {
          auto series = bounded_series(k, {alpha, beta}, ceiling, 8);
          for (long n = 0; n <= 8; ++n) {
            INFO("k=" << k << " M=" << ceiling << " alpha=" << alpha
                      << " beta=" << beta << " n=" << n);
            CHECK(series[static_cast<std::size_t>(n)] ==
                  dp_bounded(k, n, {alpha, beta}, ceiling));
          }
        }
}

TEST_CASE("max_height_series matches the exact-peak oracle") {
  for (long k = 2; k <= 3; ++k)
    for (long peak = 0; peak <= 4; ++peak)
      for (long alpha = 0; alpha <= 3; ++alpha)
        for (long beta = 0; beta <= 3; ++beta) {
          auto series = max_height_series(k, {alpha, beta}, peak, 6);
          PathFilter f;
          f.exact_max_height = peak;
          for (long n = 0; n <= 6; ++n)
            CHECK(series[static_cast<std::size_t>(n)] ==
                  oracle_count({k, n, {alpha, beta}}, f));
        }
}

TEST_CASE("unbounded-over-bounded factorization of the top strip") {
  const std::size_t N = 10;
  for (long k = 2; k <= 4; ++k)
    for (long ceiling = 0; ceiling <= 4; ++ceiling)
      for (long alpha = 0; alpha <= ceiling; ++alpha) {
        auto denom = TruncatedSeries::one(N) +
                     shape_series(k, {ceiling + 1, ceiling}, N);
        CHECK(shape_series(k, {alpha, ceiling}, N) ==
              bounded_top_series(k, alpha, ceiling, N) * denom);
      }
}
