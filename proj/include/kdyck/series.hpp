#pragma once

#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "kdyck/exact.hpp"

namespace kdyck {

struct OrderMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct NotInvertible : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// A univariate formal power series with exact integer coefficients, stored
// modulo t^(N+1).  Index i holds the coefficient of t^i; the coefficient
// vector always has exactly N+1 entries.  Values are immutable in use: every
// operation returns a fresh series.
class TruncatedSeries {
 public:
  explicit TruncatedSeries(std::size_t truncation_order)
      : coeffs_(truncation_order + 1) {}

  explicit TruncatedSeries(std::vector<ExactInt> coeffs)
      : coeffs_(std::move(coeffs)) {
    if (coeffs_.empty())
      throw std::invalid_argument("TruncatedSeries: empty coefficient vector");
  }

  static TruncatedSeries zero(std::size_t order) {
    return TruncatedSeries(order);
  }

  static TruncatedSeries one(std::size_t order) {
    TruncatedSeries s(order);
    s.coeffs_[0] = 1;
    return s;
  }

  // t^degree mod t^(order+1); the zero series when degree > order.
  static TruncatedSeries monomial(std::size_t degree, std::size_t order) {
    TruncatedSeries s(order);
    if (degree <= order) s.coeffs_[degree] = 1;
    return s;
  }

  std::size_t truncation_order() const { return coeffs_.size() - 1; }

  const ExactInt& operator[](std::size_t i) const { return coeffs_.at(i); }

  const std::vector<ExactInt>& coeffs() const { return coeffs_; }

  void set(std::size_t i, ExactInt value) { coeffs_.at(i) = std::move(value); }

  TruncatedSeries truncated(std::size_t order) const {
    if (order >= truncation_order()) return *this;
    return TruncatedSeries(
        std::vector<ExactInt>(coeffs_.begin(), coeffs_.begin() + order + 1));
  }

  bool is_zero() const {
    for (const auto& c : coeffs_)
      if (c != 0) return false;
    return true;
  }

  friend bool operator==(const TruncatedSeries& a, const TruncatedSeries& b) {
    return a.coeffs_ == b.coeffs_;
  }

  friend TruncatedSeries operator+(const TruncatedSeries& a,
                                   const TruncatedSeries& b) {
    check_orders(a, b);
    TruncatedSeries r(a.truncation_order());
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
      r.coeffs_[i] = a.coeffs_[i] + b.coeffs_[i];
    return r;
  }

  friend TruncatedSeries operator-(const TruncatedSeries& a,
                                   const TruncatedSeries& b) {
    check_orders(a, b);
    TruncatedSeries r(a.truncation_order());
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
      r.coeffs_[i] = a.coeffs_[i] - b.coeffs_[i];
    return r;
  }

  // Truncated Cauchy product.
  friend TruncatedSeries operator*(const TruncatedSeries& a,
                                   const TruncatedSeries& b) {
    check_orders(a, b);
    TruncatedSeries r(a.truncation_order());
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
      if (a.coeffs_[i] == 0) continue;
      for (std::size_t j = 0; i + j < b.coeffs_.size(); ++j)
        r.coeffs_[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    return r;
  }

 private:
  static void check_orders(const TruncatedSeries& a, const TruncatedSeries& b) {
    if (a.truncation_order() != b.truncation_order())
      throw OrderMismatch("TruncatedSeries: mismatched truncation orders");
  }

  std::vector<ExactInt> coeffs_;
};

// Repeated truncated product; pow(a, 0) is the one-series.
inline TruncatedSeries pow(const TruncatedSeries& a, unsigned long exponent) {
  TruncatedSeries result = TruncatedSeries::one(a.truncation_order());
  TruncatedSeries base = a;
  while (exponent > 0) {
    if (exponent & 1) result = result * base;
    exponent >>= 1;
    if (exponent > 0) base = base * base;
  }
  return result;
}

// Multiplicative inverse mod t^(N+1) by the long-division recurrence.  The
// constant term must be a unit (+1 or -1) so every coefficient stays an
// exact integer.
inline TruncatedSeries recip(const TruncatedSeries& a) {
  const ExactInt& a0 = a[0];
  if (a0 != 1 && a0 != -1)
    throw NotInvertible("recip: constant term must be +1 or -1");
  TruncatedSeries r(a.truncation_order());
  r.set(0, a0);  // a0 is its own inverse
  for (std::size_t i = 1; i <= a.truncation_order(); ++i) {
    ExactInt acc = 0;
    for (std::size_t j = 1; j <= i; ++j) acc += a[j] * r[i - j];
    r.set(i, -acc * a0);
  }
  return r;
}

// Generating function of the k-Catalan numbers mod t^(N+1), computed
// coefficientwise from the closed Raney form.  Satisfies
// C_k = t*C_k^k + 1 mod t^(N+1); that identity is enforced by tests.
inline TruncatedSeries catalan_series(long k, std::size_t truncation_order) {
  if (k < 2) throw DomainError("catalan_series: k must be >= 2");
  TruncatedSeries s(truncation_order);
  for (std::size_t n = 0; n <= truncation_order; ++n)
    s.set(n, raney(k, 1, static_cast<long>(n)));
  return s;
}

}  // namespace kdyck
