#pragma once

// Minimal double-double arithmetic for the internal log-term path.

#include <array>
#include <cmath>

namespace foxwright::detail {

struct DD {
  double hi = 0.0;
  double lo = 0.0;
};

inline DD quick_two_sum(double a, double b) {
  const double s = a + b;
  return {s, b - (s - a)};
}

inline DD two_sum(double a, double b) {
  const double s = a + b;
  const double bb = s - a;
  return {s, (a - (s - bb)) + (b - bb)};
}

inline DD two_prod(double a, double b) {
  const double p = a * b;
  return {p, std::fma(a, b, -p)};
}

inline DD operator+(DD a, DD b) {
  DD s = two_sum(a.hi, b.hi);
  DD t = two_sum(a.lo, b.lo);
  s.lo += t.hi;
  s = quick_two_sum(s.hi, s.lo);
  s.lo += t.lo;
  return quick_two_sum(s.hi, s.lo);
}

inline DD operator-(DD a) { return {-a.hi, -a.lo}; }
inline DD operator-(DD a, DD b) { return a + (-b); }

inline DD operator*(DD a, DD b) {
  DD p = two_prod(a.hi, b.hi);
  p.lo += a.hi * b.lo + a.lo * b.hi;
  return quick_two_sum(p.hi, p.lo);
}

inline DD operator*(DD a, double b) {
  DD p = two_prod(a.hi, b);
  p.lo += a.lo * b;
  return quick_two_sum(p.hi, p.lo);
}

inline DD operator/(DD a, DD b) {
  const double q1 = a.hi / b.hi;
  DD r = a - b * q1;
  const double q2 = r.hi / b.hi;
  r = r - b * q2;
  const double q3 = r.hi / b.hi;
  DD q = quick_two_sum(q1, q2);
  return q + DD{q3, 0.0};
}

inline constexpr DD kLn2{0.6931471805599453, 2.3190468138462996e-17};
inline constexpr DD kHalfLogTwoPi{0.9189385332046728, -3.8782941580672414e-17};

// 1/(2n+1) in double-double, n = 0..kAtanhTerms-1.
inline constexpr int kAtanhTerms = 24;

inline const std::array<DD, kAtanhTerms>& odd_reciprocals() {
  static const std::array<DD, kAtanhTerms> table = [] {
    std::array<DD, kAtanhTerms> t{};
    for (int n = 0; n < kAtanhTerms; ++n) t[n] = DD{1.0, 0.0} / DD{2.0 * n + 1.0, 0.0};
    return t;
  }();
  return table;
}

// ln(x) for finite x > 0: x = m 2^e, m in [sqrt(1/2), sqrt(2)), and
// ln m = 2 atanh((m-1)/(m+1)).
inline DD log_dd(double x) {
  int e = 0;
  double m = std::frexp(x, &e);
  if (m < 0.7071067811865476) {
    m *= 2.0;
    --e;
  }
  const DD s = DD{m - 1.0, 0.0} / two_sum(m, 1.0);
  const DD s2 = s * s;
  const auto& inv = odd_reciprocals();
  DD acc = inv[kAtanhTerms - 1];
  for (int n = kAtanhTerms - 2; n >= 0; --n) acc = acc * s2 + inv[n];
  return kLn2 * static_cast<double>(e) + s * acc * 2.0;
}

}  // namespace foxwright::detail
