#pragma once

// Monotone-ratio lemmas for sequences and power series, plus a central
// finite difference used to cross-check derivative identities.

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "errors.hpp"

namespace foxwright {

enum class Monotonicity { increasing, decreasing, constant, none };

inline const char* to_string(Monotonicity m) {
  switch (m) {
    case Monotonicity::increasing: return "increasing";
    case Monotonicity::decreasing: return "decreasing";
    case Monotonicity::constant: return "constant";
    case Monotonicity::none: return "none";
  }
  return "?";
}

/// Direction of a sequence, treating relative steps below `rel_tol` as flat.
/// Weak monotonicity is reported as increasing/decreasing.
inline Monotonicity classify(const std::vector<double>& v, double rel_tol = 1e-12) {
  bool up = false, down = false;
  for (std::size_t i = 1; i < v.size(); ++i) {
    const double d = v[i] - v[i - 1];
    const double band = rel_tol * std::max({std::abs(v[i]), std::abs(v[i - 1]), 1e-300});
    if (d > band) up = true;
    if (d < -band) down = true;
  }
  if (up && down) return Monotonicity::none;
  if (up) return Monotonicity::increasing;
  if (down) return Monotonicity::decreasing;
  return Monotonicity::constant;
}

struct SeqRatioVerdict {
  Monotonicity ratio;       // a_n / b_n
  Monotonicity cumulative;  // (a_0 + ... + a_n) / (b_0 + ... + b_n)
};

/// Observed monotonicity of a_n/b_n and of the ratio of partial sums.
inline SeqRatioVerdict seq_ratio_monotone(const std::vector<double>& a,
                                          const std::vector<double>& b) {
  if (a.size() != b.size()) throw LengthError("sequences have different lengths");
  if (a.size() < 2) throw LengthError("sequences need at least two entries");
  std::vector<double> r, c;
  double sa = 0.0, sb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!(b[i] > 0.0)) throw DomainError("b_n must be positive");
    r.push_back(a[i] / b[i]);
    sa += a[i];
    sb += b[i];
    c.push_back(sa / sb);
  }
  return {classify(r), classify(c)};
}

namespace detail {

inline double poly(const std::vector<double>& c, double x, double& last) {
  double s = 0.0, xn = 1.0;
  last = 0.0;
  for (double ck : c) {
    last = ck * xn;
    s += last;
    xn *= x;
  }
  return s;
}

}  // namespace detail

/// True when A(x)/B(x) = sum a_n x^n / sum b_n x^n moves on `x_grid` in the
/// direction of the coefficient ratio a_n/b_n (constant counts when both are).
/// Truncated sums must have their last term below 1e-15 of the partial sum.
inline bool series_ratio_monotone_check(const std::vector<double>& coef_a,
                                        const std::vector<double>& coef_b,
                                        const std::vector<double>& x_grid) {
  if (coef_a.size() != coef_b.size()) throw LengthError("coefficient lists differ in length");
  if (coef_a.size() < 2) throw LengthError("need at least two coefficients");
  if (x_grid.size() < 2) throw LengthError("need at least two grid points");
  for (std::size_t i = 0; i < x_grid.size(); ++i) {
    if (!(x_grid[i] > 0.0)) throw GridError("grid points must be positive");
    if (i && !(x_grid[i] > x_grid[i - 1])) throw GridError("grid must be strictly increasing");
  }
  const Monotonicity dir = seq_ratio_monotone(coef_a, coef_b).ratio;
  std::vector<double> q;
  for (double x : x_grid) {
    double la = 0.0, lb = 0.0;
    const double A = detail::poly(coef_a, x, la), B = detail::poly(coef_b, x, lb);
    if (std::abs(la) > 1e-15 * std::abs(A) || std::abs(lb) > 1e-15 * std::abs(B))
      throw ConvergenceError("truncated series not converged at x=" + std::to_string(x));
    q.push_back(A / B);
  }
  const Monotonicity got = classify(q);
  if (dir == Monotonicity::none) return false;
  if (got == Monotonicity::constant) return true;
  return got == dir;
}

/// Central difference (f(z+h) - f(z-h)) / 2h.
template <class F>
double finite_difference(F&& f, double z, double h = 1e-6) {
  if (!(h > 0.0)) throw DomainError("step must be positive");
  return (f(z + h) - f(z - h)) / (2.0 * h);
}

}  // namespace foxwright
