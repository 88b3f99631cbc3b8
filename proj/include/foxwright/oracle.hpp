#pragma once

// Extended-precision reference evaluator built on MPFR. Requires linking
// against libmpfr and libgmp.

#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <string>
#include <vector>

#include "errors.hpp"
#include "evaluator.hpp"
#include "series.hpp"

namespace foxwright {

namespace oracle_detail {

class Mp {
 public:
  explicit Mp(mpfr_prec_t prec) { mpfr_init2(v_, prec); mpfr_set_zero(v_, 1); }
  Mp(mpfr_prec_t prec, double x) { mpfr_init2(v_, prec); mpfr_set_d(v_, x, MPFR_RNDN); }
  ~Mp() { mpfr_clear(v_); }
  Mp(const Mp&) = delete;
  Mp& operator=(const Mp&) = delete;
  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }
  operator mpfr_ptr() { return v_; }
  operator mpfr_srcptr() const { return v_; }

 private:
  mpfr_t v_;
};

inline mpfr_prec_t bits_for(int digits) {
  return static_cast<mpfr_prec_t>(std::ceil((digits + 10) * 3.3219280948873623)) + 8;
}

inline std::string to_decimal(mpfr_srcptr x, int sig_digits) {
  if (mpfr_zero_p(x)) return "0";
  char* buf = nullptr;
  mpfr_asprintf(&buf, "%.*Re", sig_digits - 1, x);
  std::string s(buf);
  mpfr_free_str(buf);
  return s;
}

inline void check_digits(int digits) {
  if (digits < 30 || digits > 200) throw ParameterError("digits must lie in [30, 200]");
}

// x = prod Gamma(alpha + kA) / prod Gamma(beta + kB) * z^k / k!
inline void fox_wright_term(mpfr_ptr out, const FoxWrightParams& p, long k, mpfr_srcptr z,
                            mpfr_prec_t prec) {
  Mp arg(prec), g(prec), w(prec);
  mpfr_set_ui(out, 1, MPFR_RNDN);
  auto shifted_arg = [&](const WeightedParam& q) {
    mpfr_set_d(w, q.weight, MPFR_RNDN);
    mpfr_mul_si(w, w, k, MPFR_RNDN);
    mpfr_set_d(arg, q.value, MPFR_RNDN);
    mpfr_add(arg, arg, w, MPFR_RNDN);
  };
  for (const auto& a : p.upper) {
    shifted_arg(a);
    mpfr_gamma(g, arg, MPFR_RNDN);
    mpfr_mul(out, out, g, MPFR_RNDN);
  }
  for (const auto& b : p.lower) {
    shifted_arg(b);
    mpfr_gamma(g, arg, MPFR_RNDN);
    mpfr_div(out, out, g, MPFR_RNDN);
  }
  if (k > 0) {
    mpfr_pow_ui(g, z, static_cast<unsigned long>(k), MPFR_RNDN);
    mpfr_mul(out, out, g, MPFR_RNDN);
    mpfr_fac_ui(g, static_cast<unsigned long>(k), MPFR_RNDN);
    mpfr_div(out, out, g, MPFR_RNDN);
  }
}

enum class Scaling { none, normalized, tilde };

inline void apply_scaling(mpfr_ptr v, const FoxWrightParams& p, Scaling s, mpfr_prec_t prec) {
  if (s == Scaling::none) return;
  Mp arg(prec), g(prec);
  if (s == Scaling::tilde) {
    mpfr_set_d(arg, p.lower.at(0).value, MPFR_RNDN);
    mpfr_gamma(g, arg, MPFR_RNDN);
    mpfr_mul(v, v, g, MPFR_RNDN);
    return;
  }
  for (const auto& b : p.lower) {
    mpfr_set_d(arg, b.value, MPFR_RNDN);
    mpfr_gamma(g, arg, MPFR_RNDN);
    mpfr_mul(v, v, g, MPFR_RNDN);
  }
  for (const auto& a : p.upper) {
    mpfr_set_d(arg, a.value, MPFR_RNDN);
    mpfr_gamma(g, arg, MPFR_RNDN);
    mpfr_div(v, v, g, MPFR_RNDN);
  }
}

inline constexpr long kMaxTerms = 100000;

// Sums the series from first_k into `sum`, leaving the geometric tail bound in
// `tail`. Returns the number of terms used.
inline long hp_sum(mpfr_ptr sum, mpfr_ptr tail, const FoxWrightParams& p, double zd, int digits,
                   long first_k, Scaling scaling) {
  check_digits(digits);
  validate(p);
  const double e = epsilon(p);
  if (!(e > 0.0))
    throw DivergentSeries("divergent series: epsilon = " + format_double(e) + " <= 0");
  if (first_k < 0) throw ParameterError("tail index must be >= -1");
  if (scaling == Scaling::tilde && p.lower.empty())
    throw ParameterError("tilde normalization needs a lower parameter");
  const mpfr_prec_t prec = bits_for(digits);
  Mp z(prec, zd), t(prec), next(prec), r(prec), bound(prec), target(prec), one(prec, 1.0);
  mpfr_set_zero(sum, 1);
  mpfr_set_zero(tail, 1);

  if (zd == 0.0) {
    if (first_k == 0) {
      fox_wright_term(sum, p, 0, z, prec);
      apply_scaling(sum, p, scaling, prec);
    }
    return 1;
  }

  long guard = first_k + 2;
  for (const auto& a : p.upper)
    if (a.weight > 0.0 && a.value < 2.0)
      guard = std::max(guard, first_k + static_cast<long>(std::ceil((2.0 - a.value) / a.weight)));

  fox_wright_term(t, p, first_k, z, prec);
  long used = 0;
  for (long k = first_k;; ++k) {
    if (++used > kMaxTerms)
      throw NoConvergence("oracle did not converge within " + std::to_string(kMaxTerms) +
                          " terms");
    mpfr_add(sum, sum, t, MPFR_RNDN);
    fox_wright_term(next, p, k + 1, z, prec);
    if (k >= guard && !mpfr_zero_p(t.get())) {
      mpfr_div(r, next, t, MPFR_RNDN);
      mpfr_abs(r, r, MPFR_RNDN);
      if (mpfr_cmp_ui(r, 1) < 0) {
        mpfr_sub(bound, one, r, MPFR_RNDN);
        mpfr_div(bound, next, bound, MPFR_RNDN);
        mpfr_abs(bound, bound, MPFR_RNDN);
        mpfr_set_ui(target, 10, MPFR_RNDN);
        mpfr_pow_si(target, target, -digits, MPFR_RNDN);
        mpfr_mul(target, target, sum, MPFR_RNDN);
        mpfr_abs(target, target, MPFR_RNDN);
        if (mpfr_cmp(bound, target) <= 0) {
          mpfr_set(tail, bound.get(), MPFR_RNDN);
          break;
        }
      }
    }
    mpfr_swap(t, next);
  }
  apply_scaling(sum, p, scaling, prec);
  apply_scaling(tail, p, scaling, prec);
  mpfr_abs(tail, tail, MPFR_RNDN);
  return used;
}

}  // namespace oracle_detail

struct HpResult {
  std::string value;       // "d.ddd...e+XX", `digits` significant digits
  std::string tail_bound;  // certified geometric tail bound
  long terms_used = 0;

  double value_double() const { return std::strtod(value.c_str(), nullptr); }
  double tail_double() const { return std::strtod(tail_bound.c_str(), nullptr); }
};

/// Series summed in MPFR with digits + 10 guard digits.
inline HpResult hp_eval(const FoxWrightParams& p, double z, int digits, long first_k = 0) {
  using namespace oracle_detail;
  check_digits(digits);
  const mpfr_prec_t prec = bits_for(digits);
  Mp sum(prec), tail(prec);
  HpResult r;
  r.terms_used = hp_sum(sum, tail, p, z, digits, first_k, Scaling::none);
  r.value = to_decimal(sum, digits);
  r.tail_bound = to_decimal(tail, 3);
  return r;
}

/// Generalized hypergeometric series in MPFR by the term recurrence. Upper
/// parameters may be any real; lower parameters must be positive.
inline HpResult hp_hypergeometric(const std::vector<double>& upper,
                                  const std::vector<double>& lower, double zd, int digits) {
  using namespace oracle_detail;
  check_digits(digits);
  for (double b : lower)
    if (!(b > 0.0)) throw ParameterError("lower parameters must be positive");
  const std::size_t p = upper.size(), q = lower.size();
  if (p > q + 1 || (p == q + 1 && !(std::abs(zd) < 1.0)))
    throw DivergenceError("hypergeometric series diverges for these parameters");
  const mpfr_prec_t prec = bits_for(digits);
  Mp z(prec, zd), t(prec, 1.0), sum(prec), tmp(prec), target(prec), tail(prec);
  long used = 0;
  long guard = 2;
  for (double a : upper)
    if (a < 0.0) guard = std::max(guard, static_cast<long>(std::ceil(-a)) + 2);
  for (long k = 0;; ++k) {
    if (++used > kMaxTerms) throw NoConvergence("oracle did not converge");
    mpfr_add(sum, sum, t, MPFR_RNDN);
    // t_{k+1} = t_k * prod(a + k) / prod(b + k) * z / (k + 1)
    for (double a : upper) {
      mpfr_set_d(tmp, a, MPFR_RNDN);
      mpfr_add_si(tmp, tmp, k, MPFR_RNDN);
      mpfr_mul(t, t, tmp, MPFR_RNDN);
    }
    for (double b : lower) {
      mpfr_set_d(tmp, b, MPFR_RNDN);
      mpfr_add_si(tmp, tmp, k, MPFR_RNDN);
      mpfr_div(t, t, tmp, MPFR_RNDN);
    }
    mpfr_mul(t, t, z, MPFR_RNDN);
    mpfr_div_si(t, t, k + 1, MPFR_RNDN);
    if (mpfr_zero_p(t.get())) break;
    if (k >= guard) {
      // Bound on |t_{j+1}/t_j| valid for every j >= J = k + 1: each factor
      // |a+j|/(b+j) is paired and capped by its value at J or by 1.
      const double J = static_cast<double>(k + 1);
      Mp r(prec, std::abs(zd));
      const std::size_t pairs = std::min(p, q);
      for (std::size_t i = 0; i < pairs; ++i) {
        mpfr_set_d(tmp, std::max(1.0, (std::abs(upper[i]) + J) / (lower[i] + J)), MPFR_RNDU);
        mpfr_mul(r, r, tmp, MPFR_RNDU);
      }
      if (p == q + 1) {
        mpfr_set_d(tmp, std::max(1.0, (std::abs(upper[p - 1]) + J) / (J + 1.0)), MPFR_RNDU);
        mpfr_mul(r, r, tmp, MPFR_RNDU);
      } else {
        for (std::size_t i = pairs; i < q; ++i) mpfr_div_d(r, r, lower[i] + J, MPFR_RNDU);
        mpfr_div_d(r, r, J + 1.0, MPFR_RNDU);
      }
      if (mpfr_cmp_ui(r, 1) < 0) {
        Mp one(prec, 1.0);
        mpfr_sub(tmp, one, r, MPFR_RNDN);
        mpfr_div(tail, t, tmp, MPFR_RNDN);
        mpfr_abs(tail, tail, MPFR_RNDN);
        mpfr_set_ui(target, 10, MPFR_RNDN);
        mpfr_pow_si(target, target, -digits, MPFR_RNDN);
        mpfr_mul(target, target, sum, MPFR_RNDN);
        mpfr_abs(target, target, MPFR_RNDN);
        if (mpfr_cmp(tail, target) <= 0) break;
      }
    }
  }
  HpResult r;
  r.terms_used = used;
  r.value = to_decimal(sum, digits);
  r.tail_bound = to_decimal(tail, 3);
  return r;
}

/// Digits-bounded oracle values for the templated checkers.
class OracleEvaluator {
 public:
  explicit OracleEvaluator(int digits = 30) : digits_(digits) {
    oracle_detail::check_digits(digits);
  }

  int digits() const { return digits_; }

  Evaluated fox_wright(const FoxWrightParams& p, double z, long first_k = 0) const {
    return run(p, z, first_k, oracle_detail::Scaling::none);
  }
  Evaluated normalized(const FoxWrightParams& p, double z) const {
    return run(p, z, 0, oracle_detail::Scaling::normalized);
  }
  Evaluated tilde(const FoxWrightParams& p, double z) const {
    return run(p, z, 0, oracle_detail::Scaling::tilde);
  }
  Evaluated hypergeometric(const std::vector<double>& upper, const std::vector<double>& lower,
                           double z) const {
    const HpResult r = hp_hypergeometric(upper, lower, z, digits_);
    const double v = r.value_double();
    return {v, r.tail_double() + half_ulp(v), 1.0};
  }

 private:
  static double half_ulp(double v) {
    return 0.5 * std::numeric_limits<double>::epsilon() * std::abs(v);
  }

  Evaluated run(const FoxWrightParams& p, double z, long first_k,
                oracle_detail::Scaling s) const {
    using namespace oracle_detail;
    const mpfr_prec_t prec = bits_for(digits_);
    Mp sum(prec), tail(prec);
    hp_sum(sum, tail, p, z, digits_, first_k, s);
    const double v = mpfr_get_d(sum, MPFR_RNDN);
    if (!std::isfinite(v)) throw OverflowError("oracle value exceeds double range");
    return {v, mpfr_get_d(tail, MPFR_RNDU) + half_ulp(v), 1.0};
  }

  int digits_;
};

}  // namespace foxwright
