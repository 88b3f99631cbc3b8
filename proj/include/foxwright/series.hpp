#pragma once

// Fox-Wright series engine: log-space terms, compensated summation, adaptive
// truncation with a geometric tail estimate.

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "errors.hpp"
#include "gamma.hpp"
#include "report.hpp"

namespace foxwright {

struct WeightedParam {
  double value = 0.0;   // alpha_l or beta_j
  double weight = 0.0;  // A_l or B_j
};

struct FoxWrightParams {
  std::vector<WeightedParam> upper;
  std::vector<WeightedParam> lower;
};

struct EvalConfig {
  double rel_tol = 1e-15;
  long max_terms = 10000;
  bool log_mode = false;
};

struct EvalResult {
  double value = 0.0;  // sign * exp(log_magnitude); may be +-inf in log_mode
  double log_magnitude = -std::numeric_limits<double>::infinity();
  int sign = 0;
  long terms_used = 0;
  double tail_bound = 0.0;
  double log_tail_bound = -std::numeric_limits<double>::infinity();
  double condition_estimate = 1.0;  // sum |t_k| / |sum t_k|
  double rounding_estimate = 0.0;   // floating-point error of the summed head

  double error_estimate() const { return tail_bound + rounding_estimate; }
};

struct TailSpec {
  long n = -1;  // first n+1 terms removed; -1 is the full series
};

// One series term in log form. `terminal` marks a term that is zero together
// with every later term (a terminating polynomial).
struct LogTerm {
  double log = -std::numeric_limits<double>::infinity();
  int sign = 0;
  bool terminal = false;
  double rel_err = 0.0;  // relative error estimate of exp(log)
  double log_lo = 0.0;   // low-order part of `log`
};

inline double epsilon(const FoxWrightParams& p) {
  double e = 1.0;
  for (const auto& b : p.lower) e += b.weight;
  for (const auto& a : p.upper) e -= a.weight;
  return e;
}

inline void validate(const FoxWrightParams& p) {
  auto check = [](const std::vector<WeightedParam>& v, const char* side) {
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (!(v[i].value > 0.0) || !std::isfinite(v[i].value))
        throw ParameterError(std::string(side) + " parameter " + std::to_string(i + 1) +
                             " must be positive, got " + format_double(v[i].value));
      if (!(v[i].weight >= 0.0) || !std::isfinite(v[i].weight))
        throw ParameterError(std::string(side) + " weight " + std::to_string(i + 1) +
                             " must be non-negative, got " + format_double(v[i].weight));
    }
  };
  check(p.upper, "upper");
  check(p.lower, "lower");
}

inline void validate(const EvalConfig& cfg) {
  if (!(cfg.rel_tol > 0.0 && cfg.rel_tol < 1.0))
    throw ParameterError("rel_tol must lie in (0, 1)");
  if (cfg.max_terms < 8) throw ParameterError("max_terms must be at least 8");
}

// Parameter-shift helpers.
inline FoxWrightParams with_upper(FoxWrightParams p, std::size_t i, double value) {
  p.upper.at(i).value = value;
  return p;
}

inline FoxWrightParams with_lower(FoxWrightParams p, std::size_t j, double value) {
  p.lower.at(j).value = value;
  return p;
}

// (alpha + A, A; beta + B, B): the parameters of the z-derivative.
inline FoxWrightParams shifted(FoxWrightParams p) {
  for (auto& a : p.upper) a.value += a.weight;
  for (auto& b : p.lower) b.value += b.weight;
  return p;
}

inline double log_gamma_product(const std::vector<WeightedParam>& v) {
  double s = 0.0;
  for (const auto& w : v) s += log_gamma(w.value);
  return s;
}

namespace detail {

inline constexpr double kEps = std::numeric_limits<double>::epsilon();
inline constexpr double kLogMax = 709.782712893384;  // ln(DBL_MAX)
inline constexpr double kRescaleGap = 300.0;

struct SumOptions {
  double limit_ratio = 0.0;  // lim sup of |t_{k+1}/t_k|; 0 for entire series
  long guard_k = 0;          // never stop before this index
};

inline void neumaier_add(double& s, double& c, double x) {
  const double t = s + x;
  if (std::abs(s) >= std::abs(x))
    c += (s - t) + x;
  else
    c += (x - t) + s;
  s = t;
}

// Sums term_at(first_k), term_at(first_k + 1), ... Terms are accumulated
// relative to a running log scale so that values far outside the double
// range can be carried in log_mode.
template <class TermFn>
EvalResult sum_series(TermFn&& term_at, long first_k, const EvalConfig& cfg,
                      const SumOptions& opt) {
  validate(cfg);
  double scale = 0.0;
  bool scale_set = false;
  double s = 0.0, c = 0.0, abs_s = 0.0, round_s = 0.0;
  double prev_log = std::nan("");
  double tail_scaled = 0.0;
  int small = 0;
  long used = 0;

  for (long k = first_k;; ++k) {
    if (used >= cfg.max_terms)
      throw NoConvergence("series did not converge within " + std::to_string(cfg.max_terms) +
                          " terms");
    const LogTerm t = term_at(k);
    ++used;
    if (t.terminal) break;
    if (!cfg.log_mode && t.log > kLogMax)
      throw OverflowError("series term exceeds double range at k=" + std::to_string(k));
    if (t.sign == 0 || t.log == -std::numeric_limits<double>::infinity()) {
      prev_log = std::nan("");
      ++small;
      continue;
    }
    if (!scale_set) {
      if (t.log < -600.0 || t.log > kRescaleGap) scale = t.log;
      scale_set = true;
    } else if (t.log > scale + kRescaleGap) {
      const double f = std::exp(scale - t.log);
      s *= f;
      c *= f;
      abs_s *= f;
      round_s *= f;
      scale = t.log;
    }
    const DD shift = two_sum(t.log, -scale);
    const double mag = std::exp(shift.hi) * (1.0 + (shift.lo + t.log_lo));
    neumaier_add(s, c, t.sign > 0 ? mag : -mag);
    abs_s += mag;
    round_s += mag * t.rel_err;

    const double r = std::isnan(prev_log) ? std::numeric_limits<double>::infinity()
                                          : std::exp(t.log - prev_log);
    prev_log = t.log;
    if (mag <= cfg.rel_tol * std::abs(s + c))
      ++small;
    else
      small = 0;
    if (small >= 3 && k >= opt.guard_k) {
      const double rr = std::max(r, opt.limit_ratio);
      if (rr < 1.0) {
        tail_scaled = mag * rr / (1.0 - rr);
        break;
      }
    }
  }

  const double sum = s + c;
  EvalResult res;
  res.terms_used = used;
  res.sign = sum > 0.0 ? 1 : (sum < 0.0 ? -1 : 0);
  res.log_magnitude = std::log(std::abs(sum)) + scale;
  if (!cfg.log_mode && res.log_magnitude > kLogMax)
    throw OverflowError("series value exceeds double range");
  const double unscale = scale == 0.0 ? 1.0 : std::exp(scale);
  res.value = sum * unscale;
  if (!std::isfinite(res.value) || (res.value == 0.0 && sum != 0.0))
    res.value = res.sign * std::exp(res.log_magnitude);
  res.tail_bound = tail_scaled * unscale;
  res.log_tail_bound = std::log(tail_scaled) + scale;
  res.condition_estimate = sum == 0.0 ? (abs_s == 0.0 ? 1.0 : std::numeric_limits<double>::infinity())
                                      : abs_s / std::abs(sum);
  res.rounding_estimate = (round_s + 4.0 * kEps * abs_s) * unscale;
  return res;
}

// Result for z = 0: only the k = 0 term survives.
inline EvalResult single_term_result(double log0, int sign0, double rel_err, bool log_mode,
                                     double log0_lo = 0.0) {
  EvalResult r;
  r.terms_used = 1;
  r.sign = sign0;
  r.log_magnitude = log0;
  if (!log_mode && log0 > kLogMax) throw OverflowError("series value exceeds double range");
  r.value = sign0 == 0 ? 0.0 : sign0 * std::exp(log0) * (1.0 + log0_lo);
  r.tail_bound = 0.0;
  r.rounding_estimate = std::abs(r.value) * rel_err;
  return r;
}

inline EvalResult zero_result() {
  EvalResult r;
  r.terms_used = 0;
  return r;
}

// Index past which every upper argument alpha + kA sits beyond the minimum of
// ln Gamma, so the term ratios have entered their decreasing regime.
inline long guard_index(const FoxWrightParams& p) {
  long g = 2;
  for (const auto& a : p.upper)
    if (a.weight > 0.0 && a.value < 2.0)
      g = std::max(g, static_cast<long>(std::ceil((2.0 - a.value) / a.weight)));
  return g;
}

inline void require_convergent(const FoxWrightParams& p) {
  validate(p);
  const double e = epsilon(p);
  if (!(e > 0.0))
    throw DivergentSeries("divergent series: epsilon = " + format_double(e) + " <= 0");
}

// sum ln Gamma(alpha) - sum ln Gamma(beta), the log of the k = 0 term.
inline DD log_gamma_sum_dd(const FoxWrightParams& p) {
  DD u, l;
  double e = 0.0;
  for (const auto& a : p.upper) u = u + log_gamma_dd(a.value, e);
  for (const auto& b : p.lower) l = l + log_gamma_dd(b.value, e);
  return u - l;
}

// Log-term of the series with an additive log offset and an optional digamma
// weight on the first lower slot.
struct FoxWrightTerm {
  const FoxWrightParams& p;
  DD lnz;
  bool negative;
  DD offset{};
  bool digamma_weight = false;

  LogTerm operator()(long k) const {
    const double kk = static_cast<double>(k);
    DD u, l;
    double err = 0.0, e = 0.0;
    for (const auto& a : p.upper) {
      u = u + log_gamma_shifted_dd(a.value, kk, a.weight, e);
      err += e;
    }
    for (const auto& b : p.lower) {
      l = l + log_gamma_shifted_dd(b.value, kk, b.weight, e);
      err += e;
    }
    const DD lf = log_gamma_dd(kk + 1.0, e);
    err += e;
    const DD zk = k == 0 ? DD{} : lnz * kk;
    const DD v = ((u - l) + offset) + (zk - lf);
    LogTerm t;
    t.log = v.hi;
    t.log_lo = v.lo;
    t.sign = (negative && (k % 2 == 1)) ? -1 : 1;
    t.rel_err = err + 1e-30 * (std::abs(zk.hi) + std::abs(offset.hi)) + 2.0 * kEps;
    if (digamma_weight) {
      const double psi = digamma(p.lower.front().value + kk * p.lower.front().weight);
      if (psi == 0.0) {
        t.sign = 0;
        t.log = -std::numeric_limits<double>::infinity();
      } else {
        t.log += std::log(std::abs(psi));
        t.sign *= psi > 0.0 ? -1 : 1;
        t.rel_err += 8.0 * kEps * std::max(1.0, 1.0 / std::abs(psi));
      }
    }
    return t;
  }
};

inline EvalResult eval_impl(const FoxWrightParams& p, double z, long first_k, DD offset,
                            bool digamma_weight, const EvalConfig& cfg) {
  require_convergent(p);
  validate(cfg);
  if (!std::isfinite(z)) throw DomainError("z must be finite");
  if (first_k < 0) throw ParameterError("tail index must be >= -1");
  if (digamma_weight && p.lower.empty())
    throw ParameterError("a lower parameter is required");
  FoxWrightTerm term{p, z == 0.0 ? DD{} : log_dd(std::abs(z)), z < 0.0, offset, digamma_weight};
  if (z == 0.0) {
    if (first_k > 0) return zero_result();
    const LogTerm t = term(0);
    return single_term_result(t.log, t.sign, t.rel_err, cfg.log_mode, t.log_lo);
  }
  return sum_series(term, first_k, cfg, SumOptions{0.0, first_k + guard_index(p)});
}

}  // namespace detail

/// k-th series term in log form.
inline LogTerm log_term(const FoxWrightParams& p, long k, double z) {
  validate(p);
  if (z == 0.0) {
    if (k > 0) return LogTerm{};
    return detail::FoxWrightTerm{p, {}, false}(0);
  }
  return detail::FoxWrightTerm{p, detail::log_dd(std::abs(z)), z < 0.0}(k);
}

/// Sum_k prod Gamma(alpha_l + k A_l) / prod Gamma(beta_j + k B_j) z^k / k!.
inline EvalResult eval(const FoxWrightParams& p, double z, const EvalConfig& cfg = {}) {
  return detail::eval_impl(p, z, 0, {}, false, cfg);
}

/// prod Gamma(beta) / prod Gamma(alpha) times eval; exactly 1 at z = 0.
inline EvalResult eval_normalized(const FoxWrightParams& p, double z,
                                  const EvalConfig& cfg = {}) {
  validate(p);
  return detail::eval_impl(p, z, 0, -detail::log_gamma_sum_dd(p), false, cfg);
}

/// Gamma(beta_1) times eval.
inline EvalResult eval_tilde(const FoxWrightParams& p, double z, const EvalConfig& cfg = {}) {
  validate(p);
  if (p.lower.empty()) throw ParameterError("tilde normalization needs a lower parameter");
  double err = 0.0;
  return detail::eval_impl(p, z, 0, detail::log_gamma_dd(p.lower.front().value, err), false,
                           cfg);
}

/// Tail section: the series started at k = n + 1.
inline EvalResult eval_tail(const FoxWrightParams& p, TailSpec tail, double z,
                            const EvalConfig& cfg = {}) {
  if (tail.n < -1) throw ParameterError("tail index must be >= -1");
  return detail::eval_impl(p, z, tail.n + 1, {}, false, cfg);
}

/// d/dz of eval, via the parameter shift (alpha + A, beta + B).
inline EvalResult derivative(const FoxWrightParams& p, double z, const EvalConfig& cfg = {}) {
  validate(p);
  return eval(shifted(p), z, cfg);
}

/// d/d(beta_1) of eval: -Sum_k psi(beta_1 + k B_1) term_k.
inline EvalResult dbeta1(const FoxWrightParams& p, double z, const EvalConfig& cfg = {}) {
  return detail::eval_impl(p, z, 0, {}, true, cfg);
}

}  // namespace foxwright
