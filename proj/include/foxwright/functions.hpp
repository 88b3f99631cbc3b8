#pragma once

// Named members of the Fox-Wright family as reductions of the series engine.

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "gamma.hpp"
#include "report.hpp"
#include "series.hpp"

namespace foxwright {

struct HypergeometricParams {
  std::vector<double> upper;
  std::vector<double> lower;
};

struct MittagLefflerParams {
  std::vector<WeightedParam> pairs;  // (beta_j, B_j)
};

namespace detail {

// log|(a)_k| and sign((a)_k) for any real a.
class Pochhammer {
 public:
  explicit Pochhammer(double a) : a_(a) {
    if (!std::isfinite(a)) throw ParameterError("hypergeometric parameter must be finite");
    if (a > 0.0) return;
    if (a == std::floor(a)) {
      terminal_after_ = static_cast<long>(-a);  // (a)_k = 0 for k > -a
    }
    m_ = static_cast<long>(std::ceil(-a));
    if (a == std::floor(a)) m_ += 1;
    if (m_ > 100000) throw ParameterError("hypergeometric parameter too negative");
    prefix_log_.reserve(m_ + 1);
    prefix_sign_.reserve(m_ + 1);
    double l = 0.0;
    int s = 1;
    prefix_log_.push_back(0.0);
    prefix_sign_.push_back(1);
    for (long i = 0; i < m_; ++i) {
      const double f = a + static_cast<double>(i);
      if (f == 0.0) {
        s = 0;
        l = -std::numeric_limits<double>::infinity();
      } else if (s != 0) {
        l += std::log(std::abs(f));
        if (f < 0.0) s = -s;
      }
      prefix_log_.push_back(l);
      prefix_sign_.push_back(s);
    }
    if (a + static_cast<double>(m_) > 0.0) tail_base_ = log_gamma(a + static_cast<double>(m_));
  }

  bool zero_from(long k) const { return terminal_after_ >= 0 && k > terminal_after_; }
  long negative_span() const { return m_; }

  // Returns log|(a)_k|; `sign` receives the sign (0 when the symbol vanishes).
  double log_abs(long k, int& sign, double& mag) const {
    const double kk = static_cast<double>(k);
    if (a_ > 0.0) {
      sign = 1;
      const double g1 = log_gamma(a_ + kk), g0 = log_gamma(a_);
      mag += std::abs(g1) + std::abs(g0);
      return g1 - g0;
    }
    if (k <= m_) {
      sign = prefix_sign_[static_cast<std::size_t>(k)];
      mag += std::abs(prefix_log_[static_cast<std::size_t>(k)]) + kk;
      return prefix_log_[static_cast<std::size_t>(k)];
    }
    sign = prefix_sign_.back();
    const double g1 = log_gamma(a_ + kk);
    mag += std::abs(prefix_log_.back()) + std::abs(g1) + std::abs(tail_base_) + kk;
    return prefix_log_.back() + (g1 - tail_base_);
  }

 private:
  double a_;
  long m_ = 0;
  long terminal_after_ = -1;
  double tail_base_ = 0.0;
  std::vector<double> prefix_log_;
  std::vector<int> prefix_sign_;
};

inline EvalResult hypergeometric_series(const HypergeometricParams& hp, double z,
                                        const EvalConfig& cfg) {
  std::vector<Pochhammer> up;
  up.reserve(hp.upper.size());
  long guard = 2;
  for (double a : hp.upper) {
    up.emplace_back(a);
    guard = std::max(guard, up.back().negative_span() + 2);
  }
  std::vector<Pochhammer> lo;
  lo.reserve(hp.lower.size());
  for (double b : hp.lower) lo.emplace_back(b);
  const double lnz = z == 0.0 ? 0.0 : std::log(std::abs(z));
  auto term = [&](long k) {
    LogTerm t;
    for (const auto& u : up)
      if (u.zero_from(k)) {
        t.terminal = true;
        return t;
      }
    const double kk = static_cast<double>(k);
    double log = 0.0, mag = 0.0;
    int sign = (z < 0.0 && k % 2 == 1) ? -1 : 1;
    for (const auto& u : up) {
      int s = 1;
      log += u.log_abs(k, s, mag);
      sign *= s;
    }
    for (const auto& l : lo) {
      int s = 1;
      log -= l.log_abs(k, s, mag);
    }
    const double lf = log_gamma(kk + 1.0);
    const double zk = k == 0 ? 0.0 : kk * lnz;
    mag += lf + std::abs(zk);
    t.log = log + (zk - lf);
    t.sign = sign;
    if (sign == 0) t.log = -std::numeric_limits<double>::infinity();
    t.rel_err = 4.0 * kEps * mag + kEps;
    return t;
  };
  if (z == 0.0) return single_term_result(0.0, 1, 0.0, cfg.log_mode);
  const double limit = hp.upper.size() == hp.lower.size() + 1 ? std::abs(z) : 0.0;
  return sum_series(term, 0, cfg, SumOptions{limit, guard});
}

}  // namespace detail

/// Generalized hypergeometric pFq. Upper parameters may be any real number;
/// lower parameters must be positive.
inline EvalResult pFq(const HypergeometricParams& hp, double z, const EvalConfig& cfg = {}) {
  const std::size_t p = hp.upper.size(), q = hp.lower.size();
  if (p > q + 1)
    throw DivergenceError("pFq diverges: p = " + std::to_string(p) + " > q + 1");
  if (p == q + 1 && !(std::abs(z) < 1.0))
    throw DivergenceError("pFq with p = q + 1 requires |z| < 1, got z = " + format_double(z));
  if (!std::isfinite(z)) throw DomainError("z must be finite");
  for (double b : hp.lower)
    if (!(b > 0.0) || !std::isfinite(b))
      throw ParameterError("pFq lower parameters must be positive, got " + format_double(b));
  bool positive = true;
  for (double a : hp.upper) {
    if (!std::isfinite(a)) throw ParameterError("pFq upper parameters must be finite");
    positive = positive && a > 0.0;
  }
  if (positive && p <= q) {
    FoxWrightParams fw;
    for (double a : hp.upper) fw.upper.push_back({a, 1.0});
    for (double b : hp.lower) fw.lower.push_back({b, 1.0});
    return eval_normalized(fw, z, cfg);
  }
  validate(cfg);
  return detail::hypergeometric_series(hp, z, cfg);
}

/// E_{B_1,beta_1;...;B_n,beta_n}(z) = Sum_k z^k / prod Gamma(beta_j + k B_j).
inline EvalResult mittag_leffler(const MittagLefflerParams& mp, double z,
                                 const EvalConfig& cfg = {}) {
  if (mp.pairs.empty()) throw ParameterError("Mittag-Leffler needs at least one pair");
  double sum_sq = 0.0;
  for (const auto& pr : mp.pairs) {
    if (!(pr.weight >= 0.0))
      throw ParameterError("Mittag-Leffler weights must be non-negative");
    sum_sq += pr.weight * pr.weight;
  }
  if (sum_sq == 0.0) throw ParameterError("Mittag-Leffler weights must not all vanish");
  FoxWrightParams fw{{{1.0, 1.0}}, mp.pairs};
  return eval(fw, z, cfg);
}

/// W_{B,beta}(z) = Sum_k z^k / (k! Gamma(beta + kB)); `normalized` multiplies
/// by Gamma(beta).
inline EvalResult wright(double B1, double beta1, double z, bool normalized,
                         const EvalConfig& cfg = {}) {
  FoxWrightParams fw{{}, {{beta1, B1}}};
  return normalized ? eval_tilde(fw, z, cfg) : eval(fw, z, cfg);
}

/// Normalized modified Bessel function Gamma(nu+1) (2/z)^nu I_nu(z).
inline EvalResult bessel_norm(double nu, double z, const EvalConfig& cfg = {}) {
  if (!(nu > -1.0)) throw DomainError("bessel_norm requires nu > -1, got " + format_double(nu));
  return wright(1.0, nu + 1.0, 0.25 * z * z, true, cfg);
}

inline EvalResult scale_result(EvalResult r, double factor) {
  const double f = std::abs(factor);
  r.value *= factor;
  if (factor < 0.0) r.sign = -r.sign;
  r.log_magnitude += std::log(f);
  r.tail_bound *= f;
  r.log_tail_bound += std::log(f);
  r.rounding_estimate = r.rounding_estimate * f + 2.0 * detail::kEps * std::abs(r.value);
  return r;
}

/// Both sides of the 2F2 Kummer-type transformation
///   2F2(a, c+1; b, c; z) = e^z 2F2(b-a-1, f1+1; b, f1; -z),
/// f1 = c(1+a-b)/(a-c).
inline std::pair<EvalResult, EvalResult> kummer_2f2_pair(double a, double b, double c, double z,
                                                         const EvalConfig& cfg = {}) {
  if (a == c) throw SingularTransform("kummer transform undefined for a = c");
  if (!(b > 0.0)) throw ParameterError("kummer transform needs b > 0");
  if (!(c > 0.0)) throw ParameterError("kummer transform needs c > 0");
  const double f1 = c * (1.0 + a - b) / (a - c);
  if (!(f1 > 0.0))
    throw ParameterError("kummer transform needs f1 > 0, got " + format_double(f1));
  EvalResult left = pFq({{a, c + 1.0}, {b, c}}, z, cfg);
  EvalResult right = pFq({{b - a - 1.0, f1 + 1.0}, {b, f1}}, -z, cfg);
  return {left, scale_result(right, std::exp(z))};
}

/// d/dz E_{B,beta}(z) against (E_{B,beta-1}(z) - (beta-1) E_{B,beta}(z)) / (B z).
inline InequalityReport ml_derivative_identity_check(double B, double beta, double z,
                                                     const EvalConfig& cfg = {}) {
  if (!(beta > 1.0)) throw DomainError("identity needs beta > 1, got " + format_double(beta));
  if (z == 0.0 || !std::isfinite(z)) throw DomainError("identity needs z != 0");
  if (!(B > 0.0)) throw DomainError("identity needs B > 0, got " + format_double(B));
  const EvalResult d = derivative(FoxWrightParams{{{1.0, 1.0}}, {{beta, B}}}, z, cfg);
  const EvalResult e0 = mittag_leffler({{{beta - 1.0, B}}}, z, cfg);
  const EvalResult e1 = mittag_leffler({{{beta, B}}}, z, cfg);
  const double lhs = d.value;
  const double rhs = (e0.value - (beta - 1.0) * e1.value) / (B * z);
  const double dev = std::abs(lhs - rhs);
  const double scale = std::max(std::abs(lhs), std::abs(rhs));
  InequalityReport r;
  r.suite_id = "ml-derivative";
  r.params_echo = Echo().add("B", B).add("beta", beta).str();
  r.z = z;
  r.lhs = lhs;
  r.rhs = rhs;
  r.margin = -dev;
  r.err_estimate = d.error_estimate() +
                   (e0.error_estimate() + (beta - 1.0) * e1.error_estimate()) / std::abs(B * z);
  r.pass = dev <= 1e-10 * scale;
  r.detail = "relative deviation " + format_double(scale == 0.0 ? dev : dev / scale);
  return r;
}

}  // namespace foxwright
