#pragma once

// Checkers for the Turan, ratio-monotonicity, tail, Lazarevic, Wilker and
// log-concavity families. Every checker is templated on an evaluation back
// end (SeriesEvaluator or OracleEvaluator) so margins can be cross-checked.

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "errors.hpp"
#include "evaluator.hpp"
#include "functions.hpp"
#include "gamma.hpp"
#include "report.hpp"
#include "series.hpp"

namespace foxwright {

namespace suite {
inline constexpr const char* kTuranAlpha = "turan-alpha";
inline constexpr const char* kTuranBeta = "turan-beta";
inline constexpr const char* kProduct2F2 = "corollary3-2f2";
inline constexpr const char* kRatioMonotone = "ratio-monotone";
inline constexpr const char* kTailTuran = "tail-turan";
inline constexpr const char* kKnBound = "kn-bound";
inline constexpr const char* kChi = "chi";
inline constexpr const char* kLazarevic = "lazarevic";
inline constexpr const char* kWilker = "wilker";
inline constexpr const char* kLogConcave = "logconcave";
}  // namespace suite

enum class TuranAlphaForm { fox_wright, pfq };
enum class TuranBetaForm { fox_wright, pfq, mittag_leffler, wright, mittag_leffler_normalized };
enum class Slot { alpha, beta };
enum class LazarevicForm { general, f12, mittag_leffler, wright, bessel, hyperbolic };
enum class WilkerForm { general, f12, mittag_leffler, remark3_59_reconstructed, bessel, hyperbolic };
enum class LogConcaveForm { general, f12, mittag_leffler };

namespace detail {

// A value with an absolute error bound.
struct Q {
  double v = 0.0;
  double e = 0.0;
};

inline Q q(const Evaluated& x) { return {x.value, x.err}; }

inline Q operator*(Q a, Q b) {
  const double v = a.v * b.v;
  return {v, std::abs(a.v) * b.e + std::abs(b.v) * a.e + a.e * b.e + kEps * std::abs(v)};
}
inline Q operator*(double s, Q a) { return {s * a.v, std::abs(s) * a.e + kEps * std::abs(s * a.v)}; }
inline Q operator/(Q a, Q b) {
  const double v = a.v / b.v;
  const double rel = a.e / std::abs(a.v == 0.0 ? 1.0 : a.v) + b.e / std::abs(b.v);
  return {v, std::abs(v) * rel + kEps * std::abs(v)};
}
inline Q operator+(Q a, Q b) { return {a.v + b.v, a.e + b.e + kEps * std::abs(a.v + b.v)}; }
inline Q operator-(Q a, Q b) { return {a.v - b.v, a.e + b.e + kEps * std::abs(a.v - b.v)}; }

// log|x| with its absolute error.
inline Q log_of(Q a) { return {std::log(std::abs(a.v)), a.e / std::abs(a.v)}; }

// Exact power-of-two rescaling that brings the largest magnitude near 1.
inline double pow2_scale(std::initializer_list<double> vals) {
  double m = 0.0;
  for (double v : vals) m = std::max(m, std::abs(v));
  if (!(m > 1e-100 && m < 1e100) && std::isfinite(m) && m > 0.0) {
    int e = 0;
    std::frexp(m, &e);
    return std::ldexp(1.0, -e);
  }
  return 1.0;
}

inline std::string side_json(const std::vector<WeightedParam>& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ',';
    s += "[" + format_double(v[i].value) + "," + format_double(v[i].weight) + "]";
  }
  return s + "]";
}

inline std::string params_json(const FoxWrightParams& p) {
  return "{\"upper\":" + side_json(p.upper) + ",\"lower\":" + side_json(p.lower) + "}";
}

inline Echo echo_params(const FoxWrightParams& p) {
  Echo e;
  e.raw("upper", side_json(p.upper)).raw("lower", side_json(p.lower));
  return e;
}

inline void require_z_nonnegative(double z) {
  if (!(z >= 0.0) || !std::isfinite(z))
    throw DomainError("z must be a finite non-negative real, got " + format_double(z));
}

inline void require_increasing(const std::vector<double>& g, const char* what) {
  if (g.size() < 2) throw GridError(std::string(what) + " needs at least two points");
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (!(g[i] > 0.0) || !std::isfinite(g[i]))
      throw GridError(std::string(what) + " points must be positive");
    if (i > 0 && !(g[i] > g[i - 1]))
      throw GridError(std::string(what) + " must be strictly increasing");
  }
}

inline Echo& echo_grid(Echo& e, const char* key, const std::vector<double>& g) {
  return e.raw(key, "[" + format_double(g.front()) + "," + format_double(g.back()) + "," +
                        std::to_string(g.size()) + "]");
}

// Collects many "lhs >= rhs" sub-claims into one report carrying the claim
// closest to (or furthest past) failure.
class Claims {
 public:
  Claims(std::string suite, std::string echo, const Tolerance& tol)
      : suite_(std::move(suite)), echo_(std::move(echo)), tol_(tol) {}

  void add(double z, Q lhs, Q rhs, const std::string& what) {
    const double band = tol_.band(lhs.v, rhs.v);
    const double margin = lhs.v - rhs.v;
    const bool ok = std::isfinite(margin) && margin >= -band;
    ++count_;
    if (!ok) ++failed_;
    const double slack = std::isfinite(margin) ? (margin + band) / std::max(band, 1e-300)
                                               : -std::numeric_limits<double>::infinity();
    if (count_ == 1 || slack < worst_slack_) {
      worst_slack_ = slack;
      worst_ = make_report(suite_, echo_, z, lhs.v, rhs.v, lhs.e + rhs.e, tol_);
      worst_what_ = what;
    }
  }

  InequalityReport finish() const {
    InequalityReport r = worst_;
    r.pass = failed_ == 0 && count_ > 0;
    r.detail = std::to_string(count_ - failed_) + "/" + std::to_string(count_) +
               " sub-claims hold; tightest: " + worst_what_;
    return r;
  }

 private:
  std::string suite_, echo_;
  Tolerance tol_;
  long count_ = 0, failed_ = 0;
  double worst_slack_ = 0.0;
  InequalityReport worst_;
  std::string worst_what_;
};

inline InequalityReport report_q(const char* suite, const std::string& echo, double z, Q lhs, Q rhs,
                                 const Tolerance& tol, std::string detail = {}) {
  InequalityReport r = make_report(suite, echo, z, lhs.v, rhs.v, lhs.e + rhs.e, tol);
  r.detail = std::move(detail);
  return r;
}

// lhs = a*b against rhs = c*d, rescaled by a common power of two when the
// products would leave the double range.
inline InequalityReport product_report(const char* suite, const std::string& echo, double z, Q a,
                                       Q b, Q c, Q d, const Tolerance& tol) {
  const double s = pow2_scale({a.v, b.v, c.v, d.v});
  std::string detail;
  if (s != 1.0) {
    a = s * a;
    b = s * b;
    c = s * c;
    d = s * d;
    detail = "both sides scaled by 2^" + std::to_string(2 * std::ilogb(s));
  }
  return report_q(suite, echo, z, a * b, c * d, tol, detail);
}

// x^p with x > 0 in the log domain: returns (log value, abs error of the log).
inline Q log_pow(Q x, double p) {
  const Q l = log_of(x);
  return {p * l.v, std::abs(p) * l.e + kEps * std::abs(p * l.v)};
}

// Reports lhs >= rhs given both sides as logs; values are used when both fit
// comfortably in a double, logs otherwise.
inline InequalityReport log_report(const char* suite, const std::string& echo, double z, Q log_lhs,
                                   Q log_rhs, const Tolerance& tol) {
  if (std::max(log_lhs.v, log_rhs.v) < 700.0 && std::min(log_lhs.v, log_rhs.v) > -700.0) {
    const double l = std::exp(log_lhs.v), r = std::exp(log_rhs.v);
    return report_q(suite, echo, z, {l, l * std::expm1(log_lhs.e) + kEps * l},
                    {r, r * std::expm1(log_rhs.e) + kEps * r}, tol);
  }
  return report_q(suite, echo, z, log_lhs, log_rhs, tol, "log-domain comparison");
}

inline double log_gamma_or_throw(double x) { return log_gamma(x); }

}  // namespace detail

// ---------------------------------------------------------------------------
// Turan-type inequalities in the upper and lower parameter.

/// Psi[alpha_1] Psi[alpha_1 + 2] >= Psi[alpha_1 + 1]^2; the pFq form carries the
/// factor alpha_1 / (alpha_1 + 1) on the right.
template <class Ev = SeriesEvaluator>
InequalityReport turan_alpha_check(const FoxWrightParams& p, double z,
                                   TuranAlphaForm form = TuranAlphaForm::fox_wright,
                                   const Ev& ev = Ev{}, const Tolerance& tol = {}) {
  using namespace detail;
  validate(p);
  require_z_nonnegative(z);
  if (p.upper.empty()) throw ParameterError("turan-alpha needs at least one upper parameter");
  const double a1 = p.upper[0].value;
  Echo echo = echo_params(p);
  if (form == TuranAlphaForm::pfq) {
    for (const auto& w : p.upper)
      if (w.weight != 1.0) throw ParameterError("pFq form needs all weights equal to 1");
    for (const auto& w : p.lower)
      if (w.weight != 1.0) throw ParameterError("pFq form needs all weights equal to 1");
    std::vector<double> up, lo;
    for (const auto& w : p.upper) up.push_back(w.value);
    for (const auto& w : p.lower) lo.push_back(w.value);
    auto F = [&](double a) {
      auto u = up;
      u[0] = a;
      return q(ev.hypergeometric(u, lo, z));
    };
    echo.add("form", "pfq");
    const Q f0 = F(a1), f1 = F(a1 + 1.0), f2 = F(a1 + 2.0);
    return product_report(suite::kTuranAlpha, echo.str(), z, f0, f2, (a1 / (a1 + 1.0)) * f1, f1,
                          tol);
  }
  auto P = [&](double a) { return q(ev.fox_wright(with_upper(p, 0, a), z)); };
  const Q p0 = P(a1), p1 = P(a1 + 1.0), p2 = P(a1 + 2.0);
  return product_report(suite::kTuranAlpha, echo.str(), z, p0, p2, p1, p1, tol);
}

/// Psi[beta_1] Psi[beta_1 + 2] >= beta_1/(beta_1 + 1) Psi[beta_1 + 1]^2 and its
/// reductions.
template <class Ev = SeriesEvaluator>
InequalityReport turan_beta_check(const FoxWrightParams& p, double z,
                                  TuranBetaForm form = TuranBetaForm::fox_wright,
                                  const Ev& ev = Ev{}, const Tolerance& tol = {}) {
  using namespace detail;
  validate(p);
  require_z_nonnegative(z);
  if (p.lower.empty()) throw ParameterError("turan-beta needs at least one lower parameter");
  const double b1 = p.lower[0].value;
  Echo echo = echo_params(p);
  switch (form) {
    case TuranBetaForm::fox_wright: {
      auto P = [&](double b) { return q(ev.fox_wright(with_lower(p, 0, b), z)); };
      const Q p0 = P(b1), p1 = P(b1 + 1.0), p2 = P(b1 + 2.0);
      return product_report(suite::kTuranBeta, echo.str(), z, p0, p2, (b1 / (b1 + 1.0)) * p1, p1,
                            tol);
    }
    case TuranBetaForm::pfq: {
      for (const auto& w : p.upper)
        if (w.weight != 1.0) throw ParameterError("pFq form needs all weights equal to 1");
      for (const auto& w : p.lower)
        if (w.weight != 1.0) throw ParameterError("pFq form needs all weights equal to 1");
      std::vector<double> up, lo;
      for (const auto& w : p.upper) up.push_back(w.value);
      for (const auto& w : p.lower) lo.push_back(w.value);
      auto F = [&](double b) {
        auto l = lo;
        l[0] = b;
        return q(ev.hypergeometric(up, l, z));
      };
      echo.add("form", "pfq");
      const Q f0 = F(b1), f1 = F(b1 + 1.0), f2 = F(b1 + 2.0);
      return product_report(suite::kTuranBeta, echo.str(), z, f0, f2, f1, f1, tol);
    }
    case TuranBetaForm::mittag_leffler: {
      if (p.upper.size() != 1 || p.upper[0].value != 1.0 || p.upper[0].weight != 1.0)
        throw ParameterError("Mittag-Leffler form needs upper = [(1, 1)]");
      auto E = [&](double b) { return q(ev.fox_wright(with_lower(p, 0, b), z)); };
      echo.add("form", "mittag-leffler");
      const Q e0 = E(b1), e1 = E(b1 + 1.0), e2 = E(b1 + 2.0);
      return product_report(suite::kTuranBeta, echo.str(), z, e0, e2, (b1 / (b1 + 1.0)) * e1, e1,
                            tol);
    }
    case TuranBetaForm::wright:
    case TuranBetaForm::mittag_leffler_normalized: {
      if (form == TuranBetaForm::wright && !p.upper.empty())
        throw ParameterError("Wright form takes no upper parameters");
      if (form == TuranBetaForm::mittag_leffler_normalized &&
          (p.upper.size() != 1 || p.upper[0].value != 1.0 || p.upper[0].weight != 1.0))
        throw ParameterError("normalized Mittag-Leffler form needs upper = [(1, 1)]");
      if (p.lower.size() != 1) throw ParameterError("this form takes exactly one lower pair");
      auto W = [&](double b) { return q(ev.tilde(with_lower(p, 0, b), z)); };
      echo.add("form", form == TuranBetaForm::wright ? "wright" : "mittag-leffler-normalized");
      const Q w0 = W(b1), w1 = W(b1 + 1.0), w2 = W(b1 + 2.0);
      return product_report(suite::kTuranBeta, echo.str(), z, w0, w2, w1, w1, tol);
    }
  }
  throw ParameterError("unknown turan-beta form");
}

struct ProductAux {
  double f = 0.0, g = 0.0, h = 0.0;
};

inline ProductAux product_aux(double alpha1, double beta1, double beta2) {
  if (alpha1 == beta2) throw SingularTransform("alpha1 = beta2 makes f, g, h undefined");
  const double d = alpha1 - beta2;
  return {beta2 * (1.0 + alpha1 - beta1) / d, beta2 * (alpha1 - beta1 - 1.0) / d,
          beta2 * (alpha1 - beta1) / d};
}

/// 2F2 Turan-type inequality on the negative axis obtained through the Kummer
/// transform.
template <class Ev = SeriesEvaluator>
InequalityReport corollary3_2f2_check(double alpha1, double beta1, double beta2, double z,
                                      const Ev& ev = Ev{}, const Tolerance& tol = {},
                                      double max_condition = 1e6) {
  using namespace detail;
  if (!(z < 0.0) || !std::isfinite(z))
    throw DomainError("corollary3-2f2 needs z < 0, got " + format_double(z));
  if (!(beta1 > 0.0)) throw ParameterError("beta1 must be positive");
  if (!(beta2 > 0.0)) throw ParameterError("beta2 must be positive");
  const ProductAux x = product_aux(alpha1, beta1, beta2);
  if (!(x.f > 0.0) || !(x.g > 0.0) || !(x.h > 0.0))
    throw ParameterError("f, g, h must be positive; got f=" + format_double(x.f) +
                         " g=" + format_double(x.g) + " h=" + format_double(x.h));
  const std::string echo = Echo()
                               .add("alpha1", alpha1)
                               .add("beta1", beta1)
                               .add("beta2", beta2)
                               .add("f", x.f)
                               .add("g", x.g)
                               .add("h", x.h)
                               .str();
  const Evaluated F1 = ev.hypergeometric({beta1 - alpha1 - 1.0, x.f + 1.0}, {beta1, x.f}, z);
  const Evaluated F2 = ev.hypergeometric({beta1 - alpha1 + 1.0, x.g + 1.0}, {beta1 + 2.0, x.g}, z);
  const Evaluated F3 = ev.hypergeometric({beta1 - alpha1, x.h + 1.0}, {beta1 + 1.0, x.h}, z);
  const double cond = std::max({F1.condition, F2.condition, F3.condition});
  if (!(cond <= max_condition))
    return numerical_failure_report(suite::kProduct2F2, echo, z,
                                    "condition estimate " + format_double(cond) + " exceeds " +
                                        format_double(max_condition));
  InequalityReport r =
      product_report(suite::kProduct2F2, echo, z, q(F1), q(F2), q(F3), q(F3), tol);
  r.detail = "condition " + format_double(cond);
  return r;
}

// ---------------------------------------------------------------------------
// Monotone ratios.

/// R(z) = Psi[slot = v1] / Psi[slot = v2] along an increasing z grid, together
/// with the derivative cross-product inequality at each grid point.
template <class Ev = SeriesEvaluator>
InequalityReport ratio_monotonicity_check(const FoxWrightParams& p, Slot slot, double v1, double v2,
                                          const std::vector<double>& z_grid, const Ev& ev = Ev{},
                                          const Tolerance& tol = {}) {
  using namespace detail;
  validate(p);
  require_increasing(z_grid, "z grid");
  if (v1 == v2) throw ParameterError("ratio-monotone needs v1 != v2");
  if (!(v1 > 0.0) || !(v2 > 0.0)) throw ParameterError("v1 and v2 must be positive");
  FoxWrightParams p1, p2;
  bool decreasing;
  if (slot == Slot::beta) {
    if (p.lower.empty()) throw ParameterError("beta slot needs a lower parameter");
    p1 = with_lower(p, 0, v1);
    p2 = with_lower(p, 0, v2);
    decreasing = v2 < v1;
  } else {
    if (p.upper.empty()) throw ParameterError("alpha slot needs an upper parameter");
    p1 = with_upper(p, 0, v1);
    p2 = with_upper(p, 0, v2);
    decreasing = v1 < v2;
  }
  Echo echo = echo_params(p);
  echo.add("slot", slot == Slot::beta ? "beta" : "alpha").add("v1", v1).add("v2", v2);
  echo_grid(echo, "z_grid", z_grid);
  Claims claims(suite::kRatioMonotone, echo.str(), tol);
  const FoxWrightParams d1 = shifted(p1), d2 = shifted(p2);
  Q prev{};
  for (std::size_t i = 0; i < z_grid.size(); ++i) {
    const double z = z_grid[i];
    const Q f1 = q(ev.fox_wright(p1, z)), f2 = q(ev.fox_wright(p2, z));
    const Q g1 = q(ev.fox_wright(d1, z)), g2 = q(ev.fox_wright(d2, z));
    const Q ratio = f1 / f2;
    if (i > 0) {
      if (decreasing)
        claims.add(z, prev, ratio, "R nonincreasing at z=" + format_double(z));
      else
        claims.add(z, ratio, prev, "R nondecreasing at z=" + format_double(z));
    }
    prev = ratio;
    // Sign of R' through the derivative formula: R' <= 0 iff Psi1' Psi2 <= Psi1 Psi2'.
    const double s = pow2_scale({f1.v, f2.v, g1.v, g2.v});
    const Q a = s * f1, b = s * f2, c = s * g1, d = s * g2;
    if (decreasing)
      claims.add(z, a * d, c * b, "cross product at z=" + format_double(z));
    else
      claims.add(z, c * b, a * d, "cross product at z=" + format_double(z));
  }
  return claims.finish();
}

// ---------------------------------------------------------------------------
// Tail sections.

inline void require_zero_upper_weights(const FoxWrightParams& p) {
  for (const auto& a : p.upper)
    if (a.weight != 0.0) throw ParameterError("tail sections require every A_l = 0");
}

/// (Psi^{n+1})^2 >= Psi^n Psi^{n+2} for A = 0.
template <class Ev = SeriesEvaluator>
InequalityReport tail_turan_check(const FoxWrightParams& p, long n, double z, const Ev& ev = Ev{},
                                  const Tolerance& tol = {}) {
  using namespace detail;
  validate(p);
  require_zero_upper_weights(p);
  if (n < 0) throw ParameterError("section index n must be >= 0");
  if (!(z > 0.0) || !std::isfinite(z)) throw DomainError("tail-turan needs z > 0");
  auto T = [&](long m) { return q(ev.fox_wright(p, z, m + 1)); };
  const Q t0 = T(n), t1 = T(n + 1), t2 = T(n + 2);
  return product_report(suite::kTailTuran, echo_params(p).add("n", n).str(), z, t1, t1, t0, t2,
                        tol);
}

/// Limit of K_n(z) as z -> 0 from the first three surviving terms; for A = 0
/// this is the sharp constant of the tail inequality.
inline double kn_limit(const FoxWrightParams& p, long n) {
  validate(p);
  double l[3];
  for (int i = 0; i < 3; ++i) {
    const long k = n + 1 + i;
    const double kk = static_cast<double>(k);
    double s = -log_gamma(kk + 1.0);
    for (const auto& a : p.upper) s += log_gamma(a.value + kk * a.weight);
    for (const auto& b : p.lower) s -= log_gamma(b.value + kk * b.weight);
    l[i] = s;
  }
  return std::exp(l[0] + l[2] - 2.0 * l[1]);
}

/// ((n+2)/(n+3)) prod Gamma^2(beta + (n+2)B) / (Gamma(beta + (n+1)B) Gamma(beta + (n+3)B)).
inline double kn_constant(const FoxWrightParams& p, long n) {
  validate(p);
  if (n < 0) throw ParameterError("section index n must be >= 0");
  const double m = static_cast<double>(n);
  double s = std::log((m + 2.0) / (m + 3.0));
  for (const auto& b : p.lower)
    s += 2.0 * log_gamma(b.value + (m + 2.0) * b.weight) -
         log_gamma(b.value + (m + 1.0) * b.weight) - log_gamma(b.value + (m + 3.0) * b.weight);
  return std::exp(s);
}

/// K_n(z) = Psi^n Psi^{n+2} / (Psi^{n+1})^2 for any A >= 0.
template <class Ev = SeriesEvaluator>
detail::Q kn_value(const FoxWrightParams& p, long n, double z, const Ev& ev = Ev{}) {
  using namespace detail;
  if (n < 0) throw ParameterError("section index n must be >= 0");
  if (!(z > 0.0) || !std::isfinite(z)) throw DomainError("K_n needs z > 0");
  auto T = [&](long m) { return q(ev.fox_wright(p, z, m + 1)); };
  const Q t0 = T(n), t1 = T(n + 1), t2 = T(n + 2);
  return (t0 / t1) * (t2 / t1);
}

/// K_n(z) against the sharp constant C (margin = K_n(z) - C).
template <class Ev = SeriesEvaluator>
InequalityReport kn_value_and_bound(const FoxWrightParams& p, long n, double z, const Ev& ev = Ev{},
                                    const Tolerance& tol = {}) {
  using namespace detail;
  validate(p);
  require_zero_upper_weights(p);
  const double c = kn_constant(p, n);
  const Q k = kn_value(p, n, z, ev);
  InequalityReport r = report_q(suite::kKnBound, echo_params(p).add("n", n).str(), z, k,
                                {c, 8.0 * kEps * c}, tol);
  r.detail = "C = " + format_double(c);
  return r;
}

/// K_n nondecreasing along an increasing z grid, and K_n(z_0) >= C.
template <class Ev = SeriesEvaluator>
InequalityReport kn_monotone_check(const FoxWrightParams& p, long n,
                                   const std::vector<double>& z_grid, const Ev& ev = Ev{},
                                   const Tolerance& tol = {}) {
  using namespace detail;
  validate(p);
  require_zero_upper_weights(p);
  require_increasing(z_grid, "z grid");
  const double c = kn_constant(p, n);
  Echo echo = echo_params(p).add("n", n);
  echo_grid(echo, "z_grid", z_grid);
  Claims claims(suite::kKnBound, echo.str(), tol);
  Q prev{};
  for (std::size_t i = 0; i < z_grid.size(); ++i) {
    const Q k = kn_value(p, n, z_grid[i], ev);
    if (i == 0) claims.add(z_grid[i], k, {c, 8.0 * kEps * c}, "K_n(z0) >= C");
    if (i > 0) claims.add(z_grid[i], k, prev, "K_n nondecreasing at z=" + format_double(z_grid[i]));
    prev = k;
  }
  return claims.finish();
}

// ---------------------------------------------------------------------------
// The chi ratio and its Omega series.

inline FoxWrightParams psi12(double alpha1, double a_weight, double beta1, double B1,
                             double beta2) {
  return FoxWrightParams{{{alpha1, a_weight}}, {{beta1, B1}, {beta2, 1.0}}};
}

/// chi(beta_1) = 1~Psi2[(a+1,1); (b1+B1,B1), (b2+1,1)] / 1~Psi2[(a,1); (b1,B1), (b2,1)].
template <class Ev = SeriesEvaluator>
detail::Q chi_value(double alpha1, double beta2, double B1, double beta1, double z,
                    const Ev& ev = Ev{}) {
  using namespace detail;
  const Q num = q(ev.tilde(psi12(alpha1 + 1.0, 1.0, beta1 + B1, B1, beta2 + 1.0), z));
  const Q den = q(ev.tilde(psi12(alpha1, 1.0, beta1, B1, beta2), z));
  return num / den;
}

/// Double series Omega(beta_1) summed over k < k_max by pairing j with k - j.
inline detail::Q omega_series(double alpha1, double beta2, double B1, double beta1, double z,
                              long k_max) {
  if (!(z > 0.0)) throw DomainError("Omega needs z > 0");
  const double lz = std::log(z);
  const double c = beta1 + B1;
  double s = 0.0, comp = 0.0, abs_sum = 0.0;
  for (long k = 1; k < k_max; ++k) {
    const double kk = static_cast<double>(k);
    for (long j = 0; 2 * j <= k - 1; ++j) {
      const double jj = static_cast<double>(j), mm = kk - jj;
      const double dpsi = digamma(c + mm * B1) - digamma(c + jj * B1);
      const double factor = (kk - 2.0 * jj) * (alpha1 - beta2) * dpsi /
                            ((beta2 + mm) * (beta2 + jj));
      if (factor == 0.0) continue;
      const double lg = log_gamma(alpha1 + jj) + log_gamma(alpha1 + mm) - log_gamma(jj + 1.0) -
                        log_gamma(mm + 1.0) - log_gamma(c + jj * B1) - log_gamma(c + mm * B1) -
                        log_gamma(beta2 + jj) - log_gamma(beta2 + mm) + kk * lz;
      const double t = std::exp(lg) * factor;
      detail::neumaier_add(s, comp, t);
      abs_sum += std::abs(t);
    }
  }
  const double v = s + comp;
  return {v, 64.0 * detail::kEps * abs_sum};
}

/// chi nondecreasing along an increasing beta_1 grid, and Omega >= 0 at each
/// grid point.
template <class Ev = SeriesEvaluator>
InequalityReport chi_check(double alpha1, double beta2, double B1,
                           const std::vector<double>& beta1_grid, double z, const Ev& ev = Ev{},
                           const Tolerance& tol = {}, const EvalConfig& cfg = {}) {
  using namespace detail;
  if (!(alpha1 > 0.0) || !(beta2 > 0.0)) throw ParameterError("alpha1, beta2 must be positive");
  if (!(B1 >= 0.0)) throw ParameterError("B1 must be non-negative");
  if (alpha1 < beta2) throw DomainError("chi needs alpha1 >= beta2");
  if (!(z > 0.0) || !std::isfinite(z)) throw DomainError("chi needs z > 0");
  require_increasing(beta1_grid, "beta1 grid");
  Echo echo;
  echo.add("alpha1", alpha1).add("beta2", beta2).add("B1", B1);
  echo_grid(echo, "beta1_grid", beta1_grid);
  Claims claims(suite::kChi, echo.str(), tol);
  Q prev{};
  for (std::size_t i = 0; i < beta1_grid.size(); ++i) {
    const double b1 = beta1_grid[i];
    const Q x = chi_value(alpha1, beta2, B1, b1, z, ev);
    if (i > 0) claims.add(z, x, prev, "chi nondecreasing at beta1=" + format_double(b1));
    prev = x;
    const long terms = eval(psi12(alpha1, 1.0, b1 + B1, B1, beta2), z, cfg).terms_used;
    const Q om = omega_series(alpha1, beta2, B1, b1, z, terms + 10);
    claims.add(z, om, {0.0, 0.0}, "Omega >= 0 at beta1=" + format_double(b1));
  }
  return claims.finish();
}

// ---------------------------------------------------------------------------
// Lazarevic and Wilker type inequalities.

namespace detail {

inline void require_alpha_ge_beta2(double alpha1, double beta2) {
  if (!(alpha1 > 0.0) || !(beta2 > 0.0)) throw ParameterError("alpha1, beta2 must be positive");
  if (alpha1 < beta2)
    throw DomainError("needs alpha1 >= beta2, got alpha1=" + format_double(alpha1) +
                      " beta2=" + format_double(beta2));
}

inline Echo lw_echo(double alpha1, double beta1, double beta2, double B1, const char* form) {
  Echo e;
  e.add("alpha1", alpha1).add("beta1", beta1).add("beta2", beta2).add("B1", B1).add("form", form);
  return e;
}

// 1~Psi2[(alpha1,1); (b,B1), (beta2,1)](z) through the chosen back end.
template <class Ev>
Q tilde12(const Ev& ev, double alpha1, double b, double B1, double beta2, double z) {
  return q(ev.tilde(psi12(alpha1, 1.0, b, B1, beta2), z));
}

// Normalized Bessel I_nu(x) = W~_{1,nu+1}(x^2/4).
template <class Ev>
Q bessel_i(const Ev& ev, double nu, double x) {
  return q(ev.tilde(FoxWrightParams{{}, {{nu + 1.0, 1.0}}}, 0.25 * x * x));
}

inline const char* form_name(LazarevicForm f) {
  switch (f) {
    case LazarevicForm::general: return "general";
    case LazarevicForm::f12: return "1f2";
    case LazarevicForm::mittag_leffler: return "mittag-leffler";
    case LazarevicForm::wright: return "wright";
    case LazarevicForm::bessel: return "bessel";
    case LazarevicForm::hyperbolic: return "hyperbolic";
  }
  return "?";
}

inline const char* form_name(WilkerForm f) {
  switch (f) {
    case WilkerForm::general: return "general";
    case WilkerForm::f12: return "1f2";
    case WilkerForm::mittag_leffler: return "mittag-leffler";
    case WilkerForm::remark3_59_reconstructed: return "remark3-59-reconstructed";
    case WilkerForm::bessel: return "bessel";
    case WilkerForm::hyperbolic: return "hyperbolic";
  }
  return "?";
}

}  // namespace detail

/// [Psi~(b1+1)]^{G(b1+B1+1)/G(b1+1)} >= [(G(a1)/G(b2))^{B1/b1} Psi~(b1)]^{G(b1+B1)/G(b1)}
/// and its reductions. For the Bessel and hyperbolic forms beta1 = nu + 1 and z
/// is the Bessel argument.
template <class Ev = SeriesEvaluator>
InequalityReport lazarevic_check(double alpha1, double beta1, double beta2, double B1, double z,
                                 LazarevicForm form = LazarevicForm::general, const Ev& ev = Ev{},
                                 const Tolerance& tol = {}) {
  using namespace detail;
  if (!std::isfinite(z)) throw DomainError("z must be finite");
  if (!(beta1 > 0.0)) throw ParameterError("beta1 must be positive");
  if (!(B1 >= 0.0)) throw ParameterError("B1 must be non-negative");
  const std::string echo = lw_echo(alpha1, beta1, beta2, B1, form_name(form)).str();
  if (form == LazarevicForm::bessel || form == LazarevicForm::hyperbolic) {
    if (B1 != 1.0 || alpha1 != beta2)
      throw ParameterError("Bessel reduction needs B1 = 1 and alpha1 = beta2");
    const double nu = beta1 - 1.0;
    if (form == LazarevicForm::hyperbolic && nu != -0.5)
      throw ParameterError("hyperbolic reduction needs beta1 = 1/2");
    const Q i0 = bessel_i(ev, nu, z), i1 = bessel_i(ev, nu + 1.0, z);
    if (form == LazarevicForm::hyperbolic)  // cosh z <= (sinh z / z)^3
      return log_report(suite::kLazarevic, echo, z, log_pow(i1, 3.0), log_of(i0), tol);
    return log_report(suite::kLazarevic, echo, z, log_of(i1), log_pow(i0, (nu + 1.0) / (nu + 2.0)),
                      tol);
  }
  require_alpha_ge_beta2(alpha1, beta2);
  require_z_nonnegative(z);
  if (form == LazarevicForm::f12) {
    if (B1 != 1.0) throw ParameterError("1F2 reduction needs B1 = 1");
    const Q f0 = q(ev.hypergeometric({alpha1}, {beta1, beta2}, z));
    const Q f1 = q(ev.hypergeometric({alpha1}, {beta1 + 1.0, beta2}, z));
    return log_report(suite::kLazarevic, echo, z, log_pow(f1, beta1 + 1.0), log_pow(f0, beta1), tol);
  }
  if (form == LazarevicForm::mittag_leffler && alpha1 != 1.0)
    throw ParameterError("Mittag-Leffler reduction needs alpha1 = 1");
  if (form == LazarevicForm::wright && alpha1 != beta2)
    throw ParameterError("Wright reduction needs alpha1 = beta2");
  Q t0, t1;
  if (form == LazarevicForm::mittag_leffler) {
    // Psi~ = Gamma(b) E_{B1,b;1,beta2}
    const FoxWrightParams e0{{{1.0, 1.0}}, {{beta1, B1}, {beta2, 1.0}}};
    const FoxWrightParams e1{{{1.0, 1.0}}, {{beta1 + 1.0, B1}, {beta2, 1.0}}};
    t0 = std::exp(log_gamma(beta1)) * q(ev.fox_wright(e0, z));
    t1 = std::exp(log_gamma(beta1 + 1.0)) * q(ev.fox_wright(e1, z));
  } else if (form == LazarevicForm::wright) {
    t0 = q(ev.tilde(FoxWrightParams{{}, {{beta1, B1}}}, z));
    t1 = q(ev.tilde(FoxWrightParams{{}, {{beta1 + 1.0, B1}}}, z));
  } else {
    t0 = tilde12(ev, alpha1, beta1, B1, beta2, z);
    t1 = tilde12(ev, alpha1, beta1 + 1.0, B1, beta2, z);
  }
  const double e0 = std::exp(log_gamma(beta1 + B1) - log_gamma(beta1));
  const double e1 = std::exp(log_gamma(beta1 + B1 + 1.0) - log_gamma(beta1 + 1.0));
  const double lg = form == LazarevicForm::wright ? 0.0 : log_gamma(alpha1) - log_gamma(beta2);
  Q lhs = log_pow(t1, e1);
  Q rhs = log_pow(t0, e0);
  rhs.v += e0 * (B1 / beta1) * lg;
  rhs.e += kEps * std::abs(e0 * (B1 / beta1) * lg) * 4.0;
  return log_report(suite::kLazarevic, echo, z, lhs, rhs, tol);
}

/// Psi~(b1+1)/Psi~(b1) + [(G(b2)/G(a1)) Psi~(b1+1)]^{B1/b1} >= 2 and its reductions.
template <class Ev = SeriesEvaluator>
InequalityReport wilker_check(double alpha1, double beta1, double beta2, double B1, double z,
                              WilkerForm form = WilkerForm::general, const Ev& ev = Ev{},
                              const Tolerance& tol = {}) {
  using namespace detail;
  if (!std::isfinite(z)) throw DomainError("z must be finite");
  if (!(beta1 > 0.0)) throw ParameterError("beta1 must be positive");
  if (!(B1 >= 0.0)) throw ParameterError("B1 must be non-negative");
  const std::string echo = lw_echo(alpha1, beta1, beta2, B1, form_name(form)).str();
  const Q two{2.0, 0.0};
  auto power = [](Q x, double p) {
    const Q l = log_pow(x, p);
    const double v = std::exp(l.v);
    return Q{v, v * std::expm1(l.e) + kEps * v};
  };
  if (form == WilkerForm::bessel || form == WilkerForm::hyperbolic) {
    if (B1 != 1.0 || alpha1 != beta2)
      throw ParameterError("Bessel reduction needs B1 = 1 and alpha1 = beta2");
    const double nu = beta1 - 1.0;
    if (form == WilkerForm::hyperbolic && nu != -0.5)
      throw ParameterError("hyperbolic reduction needs beta1 = 1/2");
    const Q i0 = bessel_i(ev, nu, z), i1 = bessel_i(ev, nu + 1.0, z);
    return report_q(suite::kWilker, echo, z, i1 / i0 + power(i1, 1.0 / (nu + 1.0)), two, tol);
  }
  require_alpha_ge_beta2(alpha1, beta2);
  require_z_nonnegative(z);
  if (form == WilkerForm::f12) {
    if (B1 != 1.0) throw ParameterError("1F2 reduction needs B1 = 1");
    const Q f0 = q(ev.hypergeometric({alpha1}, {beta1, beta2}, z));
    const Q f1 = q(ev.hypergeometric({alpha1}, {beta1 + 1.0, beta2}, z));
    return report_q(suite::kWilker, echo, z, f1 / f0 + power(f1, 1.0 / beta1), two, tol);
  }
  if (form == WilkerForm::mittag_leffler && alpha1 != 1.0)
    throw ParameterError("Mittag-Leffler reduction needs alpha1 = 1");
  if (form == WilkerForm::remark3_59_reconstructed && alpha1 != beta2)
    throw ParameterError("reconstructed Wright form needs alpha1 = beta2");
  Q t0, t1;
  double scale = 1.0;  // Gamma(beta2) / Gamma(alpha1)
  if (form == WilkerForm::mittag_leffler) {
    const FoxWrightParams e0{{{1.0, 1.0}}, {{beta1, B1}, {beta2, 1.0}}};
    const FoxWrightParams e1{{{1.0, 1.0}}, {{beta1 + 1.0, B1}, {beta2, 1.0}}};
    t0 = std::exp(log_gamma(beta1)) * q(ev.fox_wright(e0, z));
    t1 = std::exp(log_gamma(beta1 + 1.0)) * q(ev.fox_wright(e1, z));
    scale = std::exp(log_gamma(beta2));
  } else if (form == WilkerForm::remark3_59_reconstructed) {
    t0 = q(ev.tilde(FoxWrightParams{{}, {{beta1, B1}}}, z));
    t1 = q(ev.tilde(FoxWrightParams{{}, {{beta1 + 1.0, B1}}}, z));
  } else {
    t0 = tilde12(ev, alpha1, beta1, B1, beta2, z);
    t1 = tilde12(ev, alpha1, beta1 + 1.0, B1, beta2, z);
    scale = std::exp(log_gamma(beta2) - log_gamma(alpha1));
  }
  return report_q(suite::kWilker, echo, z, t1 / t0 + power(scale * t1, B1 / beta1), two, tol);
}

// ---------------------------------------------------------------------------
// Log-concavity of pPsi*_{p+1}.

/// c = prod(alpha_i / beta_{i+1}) Gamma(beta_1) / Gamma(beta_1 + B_1).
inline double logconcave_rate(const FoxWrightParams& p) {
  double s = log_gamma(p.lower[0].value) - log_gamma(p.lower[0].value + p.lower[0].weight);
  for (std::size_t i = 0; i < p.upper.size(); ++i)
    s += std::log(p.upper[i].value / p.lower[i + 1].value);
  return std::exp(s);
}

inline void require_logconcave_shape(const FoxWrightParams& p) {
  validate(p);
  if (p.upper.empty() || p.lower.size() != p.upper.size() + 1)
    throw ParameterError("log-concavity needs p >= 1 upper and p + 1 lower parameters");
  for (const auto& a : p.upper)
    if (a.weight != 1.0) throw ParameterError("log-concavity needs A_i = 1");
  for (std::size_t j = 1; j < p.lower.size(); ++j)
    if (p.lower[j].weight != 1.0) throw ParameterError("log-concavity needs B_j = 1 for j >= 2");
  for (std::size_t i = 0; i < p.upper.size(); ++i)
    if (p.upper[i].value < p.lower[i + 1].value)
      throw DomainError("log-concavity needs alpha_i >= beta_{i+1}");
}

/// Three reports: midpoint geometric-mean concavity, the exponential bound and
/// the derivative bound.
template <class Ev = SeriesEvaluator>
std::vector<InequalityReport> logconcavity_suite(const FoxWrightParams& p, double z1, double z2,
                                                 LogConcaveForm form = LogConcaveForm::general,
                                                 const Ev& ev = Ev{}, const Tolerance& tol = {}) {
  using namespace detail;
  require_logconcave_shape(p);
  if (!(z1 > 0.0) || !(z2 > 0.0) || !std::isfinite(z1) || !std::isfinite(z2))
    throw DomainError("log-concavity checks need z1, z2 > 0");
  const char* fname = form == LogConcaveForm::general ? "general"
                      : form == LogConcaveForm::f12   ? "pfq"
                                                      : "mittag-leffler";
  if (form == LogConcaveForm::f12 && p.lower[0].weight != 1.0)
    throw ParameterError("pFq form needs B1 = 1");
  if (form == LogConcaveForm::mittag_leffler &&
      (p.upper.size() != 1 || p.upper[0].value != 1.0))
    throw ParameterError("Mittag-Leffler form needs p = 1 and alpha1 = 1");
  const double c = logconcave_rate(p);
  const double zm = 0.5 * (z1 + z2);

  std::vector<double> up, lo;
  for (const auto& a : p.upper) up.push_back(a.value);
  for (const auto& b : p.lower) lo.push_back(b.value);
  // The function whose log-concavity is claimed: Psi*, 1F2-type pFq, or E.
  auto f = [&](double z) -> Q {
    if (form == LogConcaveForm::f12) return q(ev.hypergeometric(up, lo, z));
    if (form == LogConcaveForm::mittag_leffler) return q(ev.fox_wright(p, z));
    return q(ev.normalized(p, z));
  };
  std::vector<InequalityReport> out;
  Echo base = echo_params(p);
  base.add("form", fname);

  {
    Echo e = base;
    e.add("kind", "midpoint").add("z2", z2);
    const Q a = f(z1), b = f(z2), m = f(zm);
    out.push_back(log_report(suite::kLogConcave, e.str(), z1, log_of(m),
                             {0.5 * (log_of(a).v + log_of(b).v), 0.5 * (log_of(a).e + log_of(b).e)},
                             tol));
  }
  {
    Echo e = base;
    e.add("kind", "exp-bound").add("c", c);
    const Q v = f(z1);
    Q bound{c * z1, 4.0 * kEps * c * z1};
    if (form == LogConcaveForm::mittag_leffler) {
      // E = Psi* / (Gamma(beta1) Gamma(beta2)) when alpha1 = 1.
      const double g = log_gamma(p.lower[0].value) + log_gamma(p.lower[1].value);
      bound.v -= g;
      bound.e += 4.0 * kEps * std::abs(g);
    }
    out.push_back(log_report(suite::kLogConcave, e.str(), z1, bound, log_of(v), tol));
  }
  {
    Echo e = base;
    e.add("kind", "derivative-bound").add("c", c);
    const Q d = q(ev.fox_wright(shifted(p), z1));
    const Q v = q(ev.fox_wright(p, z1));
    InequalityReport r = product_report(suite::kLogConcave, e.str(), z1, {c, 4.0 * kEps * c}, v,
                                        d, {1.0, 0.0}, tol);
    out.push_back(r);
  }
  return out;
}

}  // namespace foxwright
