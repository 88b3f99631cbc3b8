#pragma once

// Real log-gamma, digamma and gamma-ratio kernels for positive arguments.

#include <array>
#include <cmath>
#include <limits>
#include <string>

#include "dd.hpp"
#include "errors.hpp"
#include "report.hpp"

namespace foxwright {

namespace detail {

// ln Γ(1+t) = -γ t + Σ_{k>=2} (-1)^k ζ(k) t^k / k, coefficients of t^1..t^56.
inline constexpr std::array<double, 56> kLogGammaAt1 = {
    -0.5772156649015329,   0.8224670334241132,    -0.40068563438653143,
    0.27058080842778454,   -0.20738555102867398,  0.1695571769974082,
    -0.1440498967688461,   0.12550966952474304,   -0.11133426586956469,
    0.1000994575127818,    -0.09095401714582904,  0.083353840546109,
    -0.0769325164113522,   0.07143294629536133,   -0.06666870588242046,
    0.06250095514121304,   -0.058823978658684585, 0.055555767627403614,
    -0.05263167937961666,  0.05000004769810169,   -0.047619070330142226,
    0.04545455629320467,   -0.04347826605304026,  0.04166666915034121,
    -0.04000000119214014,  0.03846153903467518,   -0.037037037312989324,
    0.035714285847333355,  -0.034482758684919304, 0.03333333336437758,
    -0.03225806453115042,  0.03125000000727597,   -0.030303030306558044,
    0.029411764707594344,  -0.02857142857226011,  0.027777777778181998,
    -0.027027027027223673, 0.02631578947377995,   -0.025641025641072283,
    0.025000000000022737,  -0.024390243902450117, 0.023809523809529224,
    -0.023255813953491015, 0.02272727272727402,   -0.022222222222222855,
    0.021739130434782917,  -0.021276595744681003, 0.02083333333333341,
    -0.02040816326530616,  0.020000000000000018,  -0.019607843137254912,
    0.019230769230769235,  -0.01886792452830189,  0.01851851851851852,
    -0.01818181818181818,  0.017857142857142856,
};

// ln Γ(2+t) = (1-γ) t + Σ_{k>=2} (-1)^k (ζ(k)-1) t^k / k, coefficients of t^1..t^30.
inline constexpr std::array<double, 30> kLogGammaAt2 = {
    0.42278433509846713,    0.3224670334241132,     -0.0673523010531981,
    0.020580808427784546,   -0.007385551028673986,  0.0028905103307415234,
    -0.001192753911703261,  0.0005096695247430425,  -0.00022315475845357939,
    9.945751278180853e-05,  -4.492623673813314e-05, 2.050721277567069e-05,
    -9.439488275268397e-06, 4.374866789907488e-06,  -2.039215753801366e-06,
    9.55141213040742e-07,   -4.492469198764566e-07, 2.1207184805554665e-07,
    -1.0043224823968099e-07, 4.7698101693639804e-08, -2.2711094608943164e-08,
    1.0838659214896955e-08, -5.183475041970047e-09, 2.4836745438024785e-09,
    -1.1921401405860912e-09, 5.731367241678862e-10, -2.7595228851242334e-10,
    1.330476437424449e-10,  -6.4229645638381e-11,   3.1044247747322276e-11,
};

// B_{2k} / (2k (2k-1)) for k = 1..8 (Stirling series of ln Γ).
inline constexpr std::array<double, 8> kStirlingLogGamma = {
    1.0 / 12.0,   -1.0 / 360.0,         1.0 / 1260.0,     -1.0 / 1680.0,
    1.0 / 1188.0, -691.0 / 360360.0,    1.0 / 156.0,      -3617.0 / 122400.0,
};

// B_{2k} / (2k) for k = 1..8 (asymptotic series of ψ).
inline constexpr std::array<double, 8> kStirlingDigamma = {
    1.0 / 12.0,   -1.0 / 120.0,     1.0 / 252.0, -1.0 / 240.0,
    1.0 / 132.0,  -691.0 / 32760.0, 1.0 / 12.0,  -3617.0 / 8160.0,
};

template <std::size_t N>
double taylor_no_constant(const std::array<double, N>& c, double t) {
  double acc = c[N - 1];
  for (std::size_t i = N - 1; i-- > 0;) acc = acc * t + c[i];
  return acc * t;
}

inline constexpr double kHalfLogTwoPiMinusHalf = 0.41893853320467274178;  // ln(2π)/2 - 1/2
inline constexpr double kLogGammaStirlingFrom = 13.0;
inline constexpr double kDigammaAsymptoticFrom = 10.0;

[[noreturn]] inline void throw_domain(const char* fn, double x) {
  throw DomainError(std::string(fn) + ": argument must be positive, got " + format_double(x));
}

}  // namespace detail

/// ln Γ(x) for x > 0.
///
/// The argument is mapped onto one of three regimes: Taylor expansions around
/// the zeros of ln Γ at 1 and 2 (x < 2.5), an upward product reduction into
/// [1.5, 2.5) for moderate x, and the Stirling series from x = 13 on.
inline double log_gamma(double x) {
  if (!(x > 0.0)) detail::throw_domain("log_gamma", x);
  if (std::isinf(x)) return x;
  if (x < 0.5) return detail::taylor_no_constant(detail::kLogGammaAt1, x) - std::log(x);
  if (x < 1.5) return detail::taylor_no_constant(detail::kLogGammaAt1, x - 1.0);
  if (x < 2.5) return detail::taylor_no_constant(detail::kLogGammaAt2, x - 2.0);
  if (x < detail::kLogGammaStirlingFrom) {
    double y = x;
    double prod = 1.0;
    while (y >= 2.5) {
      y -= 1.0;
      prod *= y;
    }
    return detail::taylor_no_constant(detail::kLogGammaAt2, y - 2.0) + std::log(prod);
  }
  const double inv = 1.0 / x;
  const double inv2 = inv * inv;
  double series = detail::kStirlingLogGamma.back();
  for (std::size_t i = detail::kStirlingLogGamma.size() - 1; i-- > 0;)
    series = series * inv2 + detail::kStirlingLogGamma[i];
  return (x - 0.5) * (std::log(x) - 1.0) + detail::kHalfLogTwoPiMinusHalf + series * inv;
}

namespace detail {

// ln Γ(x) carried in double-double on the Stirling range; below it the double
// kernel is exact enough because |ln Γ| stays under 20. `err` receives an
// absolute error estimate.
inline DD log_gamma_dd(double x, double& err) {
  if (x < kLogGammaStirlingFrom) {
    const double v = log_gamma(x);
    err = 4.0 * std::numeric_limits<double>::epsilon() * std::abs(v);
    return {v, 0.0};
  }
  const double inv = 1.0 / x;
  const double inv2 = inv * inv;
  double series = kStirlingLogGamma.back();
  for (std::size_t i = kStirlingLogGamma.size() - 1; i-- > 0;)
    series = series * inv2 + kStirlingLogGamma[i];
  const DD main = log_dd(x) * (x - 0.5) - DD{x, 0.0} + kHalfLogTwoPi;
  const DD v = main + DD{series * inv, 0.0};
  err = 1e-30 * std::abs(v.hi) + 4.0 * std::numeric_limits<double>::epsilon() * series * inv;
  return v;
}

}  // namespace detail

/// ψ(x) = Γ'(x)/Γ(x) for x > 0 (upward recurrence, then the asymptotic series).
inline double digamma(double x) {
  if (!(x > 0.0)) detail::throw_domain("digamma", x);
  if (std::isinf(x)) return x;
  double shift = 0.0;
  while (x < detail::kDigammaAsymptoticFrom) {
    shift += 1.0 / x;
    x += 1.0;
  }
  const double inv2 = 1.0 / (x * x);
  double series = detail::kStirlingDigamma.back();
  for (std::size_t i = detail::kStirlingDigamma.size() - 1; i-- > 0;)
    series = series * inv2 + detail::kStirlingDigamma[i];
  return std::log(x) - 0.5 / x - series * inv2 - shift;
}

namespace detail {

// ln Γ(a + k w) with the argument formed exactly: the rounding residue of
// a + k w is folded back in through ψ.
inline DD log_gamma_shifted_dd(double a, double k, double w, double& err) {
  const DD kw = two_prod(k, w);
  const DD x = two_sum(a, kw.hi);
  const double residue = x.lo + kw.lo;
  DD v = log_gamma_dd(x.hi, err);
  if (residue != 0.0) v = v + DD{digamma(x.hi) * residue, 0.0};
  return v;
}

}  // namespace detail

/// Γ(z + a) / Γ(z), evaluated as exp(ln Γ(z+a) - ln Γ(z)).
inline double gamma_ratio(double z, double a) {
  if (!(z > 0.0)) detail::throw_domain("gamma_ratio", z);
  if (!(a >= 0.0)) throw DomainError("gamma_ratio: shift must be non-negative, got " + format_double(a));
  if (a == 0.0) return 1.0;
  return std::exp(log_gamma(z + a) - log_gamma(z));
}

// Γ(z+a+b)/Γ(z+b) >= Γ(z+a)/Γ(z): the shifted gamma ratio grows with its base.
// With a = b this is Γ(z)Γ(z+2a) >= Γ(z+a)^2.
inline InequalityReport gamma_inequality_check(double z, double a, double b,
                                               const Tolerance& tol = {}) {
  if (!(z > 0.0)) detail::throw_domain("gamma_inequality_check", z);
  if (!(a >= 0.0) || !(b >= 0.0))
    throw DomainError("gamma_inequality_check: shifts must be non-negative");
  const double lhs = gamma_ratio(z + b, a);
  const double rhs = gamma_ratio(z, a);
  const double lg = std::abs(log_gamma(z + a + b)) + std::abs(log_gamma(z + a)) +
                    std::abs(log_gamma(z + b)) + std::abs(log_gamma(z));
  const double err = 4.0 * std::numeric_limits<double>::epsilon() * lg *
                     std::max(std::abs(lhs), std::abs(rhs));
  return make_report("gamma-ratio",
                     Echo().add("z", z).add("a", a).add("b", b).str(),
                     z, lhs, rhs, err, tol);
}

}  // namespace foxwright
