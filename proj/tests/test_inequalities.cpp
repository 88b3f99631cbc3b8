#include <foxwright/inequalities.hpp>
#include <foxwright/lemmas.hpp>
#include <foxwright/oracle.hpp>
#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace foxwright;

namespace {

constexpr double kE = 2.718281828459045235;

FoxWrightParams fw(std::vector<WeightedParam> up, std::vector<WeightedParam> lo) {
  return FoxWrightParams{std::move(up), std::move(lo)};
}

std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> g;
  for (int i = 0; i < n; ++i) g.push_back(a + (b - a) * i / (n - 1));
  return g;
}

// Oracle and fast path agree on the margin within the reported error bounds.
void expect_consistent(const InequalityReport& fast, const InequalityReport& hp) {
  EXPECT_EQ(fast.pass, hp.pass) << fast.params_echo;
  EXPECT_LE(std::abs(fast.margin - hp.margin),
            fast.err_estimate + hp.err_estimate + 1e-14 * std::max(std::abs(fast.lhs), 1.0))
      << fast.params_echo;
}

}  // namespace

TEST(TuranAlpha, ExponentialCase) {
  const auto p = fw({{1, 1}}, {{1, 1}});
  const auto r = turan_alpha_check(p, 1.0);
  EXPECT_TRUE(r.pass);
  EXPECT_EQ(r.suite_id, "turan-alpha");
  EXPECT_NEAR(r.margin, 3.0 * kE * kE, 1e-13);
  EXPECT_NEAR(turan_alpha_check(p, 0.0).margin, 1.0, 1e-15);
  EXPECT_GT(turan_alpha_check(p, 1e-6).margin, 0.0);
}

TEST(TuranAlpha, Examples) {
  const auto p = fw({{1.5, 0.5}}, {{1, 1}, {2, 0.5}});
  EXPECT_TRUE(turan_alpha_check(p, 2.0).pass);
  expect_consistent(turan_alpha_check(p, 2.0), turan_alpha_check(p, 2.0, TuranAlphaForm::fox_wright,
                                                                 OracleEvaluator(30)));
  EXPECT_TRUE(turan_alpha_check(fw({{1.3, 1}, {2.2, 1}}, {{0.7, 1}, {3.1, 1}}), 4.0,
                                TuranAlphaForm::pfq)
                  .pass);
}

TEST(TuranAlpha, Errors) {
  EXPECT_THROW(turan_alpha_check(fw({}, {{1, 1}}), 1.0), ParameterError);
  EXPECT_THROW(turan_alpha_check(fw({{1, 1}}, {{1, 1}}), -1.0), DomainError);
  EXPECT_THROW(turan_alpha_check(fw({{1, 0.5}}, {{1, 1}}), 1.0, TuranAlphaForm::pfq), ParameterError);
  EXPECT_THROW(turan_alpha_check(fw({{1, 2}}, {{1, 0.5}}), 1.0), DivergentSeries);
}

TEST(TuranBeta, MittagLefflerCase) {
  const auto p = fw({{1, 1}}, {{1, 1}});
  const auto r = turan_beta_check(p, 1.0, TuranBetaForm::mittag_leffler);
  EXPECT_TRUE(r.pass);
  EXPECT_NEAR(r.margin, 0.47624622100627988, 1e-15);
  EXPECT_NEAR(turan_beta_check(p, 1.0).margin, 0.47624622100627988, 1e-15);
  EXPECT_LE(std::abs(turan_beta_check(p, 0.0).margin), 1e-14);
}

TEST(TuranBeta, Examples) {
  EXPECT_TRUE(turan_beta_check(fw({}, {{0.8, 0.6}}), 3.0, TuranBetaForm::wright).pass);
  EXPECT_TRUE(turan_beta_check(fw({{1, 1}}, {{0.8, 0.6}}), 3.0,
                               TuranBetaForm::mittag_leffler_normalized)
                  .pass);
  EXPECT_TRUE(turan_beta_check(fw({{2.5, 1}}, {{1.2, 1}, {0.4, 1}}), 6.0, TuranBetaForm::pfq).pass);
  const auto p = fw({{2.1, 1.7}}, {{0.9, 2.3}, {1.4, 0.2}});
  expect_consistent(turan_beta_check(p, 7.5),
                    turan_beta_check(p, 7.5, TuranBetaForm::fox_wright, OracleEvaluator(30)));
}

TEST(TuranBeta, TightAtZero) {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> v(0.1, 5.0), w(0.0, 3.0);
  for (int i = 0; i < 50; ++i) {
    const auto p = fw({{1, 1}}, {{v(rng), w(rng) + 1.0}});
    const auto r = turan_beta_check(p, 0.0, TuranBetaForm::mittag_leffler);
    // Only the k = 0 terms survive: 1/(G(b)G(b+2)) - b/(b+1)/G(b+1)^2 = 0.
    EXPECT_LE(std::abs(r.margin), 1e-14 * std::max(1.0, std::abs(r.lhs))) << r.params_echo;
  }
}

TEST(TuranBeta, Errors) {
  EXPECT_THROW(turan_beta_check(fw({{1, 1}}, {}), 1.0), ParameterError);
  EXPECT_THROW(turan_beta_check(fw({{2, 1}}, {{1, 1}}), 1.0, TuranBetaForm::mittag_leffler),
               ParameterError);
  EXPECT_THROW(turan_beta_check(fw({{1, 1}}, {{1, 1}}), 1.0, TuranBetaForm::wright), ParameterError);
}

TEST(TwoF2Product, Examples) {
  EXPECT_THROW(corollary3_2f2_check(1, 2, 3, -1.0), ParameterError);
  const auto aux = product_aux(3, 1.5, 1);
  EXPECT_DOUBLE_EQ(aux.f, 1.25);
  EXPECT_DOUBLE_EQ(aux.g, 0.25);
  EXPECT_DOUBLE_EQ(aux.h, 0.75);
  const auto r = corollary3_2f2_check(3, 1.5, 1, -1.0);
  EXPECT_TRUE(r.pass);
  EXPECT_FALSE(r.numerical_failure);
  EXPECT_NEAR(r.margin, 2.37896290333, 1e-10);
  expect_consistent(r, corollary3_2f2_check(3, 1.5, 1, -1.0, OracleEvaluator(30)));
  EXPECT_LE(std::abs(corollary3_2f2_check(3, 1.5, 1, -1e-9).margin), 1e-8);
}

TEST(TwoF2Product, Errors) {
  EXPECT_THROW(corollary3_2f2_check(3, 1.5, 3, -1.0), SingularTransform);
  EXPECT_THROW(corollary3_2f2_check(3, 1.5, 1, 1.0), DomainError);
  EXPECT_THROW(corollary3_2f2_check(3, 1.5, 1, 0.0), DomainError);
}

TEST(TwoF2Product, CancellationIsReported) {
  const auto r = corollary3_2f2_check(3, 1.5, 1, -60.0);
  if (r.numerical_failure) {
    EXPECT_FALSE(r.pass);
  } else {
    EXPECT_TRUE(r.pass);
  }
  const auto forced = corollary3_2f2_check(3, 1.5, 1, -1.0, SeriesEvaluator{}, Tolerance{}, 0.5);
  EXPECT_TRUE(forced.numerical_failure);
}

TEST(RatioMonotone, BesselRatio) {
  const auto p = fw({{1, 1}}, {{1, 1}, {1, 1}});
  const auto r = ratio_monotonicity_check(p, Slot::beta, 2.0, 1.0, {1.0, 4.0});
  EXPECT_TRUE(r.pass) << r.detail;
  // Ratio values themselves, from the Bessel series.
  const auto q = fw({{1, 1}}, {{2, 1}, {1, 1}});
  const double r1 = eval(q, 1.0).value / eval(p, 1.0).value;
  const double r4 = eval(q, 4.0).value / eval(p, 4.0).value;
  EXPECT_NEAR(r1, 0.6977746579640080, 1e-15);
  EXPECT_NEAR(r4, 0.4317613055122753, 1e-15);
}

TEST(RatioMonotone, MittagLeffler) {
  const auto r =
      ratio_monotonicity_check(fw({{1, 1}}, {{1.5, 0.7}}), Slot::beta, 2.5, 1.5, linspace(0.5, 10, 20));
  EXPECT_TRUE(r.pass) << r.detail;
}

TEST(RatioMonotone, AlphaSlot) {
  const auto r = ratio_monotonicity_check(fw({{1.5, 0.8}}, {{2, 1.3}, {0.6, 0.4}}), Slot::alpha, 1.0,
                                          2.5, linspace(0.5, 10, 20));
  EXPECT_TRUE(r.pass) << r.detail;
}

TEST(RatioMonotone, Errors) {
  const auto p = fw({{1, 1}}, {{1, 1}});
  EXPECT_THROW(ratio_monotonicity_check(p, Slot::beta, 1.0, 1.0, {1.0, 2.0}), ParameterError);
  EXPECT_THROW(ratio_monotonicity_check(p, Slot::beta, 2.0, 1.0, {2.0, 1.0}), GridError);
}

TEST(TailTuran, Examples) {
  const auto p = fw({{1, 0}}, {{1, 1}});
  const auto r = tail_turan_check(p, 0, 1.0);
  EXPECT_TRUE(r.pass);
  EXPECT_NEAR(r.margin, 0.040311023247949549, 1e-15);
  const auto s = tail_turan_check(p, 0, 1e-3);
  EXPECT_TRUE(s.pass);
  EXPECT_GT(s.margin, 0.0);
  EXPECT_THROW(tail_turan_check(fw({{1, 0.5}}, {{1, 1}}), 0, 1.0), ParameterError);
  expect_consistent(tail_turan_check(fw({{2.2, 0}}, {{0.7, 1.4}}), 3, 5.0),
                    tail_turan_check(fw({{2.2, 0}}, {{0.7, 1.4}}), 3, 5.0, OracleEvaluator(30)));
}

TEST(KnBound, SharpConstant) {
  const auto p = fw({}, {{1, 1}});
  EXPECT_NEAR(kn_constant(p, 0), 4.0 / 9.0, 1e-15);
  EXPECT_NEAR(kn_limit(p, 0), 4.0 / 9.0, 1e-15);
  EXPECT_NEAR(kn_value(p, 0, 1e-6).v, 4.0 / 9.0, 1e-4);
  const auto r = kn_value_and_bound(p, 0, 1.0);
  EXPECT_TRUE(r.pass);
  EXPECT_NEAR(r.lhs, 0.48430235481906519, 1e-14);
  EXPECT_NEAR(r.margin, 0.48430235481906519 - 4.0 / 9.0, 1e-14);
}

TEST(KnBound, LimitMatchesClosedForm) {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> v(0.1, 5.0), w(0.0, 3.0);
  for (int i = 0; i < 50; ++i) {
    const auto p = fw({{v(rng), 0}}, {{v(rng), w(rng) + 0.1}, {v(rng), w(rng)}});
    const long n = i % 4;
    EXPECT_NEAR(kn_limit(p, n), kn_constant(p, n), 1e-12 * kn_constant(p, n));
  }
}

TEST(KnBound, Monotone) {
  EXPECT_TRUE(kn_monotone_check(fw({}, {{1, 1}}), 0, linspace(0.2, 10, 50)).pass);
  EXPECT_TRUE(kn_monotone_check(fw({{1.7, 0}}, {{0.6, 1.5}}), 2, linspace(0.5, 10, 20)).pass);
  EXPECT_THROW(kn_monotone_check(fw({}, {{1, 1}}), 0, {1.0, 0.5}), GridError);
}

TEST(Chi, Examples) {
  EXPECT_EQ(omega_series(1.5, 1.5, 0.5, 1.0, 2.0, 60).v, 0.0);
  EXPECT_TRUE(chi_check(2, 1, 1, {1.0, 2.0}, 1.0).pass);
  EXPECT_LE(chi_value(2, 1, 1, 1.0, 1.0).v, chi_value(2, 1, 1, 2.0, 1.0).v);
  EXPECT_TRUE(chi_check(1.5, 1.5, 0.5, linspace(0.5, 4, 8), 2.0).pass);
  EXPECT_THROW(chi_check(1, 2, 1, {1.0, 2.0}, 1.0), DomainError);
  EXPECT_THROW(chi_check(2, 1, 1, {2.0, 1.0}, 1.0), GridError);
}

TEST(Chi, OmegaIsScaledDerivativeOfRatio) {
  // Omega = S1^2 d/dbeta1 (S2/S1), S1 = 1Psi2[(a,1);(b1+B1,B1),(b2,1)],
  // S2 = 1Psi2[(a+1,1);(b1+B1,B1),(b2+1,1)].
  std::mt19937_64 rng(43);
  std::uniform_real_distribution<double> v(0.5, 4.0), w(0.2, 2.0), zd(0.2, 6.0);
  for (int i = 0; i < 20; ++i) {
    const double b2 = v(rng), a = b2 + v(rng), B1 = w(rng), b1 = v(rng), z = zd(rng);
    auto ratio = [&](double b) {
      return eval(psi12(a + 1.0, 1.0, b + B1, B1, b2 + 1.0), z).value /
             eval(psi12(a, 1.0, b + B1, B1, b2), z).value;
    };
    const double s1 = eval(psi12(a, 1.0, b1 + B1, B1, b2), z).value;
    const double fd = finite_difference(ratio, b1, 1e-5);
    const double om = omega_series(a, b2, B1, b1, z, 400).v;
    EXPECT_NEAR(om, s1 * s1 * fd, 1e-6 * std::abs(om) + 1e-12) << a << " " << b2 << " " << B1;
  }
}

TEST(Lazarevic, Examples) {
  EXPECT_TRUE(lazarevic_check(2, 1.5, 1, 0.5, 1.0).pass);
  EXPECT_LE(std::abs(lazarevic_check(2, 1.5, 1, 0.5, 1e-8).margin), 1e-6);
  EXPECT_THROW(lazarevic_check(1, 1.5, 2, 0.5, 1.0), DomainError);
  expect_consistent(lazarevic_check(2, 1.5, 1, 0.5, 3.0),
                    lazarevic_check(2, 1.5, 1, 0.5, 3.0, LazarevicForm::general, OracleEvaluator(30)));
}

TEST(Lazarevic, HyperbolicAnchor) {
  const auto r = lazarevic_check(0.7, 0.5, 0.7, 1.0, 1.0, LazarevicForm::hyperbolic);
  const double s = std::sinh(1.0);
  EXPECT_TRUE(r.pass);
  EXPECT_NEAR(r.lhs, s * s * s, 1e-15);
  EXPECT_NEAR(r.rhs, std::cosh(1.0), 1e-15);
  EXPECT_NEAR(r.margin, 0.0799872018043806, 1e-14);
}

TEST(Lazarevic, ReductionsMatchGeneralForm) {
  const auto g = lazarevic_check(1, 1.3, 0.8, 0.9, 2.0);
  const auto ml = lazarevic_check(1, 1.3, 0.8, 0.9, 2.0, LazarevicForm::mittag_leffler);
  EXPECT_NEAR(g.lhs, ml.lhs, 1e-14 * g.lhs);
  EXPECT_NEAR(g.rhs, ml.rhs, 1e-14 * g.rhs);
  EXPECT_TRUE(lazarevic_check(2.5, 1.3, 0.8, 1.0, 2.0, LazarevicForm::f12).pass);
  EXPECT_TRUE(lazarevic_check(1.2, 0.9, 1.2, 0.7, 2.0, LazarevicForm::wright).pass);
  EXPECT_TRUE(lazarevic_check(2, 2.4, 2, 1.0, 3.0, LazarevicForm::bessel).pass);
  EXPECT_THROW(lazarevic_check(2, 1.3, 0.8, 0.9, 2.0, LazarevicForm::mittag_leffler), ParameterError);
}

TEST(Wilker, Examples) {
  EXPECT_TRUE(wilker_check(3, 1, 2, 2, 0.5).pass);
  EXPECT_LE(std::abs(wilker_check(3, 1, 2, 2, 1e-8).margin), 1e-6);
  EXPECT_THROW(wilker_check(1, 1, 2, 2, 0.5), DomainError);
  expect_consistent(wilker_check(3, 1, 2, 2, 4.0),
                    wilker_check(3, 1, 2, 2, 4.0, WilkerForm::general, OracleEvaluator(30)));
}

TEST(Wilker, HyperbolicAnchor) {
  const auto r = wilker_check(0.7, 0.5, 0.7, 1.0, 1.0, WilkerForm::hyperbolic);
  const double s = std::sinh(1.0);
  EXPECT_TRUE(r.pass);
  EXPECT_NEAR(r.lhs, s * s + std::tanh(1.0), 1e-15);
  EXPECT_NEAR(r.margin, 0.14269200149758062, 1e-14);
}

TEST(Wilker, Reductions) {
  const auto g = wilker_check(1, 1.3, 0.8, 0.9, 2.0);
  const auto ml = wilker_check(1, 1.3, 0.8, 0.9, 2.0, WilkerForm::mittag_leffler);
  EXPECT_NEAR(g.lhs, ml.lhs, 1e-14 * g.lhs);
  EXPECT_TRUE(wilker_check(2.5, 1.3, 0.8, 1.0, 2.0, WilkerForm::f12).pass);
  EXPECT_TRUE(wilker_check(1.2, 0.9, 1.2, 0.7, 2.0, WilkerForm::remark3_59_reconstructed).pass);
  EXPECT_TRUE(wilker_check(2, 2.4, 2, 1.0, 3.0, WilkerForm::bessel).pass);
}

TEST(LogConcave, BesselExample) {
  const auto p = fw({{1, 1}}, {{1, 1}, {1, 1}});
  EXPECT_NEAR(eval_normalized(p, 0.5).value, 1.5660829297563505, 1e-15);
  EXPECT_NEAR(eval_normalized(p, 1.5).value, 3.1655890675997796, 1e-15);
  const double d2 = std::log(eval_normalized(p, 0.5).value) + std::log(eval_normalized(p, 1.5).value) -
                    2.0 * std::log(eval_normalized(p, 1.0).value);
  EXPECT_NEAR(d2, -0.047070372794845, 1e-13);
  const auto reps = logconcavity_suite(p, 0.5, 1.5);
  ASSERT_EQ(reps.size(), 3u);
  for (const auto& r : reps) EXPECT_TRUE(r.pass) << r.params_echo;
  const auto e = logconcavity_suite(p, 1.0, 1.0);
  EXPECT_NEAR(e[0].margin, 0.0, 1e-15);
  EXPECT_NEAR(e[1].lhs, kE, 1e-15);
  EXPECT_NEAR(e[1].rhs, 2.2795853023360673, 1e-15);
}

TEST(LogConcave, FormsAndErrors) {
  for (const auto& r : logconcavity_suite(fw({{1, 1}}, {{1.4, 0.6}, {0.8, 1}}), 0.7, 3.2,
                                          LogConcaveForm::mittag_leffler))
    EXPECT_TRUE(r.pass) << r.params_echo;
  for (const auto& r : logconcavity_suite(fw({{2.5, 1}}, {{1.4, 1}, {0.8, 1}}), 0.7, 3.2,
                                          LogConcaveForm::f12))
    EXPECT_TRUE(r.pass) << r.params_echo;
  EXPECT_THROW(logconcavity_suite(fw({{0.5, 1}}, {{1, 1}, {1, 1}}), 1.0, 2.0), DomainError);
  EXPECT_THROW(logconcavity_suite(fw({{1, 1}}, {{1, 1}}), 1.0, 2.0), ParameterError);
  EXPECT_THROW(logconcavity_suite(fw({{1, 1}}, {{1, 1}, {1, 1}}), 0.0, 2.0), DomainError);
}

TEST(Tolerance, BandDefinesPass) {
  const auto r = make_report("x", "{}", 1.0, 1.0, 1.0 + 5e-11, 0.0, Tolerance{});
  EXPECT_TRUE(r.pass);
  const auto s = make_report("x", "{}", 1.0, 1.0, 1.0 + 2e-10, 0.0, Tolerance{});
  EXPECT_FALSE(s.pass);
}
