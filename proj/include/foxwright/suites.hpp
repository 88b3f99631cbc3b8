#pragma once

// Grid specifications, instance samplers and the parallel suite runner used
// by the command-line tool and the acceptance harness.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <exception>
#include <functional>
#include <map>
#include <mutex>
#include <ostream>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "inequalities.hpp"
#include "lemmas.hpp"
#include "params_json.hpp"

namespace foxwright {

struct Range {
  double lo = 0.0;
  double hi = 0.0;
};

enum class GridMode { random, lattice };

struct GridSpec {
  std::map<std::string, Range> ranges;
  long samples = 1000;
  std::uint64_t seed = 0;
  GridMode mode = GridMode::random;

  bool has(const std::string& k) const { return ranges.count(k) != 0; }
  Range get(const std::string& k, Range def) const {
    auto it = ranges.find(k);
    return it == ranges.end() ? def : it->second;
  }
};

inline GridSpec grid_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw GridError("grid file must hold a JSON object");
  GridSpec g;
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string& k = it.key();
    const auto& v = it.value();
    if (k == "samples") {
      if (!v.is_number_integer() || v.get<long>() < 1) throw GridError("samples must be >= 1");
      g.samples = v.get<long>();
    } else if (k == "seed") {
      if (!v.is_number_integer()) throw GridError("seed must be an integer");
      g.seed = v.get<std::uint64_t>();
    } else if (k == "mode") {
      if (v == "random")
        g.mode = GridMode::random;
      else if (v == "lattice")
        g.mode = GridMode::lattice;
      else
        throw GridError("mode must be \"random\" or \"lattice\"");
    } else {
      if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
        throw GridError("range \"" + k + "\" must be [lo, hi]");
      const Range r{v[0].get<double>(), v[1].get<double>()};
      if (!std::isfinite(r.lo) || !std::isfinite(r.hi) || r.lo > r.hi)
        throw GridError("range \"" + k + "\" is empty");
      g.ranges[k] = r;
    }
  }
  return g;
}

/// Suite identifiers accepted by check/sweep, and their variants. The first
/// variant is the general statement.
inline const std::map<std::string, std::vector<std::string>>& suite_variants() {
  static const std::map<std::string, std::vector<std::string>> m{
      {suite::kTuranAlpha, {"general", "pfq"}},
      {suite::kTuranBeta,
       {"general", "pfq", "mittag-leffler", "wright", "mittag-leffler-normalized"}},
      {suite::kProduct2F2, {"general"}},
      {suite::kRatioMonotone, {"beta", "alpha", "mittag-leffler"}},
      {suite::kTailTuran, {"general"}},
      {suite::kKnBound, {"value", "monotone"}},
      {suite::kChi, {"general"}},
      {suite::kLazarevic, {"general", "1f2", "mittag-leffler", "wright", "bessel", "hyperbolic"}},
      {suite::kWilker,
       {"general", "1f2", "mittag-leffler", "remark3-59-reconstructed", "bessel", "hyperbolic"}},
      {suite::kLogConcave, {"general", "pfq", "mittag-leffler"}},
  };
  return m;
}

inline const std::map<std::string, std::vector<std::string>>& explore_variants() {
  static const std::map<std::string, std::vector<std::string>> m{
      {"problem1-kn", {"general", "zero-a"}},
      {"problem2-xi", {"general", "tilde-1f2"}},
  };
  return m;
}

/// One concrete checker invocation.
struct Instance {
  std::string suite;
  std::string variant;
  FoxWrightParams p;
  double alpha1 = 0.0, beta1 = 0.0, beta2 = 0.0, B1 = 0.0;
  double z = 0.0, z2 = 0.0;
  long n = 0;
  Slot slot = Slot::beta;
  double v1 = 0.0, v2 = 0.0;
  std::vector<double> grid;
};

namespace detail {

// Unit draws in [0, 1): seeded 64-bit PRNG, or an additive-recurrence
// (Kronecker) lattice advanced once per attempt.
class UnitSource {
 public:
  UnitSource(GridMode mode, std::uint64_t seed) : mode_(mode), rng_(seed) {}

  void next_attempt() {
    ++index_;
    dim_ = 0;
  }

  double next() {
    if (mode_ == GridMode::random) return static_cast<double>(rng_() >> 11) * 0x1.0p-53;
    static const double primes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53,
                                    59, 61, 67, 71, 73, 79, 83, 89, 97, 101, 103, 107, 109, 113};
    const double s = std::sqrt(primes[dim_++ % 30]);
    const double a = s - std::floor(s);
    const double x = 0.5 + static_cast<double>(index_) * a;
    return x - std::floor(x);
  }

 private:
  GridMode mode_;
  std::mt19937_64 rng_;
  long index_ = 0;
  int dim_ = 0;
};

inline constexpr Range kValueRange{0.1, 5.0};
inline constexpr Range kWeightRange{0.0, 3.0};

// True when the series at z has a representable peak term and decays within
// the default term budget.
inline bool within_extent(const FoxWrightParams& p, double z, double max_log = 600.0,
                          long max_terms = 4000) {
  if (!(epsilon(p) > 0.0)) return false;
  if (z == 0.0) return true;
  const long guard = guard_index(p);
  double peak = -std::numeric_limits<double>::infinity();
  int small = 0;
  for (long k = 0; k < max_terms; ++k) {
    const LogTerm t = log_term(p, k, z);
    if (t.terminal) return true;
    if (t.log > max_log) return false;
    peak = std::max(peak, t.log);
    if (k > guard && t.log < peak - 45.0) {
      if (++small >= 3) return true;
    } else {
      small = 0;
    }
  }
  return false;
}

class Sampler {
 public:
  Sampler(const GridSpec& g, Range z_default, std::uint64_t seed)
      : g_(g), src_(g.mode, seed), z_default_(z_default) {}

  void next_attempt() { src_.next_attempt(); }

  // Uniform on (lo, hi].
  double value(const std::string& key, Range def) {
    const Range r = g_.get(key, def);
    return r.hi - src_.next() * (r.hi - r.lo);
  }
  // Uniform on [lo, hi].
  double weight(const std::string& key, Range def) {
    const Range r = g_.get(key, def);
    return r.lo + src_.next() * (r.hi - r.lo);
  }
  long integer(const std::string& key, long lo, long hi) {
    const Range r = g_.get(key, {static_cast<double>(lo), static_cast<double>(hi)});
    const long a = std::max(lo, static_cast<long>(std::ceil(r.lo)));
    const long b = std::min(hi, static_cast<long>(std::floor(r.hi)));
    if (a > b) throw GridError("range \"" + key + "\" has no admissible integer");
    return a + static_cast<long>(src_.next() * static_cast<double>(b - a + 1));
  }
  double z() { return value("z", z_default_); }
  Range z_range() const { return g_.get("z", z_default_); }

  std::vector<double> z_grid(int points) {
    const Range r = z_range();
    std::vector<double> out;
    for (int i = 1; i <= points; ++i) out.push_back(r.lo + (r.hi - r.lo) * i / points);
    return out;
  }

  FoxWrightParams fox_wright(int p, int q, bool unit_weights, bool zero_upper) {
    FoxWrightParams out;
    for (int i = 0; i < p; ++i)
      out.upper.push_back({value("alpha", kValueRange),
                           zero_upper ? 0.0 : unit_weights ? 1.0 : weight("A", kWeightRange)});
    for (int j = 0; j < q; ++j)
      out.lower.push_back({value("beta", kValueRange), unit_weights ? 1.0 : weight("B", kWeightRange)});
    return out;
  }

  const GridSpec& spec() const { return g_; }

 private:
  const GridSpec& g_;
  UnitSource src_;
  Range z_default_;
};

inline void require_nonnegative_ranges(const GridSpec& g) {
  for (const char* k : {"alpha", "beta", "alpha1", "beta1", "beta2", "v", "A", "B", "B1"})
    if (g.has(k) && g.get(k, {}).lo < 0.0)
      throw GridError(std::string("range \"") + k + "\" must be non-negative");
}

inline void require_pair_order(const GridSpec& g, const char* upper, const char* lower,
                               const char* what) {
  const Range a = g.get(upper, kValueRange), b = g.get(lower, kValueRange);
  if (g.has(upper) && g.has(lower) ? a.lo < b.hi : a.hi <= b.lo)
    throw GridError(std::string("grid violates ") + what);
}

inline bool is_grid_suite(const std::string& suite, const std::string& variant) {
  return suite == suite::kRatioMonotone || suite == suite::kChi ||
         (suite == suite::kKnBound && variant == "monotone") || suite == "problem1-kn" ||
         suite == "problem2-xi";
}

inline Range default_z(const std::string& suite, const std::string& variant) {
  if (suite == suite::kProduct2F2) return {-5.0, 0.0};
  if (is_grid_suite(suite, variant)) return {0.0, 10.0};
  return {0.0, 20.0};
}

inline void validate_grid(const std::string& suite, const GridSpec& g) {
  require_nonnegative_ranges(g);
  if (g.has("z")) {
    const Range z = g.get("z", {});
    if (suite == suite::kProduct2F2) {
      if (!(z.hi <= 0.0) || !(z.lo < z.hi)) throw GridError("corollary3-2f2 needs z in [lo, hi) with hi <= 0");
    } else if (z.lo < 0.0) {
      throw GridError("z range must be non-negative for " + suite);
    }
  }
  if (suite == suite::kLazarevic || suite == suite::kWilker || suite == suite::kChi)
    require_pair_order(g, "alpha1", "beta2", "alpha1 >= beta2");
  if (suite == suite::kLogConcave) require_pair_order(g, "alpha", "beta", "alpha_i >= beta_{i+1}");
}

// Draws one candidate for (suite, variant); returns false to reject it.
inline bool draw(Sampler& s, const std::string& suite, const std::string& variant, Instance& in) {
  in = Instance{};
  in.suite = suite;
  in.variant = variant;
  auto ok = [](const FoxWrightParams& p, double z) { return within_extent(p, z); };

  if (suite == suite::kTuranAlpha) {
    const bool pfq = variant == "pfq";
    const int p = static_cast<int>(s.integer("p", 1, 3)), q = static_cast<int>(s.integer("q", 0, 3));
    in.p = s.fox_wright(p, q, pfq, false);
    in.z = s.z();
    auto p2 = with_upper(in.p, 0, in.p.upper[0].value + 2.0);
    return ok(in.p, in.z) && ok(p2, in.z) && ok(shifted(in.p), in.z);
  }
  if (suite == suite::kTuranBeta) {
    in.z = s.z();
    if (variant == "general" || variant == "pfq") {
      const int p = static_cast<int>(s.integer("p", 0, 3)), q = static_cast<int>(s.integer("q", 1, 3));
      in.p = s.fox_wright(p, q, variant == "pfq", false);
    } else if (variant == "mittag-leffler") {
      const int q = static_cast<int>(s.integer("q", 1, 3));
      in.p = s.fox_wright(0, q, false, false);
      in.p.upper = {{1.0, 1.0}};
    } else if (variant == "wright") {
      in.p = s.fox_wright(0, 1, false, false);
    } else {
      in.p = s.fox_wright(0, 1, false, false);
      in.p.upper = {{1.0, 1.0}};
    }
    return ok(in.p, in.z);
  }
  if (suite == suite::kProduct2F2) {
    in.alpha1 = s.value("alpha1", kValueRange);
    in.beta1 = s.value("beta1", kValueRange);
    in.beta2 = s.value("beta2", kValueRange);
    in.z = s.weight("z", {-5.0, 0.0});
    if (!(in.z < 0.0) || in.alpha1 == in.beta2) return false;
    const auto x = product_aux(in.alpha1, in.beta1, in.beta2);
    return x.f > 0.0 && x.g > 0.0 && x.h > 0.0;
  }
  if (suite == suite::kRatioMonotone) {
    in.grid = s.z_grid(20);
    in.v1 = s.value("v", kValueRange);
    in.v2 = s.value("v", kValueRange);
    if (in.v1 == in.v2) return false;
    if (variant == "alpha") {
      in.slot = Slot::alpha;
      in.p = s.fox_wright(static_cast<int>(s.integer("p", 1, 3)),
                          static_cast<int>(s.integer("q", 0, 3)), false, false);
    } else if (variant == "beta") {
      in.p = s.fox_wright(static_cast<int>(s.integer("p", 0, 3)),
                          static_cast<int>(s.integer("q", 1, 3)), false, false);
    } else {
      in.p = s.fox_wright(0, 1, false, false);
      in.p.upper = {{1.0, 1.0}};
      if (in.p.lower[0].weight == 0.0) return false;
    }
    const double zmax = in.grid.back();
    for (double v : {in.v1, in.v2}) {
      const auto q = in.slot == Slot::beta ? with_lower(in.p, 0, v) : with_upper(in.p, 0, v);
      if (!ok(q, zmax) || !ok(shifted(q), zmax)) return false;
    }
    return true;
  }
  if (suite == suite::kTailTuran || suite == suite::kKnBound) {
    const int p = static_cast<int>(s.integer("p", 0, 3)), q = static_cast<int>(s.integer("q", 1, 3));
    in.p = s.fox_wright(p, q, false, true);
    in.n = s.integer("n", 0, 5);
    if (suite == suite::kKnBound && variant == "monotone") {
      in.grid = s.z_grid(20);
      in.z = in.grid.back();
    } else {
      in.z = s.z();
    }
    return ok(in.p, in.z);
  }
  if (suite == suite::kChi) {
    in.alpha1 = s.value("alpha1", kValueRange);
    in.beta2 = s.value("beta2", kValueRange);
    if (in.alpha1 < in.beta2) return false;
    in.B1 = s.weight("B1", kWeightRange);
    in.z = s.z();
    const Range b = s.spec().get("beta1", kValueRange);
    for (int i = 1; i <= 20; ++i) in.grid.push_back(b.lo + (b.hi - b.lo) * i / 20);
    return ok(psi12(in.alpha1, 1.0, in.grid.front(), in.B1, in.beta2), in.z) &&
           ok(psi12(in.alpha1 + 1.0, 1.0, in.grid.front() + in.B1, in.B1, in.beta2 + 1.0), in.z);
  }
  if (suite == suite::kLazarevic || suite == suite::kWilker) {
    in.z = s.z();
    in.beta1 = s.value("beta1", kValueRange);
    in.B1 = s.weight("B1", kWeightRange);
    in.alpha1 = s.value("alpha1", kValueRange);
    in.beta2 = s.value("beta2", kValueRange);
    if (variant == "1f2") in.B1 = 1.0;
    if (variant == "mittag-leffler") {
      in.alpha1 = 1.0;
      if (in.beta2 > 1.0) return false;
    }
    if (variant == "wright" || variant == "remark3-59-reconstructed") in.beta2 = in.alpha1;
    if (variant == "bessel" || variant == "hyperbolic") {
      in.B1 = 1.0;
      in.alpha1 = in.beta2 = 1.0;
      if (variant == "hyperbolic") in.beta1 = 0.5;
      return ok(FoxWrightParams{{}, {{in.beta1 + 1.0, 1.0}}}, 0.25 * in.z * in.z);
    }
    if (in.alpha1 < in.beta2) return false;
    return ok(psi12(in.alpha1, 1.0, in.beta1, in.B1, in.beta2), in.z) &&
           ok(psi12(in.alpha1, 1.0, in.beta1 + 1.0, in.B1, in.beta2), in.z);
  }
  if (suite == suite::kLogConcave) {
    const int p = variant == "mittag-leffler" ? 1 : static_cast<int>(s.integer("p", 1, 3));
    in.p.lower.push_back({s.value("beta1", kValueRange),
                          variant == "pfq" ? 1.0 : s.weight("B1", kWeightRange)});
    for (int i = 0; i < p; ++i) {
      const double a = variant == "mittag-leffler" ? 1.0 : s.value("alpha", kValueRange);
      const double b = s.value("beta", kValueRange);
      if (a < b) return false;
      in.p.upper.push_back({a, 1.0});
      in.p.lower.push_back({b, 1.0});
    }
    in.z = s.z();
    in.z2 = s.z();
    const double zmax = std::max(in.z, in.z2);
    return ok(in.p, zmax) && ok(shifted(in.p), zmax);
  }
  if (suite == "problem1-kn") {
    const int p = static_cast<int>(s.integer("p", 0, 3)), q = static_cast<int>(s.integer("q", 1, 3));
    in.p = s.fox_wright(p, q, false, variant == "zero-a");
    in.n = s.integer("n", 0, 5);
    in.grid = s.z_grid(20);
    return ok(in.p, in.grid.back());
  }
  if (suite == "problem2-xi") {
    if (variant == "tilde-1f2") {
      const double a = s.value("alpha1", kValueRange), b2 = s.value("beta2", kValueRange);
      if (a < b2) return false;
      in.p = psi12(a, 1.0, s.value("beta1", kValueRange), s.weight("B1", kWeightRange), b2);
    } else {
      const int p = static_cast<int>(s.integer("p", 0, 3)), q = static_cast<int>(s.integer("q", 1, 3));
      in.p = s.fox_wright(p, q, false, false);
    }
    in.grid = s.z_grid(20);
    const auto p1 = with_lower(in.p, 0, in.p.lower[0].value + 1.0);
    const double zmax = in.grid.back();
    return ok(in.p, zmax) && ok(p1, zmax) && ok(shifted(in.p), zmax) && ok(shifted(p1), zmax);
  }
  throw GridError("unknown suite " + suite);
}

}  // namespace detail

inline bool is_suite(const std::string& s) { return suite_variants().count(s) != 0; }
inline bool is_explore_suite(const std::string& s) { return explore_variants().count(s) != 0; }

inline const std::vector<std::string>& variants_of(const std::string& suite) {
  if (is_suite(suite)) return suite_variants().at(suite);
  if (is_explore_suite(suite)) return explore_variants().at(suite);
  throw GridError("unknown suite " + suite);
}

/// Deterministic draw of `g.samples` admissible instances. An empty variant
/// cycles through all variants of the suite.
inline std::vector<Instance> sample_instances(const std::string& suite, const std::string& variant,
                                              const GridSpec& g) {
  const auto& vs = variants_of(suite);
  if (!variant.empty() && std::find(vs.begin(), vs.end(), variant) == vs.end())
    throw GridError("unknown variant " + variant + " for " + suite);
  detail::validate_grid(suite, g);
  std::vector<Instance> out;
  out.reserve(static_cast<std::size_t>(g.samples));
  // One sampler per variant, each with its own stream derived from the seed.
  std::map<std::string, detail::Sampler> samplers;
  for (long i = 0; i < g.samples; ++i) {
    const std::string v = variant.empty() ? vs[static_cast<std::size_t>(i) % vs.size()] : variant;
    auto it = samplers.find(v);
    if (it == samplers.end()) {
      const auto idx = static_cast<std::uint64_t>(std::find(vs.begin(), vs.end(), v) - vs.begin());
      it = samplers
               .emplace(v, detail::Sampler(g, detail::default_z(suite, v),
                                           g.seed + 0x9E3779B97F4A7C15ull * idx))
               .first;
    }
    Instance in;
    bool found = false;
    for (int attempt = 0; attempt < 20000 && !found; ++attempt) {
      it->second.next_attempt();
      found = detail::draw(it->second, suite, v, in);
    }
    if (!found) throw GridError("no admissible instance found for " + suite + "/" + v);
    out.push_back(std::move(in));
  }
  return out;
}

/// Compact JSON echo of an instance's inputs, used for failure rows.
inline std::string instance_echo(const Instance& in) {
  Echo e;
  if (!in.p.upper.empty() || !in.p.lower.empty()) e = detail::echo_params(in.p);
  if (in.alpha1 != 0.0 || in.beta1 != 0.0)
    e.add("alpha1", in.alpha1).add("beta1", in.beta1).add("beta2", in.beta2).add("B1", in.B1);
  e.add("variant", in.variant);
  return e.str();
}

/// Runs the checker behind an instance. Numerical breakdowns become
/// numerical-failure reports; parameter and domain errors propagate.
template <class Ev>
std::vector<InequalityReport> run_instance(const Instance& in, const Ev& ev,
                                           const Tolerance& tol) {
  const std::string& v = in.variant;
  try {
    if (in.suite == suite::kTuranAlpha)
      return {turan_alpha_check(in.p, in.z, v == "pfq" ? TuranAlphaForm::pfq : TuranAlphaForm::fox_wright,
                                ev, tol)};
    if (in.suite == suite::kTuranBeta) {
      TuranBetaForm f = TuranBetaForm::fox_wright;
      if (v == "pfq") f = TuranBetaForm::pfq;
      if (v == "mittag-leffler") f = TuranBetaForm::mittag_leffler;
      if (v == "wright") f = TuranBetaForm::wright;
      if (v == "mittag-leffler-normalized") f = TuranBetaForm::mittag_leffler_normalized;
      return {turan_beta_check(in.p, in.z, f, ev, tol)};
    }
    if (in.suite == suite::kProduct2F2)
      return {corollary3_2f2_check(in.alpha1, in.beta1, in.beta2, in.z, ev, tol)};
    if (in.suite == suite::kRatioMonotone)
      return {ratio_monotonicity_check(in.p, in.slot, in.v1, in.v2, in.grid, ev, tol)};
    if (in.suite == suite::kTailTuran) return {tail_turan_check(in.p, in.n, in.z, ev, tol)};
    if (in.suite == suite::kKnBound) {
      if (v == "monotone") return {kn_monotone_check(in.p, in.n, in.grid, ev, tol)};
      return {kn_value_and_bound(in.p, in.n, in.z, ev, tol)};
    }
    if (in.suite == suite::kChi) return {chi_check(in.alpha1, in.beta2, in.B1, in.grid, in.z, ev, tol)};
    if (in.suite == suite::kLazarevic) {
      LazarevicForm f = LazarevicForm::general;
      if (v == "1f2") f = LazarevicForm::f12;
      if (v == "mittag-leffler") f = LazarevicForm::mittag_leffler;
      if (v == "wright") f = LazarevicForm::wright;
      if (v == "bessel") f = LazarevicForm::bessel;
      if (v == "hyperbolic") f = LazarevicForm::hyperbolic;
      return {lazarevic_check(in.alpha1, in.beta1, in.beta2, in.B1, in.z, f, ev, tol)};
    }
    if (in.suite == suite::kWilker) {
      WilkerForm f = WilkerForm::general;
      if (v == "1f2") f = WilkerForm::f12;
      if (v == "mittag-leffler") f = WilkerForm::mittag_leffler;
      if (v == "remark3-59-reconstructed") f = WilkerForm::remark3_59_reconstructed;
      if (v == "bessel") f = WilkerForm::bessel;
      if (v == "hyperbolic") f = WilkerForm::hyperbolic;
      return {wilker_check(in.alpha1, in.beta1, in.beta2, in.B1, in.z, f, ev, tol)};
    }
    if (in.suite == suite::kLogConcave) {
      LogConcaveForm f = LogConcaveForm::general;
      if (v == "pfq") f = LogConcaveForm::f12;
      if (v == "mittag-leffler") f = LogConcaveForm::mittag_leffler;
      return logconcavity_suite(in.p, in.z, in.z2, f, ev, tol);
    }
  } catch (const NoConvergence& e) {
    return {numerical_failure_report(in.suite, instance_echo(in), in.z, e.what())};
  } catch (const OverflowError& e) {
    return {numerical_failure_report(in.suite, instance_echo(in), in.z, e.what())};
  } catch (const DivergentSeries& e) {
    return {numerical_failure_report(in.suite, instance_echo(in), in.z, e.what())};
  }
  throw GridError("unknown suite " + in.suite);
}

// ---------------------------------------------------------------------------
// Exploration of the two open monotonicity questions.

struct ExploreResult {
  std::vector<InequalityReport> rows;  // one per grid point
  std::string verdict;
};

/// K_n on a z grid for any A >= 0. Row: lhs = K_n(z_i), rhs = K_n(z_{i-1})
/// (the z -> 0 limit for the first point).
template <class Ev = SeriesEvaluator>
ExploreResult explore_kn(const FoxWrightParams& p, long n, const std::vector<double>& grid,
                         const Ev& ev = Ev{}, const Tolerance& tol = {}) {
  validate(p);
  for (const auto& a : p.upper)
    if (a.weight < 0.0) throw ParameterError("problem1-kn needs A >= 0");
  detail::require_increasing(grid, "z grid");
  const std::string echo = detail::echo_params(p).add("n", n).str();
  ExploreResult out;
  std::vector<double> ks;
  double prev = kn_limit(p, n);
  for (double z : grid) {
    const detail::Q k = kn_value(p, n, z, ev);
    out.rows.push_back(make_report("problem1-kn", echo, z, k.v, prev, k.e, tol));
    ks.push_back(k.v);
    prev = k.v;
  }
  switch (classify(ks, 1e-10)) {
    case Monotonicity::increasing:
    case Monotonicity::constant: out.verdict = "nondecreasing"; break;
    case Monotonicity::decreasing: out.verdict = "nonincreasing"; break;
    case Monotonicity::none: out.verdict = "not monotone"; break;
  }
  return out;
}

/// Xi'(z) = ((b1 + B1)/b1) Psi'/Psi at beta_1 + 1 minus Psi'/Psi at beta_1. Row:
/// lhs = first term, rhs = second term, margin = Xi'.
template <class Ev = SeriesEvaluator>
ExploreResult explore_xi(const FoxWrightParams& p, const std::vector<double>& grid,
                         const Ev& ev = Ev{}, const Tolerance& tol = {}) {
  validate(p);
  if (p.lower.empty()) throw ParameterError("problem2-xi needs a lower parameter");
  detail::require_increasing(grid, "z grid");
  const double b1 = p.lower[0].value, B1 = p.lower[0].weight;
  const FoxWrightParams p1 = with_lower(p, 0, b1 + 1.0);
  const std::string echo = detail::echo_params(p).str();
  ExploreResult out;
  long neg = 0;
  for (double z : grid) {
    using detail::q;
    const detail::Q r1 = q(ev.fox_wright(shifted(p1), z)) / q(ev.fox_wright(p1, z));
    const detail::Q r0 = q(ev.fox_wright(shifted(p), z)) / q(ev.fox_wright(p, z));
    const detail::Q lhs = ((b1 + B1) / b1) * r1;
    out.rows.push_back(make_report("problem2-xi", echo, z, lhs.v, r0.v, lhs.e + r0.e, tol));
    if (!out.rows.back().pass) ++neg;
  }
  out.verdict = neg == 0 ? "Xi' >= 0 on grid"
                         : std::to_string(neg) + "/" + std::to_string(grid.size()) + " points with Xi' < 0";
  return out;
}

// ---------------------------------------------------------------------------
// Parallel execution and report files.

/// Applies fn(i) for i in [0, n) on `threads` workers; the first exception is
/// rethrown after all workers stop.
template <class Fn>
void parallel_for(std::size_t n, unsigned threads, Fn&& fn) {
  if (threads <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr err;
  std::mutex mu;
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < std::min<std::size_t>(threads, n); ++t) {
    pool.emplace_back([&] {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= n) return;
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(mu);
          if (!err) err = std::current_exception();
          next = n;
          return;
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (err) std::rethrow_exception(err);
}

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

inline const char* pass_label(const InequalityReport& r) {
  if (r.numerical_failure) return "error";
  return r.pass ? "true" : "false";
}

inline void write_csv(std::ostream& os, std::uint64_t seed,
                      const std::vector<InequalityReport>& rows) {
  os << "# seed=" << seed << "\n";
  os << "suite_id,params_json,z,lhs,rhs,margin,err_estimate,pass\n";
  for (const auto& r : rows)
    os << r.suite_id << ',' << csv_field(r.params_echo) << ',' << format_double(r.z) << ','
       << format_double(r.lhs) << ',' << format_double(r.rhs) << ',' << format_double(r.margin)
       << ',' << format_double(r.err_estimate) << ',' << pass_label(r) << '\n';
}

inline std::string json_number(double v) { return std::isfinite(v) ? format_double(v) : "null"; }

inline void write_json(std::ostream& os, std::uint64_t seed,
                       const std::vector<InequalityReport>& rows) {
  os << "{\"seed\":" << seed << ",\"rows\":[";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    if (i) os << ',';
    os << "\n{\"suite_id\":" << nlohmann::json(r.suite_id).dump()
       << ",\"params\":" << r.params_echo << ",\"z\":" << json_number(r.z)
       << ",\"lhs\":" << json_number(r.lhs) << ",\"rhs\":" << json_number(r.rhs)
       << ",\"margin\":" << json_number(r.margin)
       << ",\"err_estimate\":" << json_number(r.err_estimate) << ",\"pass\":\"" << pass_label(r)
       << "\",\"detail\":" << nlohmann::json(r.detail).dump() << "}";
  }
  os << "\n]}\n";
}

}  // namespace foxwright
