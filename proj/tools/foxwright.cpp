// foxwright: evaluate Fox-Wright functions and run inequality suites.
//
// Exit codes: 0 all pass, 1 inequality violation, 2 usage error,
// 3 numerical failure.

#include <CLI11.hpp>

#include <foxwright/oracle.hpp>
#include <foxwright/suites.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <thread>

using namespace foxwright;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitViolation = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNumerical = 3;

struct Options {
  std::string suite;
  std::string params_file;
  std::string grid_file;
  std::optional<double> z;
  std::optional<long> samples;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::string format = "csv";
  double tol_abs = 1e-12;
  double tol_rel = 1e-10;
  std::optional<int> digits;
  std::string variant;
  long n = 0;
  unsigned threads = 0;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Tolerance tolerance(const Options& o) { return {o.tol_abs, o.tol_rel}; }

unsigned thread_count(const Options& o) {
  if (o.threads > 0) return o.threads;
  return std::max(1u, std::thread::hardware_concurrency());
}

GridSpec load_grid(const Options& o) {
  GridSpec g;
  if (!o.grid_file.empty()) g = grid_from_json(read_json_file(o.grid_file));
  if (o.samples) {
    if (*o.samples < 1) throw GridError("--samples must be >= 1");
    g.samples = *o.samples;
  }
  if (o.seed) g.seed = *o.seed;
  return g;
}

double number_or(const nlohmann::json& j, const char* key, double def) {
  if (!j.contains(key)) return def;
  if (!j.at(key).is_number()) throw ParameterError(std::string("\"") + key + "\" must be a number");
  return j.at(key).get<double>();
}

// Scalars for the one-upper, two-lower checkers, from named keys or from an
// upper/lower pair list of that shape.
void read_scalars(const nlohmann::json& j, Instance& in) {
  if (j.contains("upper") || j.contains("lower")) {
    const FoxWrightParams p = params_from_json(j);
    if (p.upper.size() == 1 && p.lower.size() == 2) {
      in.alpha1 = p.upper[0].value;
      in.beta1 = p.lower[0].value;
      in.B1 = p.lower[0].weight;
      in.beta2 = p.lower[1].value;
    }
  }
  in.alpha1 = number_or(j, "alpha1", in.alpha1);
  in.beta1 = number_or(j, "beta1", in.beta1);
  in.beta2 = number_or(j, "beta2", in.beta2);
  in.B1 = number_or(j, "B1", in.B1);
}

std::vector<double> z_points(const Options& o, const std::string& suite) {
  const GridSpec g = load_grid(o);
  const Range r = g.get("z", suite == suite::kProduct2F2 ? Range{-5.0, 0.0} : Range{0.0, 10.0});
  std::vector<double> out;
  const int m = 20;
  for (int i = 1; i <= m; ++i) {
    if (suite == suite::kProduct2F2)
      out.push_back(r.hi - (r.hi - r.lo) * i / m);
    else
      out.push_back(r.lo + (r.hi - r.lo) * i / m);
  }
  return out;
}

// Instances for a user-supplied parameter file.
std::vector<Instance> instances_from_params(const Options& o, const std::string& suite) {
  const nlohmann::json j = read_json_file(o.params_file);
  const auto& vs = variants_of(suite);
  std::string variant = o.variant.empty() ? vs.front() : o.variant;
  if (std::find(vs.begin(), vs.end(), variant) == vs.end())
    throw UsageError("unknown variant " + variant + " for " + suite);
  Instance base;
  base.suite = suite;
  base.variant = variant;
  base.n = o.n;
  const bool scalar = suite == suite::kLazarevic || suite == suite::kWilker ||
                      suite == suite::kChi || suite == suite::kProduct2F2;
  if (scalar)
    read_scalars(j, base);
  else
    base.p = params_from_json(j);

  const bool grid_suite = suite == suite::kRatioMonotone || suite == suite::kChi ||
                          (suite == suite::kKnBound && variant == "monotone") ||
                          is_explore_suite(suite);
  std::vector<double> zs = o.z ? std::vector<double>{*o.z} : z_points(o, suite);

  if (suite == suite::kRatioMonotone) {
    const std::string slot = j.value("slot", std::string("beta"));
    if (slot != "alpha" && slot != "beta") throw ParameterError("slot must be alpha or beta");
    base.slot = slot == "alpha" ? Slot::alpha : Slot::beta;
    const auto& side = base.slot == Slot::alpha ? base.p.upper : base.p.lower;
    if (side.empty()) throw ParameterError("parameter set has no " + slot + " slot");
    base.v1 = number_or(j, "v1", side[0].value + 1.0);
    base.v2 = number_or(j, "v2", side[0].value);
    if (variant == "alpha") base.slot = Slot::alpha;
  }
  if (suite == suite::kChi) {
    base.z = o.z ? *o.z : number_or(j, "z", 1.0);
    if (j.contains("beta1_grid")) {
      base.grid = j.at("beta1_grid").get<std::vector<double>>();
    } else {
      const Range b = load_grid(o).get("beta1", {0.1, 5.0});
      for (int i = 1; i <= 20; ++i) base.grid.push_back(b.lo + (b.hi - b.lo) * i / 20);
    }
    return {base};
  }
  if (grid_suite) {
    base.grid = zs;
    base.z = zs.back();
    return {base};
  }
  std::vector<Instance> out;
  for (double z : zs) {
    Instance in = base;
    in.z = z;
    in.z2 = number_or(j, "z2", 2.0 * z);
    out.push_back(in);
  }
  return out;
}

std::vector<Instance> build_instances(const Options& o, const std::string& suite) {
  if (!o.params_file.empty()) return instances_from_params(o, suite);
  return sample_instances(suite, o.variant, load_grid(o));
}

void write_report(const Options& o, std::uint64_t seed, const std::vector<InequalityReport>& rows) {
  if (o.out.empty()) return;
  std::ostringstream ss;
  if (o.format == "json")
    write_json(ss, seed, rows);
  else
    write_csv(ss, seed, rows);
  std::ofstream f(o.out, std::ios::binary);
  if (!f) throw UsageError("cannot write " + o.out);
  f << ss.str();
  if (!f) throw UsageError("cannot write " + o.out);
}

std::vector<std::vector<InequalityReport>> run_all(const std::vector<Instance>& inst,
                                                   const Options& o) {
  std::vector<std::vector<InequalityReport>> res(inst.size());
  const SeriesEvaluator ev;
  const Tolerance tol = tolerance(o);
  parallel_for(inst.size(), thread_count(o),
               [&](std::size_t i) { res[i] = run_instance(inst[i], ev, tol); });
  return res;
}

struct Tally {
  long rows = 0, pass = 0, fail = 0, numerical = 0;
  double worst_rel = std::numeric_limits<double>::infinity();
  const InequalityReport* worst = nullptr;

  void add(const InequalityReport& r, const Tolerance& tol) {
    ++rows;
    if (r.numerical_failure) {
      ++numerical;
      return;
    }
    r.pass ? ++pass : ++fail;
    const double rel = r.margin / std::max(tol.band(r.lhs, r.rhs), 1e-300);
    if (rel < worst_rel) {
      worst_rel = rel;
      worst = &r;
    }
  }
};

int verdict(const Tally& t) {
  if (t.fail > 0) return kExitViolation;
  if (t.numerical > 0) return kExitNumerical;
  return kExitPass;
}

// Re-runs the first instances on the extended-precision back end.
int oracle_spot_check(const std::vector<Instance>& inst,
                      const std::vector<std::vector<InequalityReport>>& res, const Options& o) {
  const int digits = o.digits.value_or(30);
  if (digits <= 0 || inst.empty()) return kExitPass;
  const OracleEvaluator oracle(digits);
  const Tolerance tol = tolerance(o);
  const std::size_t m = std::min<std::size_t>(10, inst.size());
  std::vector<std::vector<InequalityReport>> hp(m);
  parallel_for(m, thread_count(o), [&](std::size_t i) { hp[i] = run_instance(inst[i], oracle, tol); });
  double worst = 0.0;
  bool agree = true, within = true;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t k = 0; k < std::min(hp[i].size(), res[i].size()); ++k) {
      const auto& a = res[i][k];
      const auto& b = hp[i][k];
      if (a.numerical_failure || b.numerical_failure) continue;
      const double d = std::abs(a.margin - b.margin);
      worst = std::max(worst, d);
      if (d > a.err_estimate + b.err_estimate + tol.band(a.lhs, a.rhs)) within = false;
      if (a.pass != b.pass) agree = false;
    }
  }
  std::printf("oracle spot-check: %zu instances at %d digits, max |margin difference| = %s, %s\n", m,
              digits, format_double(worst).c_str(),
              within ? "within error estimates" : "EXCEEDS error estimates");
  if (!agree) {
    std::printf("oracle spot-check: pass/fail verdicts disagree\n");
    return kExitNumerical;
  }
  return kExitPass;
}

int run_eval(const Options& o) {
  if (o.params_file.empty()) throw UsageError("eval needs --params");
  if (!o.z) throw UsageError("eval needs --z");
  const FoxWrightParams p = params_from_json(read_json_file(o.params_file));
  const std::string v = o.variant.empty() ? "plain" : o.variant;
  EvalResult r;
  if (v == "plain")
    r = eval(p, *o.z);
  else if (v == "normalized")
    r = eval_normalized(p, *o.z);
  else if (v == "tilde")
    r = eval_tilde(p, *o.z);
  else if (v == "tail")
    r = eval_tail(p, TailSpec{o.n}, *o.z);
  else if (v == "derivative")
    r = derivative(p, *o.z);
  else if (v == "dbeta1")
    r = dbeta1(p, *o.z);
  else
    throw UsageError("eval variants: plain, normalized, tilde, tail, derivative, dbeta1");
  std::printf("value = %s\nterms_used = %ld\ntail_bound = %s\nerror_estimate = %s\n",
              format_double(r.value).c_str(), r.terms_used, format_double(r.tail_bound).c_str(),
              format_double(r.error_estimate()).c_str());
  const int digits = o.digits.value_or(0);
  if (digits > 0 && v != "dbeta1") {
    FoxWrightParams q = v == "derivative" ? shifted(p) : p;
    const long first = v == "tail" ? o.n + 1 : 0;
    const HpResult hp = hp_eval(q, *o.z, digits, first);
    if (v == "plain" || v == "derivative" || v == "tail")
      std::printf("oracle(%d digits) = %s\n", digits, hp.value.c_str());
  }
  return kExitPass;
}

int run_check(const Options& o, bool sweep) {
  if (o.suite.empty()) throw UsageError("--suite is required");
  if (!is_suite(o.suite)) throw UsageError("unknown suite " + o.suite);
  const GridSpec g = load_grid(o);
  const std::vector<Instance> inst = build_instances(o, o.suite);
  const auto res = run_all(inst, o);
  std::vector<InequalityReport> rows;
  for (const auto& v : res) rows.insert(rows.end(), v.begin(), v.end());
  write_report(o, g.seed, rows);

  Tally t;
  const Tolerance tol = tolerance(o);
  for (const auto& r : rows) t.add(r, tol);
  std::printf("suite %s: %ld/%ld pass, %ld fail, %ld numerical failures\n", o.suite.c_str(), t.pass,
              t.rows, t.fail, t.numerical);
  if (t.worst)
    std::printf("worst margin %s (lhs %s, rhs %s) at z=%s %s\n", format_double(t.worst->margin).c_str(),
                format_double(t.worst->lhs).c_str(), format_double(t.worst->rhs).c_str(),
                format_double(t.worst->z).c_str(), t.worst->params_echo.c_str());
  if (o.suite == suite::kKnBound && !o.params_file.empty() && !inst.empty()) {
    const Instance& in = inst.front();
    std::printf("limit C = %s (K_n at z=%s is %s)\n", format_double(kn_constant(in.p, in.n)).c_str(),
                format_double(rows.front().z).c_str(), format_double(rows.front().lhs).c_str());
  }
  if (sweep) return t.numerical > 0 ? kExitNumerical : kExitPass;
  const int spot = oracle_spot_check(inst, res, o);
  const int v = verdict(t);
  return v != kExitPass ? v : spot;
}

int run_explore(const Options& o) {
  if (!is_explore_suite(o.suite)) throw UsageError("explore suites: problem1-kn, problem2-xi");
  const GridSpec g = load_grid(o);
  const std::vector<Instance> inst = build_instances(o, o.suite);
  std::vector<ExploreResult> res(inst.size());
  std::vector<int> failed(inst.size(), 0);
  const SeriesEvaluator ev;
  const Tolerance tol = tolerance(o);
  parallel_for(inst.size(), thread_count(o), [&](std::size_t i) {
    try {
      res[i] = o.suite == "problem1-kn" ? explore_kn(inst[i].p, inst[i].n, inst[i].grid, ev, tol)
                                        : explore_xi(inst[i].p, inst[i].grid, ev, tol);
    } catch (const NoConvergence& e) {
      failed[i] = 1;
      res[i].rows = {numerical_failure_report(o.suite, instance_echo(inst[i]), 0.0, e.what())};
      res[i].verdict = "numerical failure";
    } catch (const OverflowError& e) {
      failed[i] = 1;
      res[i].rows = {numerical_failure_report(o.suite, instance_echo(inst[i]), 0.0, e.what())};
      res[i].verdict = "numerical failure";
    }
  });
  std::vector<InequalityReport> rows;
  std::map<std::string, long> verdicts;
  long nf = 0;
  for (std::size_t i = 0; i < res.size(); ++i) {
    rows.insert(rows.end(), res[i].rows.begin(), res[i].rows.end());
    if (o.suite == "problem2-xi" && !failed[i]) {
      bool neg = false;
      for (const auto& r : res[i].rows) neg = neg || !r.pass;
      ++verdicts[neg ? "Xi' < 0 somewhere" : "Xi' >= 0 on grid"];
    } else {
      ++verdicts[res[i].verdict];
    }
    nf += failed[i];
  }
  write_report(o, g.seed, rows);
  std::printf("explore %s: %zu instances\n", o.suite.c_str(), inst.size());
  for (const auto& [k, v] : verdicts) std::printf("  %s: %ld\n", k.c_str(), v);
  if (o.suite == "problem2-xi") {
    long pos = 0, neg = 0;
    for (const auto& r : rows)
      if (!r.numerical_failure) (r.pass ? pos : neg)++;
    std::printf("  grid points with Xi' >= 0: %ld, Xi' < 0: %ld\n", pos, neg);
  }
  return nf > 0 ? kExitNumerical : kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fox-Wright function evaluator and inequality checker"};
  app.require_subcommand(1);
  Options o;

  auto common = [&](CLI::App* c) {
    c->add_option("--params", o.params_file, "parameter JSON file");
    c->add_option("--z", o.z, "evaluation point");
    c->add_option("--variant", o.variant, "function or suite variant");
    c->add_option("--n", o.n, "section index for tails and K_n")->check(CLI::NonNegativeNumber);
    c->add_option("--digits", o.digits, "oracle digits (0 disables the oracle)");
  };
  auto suites = [&](CLI::App* c) {
    c->add_option("--suite", o.suite, "suite identifier")->required();
    c->add_option("--grid", o.grid_file, "grid JSON file");
    c->add_option("--samples", o.samples, "number of random instances");
    c->add_option("--seed", o.seed, "PRNG seed");
    c->add_option("--out", o.out, "report file");
    c->add_option("--format", o.format, "report format")->check(CLI::IsMember({"csv", "json"}));
    c->add_option("--tol-abs", o.tol_abs, "absolute tolerance")->check(CLI::NonNegativeNumber);
    c->add_option("--tol-rel", o.tol_rel, "relative tolerance")->check(CLI::NonNegativeNumber);
    c->add_option("--threads", o.threads, "worker threads (0 = all cores)");
  };

  CLI::App* ev = app.add_subcommand("eval", "evaluate a Fox-Wright function at z");
  common(ev);
  CLI::App* ck = app.add_subcommand("check", "run an inequality suite and report violations");
  common(ck);
  suites(ck);
  CLI::App* sw = app.add_subcommand("sweep", "write margins of a suite without a verdict");
  common(sw);
  suites(sw);
  CLI::App* ex = app.add_subcommand("explore", "probe the open monotonicity problems");
  common(ex);
  suites(ex);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitUsage;
  }
  try {
    if (ev->parsed()) return run_eval(o);
    if (ck->parsed()) return run_check(o, false);
    if (sw->parsed()) return run_check(o, true);
    return run_explore(o);
  } catch (const UsageError& e) {
    std::fprintf(stderr, "usage error: %s\n", e.what());
    return kExitUsage;
  } catch (const GridError& e) {
    std::fprintf(stderr, "invalid grid: %s\n", e.what());
    return kExitUsage;
  } catch (const DivergentSeries& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return kExitNumerical;
  } catch (const NoConvergence& e) {
    std::fprintf(stderr, "numerical failure: %s\n", e.what());
    return kExitNumerical;
  } catch (const OverflowError& e) {
    std::fprintf(stderr, "numerical failure: %s\n", e.what());
    return kExitNumerical;
  } catch (const SingularTransform& e) {
    std::fprintf(stderr, "usage error: %s\n", e.what());
    return kExitUsage;
  } catch (const ParameterError& e) {
    std::fprintf(stderr, "usage error: %s\n", e.what());
    return kExitUsage;
  } catch (const DomainError& e) {
    std::fprintf(stderr, "usage error: %s\n", e.what());
    return kExitUsage;
  } catch (const nlohmann::json::exception& e) {
    std::fprintf(stderr, "usage error: %s\n", e.what());
    return kExitUsage;
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitNumerical;
  }
}
