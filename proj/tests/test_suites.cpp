#include <foxwright/params_json.hpp>
#include <foxwright/suites.hpp>
#include <gtest/gtest.h>

#include <sstream>

using namespace foxwright;
using nlohmann::json;

namespace {

std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> g;
  for (int i = 0; i < n; ++i) g.push_back(a + (b - a) * i / (n - 1));
  return g;
}

std::string csv_of(const std::vector<InequalityReport>& rows, std::uint64_t seed) {
  std::ostringstream os;
  write_csv(os, seed, rows);
  return os.str();
}

std::vector<InequalityReport> run_all(const std::vector<Instance>& ins) {
  std::vector<InequalityReport> out;
  for (const auto& in : ins)
    for (auto& r : run_instance(in, SeriesEvaluator{}, Tolerance{})) out.push_back(std::move(r));
  return out;
}

}  // namespace

TEST(ParamsJson, RoundTrip) {
  const auto p = params_from_json(json::parse(R"({"upper":[[1.5,0.5]],"lower":[[2,1],[1,0]]})"));
  ASSERT_EQ(p.upper.size(), 1u);
  ASSERT_EQ(p.lower.size(), 2u);
  EXPECT_EQ(p.lower[1].value, 1.0);
  EXPECT_EQ(params_to_json(p), json::parse(R"({"upper":[[1.5,0.5]],"lower":[[2.0,1.0],[1.0,0.0]]})"));
}

TEST(ParamsJson, Errors) {
  EXPECT_THROW(params_from_json(json::parse("[]")), ParameterError);
  EXPECT_THROW(params_from_json(json::parse("{}")), ParameterError);
  EXPECT_THROW(params_from_json(json::parse(R"({"upper":[[1]]})")), ParameterError);
  EXPECT_THROW(params_from_json(json::parse(R"({"upper":[[-1,1]]})")), ParameterError);
  EXPECT_THROW(read_json_file("/nonexistent/file.json"), ParameterError);
}

TEST(Grid, Parsing) {
  const auto g = grid_from_json(
      json::parse(R"({"alpha1":[1,2],"z":[0.5,3],"samples":12,"seed":7,"mode":"lattice"})"));
  EXPECT_EQ(g.samples, 12);
  EXPECT_EQ(g.seed, 7u);
  EXPECT_EQ(g.mode, GridMode::lattice);
  EXPECT_TRUE(g.has("alpha1"));
  EXPECT_EQ(g.get("z", {}).hi, 3.0);
  EXPECT_EQ(g.get("beta1", {0.1, 5}).lo, 0.1);
}

TEST(Grid, Errors) {
  EXPECT_THROW(grid_from_json(json::parse("[1]")), GridError);
  EXPECT_THROW(grid_from_json(json::parse(R"({"samples":0})")), GridError);
  EXPECT_THROW(grid_from_json(json::parse(R"({"mode":"sobol"})")), GridError);
  EXPECT_THROW(grid_from_json(json::parse(R"({"z":[3,1]})")), GridError);
  EXPECT_THROW(grid_from_json(json::parse(R"({"z":[1]})")), GridError);
  GridSpec bad;
  bad.ranges["alpha1"] = {0.1, 0.5};
  bad.ranges["beta2"] = {1, 2};
  EXPECT_THROW(sample_instances("lazarevic", "", bad), GridError);
  EXPECT_THROW(sample_instances("no-such-suite", "", GridSpec{}), GridError);
  EXPECT_THROW(sample_instances("wilker", "no-such-variant", GridSpec{}), GridError);
}

TEST(Sampling, DeterministicPerSeed) {
  GridSpec g;
  g.samples = 40;
  g.seed = 42;
  const auto a = sample_instances("turan-beta", "", g);
  const auto b = sample_instances("turan-beta", "", g);
  ASSERT_EQ(a.size(), 40u);
  EXPECT_EQ(csv_of(run_all(a), 42), csv_of(run_all(b), 42));
  g.seed = 43;
  EXPECT_NE(csv_of(run_all(sample_instances("turan-beta", "", g)), 43).substr(10),
            csv_of(run_all(a), 42).substr(10));
}

TEST(Sampling, InstancesRespectDomains) {
  GridSpec g;
  g.samples = 60;
  g.seed = 3;
  for (const auto& in : sample_instances("lazarevic", "general", g)) {
    EXPECT_GE(in.alpha1, in.beta2);
    EXPECT_GT(in.z, 0.0);
    EXPECT_LE(in.z, 20.0);
  }
  for (const auto& in : sample_instances("corollary3-2f2", "", g)) {
    EXPECT_LT(in.z, 0.0);
    EXPECT_GE(in.z, -5.0);
  }
  for (const auto& in : sample_instances("tail-turan", "", g))
    for (const auto& a : in.p.upper) EXPECT_EQ(a.weight, 0.0);
  for (const auto& in : sample_instances("turan-beta", "mittag-leffler", g)) {
    ASSERT_EQ(in.p.upper.size(), 1u);
    EXPECT_EQ(in.p.upper[0].value, 1.0);
  }
  g.ranges["z"] = {1.0, 2.0};
  for (const auto& in : sample_instances("turan-alpha", "", g)) {
    EXPECT_GE(in.z, 1.0);
    EXPECT_LE(in.z, 2.0);
  }
}

TEST(Sampling, LatticeMode) {
  GridSpec g;
  g.samples = 30;
  g.mode = GridMode::lattice;
  const auto rows = run_all(sample_instances("wilker", "", g));
  ASSERT_EQ(rows.size(), 30u);
  for (const auto& r : rows) EXPECT_TRUE(r.pass) << r.params_echo;
}

TEST(Sampling, EverySuiteRuns) {
  GridSpec g;
  g.samples = 25;
  g.seed = 9;
  for (const auto& [suite, variants] : suite_variants()) {
    const auto rows = run_all(sample_instances(suite, "", g));
    EXPECT_GE(rows.size(), 25u) << suite;
    for (const auto& r : rows) {
      EXPECT_EQ(r.suite_id, suite);
      EXPECT_TRUE(r.pass) << suite << " " << r.params_echo << " " << r.detail;
    }
  }
}

TEST(Reports, CsvLayout) {
  InequalityReport r = make_report("chi", R"({"a":1,"b":[2,3]})", 1.5, 2.0, 1.0, 1e-16, Tolerance{});
  InequalityReport f = numerical_failure_report("chi", "{}", 2.0, "overflow");
  const std::string csv = csv_of({r, f}, 42);
  std::istringstream in(csv);
  std::string l1, l2, l3, l4;
  std::getline(in, l1);
  std::getline(in, l2);
  std::getline(in, l3);
  std::getline(in, l4);
  EXPECT_EQ(l1, "# seed=42");
  EXPECT_EQ(l2, "suite_id,params_json,z,lhs,rhs,margin,err_estimate,pass");
  EXPECT_EQ(l3.substr(0, 28), R"(chi,"{""a"":1,""b"":[2,3]}",)");
  EXPECT_EQ(l3.substr(l3.size() - 5), ",true");
  EXPECT_EQ(l4.substr(l4.size() - 6), ",error");
}

TEST(Reports, JsonParses) {
  InequalityReport r = make_report("chi", R"({"a":1})", 1.5, 2.0, 1.0, 1e-16, Tolerance{});
  InequalityReport f = numerical_failure_report("chi", "{}", 2.0, "overflow");
  std::ostringstream os;
  write_json(os, 7, {r, f});
  const auto j = json::parse(os.str());
  EXPECT_EQ(j["seed"], 7);
  ASSERT_EQ(j["rows"].size(), 2u);
  EXPECT_EQ(j["rows"][0]["params"]["a"], 1);
  EXPECT_EQ(j["rows"][0]["pass"], "true");
  EXPECT_EQ(j["rows"][1]["pass"], "error");
  EXPECT_DOUBLE_EQ(j["rows"][0]["margin"].get<double>(), 1.0);
}

TEST(Parallel, MatchesSerialOrder) {
  GridSpec g;
  g.samples = 30;
  g.seed = 5;
  const auto ins = sample_instances("kn-bound", "", g);
  std::vector<std::vector<InequalityReport>> slots(ins.size());
  parallel_for(ins.size(), 4, [&](std::size_t i) {
    slots[i] = run_instance(ins[i], SeriesEvaluator{}, Tolerance{});
  });
  std::vector<InequalityReport> flat;
  for (auto& s : slots)
    for (auto& r : s) flat.push_back(r);
  EXPECT_EQ(csv_of(flat, 5), csv_of(run_all(ins), 5));
  EXPECT_THROW(parallel_for(10, 3, [](std::size_t i) {
                 if (i == 7) throw GridError("boom");
               }),
               GridError);
}

TEST(Explore, SharpCaseIsNondecreasing) {
  const auto r = explore_kn(FoxWrightParams{{}, {{1, 1}}}, 0, linspace(0.2, 10, 50));
  EXPECT_EQ(r.verdict, "nondecreasing");
  EXPECT_EQ(r.rows.size(), 50u);
  EXPECT_NEAR(r.rows[0].rhs, 4.0 / 9.0, 1e-15);
}

TEST(Explore, PositiveUpperWeight) {
  const auto r = explore_kn(FoxWrightParams{{{1.5, 0.5}}, {{1, 1}, {2, 1}}}, 1, linspace(0.2, 10, 20));
  EXPECT_FALSE(r.verdict.empty());
  EXPECT_THROW(explore_kn(FoxWrightParams{{{1.5, -0.5}}, {{1, 1}}}, 0, {1.0, 2.0}), ParameterError);
}

TEST(Explore, XiShapeOfLogConcaveFamily) {
  const auto r = explore_xi(FoxWrightParams{{{2, 1}}, {{1.5, 0.7}, {1.2, 1}}}, linspace(0.1, 10, 25));
  EXPECT_EQ(r.verdict, "Xi' >= 0 on grid");
}

TEST(Explore, XiNegativeForGeneralParameters) {
  // A three-by-three instance where the sign of Xi' is negative at z = 0.5;
  // 40-digit reference value -0.00185565961502827.
  const FoxWrightParams p{{{4.2182393398060229, 2.0101960110466477},
                           {1.2379206263628282, 2.5145488430999436},
                           {4.1544680167126522, 0.39009024793572855}},
                          {{3.4480243423603456, 2.6485829619618291},
                           {3.0409614612369791, 1.2536242224986278},
                           {2.4718944531057416, 1.4851334892244972}}};
  const auto r = explore_xi(p, {0.5, 0.6});
  ASSERT_EQ(r.rows.size(), 2u);
  EXPECT_NEAR(r.rows[0].margin, -0.00185565961502827, 1e-12);
  EXPECT_FALSE(r.rows[0].pass);
  EXPECT_NE(r.verdict, "Xi' >= 0 on grid");
}
