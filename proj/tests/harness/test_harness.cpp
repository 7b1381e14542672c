#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "nsp/error.hpp"
#include "nsp/harness/config.hpp"
#include "nsp/harness/run.hpp"

using namespace nsp;
using namespace nsp::harness;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::path(testing::TempDir()) / "nsp_harness" / name;
  fs::remove_all(p);
  fs::create_directories(p.parent_path());
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

nlohmann::json read_json(const fs::path& p) { return nlohmann::json::parse(slurp(p)); }

void expect_config_error(const std::string& text, const std::string& fragment) {
  try {
    parse_config(text);
    ADD_FAILURE() << "accepted: " << text;
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find(fragment), std::string::npos) << e.what();
  }
}

const char* kSmallSim = R"(kind = "simulate"
seed = 9
[grid]
d = 2
n = 32
L = 50.26548245743669
[simulate]
amplitude = 0.01
support = 1.0
horizon = 2.0
cadence = 0.5
dt = 0.25
checkpoint_every = 1.0
track_decay = true
[decay]
s1 = 0.5
)";

}  // namespace

TEST(Config, MinimalPartitionCheckEchoesDefaults) {
  const auto c = parse_config("kind = \"partition-check\"\n[grid]\nd = 2\nn = 64\nL = 6.283185307179586\n");
  EXPECT_EQ(c.kind, Kind::partition_check);
  EXPECT_EQ(c.grid.n, 64);
  EXPECT_DOUBLE_EQ(c.decay.s1, 1.0);
  const auto echoed = to_toml(c);
  for (const char* key : {"mu_inf", "lambda_inf", "gamma", "poisson", "epsilon", "fit_window", "horizon", "trials"})
    EXPECT_NE(echoed.find(key), std::string::npos) << key;
  EXPECT_EQ(to_toml(parse_config(echoed)), echoed);
  const auto j = nlohmann::json::parse(to_json(c));
  EXPECT_EQ(j["grid"]["n"], 64);
}

TEST(Config, ConstraintViolationsNameTheConstraint) {
  expect_config_error("[grid]\nd = 2\n[decay]\np = 4\n", "p != 4 if d = 2");
  expect_config_error("[grid]\nd = 2\n[decay]\ns1 = 0.0\n", "1 - d/2 < s1 <= s0");
  expect_config_error("[grid]\nd = 3\n[decay]\ns1 = -0.5\n", "1 - d/2 < s1 <= s0");
  expect_config_error("[grid]\nd = 3\n[decay]\np = 5\n", "2 <= p <= min(4, 2d/(d-2))");
  expect_config_error("[physics]\nlambda_inf = 0.7\n", "2 mu_inf + lambda_inf = 1");
  expect_config_error("[physics]\ngamma = 1.0\n", "gamma > 1");
}

TEST(Config, UnknownKeysTypesAndSyntax) {
  expect_config_error("[grid]\nd = 2\nsize = 3\n", "unknown key grid.size (line 3)");
  expect_config_error("colour = 1\n", "unknown key colour");
  expect_config_error("[grid]\nn = 6.5\n", "key grid.n (line 2): expected an integer");
  expect_config_error("kind = \"fluid\"\n", "unknown kind");
  expect_config_error("[grid\n", "config:1:");
  EXPECT_THROW(load_config("/nonexistent/file.toml"), IoError);
}

TEST(Outputs, EmptyRecordsGiveHeaderOnly) { EXPECT_EQ(norms_csv(NormSeries{}), "t,name,value\n"); }

TEST(Outputs, CsvFormatting) {
  NormSeries s;
  s.add(0.1, "x", 1.0 / 3.0);
  s.add(2.0, "x", 1e-300);
  EXPECT_EQ(norms_csv(s), "t,name,value\n0.1,x,0.3333333333333333\n2,x,1e-300\n");
}

TEST(Run, PartitionCheck) {
  const auto out = scratch("partition");
  auto c = parse_config("kind = \"partition-check\"\n[grid]\nd = 2\nn = 64\n");
  const auto r = run_experiment(c, out);
  ASSERT_EQ(r.exit_code, 0) << r.message;
  const auto rep = read_json(out / "report.json");
  EXPECT_LT(rep["partition_error"].get<double>(), 1e-12);
  EXPECT_TRUE(rep["pass"].get<bool>());
  const auto man = read_json(out / "manifest.json");
  EXPECT_EQ(man["status"], "ok");
  EXPECT_EQ(man["config"]["grid"]["n"], 64);
  for (const char* f : {"manifest.json", "config.toml", "norms.csv", "report.json"}) EXPECT_TRUE(fs::exists(out / f));
}

TEST(Run, LinearDecayEndpointReport) {
  const auto out = scratch("linear");
  auto c = parse_config("kind = \"linear-decay\"\n[grid]\nd = 3\n[decay]\ns1 = 1.5\n[linear]\nsemigroup = false\n");
  const auto r = run_experiment(c, out);
  ASSERT_EQ(r.exit_code, 0) << r.message;
  const auto rep = read_json(out / "report.json");
  EXPECT_DOUBLE_EQ(rep["target_u"].get<double>(), -0.75);
  EXPECT_DOUBLE_EQ(rep["target_a"].get<double>(), -1.25);
  EXPECT_NEAR(rep["main"]["slope_u"].get<double>(), -0.75, 0.05);
  EXPECT_NEAR(rep["main"]["slope_a"].get<double>(), -1.25, 0.05);
  EXPECT_NEAR(rep["contrast"]["gap"].get<double>(), 0.0, 0.05);
  EXPECT_TRUE(rep["pass"].get<bool>());
}

TEST(Run, VacuumInducingAmplitude) {
  const auto out = scratch("vacuum");
  auto c = parse_config("kind = \"simulate\"\n[grid]\nd = 2\nn = 32\nL = 25.132741228718345\n"
                        "[simulate]\namplitude = 2.0\nhorizon = 1.0\ncadence = 0.5\n");
  const auto r = run_experiment(c, out);
  EXPECT_EQ(r.exit_code, kExitNumeric);
  EXPECT_EQ(r.failure_class, "vacuum");
  const auto man = read_json(out / "manifest.json");
  EXPECT_EQ(man["status"], "failed");
  EXPECT_EQ(man["failure_class"], "vacuum");
  EXPECT_EQ(man["exit_code"], 3);
}

TEST(Run, SimulateIsByteDeterministicAndRerunnable) {
  const auto c = parse_config(kSmallSim);
  const auto a = scratch("sim_a"), b = scratch("sim_b"), again = scratch("sim_again");
  ASSERT_EQ(run_experiment(c, a).exit_code, 0);
  ASSERT_EQ(run_experiment(c, b).exit_code, 0);
  const auto csv = slurp(a / "norms.csv");
  EXPECT_EQ(csv, slurp(b / "norms.csv"));
  EXPECT_NE(csv.find(",D_p,"), std::string::npos);
  EXPECT_EQ(slurp(a / "report.json"), slurp(b / "report.json"));
  EXPECT_TRUE(fs::exists(a / "checkpoints" / "state_0000.bin"));
  EXPECT_TRUE(fs::exists(a / "checkpoints" / "state_0002.bin"));
  EXPECT_TRUE(fs::exists(a / "checkpoints" / "final.bin"));
  // The echoed config alone reproduces the run.
  const auto echoed = load_config(a / "config.toml");
  ASSERT_EQ(run_experiment(echoed, again).exit_code, 0);
  EXPECT_EQ(slurp(again / "norms.csv"), csv);
}

TEST(Run, IneqReportsAndRejections) {
  const auto out = scratch("ineq");
  auto c = parse_config("kind = \"ineq\"\n[grid]\nd = 2\nn = 64\n[ineq]\ncheck = \"embedding\"\ntrials = 5\n"
                        "grids = [32, 64]\n");
  ASSERT_EQ(run_experiment(c, out).exit_code, 0);
  EXPECT_EQ(slurp(out / "norms.csv"), "t,name,value\n");
  EXPECT_EQ(slurp(out / "ratios.csv").substr(0, 30), "case,n,seed,tag,lhs,rhs,ratio\n");
  const auto rep = read_json(out / "report.json");
  EXPECT_EQ(rep["check"], "embedding");
  EXPECT_LE(rep["max_ratio"].get<double>(), 1.0 + 1e-12);

  auto bad = parse_config("kind = \"ineq\"\n[ineq]\ncheck = \"convolution\"\nsigma2 = 1.0\n");
  const auto r = run_experiment(bad, scratch("ineq_bad"));
  EXPECT_EQ(r.exit_code, kExitConfig);
  EXPECT_EQ(r.failure_class, "rejected");
}

TEST(Run, UnwritableOutputIsIoFailure) {
  const auto base = scratch("io");
  fs::create_directories(base);
  std::ofstream(base / "file") << "x";
  auto c = parse_config("kind = \"partition-check\"\n[grid]\nn = 16\n");
  const auto r = run_experiment(c, base / "file" / "sub");
  EXPECT_EQ(r.exit_code, kExitIo);
  EXPECT_EQ(r.failure_class, "io");
}

TEST(Cli, ExitCodes) {
  const auto dir = scratch("cli");
  fs::create_directories(dir);
  auto run = [&](const std::string& args) {
    const std::string cmd = std::string(NSP_CLI_PATH) + " " + args + " >/dev/null 2>&1";
    const int st = std::system(cmd.c_str());
    return WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  };
  std::ofstream(dir / "ok.toml") << "kind = \"partition-check\"\n[grid]\nn = 32\n";
  std::ofstream(dir / "vac.toml") << "kind = \"simulate\"\n[grid]\nn = 32\nL = 25.132741228718345\n"
                                     "[simulate]\namplitude = 2.0\nhorizon = 1.0\ncadence = 0.5\n";
  std::ofstream(dir / "bad.toml") << "kind = \"simulate\"\n[grid]\nd = 2\n[decay]\np = 4\n";
  EXPECT_EQ(run("partition-check --config " + (dir / "ok.toml").string() + " --out " + (dir / "o1").string()), 0);
  EXPECT_EQ(run("simulate --config " + (dir / "vac.toml").string() + " --out " + (dir / "o2").string()), 3);
  EXPECT_EQ(run("simulate --config " + (dir / "bad.toml").string()), 2);
  EXPECT_EQ(run("simulate --config " + (dir / "ok.toml").string()), 2);
  EXPECT_EQ(run("partition-check --config " + (dir / "missing.toml").string()), 4);
  EXPECT_EQ(run("bogus --config x"), 2);
  EXPECT_EQ(run("partition-check --config " + (dir / "ok.toml").string() + " --seed 5 --out " + (dir / "o3").string()),
            0);
  EXPECT_EQ(read_json(dir / "o3" / "manifest.json")["seed"], 5);
}

TEST(Config, ShippedConfigsLoad) {
  int count = 0;
  for (const auto& e : fs::directory_iterator(NSP_CONFIG_DIR)) {
    if (e.path().extension() != ".toml") continue;
    ++count;
    EXPECT_NO_THROW(load_config(e.path())) << e.path();
  }
  EXPECT_GE(count, 4);
}
