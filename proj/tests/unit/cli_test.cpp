#include <gtest/gtest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "mubg/error.hpp"
#include "mubg/tasks.hpp"

using namespace mubg;

namespace {

const std::string kManifests = MUBG_MANIFEST_DIR;
const std::string kCli = MUBG_CLI_PATH;

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

struct CliRun {
  int status = -1;
  std::string out;
};

CliRun run_cli(const std::string& args) {
  const std::string tmp = (std::filesystem::temp_directory_path() / "mubg_cli_test.out").string();
  const std::string cmd = kCli + " " + args + " > " + tmp + " 2>&1";
  int raw = std::system(cmd.c_str());
  CliRun r;
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  r.out = slurp(tmp);
  std::filesystem::remove(tmp);
  return r;
}

std::string write_temp(const std::string& name, const std::string& text) {
  auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream(path) << text;
  return path.string();
}

std::vector<std::string> shipped_manifests() {
  std::vector<std::string> out;
  for (const auto& e : std::filesystem::directory_iterator(kManifests)) {
    if (e.path().extension() == ".mubg") out.push_back(e.path().string());
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST(Manifest, MinimalPseries) {
  ManifestParse r = parse_manifest("task = pseries\nfgl = multiplicative\np = 2\ndegree = 6\n");
  ASSERT_TRUE(r.manifest) << r.describe_errors();
  EXPECT_EQ(r.manifest->task, Task::pseries);
  EXPECT_EQ(r.manifest->prime, 2);
  EXPECT_EQ(r.manifest->degree, 6);
}

TEST(Manifest, MissingPrimeIsNamed) {
  ManifestParse r = parse_manifest("task = tate\nfgl = additive\ndegree = 12\nfloor = -5\n");
  ASSERT_FALSE(r.manifest);
  EXPECT_NE(r.describe_errors().find("'p'"), std::string::npos) << r.describe_errors();
}

TEST(Manifest, AllErrorsCollectedWithLines) {
  ManifestParse r = parse_manifest(
      "task = tate\n"
      "fgl = additive\n"
      "p = 4\n"
      "degree = 1x\n"
      "floor = -5\n"
      "colour = blue\n");
  ASSERT_FALSE(r.manifest);
  ASSERT_EQ(r.errors.size(), 3u) << r.describe_errors();
  EXPECT_EQ(r.errors[0].line, 6);
  EXPECT_NE(r.errors[0].message.find("unknown key 'colour'"), std::string::npos);
  EXPECT_EQ(r.errors[1].line, 3);
  EXPECT_NE(r.errors[1].message.find("prime"), std::string::npos);
  EXPECT_EQ(r.errors[2].line, 4);
  EXPECT_NE(r.errors[2].message.find("malformed number"), std::string::npos);
}

TEST(Manifest, BoundsAndStructure) {
  EXPECT_FALSE(parse_manifest("task = tate\np = 2\ndegree = 500\nfloor = -5\n").manifest);
  EXPECT_FALSE(parse_manifest("task = tate\np = 2\ndegree = 8\nfloor = 3\n").manifest);
  EXPECT_FALSE(parse_manifest("task = kappa\ngroup = 2\nelement {\n at = 1\n").manifest);
  EXPECT_FALSE(parse_manifest("task = kappa\ngroup = 2\n}\n").manifest);
  EXPECT_FALSE(parse_manifest("task = dance\n").manifest);
  EXPECT_FALSE(parse_manifest("task = pseries\np = 2\ndegree = 4\ngroup = 2\n").manifest);
  EXPECT_FALSE(parse_manifest("task = kappa\ngroup = 2\nelement {\n at = 0\n}\n").manifest);
  EXPECT_FALSE(parse_manifest("task = kappa\ngroup = 2\nelement {\n at = 1\n component {\n normal = (0)\n }\n}\n")
                   .manifest);
}

TEST(Manifest, Bundles) {
  EquivBundle b = parse_bundle("(1 | 0,2) + (3 | 1,1)", 2);
  ASSERT_EQ(b.rank(), 2u);
  EXPECT_EQ(b.lines[1].character, 3);
  EXPECT_EQ(b.lines[0].c1, (std::vector<int>{0, 2}));
  EXPECT_EQ(parse_bundle("(2)", 0).lines[0].character, 2);
  EXPECT_EQ(parse_bundle("0", 1).rank(), 0u);
  EXPECT_THROW(parse_bundle("(1 | 0)", 2), Error);
  EXPECT_THROW(parse_bundle("(1) (2)", 0), Error);
  EXPECT_THROW(parse_bundle("1 | 0", 1), Error);
}

TEST(Manifest, ShippedZ4ReproducesCharacter) {
  ManifestParse r = load_manifest(kManifests + "/z4_two_disks.mubg");
  ASSERT_TRUE(r.manifest) << r.describe_errors();
  TaskOutput out = run_task(*r.manifest, 1);
  EXPECT_EQ(out.exit_code, kExitOk);
  EXPECT_NE(out.report.find("kappa(1) = 0\n"), std::string::npos);
  EXPECT_NE(out.report.find("kappa(2) = 1 "), std::string::npos);
  EXPECT_NE(out.report.find("kappa(3) = 0\n"), std::string::npos);
  EXPECT_NE(out.report.find("verdict: NONZERO-BOUNDARY"), std::string::npos);
}

TEST(Tasks, PseriesAdditive) {
  ManifestParse r = parse_manifest("task = pseries\nfgl = additive\np = 3\ndegree = 6\n");
  TaskOutput out = run_task(*r.manifest);
  EXPECT_EQ(out.report.rfind(kReportFormat, 0), 0u);
  EXPECT_NE(out.report.find("[3](x) = 3*x\n"), std::string::npos);
}

TEST(Tasks, CompX1ConstantTerm) {
  const std::map<int, std::string> expect{
      {2, "kappa(1) = 1/2 "}, {3, "kappa(1) = (1/3 - 1/3*z) "}, {5, "kappa(1) = (1/5 - 3/5*z - 2/5*z^2 - 1/5*z^3) "}};
  for (const auto& [p, prefix] : expect) {
    ManifestParse r = load_manifest(kManifests + "/compX1_p" + std::to_string(p) + ".mubg");
    ASSERT_TRUE(r.manifest) << r.describe_errors();
    EXPECT_NE(run_task(*r.manifest).report.find(prefix), std::string::npos) << p;
  }
}

TEST(Tasks, EveryShippedManifestSucceeds) {
  auto all = shipped_manifests();
  ASSERT_GE(all.size(), 10u);
  for (const auto& path : all) {
    ManifestParse r = load_manifest(path);
    ASSERT_TRUE(r.manifest) << path << "\n" << r.describe_errors();
    EXPECT_EQ(run_task(*r.manifest).exit_code, kExitOk) << path;
  }
}

TEST(Tasks, ReportsIdenticalAcrossThreadCounts) {
  for (const auto& path : shipped_manifests()) {
    ManifestParse r = load_manifest(path);
    ASSERT_TRUE(r.manifest);
    const std::string one = run_task(*r.manifest, 1).report;
    EXPECT_EQ(one, run_task(*r.manifest, 4).report) << path;
    EXPECT_EQ(one, run_task(*r.manifest, 3).report) << path;
  }
}

TEST(Cli, ShippedManifestsExitZero) {
  for (const auto& path : shipped_manifests()) {
    ManifestParse r = load_manifest(path);
    ASSERT_TRUE(r.manifest);
    CliRun run = run_cli(to_string(r.manifest->task) + " --manifest " + path);
    EXPECT_EQ(run.status, 0) << path << "\n" << run.out;
    EXPECT_EQ(run.out.rfind(kReportFormat, 0), 0u) << path;
  }
}

TEST(Cli, AdditiveCollapseReportsVerificationFailure) {
  std::string m = write_temp("mubg_additive_collapse.mubg",
                             "task = collapse\nfgl = additive\np = 2\ndegree = 10\nfloor = -5\n");
  CliRun run = run_cli("collapse --manifest " + m);
  EXPECT_EQ(run.status, kExitVerification);
  EXPECT_NE(run.out.find("generator: 4\n"), std::string::npos) << run.out;
  EXPECT_NE(run.out.find("holds: no"), std::string::npos);
}

TEST(Cli, ExitCodes) {
  std::string bad = write_temp("mubg_bad.mubg", "task = tate\nfgl = additive\ndegree = 12\nfloor = -5\n");
  CliRun parse = run_cli("tate --manifest " + bad);
  EXPECT_EQ(parse.status, kExitParse);
  EXPECT_NE(parse.out.find("'p'"), std::string::npos);

  std::string tate = kManifests + "/tate_additive_p3.mubg";
  EXPECT_EQ(run_cli("kappa --manifest " + tate).status, kExitUsage);
  EXPECT_EQ(run_cli("tate").status, kExitUsage);
  EXPECT_EQ(run_cli("tate --manifest " + tate + " --window 3,4").status, kExitUsage);

  CliRun comp = run_cli("tate --manifest " + tate + " --window -2,1");
  EXPECT_EQ(comp.status, kExitComputation);
  EXPECT_NE(comp.out.find("[bclass]"), std::string::npos) << comp.out;
}

TEST(Cli, OverridesAndOutputFile) {
  std::string tate = kManifests + "/tate_additive_p3.mubg";
  auto out = (std::filesystem::temp_directory_path() / "mubg_report.txt").string();
  CliRun run = run_cli("tate --manifest " + tate + " --window -2,6 --out " + out);
  EXPECT_EQ(run.status, 0) << run.out;
  std::string report = slurp(out);
  EXPECT_NE(report.find("window=[-2,6] over Z\n"), std::string::npos) << report;
  // Over Z/9 the span of [3]/x = 3 is 3-torsion, so the freeness check fails.
  CliRun modular = run_cli("tate --manifest " + tate + " --window -2,6 --mod-power 2");
  EXPECT_EQ(modular.status, kExitVerification);
  EXPECT_NE(modular.out.find("over Z/3^2"), std::string::npos) << modular.out;
  EXPECT_NE(modular.out.find("NOT FREE"), std::string::npos);
  std::string locss = kManifests + "/locss_additive_p2.mubg";
  EXPECT_EQ(run_cli("locss --manifest " + locss + " --mod-power 1").status, 0);
  std::filesystem::remove(out);
}

TEST(Cli, ThreadOverrideKeepsBytes) {
  std::string m = kManifests + "/collapse_multiplicative_p2.mubg";
  CliRun a = run_cli("collapse --manifest " + m);
  setenv("MUBG_THREADS", "1", 1);
  CliRun b = run_cli("collapse --manifest " + m);
  unsetenv("MUBG_THREADS");
  EXPECT_EQ(a.out, b.out);
}
