#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "nodal/constructions/constructions.hpp"

using namespace nodal;

namespace {

const std::string kFixtures = NODAL_FIXTURES_DIR;

struct Run {
  int code = -1;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  Run r;
  r.code = cli::run(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string fixture(const std::string& name) { return kFixtures + "/" + name; }

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("nodal_cli_test_" + name)).string();
}

Json parse(const std::string& s) { return Json::parse(s); }

// Drops the one field that legitimately differs between identical runs.
Json without_timing(Json j) {
  if (j.contains("manifest")) j["manifest"].erase("wall_time_ms");
  return j;
}

bool contains(const std::string& hay, const std::string& needle) { return hay.find(needle) != std::string::npos; }

}  // namespace

// ---------------------------------------------------------------------------
// bounds

TEST(CliBounds, P3DegreeEight) {
  const auto r = run({"bounds", "--space", "p3", "--d", "8", "--json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const Json j = parse(r.out);
  EXPECT_EQ(j.at("dim"), 164);
  EXPECT_EQ(j.at("delta_max"), 21);
  EXPECT_EQ(j.at("heuristic"), 41);
}

TEST(CliBounds, ConventionAndSurfaceCase) {
  EXPECT_EQ(parse(run({"bounds", "--space", "p3", "--d", "2", "--json"}).out).at("delta_max"), 0);
  EXPECT_EQ(parse(run({"bounds", "--space", "ci4", "--d", "3", "--h", "2", "--json"}).out).at("delta_max"), 19);
  EXPECT_EQ(parse(run({"bounds", "--space", "p2", "--d", "4", "--json"}).out).at("delta_max"), "n/a");
  const auto text = run({"bounds", "--space", "p3", "--d", "8"});
  EXPECT_TRUE(contains(text.out, "delta_max  21"));
}

TEST(CliBounds, UsageErrors) {
  EXPECT_EQ(run({}).code, cli::kExitUsage);
  EXPECT_EQ(run({"frobnicate"}).code, cli::kExitUsage);
  EXPECT_EQ(run({"bounds", "--space", "p5", "--d", "3"}).code, cli::kExitUsage);
  EXPECT_EQ(run({"bounds", "--space", "p3"}).code, cli::kExitUsage);
  EXPECT_EQ(run({"bounds", "--space", "ci4", "--d", "3"}).code, cli::kExitUsage);
  EXPECT_EQ(run({"bounds", "--space", "p3", "--d", "eight"}).code, cli::kExitUsage);
  EXPECT_EQ(run({"construct", "--d", "4", "--retries", "-1"}).code, cli::kExitUsage);
}

TEST(CliBounds, InvalidSystemIsDataError) {
  EXPECT_EQ(run({"bounds", "--space", "ci4", "--d", "0", "--h", "3"}).code, cli::kExitFormat);
}

// ---------------------------------------------------------------------------
// construct and certify

TEST(CliWitness, ConstructThenCertify) {
  const std::string w = temp_path("w42.json");
  const auto c = run({"construct", "--d", "4", "--seed", "42", "--out", w});
  ASSERT_EQ(c.code, 0) << c.err;
  const auto v = run({"certify", w});
  EXPECT_EQ(v.code, 0) << v.out << v.err;
  EXPECT_TRUE(contains(v.out, "verdict: Certified"));
  std::filesystem::remove(w);
}

TEST(CliWitness, DeterministicUnderSeed) {
  const auto a = run({"construct", "--d", "5", "--seed", "7"});
  const auto b = run({"construct", "--d", "5", "--seed", "7"});
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(without_timing(parse(a.out)), without_timing(parse(b.out)));
  const auto c = run({"construct", "--d", "5", "--seed", "8"});
  EXPECT_NE(parse(a.out).at("phi2"), parse(c.out).at("phi2"));
}

TEST(CliWitness, BundleRoundTrip) {
  const std::string bundle = temp_path("bundle.json");
  const auto r = run({"certify", fixture("witness_triangle.json"), "--out", bundle});
  ASSERT_EQ(r.code, 0) << r.err;
  std::ifstream in(bundle);
  const Json j = Json::parse(in);
  EXPECT_EQ(j.at("verdict"), "Certified");
  EXPECT_EQ(j.at("manifest").at("command"), "certify");
  EXPECT_EQ(j.at("certificates").size(), 6u);
  // A bundle is itself a valid witness file.
  const auto again = run({"certify", bundle, "--json"});
  EXPECT_EQ(again.code, 0);
  EXPECT_EQ(parse(again.out).at("certificates"), j.at("certificates"));
  std::filesystem::remove(bundle);
}

TEST(CliWitness, RefutedInconclusiveAndFormatErrors) {
  const auto tampered = run({"certify", fixture("witness_tampered_gluing.json")});
  EXPECT_EQ(tampered.code, 1);
  EXPECT_TRUE(contains(tampered.out, "failing stage: gluing"));
  const auto fermat = run({"certify", fixture("witness_fermat_triangle.json")});
  EXPECT_EQ(fermat.code, 2);
  EXPECT_TRUE(contains(fermat.out, "failing stage: smoothness"));
  EXPECT_EQ(run({"certify", fixture("malformed.json")}).code, cli::kExitFormat);
  EXPECT_EQ(run({"certify", fixture("does_not_exist.json")}).code, cli::kExitFormat);
  EXPECT_EQ(run({"certify", fixture("points_collinear.json")}).code, cli::kExitFormat);
}

TEST(CliWitness, GenericityBudgetIsInconclusive) {
  const auto r = run({"construct", "--d", "4", "--retries", "0"});
  EXPECT_EQ(r.code, 2);
  EXPECT_TRUE(contains(r.err, "genericity failure"));
}

// ---------------------------------------------------------------------------
// degeneration commands

TEST(CliDeform, NodeAtMinusOne) {
  const auto r = run({"deform-check", "--t", "-1", "--json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const Json j = parse(r.out);
  EXPECT_EQ(j.at("class"), "NodeA1");
  EXPECT_EQ(j.at("hessian_det"), "8");
  EXPECT_EQ(j.at("point"), Json::array({"-1", "0", "0"}));
  EXPECT_EQ(j.at("verified"), true);
}

TEST(CliDeform, ExitCodes) {
  EXPECT_EQ(run({"deform-check", "--t", "-9/4"}).code, 0);
  EXPECT_EQ(run({"deform-check", "--t", "-1", "--sign", "-1"}).code, 0);
  EXPECT_EQ(run({"deform-check", "--t", "1"}).code, 2);
  EXPECT_EQ(run({"deform-check", "--t", "0"}).code, cli::kExitFormat);
  EXPECT_EQ(run({"deform-check", "--t", "x"}).code, cli::kExitFormat);
  EXPECT_EQ(run({"deform-check", "--t", "-1", "--sign", "2"}).code, cli::kExitUsage);
}

TEST(CliChow, Transcript) {
  const auto r = run({"chow-f0"});
  ASSERT_EQ(r.code, 0);
  EXPECT_TRUE(contains(r.out, "e = Θ|_E = -σ - f"));
  EXPECT_TRUE(contains(r.out, "E''|_E = σ - f"));
  EXPECT_TRUE(contains(r.out, "f.e = -1, e^2 = 2"));
  EXPECT_TRUE(contains(r.out, "m_F = 0: Θ|_F = -2 f + 0 E  not effective"));
  EXPECT_TRUE(contains(r.out, "minimal effective m_F = 1"));
  const Json j = parse(run({"chow-f0", "--json"}).out);
  EXPECT_EQ(j.at("minimal_effective_mF"), 1);
}

TEST(CliHessian, Fixtures) {
  const auto ok = run({"hessian-limit", "--poly", fixture("hessian_normal_form.json"), "--json"});
  ASSERT_EQ(ok.code, 0) << ok.err;
  EXPECT_EQ(parse(ok.out).at("det_B0"), "23/4");
  EXPECT_EQ(run({"hessian-limit", "--poly", fixture("hessian_bad_constant.json")}).code, cli::kExitFormat);
  EXPECT_EQ(run({"hessian-limit", "--poly", fixture("malformed.json")}).code, cli::kExitFormat);
  EXPECT_EQ(run({"hessian-limit"}).code, cli::kExitUsage);
}

// ---------------------------------------------------------------------------
// regularity and certify-t1

TEST(CliRegularity, CollinearPointsAgainstLines) {
  const auto r = run({"regularity", "--system", fixture("system_p2_lines.json"), "--points",
                      fixture("points_collinear.json"), "--json"});
  EXPECT_EQ(r.code, 1);
  const Json j = parse(r.out);
  EXPECT_EQ(j.at("rank"), 2);
  EXPECT_EQ(j.at("stage"), "regularity");
  const auto text = run({"regularity", "--system", fixture("system_p2_lines.json"), "--points",
                         fixture("points_collinear.json")});
  EXPECT_TRUE(contains(text.out, "failing stage: regularity"));
  EXPECT_EQ(run({"regularity", "--system", fixture("system_p2_lines.json"), "--points",
                 fixture("points_triangle.json")})
                .code,
            0);
}

TEST(CliCertifyT1, Fixtures) {
  const auto cusp = run({"certify-t1", "--spec", fixture("s0_cusp.json")});
  EXPECT_EQ(cusp.code, 1);
  EXPECT_TRUE(contains(cusp.out, "failing stage: T1"));
  const auto node = run({"certify-t1", "--spec", fixture("s0_node.json"), "--json"});
  EXPECT_EQ(node.code, 0);
  EXPECT_EQ(parse(node.out).at("verdict"), "Certified");
  const auto mismatch = run({"certify-t1", "--spec", fixture("s0_mismatch.json")});
  EXPECT_EQ(mismatch.code, 1);
  EXPECT_TRUE(contains(mismatch.out, "failing stage: gluing"));
  EXPECT_EQ(run({"certify-t1", "--spec", fixture("system_p2_lines.json")}).code, cli::kExitFormat);
}

// ---------------------------------------------------------------------------
// JSON documents

TEST(CliJson, EveryCommandCarriesManifest) {
  const std::vector<std::vector<std::string>> cmds = {
      {"bounds", "--space", "p3", "--d", "5", "--json"},
      {"construct", "--d", "3", "--seed", "4"},
      {"certify", fixture("witness_triangle.json"), "--json"},
      {"deform-check", "--t", "-4", "--json"},
      {"chow-f0", "--json"},
      {"hessian-limit", "--poly", fixture("hessian_normal_form.json"), "--json"},
      {"regularity", "--system", fixture("system_p2_lines.json"), "--points", fixture("points_triangle.json"), "--json"},
      {"certify-t1", "--spec", fixture("s0_node.json"), "--json"},
  };
  for (const auto& c : cmds) {
    const auto r = run(c);
    ASSERT_EQ(r.code, 0) << c.front() << ": " << r.err;
    const Json j = parse(r.out);
    const Json& m = j.at("manifest");
    EXPECT_EQ(m.at("command"), c.front());
    EXPECT_EQ(m.at("arguments"), Json(c));
    EXPECT_EQ(m.at("verdict"), "Certified");
    EXPECT_TRUE(m.contains("version"));
    EXPECT_TRUE(m.contains("wall_time_ms"));
    EXPECT_EQ(Json::parse(j.dump()), j);
    // Same input, same document.
    EXPECT_EQ(without_timing(parse(run(c).out)), without_timing(j)) << c.front();
  }
}

TEST(CliJson, SeedFlagIsRecorded) {
  const Json j = parse(run({"construct", "--d", "3", "--seed", "12"}).out);
  EXPECT_EQ(j.at("manifest").at("seed"), 12);
  EXPECT_EQ(j.at("seed"), 12);
}

// ---------------------------------------------------------------------------
// The real binary, one fixture per exit code.

TEST(CliBinary, ExitCodes) {
  const std::string bin = NODAL_CLI_PATH;
  auto code = [&](const std::string& args) {
    const int status = std::system((bin + " " + args + " > /dev/null 2>&1").c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  };
  EXPECT_EQ(code("chow-f0"), 0);
  EXPECT_EQ(code("certify-t1 --spec " + fixture("s0_cusp.json")), 1);
  EXPECT_EQ(code("certify " + fixture("witness_fermat_triangle.json")), 2);
  EXPECT_EQ(code("--no-such-flag"), 64);
  EXPECT_EQ(code("certify " + fixture("malformed.json")), 65);
}
