#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <string>
#include <sys/wait.h>

#include "arithdyn/app/commands.hpp"

using namespace arithdyn;
using namespace arithdyn::app;
namespace fs = std::filesystem;

namespace {

struct CliRun {
  int status = -1;
  std::string out;
  Json summary;
};

CliRun run_cli(const std::string& args) {
  CliRun r;
  FILE* pipe = popen((std::string(ARITHDYN_CLI_PATH) + " " + args + " 2>/dev/null").c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf{};
  while (std::fgets(buf.data(), buf.size(), pipe)) r.out += buf.data();
  const int w = pclose(pipe);
  r.status = WIFEXITED(w) ? WEXITSTATUS(w) : -1;
  r.summary = Json::parse(r.out, nullptr, false);
  return r;
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("arithdyn_cli_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

}  // namespace

TEST(Config, ShippedSchemaMatchesTheCommandTable) {
  const Json shipped = read_json_file(ARITHDYN_SCHEMA_PATH);
  EXPECT_EQ(shipped, config_schema());
}

TEST(Config, CommandLineBeatsFileBeatsDefault) {
  const CommandSpec& g = find_command("green");
  const Json file = {{"command", "green"}, {"c", "-2"}, {"tol", 1e-6}};
  const ResolvedConfig r = resolve_config(g, {{"tol", "1e-9"}}, file);
  EXPECT_EQ(r.text("c"), "-2");
  EXPECT_EQ(r.real("tol"), 1e-9);
  EXPECT_EQ(r.text("map"), "z2c");
  EXPECT_EQ(r.integer("seed"), 42u);
}

TEST(Config, RejectsUnknownAndMistypedFields) {
  const CommandSpec& g = find_command("green");
  EXPECT_THROW(resolve_config(g, {}, Json{{"bogus", 1}}), ConfigError);
  EXPECT_THROW(resolve_config(g, {}, Json{{"command", "height"}}), ConfigError);
  EXPECT_THROW(resolve_config(g, {{"tol", "0"}}), ConfigError);
  EXPECT_THROW(resolve_config(g, {{"tol", "abc"}}), ConfigError);
  EXPECT_THROW(resolve_config(g, {{"max-depth", "-3"}}), ConfigError);
  EXPECT_THROW(resolve_config(g, {{"map", "mystery"}}), ConfigError);
  EXPECT_THROW(resolve_config(g, {}, Json::array()), ConfigError);
  EXPECT_THROW(find_command("nope"), ConfigError);
}

TEST(Config, EveryCommandResolvesItsDefaults) {
  for (const auto& c : command_table()) {
    const ResolvedConfig r = resolve_config(c, {});
    EXPECT_EQ(r.values.size(), c.params.size()) << c.name;
  }
}

TEST(Parse, ValuesAreExact) {
  EXPECT_EQ(parse_rational("-0.75", "x"), BigRat::parse("-3/4"));
  EXPECT_EQ(parse_rational(".5", "x"), BigRat::parse("1/2"));
  EXPECT_EQ(parse_rational("7/21", "x"), BigRat::parse("1/3"));
  EXPECT_THROW(parse_rational("1.5e3", "x"), ConfigError);
  EXPECT_THROW(parse_rational("1/0", "x"), ConfigError);
  EXPECT_EQ(parse_complex("0.5,-2", "z"), Complex(0.5, -2.0));
  EXPECT_EQ(parse_complex("1/4", "z"), Complex(0.25));
  EXPECT_THROW(parse_complex("1,2,3", "z"), ConfigError);
  EXPECT_TRUE(parse_point_q("inf", "x").is_infinity());
}

TEST(Maps, FamiliesCarryExactAndPolynomialForms) {
  auto model = [](std::map<std::string, std::string> given) {
    return build_map(resolve_config(find_command("green"), given));
  };
  const MapModel z2c = model({{"c", "-3/4"}});
  ASSERT_TRUE(z2c.exact && z2c.poly);
  EXPECT_EQ(*z2c.exact, RationalMapQ::quadratic(BigRat::parse("-3/4")));
  EXPECT_FALSE(model({{"c", "0.3,0.1"}}).exact);
  EXPECT_FALSE(model({{"map", "lattes"}}).poly);
  const MapModel poly = model({{"map", "poly"}, {"coeffs", "-1/2;0;2"}});
  ASSERT_TRUE(poly.poly);
  EXPECT_EQ((*poly.poly)[2], Complex(2.0));
  EXPECT_EQ((*poly.poly)[0], Complex(-0.5));
  EXPECT_THROW(model({{"map", "rational"}, {"P", "1;1"}, {"Q", "1;1"}}), InvalidMapError);
  EXPECT_THROW(model({{"map", "cubic"}}).require_exact("height"), ConfigError);
}

TEST(Cli, GreenOfChebyshevAtThree) {
  const CliRun r = run_cli("green --map z2c --c -2 --z 3 --tol 1e-9 --out " + scratch("green").string());
  ASSERT_EQ(r.status, 0) << r.out;
  EXPECT_NEAR(r.summary["value"].get<double>(), 0.962424, 1e-6);
  EXPECT_NEAR(r.summary["value"].get<double>(), std::log((3 + std::sqrt(5.0)) / 2), 1e-9);
  EXPECT_LE(r.summary["error"].get<double>(), 1e-9);
  for (const char* k : {"value", "error", "depth", "method", "place"}) EXPECT_TRUE(r.summary.contains(k)) << k;
}

TEST(Cli, HeightOfAPreperiodicPointIsZero) {
  const CliRun r = run_cli("height --map z2c --c -1 --x 0/1");
  ASSERT_EQ(r.status, 0) << r.out;
  EXPECT_LE(std::fabs(r.summary["value"].get<double>()), r.summary["error"].get<double>());
}

TEST(Cli, PercritWritesTheRootsCsv) {
  const fs::path dir = scratch("percrit");
  const CliRun r = run_cli("percrit --n 2 --k 0 --out " + dir.string());
  ASSERT_EQ(r.status, 0) << r.out;
  const std::string csv = read_file(dir / "percrit_2_0.csv");
  const auto lines = split(csv, '\n');
  ASSERT_GE(lines.size(), 3u);
  EXPECT_EQ(lines[0], "re,im,multiplicity");
  std::vector<double> re;
  for (std::size_t i = 1; i < lines.size(); ++i)
    if (!lines[i].empty()) re.push_back(std::stod(split(lines[i], ',')[0]));
  ASSERT_EQ(re.size(), 2u);
  std::sort(re.begin(), re.end());
  EXPECT_NEAR(re[0], -1.0, 1e-14);
  EXPECT_NEAR(re[1], 0.0, 1e-14);
  for (const auto& e : fs::directory_iterator(dir)) EXPECT_NE(e.path().extension(), ".tmp");
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run_cli("green --no-such-option 1").status, 2);
  EXPECT_EQ(run_cli("green --tol -1").status, 2);
  EXPECT_EQ(run_cli("height --map per1").status, 2);
  EXPECT_EQ(run_cli("percrit --n 3 --k 3").status, 2);
  const CliRun numeric = run_cli("green --map z2c --c -2 --z 0.5 --max-depth 5");
  EXPECT_EQ(numeric.status, 3);
  EXPECT_TRUE(numeric.summary["partial"].get<bool>());
  EXPECT_EQ(run_cli("search --map z2c --c -1 --bound 30").status, 4);
  EXPECT_EQ(run_cli("percrit --n 12 --capacity 100").status, 4);
}

TEST(Cli, ConfigFileAndDryRun) {
  const fs::path dir = scratch("config");
  write_atomic(dir / "bad.json", R"({"command": "green", "surprise": true})");
  EXPECT_EQ(run_cli("green --config " + (dir / "bad.json").string()).status, 2);
  write_atomic(dir / "good.json", R"({"command": "percrit", "n": 3, "k": "1"})");
  const CliRun dry = run_cli("percrit --dry-run --config " + (dir / "good.json").string() + " --out " + dir.string());
  ASSERT_EQ(dry.status, 0) << dry.out;
  EXPECT_EQ(dry.summary["config"]["n"], 3);
  EXPECT_EQ(dry.summary["config"]["k"], 1);
  EXPECT_FALSE(fs::exists(dir / "percrit_3_1.csv"));
  const CliRun real = run_cli("percrit --config " + (dir / "good.json").string() + " --out " + dir.string());
  EXPECT_EQ(real.status, 0);
  EXPECT_TRUE(fs::exists(dir / "percrit_3_1.csv"));
}

TEST(Cli, EveryCommandSupportsDryRun) {
  for (const auto& c : command_table()) {
    const CliRun r = run_cli(c.name + " --dry-run");
    EXPECT_EQ(r.status, 0) << c.name;
    EXPECT_EQ(r.summary["status"], "dry-run") << c.name;
  }
}

TEST(Cli, ArtifactsDoNotDependOnThreadCount) {
  const fs::path a = scratch("threads_a"), b = scratch("threads_b");
  const std::string common = "locus --width 96 --height 80 --csv --out ";
  ASSERT_EQ(run_cli(common + a.string() + " --threads 1").status, 0);
  ASSERT_EQ(run_cli(common + b.string() + " --threads 3").status, 0);
  EXPECT_EQ(read_file(a / "locus.pgm"), read_file(b / "locus.pgm"));
  EXPECT_EQ(read_file(a / "locus.csv"), read_file(b / "locus.csv"));
  const std::string cloud = "cloud --map z2c --c -1 --depth 20 --width 500 --out ";
  ASSERT_EQ(run_cli(cloud + a.string() + " --threads 1").status, 0);
  ASSERT_EQ(run_cli(cloud + b.string() + " --threads 4").status, 0);
  EXPECT_EQ(read_file(a / "cloud.bin"), read_file(b / "cloud.bin"));
}

TEST(Cli, SelftestSubsetIsReproducible) {
  const fs::path a = scratch("self_a"), b = scratch("self_b");
  const CliRun ra = run_cli("selftest --criteria '1;3;9' --out " + a.string());
  const CliRun rb = run_cli("selftest --criteria '1;3;9' --out " + b.string());
  EXPECT_EQ(ra.status, 0) << ra.out;
  EXPECT_EQ(ra.out, rb.out);
  for (const char* f : {"criterion_01.json", "criterion_03.json", "criterion_09.json", "summary.json"})
    EXPECT_EQ(read_file(a / f), read_file(b / f)) << f;
  EXPECT_EQ(run_cli("selftest --criteria 21").status, 2);
}
