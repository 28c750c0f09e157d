#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sys/wait.h>

#include "nilclosure/cli.hpp"

using namespace nilclosure;
namespace fs = std::filesystem;

namespace {

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("nilclosure_cli_" + std::to_string(::getpid()) + "_" +
                                        ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string write(const std::string& name, const std::string& text) {
    const fs::path p = dir_ / name;
    std::ofstream(p) << text;
    return p.string();
  }
  std::string fixture_config(const std::string& file) {
    return write("cfg.json", "{\"fixture\": \"" + std::string(NILCLOSURE_DATA_DIR) + "/" + file + "\", \"seed\": 3}");
  }
  int run(const std::string& args) {
    const std::string cmd = std::string(NILCLOSURE_TOOL) + " " + args + " > " + (dir_ / "stdout").string() +
                            " 2> " + (dir_ / "stderr").string();
    const int rc = std::system(cmd.c_str());
    return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  }
  std::string slurp(const std::string& name) {
    std::ifstream in(dir_ / name);
    return {std::istreambuf_iterator<char>(in), {}};
  }

  fs::path dir_;
};

const char* sl4 = R"({"algebra": {"type": "A", "rank": 3}, "grading": "adjoint", "label_bound": 2, "seed": 1})";

}  // namespace

TEST_F(CliTest, ConfigValidation) {
  EXPECT_THROW(load_config(write("bad.json", "{not json")), ConfigError);
  EXPECT_THROW(load_config(write("k.json", R"({"colour": 1})")), ConfigError);
  EXPECT_THROW(validate_config(load_config(write("none.json", R"({"seed": 1})"))), ConfigError);
  EXPECT_THROW(validate_config(load_config(write("both.json", R"({"fixture": "x.json", "label_bound": 2})"))),
               ConfigError);
  EXPECT_THROW(load_config(write("s.json", R"({"rank_strategy": "fast"})")), ConfigError);
  RunConfig c = load_config(write("ok.json", sl4));
  EXPECT_NO_THROW(validate_config(c));
  EXPECT_EQ(c.type, 'A');
  EXPECT_EQ(*c.label_bound, 2);
}

TEST_F(CliTest, FixturePathIsRelativeToConfig) {
  fs::create_directories(dir_ / "sub");
  fs::copy_file(std::string(NILCLOSURE_DATA_DIR) + "/e7_order3.json", dir_ / "e7.json");
  RunConfig c = load_config(write("sub/cfg.json", R"({"fixture": "../e7.json"})"));
  EXPECT_NO_THROW(validate_config(c));
  EXPECT_EQ(fs::path(*c.fixture), (dir_ / "e7.json").lexically_normal());
}

TEST_F(CliTest, HashDependsOnSeedAndSource) {
  RunConfig a = load_config(write("a.json", sl4));
  RunConfig b = a;
  b.seed = 2;
  RunConfig c = a;
  c.label_bound = 3;
  EXPECT_EQ(config_hash(a), config_hash(a));
  EXPECT_NE(config_hash(a), config_hash(b));
  EXPECT_NE(config_hash(a), config_hash(c));
  RunConfig d = a;
  d.jobs = 4;
  d.out = "elsewhere";
  EXPECT_EQ(config_hash(a), config_hash(d));
}

TEST_F(CliTest, JsonRoundTripIsByteIdentical) {
  RunConfig c = load_config(write("a.json", sl4));
  LoadedCase lc = load_case(c);
  DiagramRecord r;
  r.name = lc.name;
  r.diagram = build_hasse(lc.group, lc.orbits, c.seed, hasse_options(c, lc.from_fixture));
  r.seed = c.seed;
  r.config_hash = config_hash(c);
  r.version = tool_version();
  r.prepare_seconds = 0.1234567891;
  r.decide_seconds = 2.5;
  const std::string first = diagram_json(r).dump(2);
  const std::string second = diagram_json(diagram_from_json(nlohmann::json::parse(first))).dump(2);
  EXPECT_EQ(first, second);
}

TEST_F(CliTest, DotRanksByDimension) {
  RunConfig c = load_config(write("a.json", sl4));
  LoadedCase lc = load_case(c);
  DiagramRecord r;
  r.name = lc.name;
  r.diagram = build_hasse(lc.group, lc.orbits, c.seed, hasse_options(c, lc.from_fixture));
  const std::string dot = diagram_dot(r);
  std::vector<long> dims;
  std::size_t pos = 0;
  while ((pos = dot.find("{ rank=same; \"dim", pos)) != std::string::npos) {
    pos += 17;
    dims.push_back(std::stol(dot.substr(pos)));
  }
  EXPECT_EQ(dims, (std::vector<long>{12, 10, 8, 6, 0}));
  EXPECT_NE(dot.find("n1 -> n2;"), std::string::npos);
}

TEST_F(CliTest, ToolExitCodes) {
  const std::string cfg = write("sl4.json", sl4);
  EXPECT_EQ(run("hasse --config " + cfg + " --format json"), exit_ok);
  auto j = nlohmann::json::parse(slurp("stdout"));
  EXPECT_EQ(j["covering_edges"].size(), 4u);
  EXPECT_EQ(j["seed"], 1);
  EXPECT_EQ(j["config_hash"].get<std::string>().size(), 16u);
  EXPECT_EQ(run("hasse --config " + cfg + " --seed 7 --format dot --out " + (dir_ / "d.dot").string()), exit_ok);
  EXPECT_NE(slurp("d.dot").find("seed 7"), std::string::npos);
  EXPECT_EQ(run("list-orbits --config " + write("sl3.json", R"({"algebra": {"type": "A", "rank": 2},
      "grading": "adjoint", "label_bound": 2})")), exit_ok);
  EXPECT_EQ(run("hasse --config " + write("bad.json", R"({"seed": 1})")), exit_bad_config);
  EXPECT_EQ(run("hasse --config " + (dir_ / "missing.json").string()), exit_bad_config);
  EXPECT_EQ(run("hasse --config " + cfg + " --format svg"), exit_bad_config);
  EXPECT_EQ(run("decide 1 99 --config " + cfg), exit_bad_config);
}

TEST_F(CliTest, DecideTrivector) {
  const std::string cfg = fixture_config("e8_trivector.json");
  EXPECT_EQ(run("decide 1 2 --config " + cfg), exit_ok);
  auto yes = nlohmann::json::parse(slurp("stdout"));
  EXPECT_EQ(yes["verdict"], "included");
  EXPECT_EQ(yes["verified"], true);
  EXPECT_EQ(run("decide 2 1 --config " + cfg), exit_ok);
  auto no = nlohmann::json::parse(slurp("stdout"));
  EXPECT_EQ(no["verdict"], "not-included");
  EXPECT_EQ(no["certificate"]["reason"], "dimension");
  EXPECT_EQ(run("decide 2 2 --config " + cfg), exit_ok);
  EXPECT_EQ(nlohmann::json::parse(slurp("stdout"))["verdict"], "not-included");
}

TEST_F(CliTest, ValidateFixtures) {
  EXPECT_EQ(run("validate-fixtures " + std::string(NILCLOSURE_DATA_DIR) + "/e7_order3.json"), exit_ok);
  EXPECT_NE(slurp("stdout").find("75/75"), std::string::npos);
  // A corrupted dimension is a validation failure.
  std::ifstream in(std::string(NILCLOSURE_DATA_DIR) + "/e7_order3.json");
  auto j = nlohmann::json::parse(in);
  j["orbits"][0]["dim"] = 41;
  EXPECT_EQ(run("validate-fixtures " + write("broken.json", j.dump())), exit_validation);
  EXPECT_NE(slurp("stderr").find("row 1"), std::string::npos);
}

TEST_F(CliTest, DiagramCache) {
  const std::string cfg = write("c.json", R"({"algebra": {"type": "A", "rank": 3}, "grading": "adjoint",
      "label_bound": 2, "cache_dir": "cache"})");
  EXPECT_EQ(run("hasse --config " + cfg), exit_ok);
  const std::string first = slurp("stdout");
  ASSERT_TRUE(fs::exists(dir_ / "cache"));
  EXPECT_EQ(run("hasse --config " + cfg), exit_ok);
  EXPECT_NE(slurp("stderr").find("cached"), std::string::npos);
  EXPECT_EQ(slurp("stdout"), first);
}
