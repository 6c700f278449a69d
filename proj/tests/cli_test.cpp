#include <gtest/gtest.h>

#include <nlohmann/json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"

namespace polytile::cli {
namespace {

namespace fs = std::filesystem;
using Json = nlohmann::json;

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("polytile_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir_);
    write("z1.json", R"({"basis": [[1]]})");
    write("z2.json", R"({"basis": [[1, 0], [0, 1]]})");
    write("square.json", R"({"dim": 2, "simplices": [[[0,0],[1,0],[1,1]], [[0,0],[1,1],[0,1]]]})");
    write("triangle.json", R"({"dim": 2, "simplices": [[[0,0],[1,0],[0,1]]]})");
    write("unit.json", R"({"dim": 1, "simplices": [[[0],[1]]]})");
    write("shifted.json", R"({"dim": 1, "simplices": [[["1/4"],["5/4"]]]})");
    write("lshape.json", R"({"dim": 2, "simplices": [[[0,0],[2,0],[2,1]], [[0,0],[2,1],[1,1]],
                                                      [[0,0],[1,1],[0,2]], [[1,1],[1,2],[0,2]]]})");
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  void write(const std::string& name, const std::string& text) const { std::ofstream(path(name)) << text; }

  struct Result {
    int code;
    std::string out, err;
    Json json() const { return Json::parse(out); }
  };

  Result call(std::vector<std::string> args) const {
    for (auto& a : args)
      if (a.ends_with(".json") && a.find('/') == std::string::npos) a = path(a);
    std::ostringstream out, err;
    int code = run(args, out, err);
    return {code, out.str(), err.str()};
  }

  fs::path dir_;
};

TEST_F(CliTest, TilesExitCodes) {
  auto yes = call({"tiles", "square.json", "z2.json"});
  EXPECT_EQ(yes.code, kOk);
  EXPECT_EQ(yes.json()["tiles"], true);
  EXPECT_EQ(yes.json()["level"], 1);
  auto no = call({"tiles", "triangle.json", "z2.json"});
  EXPECT_EQ(no.code, kNegative);
  EXPECT_TRUE(no.json().contains("witness"));
}

TEST_F(CliTest, OutputIsDeterministic) {
  auto a = call({"invariants", "triangle.json", "z2.json"});
  auto b = call({"--threads", "3", "invariants", "triangle.json", "z2.json"});
  EXPECT_EQ(a.code, kOk);
  EXPECT_EQ(a.out, b.out);
  auto v1 = call({"verify", "triangle.json", "z2.json", "--samples", "300", "--seed", "7"});
  auto v2 = call({"verify", "triangle.json", "z2.json", "--samples", "300", "--seed", "7"});
  EXPECT_EQ(v1.code, kNegative);
  EXPECT_EQ(v1.out, v2.out);
  auto pretty = call({"--output", "pretty", "tiles", "square.json", "z2.json"});
  EXPECT_EQ(pretty.json(), call({"tiles", "square.json", "z2.json"}).json());
  EXPECT_NE(pretty.out.find('\n'), pretty.out.size() - 1);
}

TEST_F(CliTest, DecomposeUnitIntervals) {
  auto r = call({"decompose", "unit.json", "shifted.json", "z1.json"});
  ASSERT_EQ(r.code, kOk) << r.err;
  Json j = r.json();
  EXPECT_EQ(j["equidecomposable"], true);
  EXPECT_EQ(j["pieces"].size(), 2u);
  EXPECT_EQ(j["pieces"][1]["shift"], Json::parse(R"(["1"])"));
  EXPECT_EQ(call({"equidecomposable", "unit.json", "shifted.json", "z1.json"}).code, kOk);
  EXPECT_EQ(call({"decompose", "square.json", "triangle.json", "z2.json"}).code, kNegative);
}

TEST_F(CliTest, RepresentZero) {
  write("zero.json", R"({"dim": 2, "terms": [{"coeff": 1, "simplex": [[0,0],[1,0],[0,1]]},
                                              {"coeff": -1, "simplex": [[2,1],[3,1],[2,2]]}]})");
  auto r = call({"represent-zero", "zero.json", "z2.json"});
  ASSERT_EQ(r.code, kOk) << r.err;
  EXPECT_EQ(r.json()["replay_matches"], true);
  EXPECT_EQ(call({"represent-zero", "triangle.json", "z2.json"}).code, kNegative);
}

TEST_F(CliTest, Fourier) {
  auto ok = call({"fourier", "square.json", "z2.json", "--radius", "2"});
  EXPECT_EQ(ok.code, kOk);
  EXPECT_EQ(ok.json()["frequencies_tested"], 24);
  auto bad = call({"fourier", "triangle.json", "z2.json", "--radius", "2", "--tol", "1e-6"});
  EXPECT_EQ(bad.code, kNegative);
  EXPECT_EQ(bad.json()["pass"], false);
}

TEST_F(CliTest, Criteria) {
  auto b = call({"criteria", "--method", "bolle", "square.json", "z2.json"});
  EXPECT_EQ(b.code, kOk);
  EXPECT_EQ(b.json()["level"], 1);
  auto k = call({"criteria", "--method", "kol", "lshape.json", "z2.json"});
  EXPECT_EQ(k.code, kHypothesisNotMet);
  EXPECT_NE(k.err.find("hypothesis"), std::string::npos);
  EXPECT_EQ(call({"criteria", "--method", "bolle", "triangle.json", "z2.json"}).code, kNegative);
  EXPECT_EQ(call({"criteria", "--method", "1d", "unit.json", "z1.json"}).code, kOk);
}

TEST_F(CliTest, InputErrors) {
  write("broken.json", R"({"dim": 2, "simplices": [[[0,0],[1,0],["x",1]]]})");
  auto r = call({"tiles", "broken.json", "z2.json"});
  EXPECT_EQ(r.code, kInputError);
  EXPECT_NE(r.err.find("simplices[0][2][0]"), std::string::npos) << r.err;
  EXPECT_EQ(call({"tiles", "missing.json", "z2.json"}).code, kInputError);
  EXPECT_EQ(call({"tiles", "square.json"}).code, kInputError);
  EXPECT_EQ(call({"nonsense"}).code, kInputError);
  EXPECT_EQ(call({"tiles", "z2.json", "z2.json"}).code, kInputError);
  EXPECT_EQ(call({"tiles", "square.json", "z1.json"}).code, kInputError);
  EXPECT_EQ(call({"criteria", "--method", "nope", "square.json", "z2.json"}).code, kInputError);
  EXPECT_EQ(call({"--help"}).code, kOk);
}

TEST_F(CliTest, Plot) {
  auto r = call({"plot", "square.json", "z2.json", "--out", path("square.svg")});
  ASSERT_EQ(r.code, kOk) << r.err;
  std::ifstream in(path("square.svg"));
  std::stringstream svg;
  svg << in.rdbuf();
  EXPECT_NE(svg.str().find("<svg"), std::string::npos);
  EXPECT_EQ(call({"plot", "unit.json", "z1.json", "--out", path("line.svg")}).code, kInputError);
}

}  // namespace
}  // namespace polytile::cli
