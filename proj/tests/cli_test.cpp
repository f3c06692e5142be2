#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cli.hpp"
#include "doctest.h"

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "netdesign");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = netdesign::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

class TempDir {
 public:
  TempDir() : path_(fs::temp_directory_path() / "netdesign_cli_test") {
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }

  std::string write(const std::string& name, const std::string& text) const {
    const fs::path p = path_ / name;
    std::ofstream(p) << text;
    return p.string();
  }
  std::string path(const std::string& name) const { return (path_ / name).string(); }

 private:
  fs::path path_;
};

const char* kThreePlayerProblem = R"({"n": 3, "a": [1, 2, 3],
  "fixed": [[1, 2, -2], [3, 1, -3], [2, 3, 2]],
  "free": [[2, 1], [1, 3], [3, 2]]})";

const char* kFourNode = R"({"n": 4, "a": [1, 1, 1, 1], "g": [
  [0, 0.1, 0.2, -0.3], [0.1, 0, -0.3, 0.2], [0.2, -0.3, 0, 0.1], [-0.3, 0.2, 0.1, 0]]})";

const char* kFourNodePattern = R"({"n": 4, "pattern": [
  [0, 0, 1, 1], [0, 0, 0, 0], [1, 0, 0, 0], [1, 0, 0, 0]]})";

}  // namespace

TEST_CASE("usage errors") {
  CHECK(run({}).code == 1);
  CHECK(run({"bogus"}).code == 1);
  CHECK(run({"solve"}).code == 1);
  CHECK(run({"solve", "--game", "/nonexistent/game.json"}).code == 1);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("solve") {
  TempDir dir;
  const std::string game = dir.write("g.json", R"({"n": 2, "g": [[0, 0], [0, 0]], "a": [1, 2]})");
  const Run r = run({"solve", "--game", game});
  REQUIRE(r.code == 0);
  const json doc = json::parse(r.out);
  CHECK(doc["kind"] == "interior-ne");
  CHECK(doc["x"] == json::array({1.0, 2.0}));
  CHECK(doc["interior"] == true);

  const Run social = run({"solve", "--game", game, "--kind", "social", "--constrained"});
  REQUIRE(social.code == 0);
  CHECK(json::parse(social.out)["kind"] == "constrained-social");
  CHECK(run({"solve", "--game", game, "--kind", "nash"}).code == 1);

  const std::string singular =
      dir.write("s.json", R"({"n": 2, "g": [[0, 1], [1, 0]], "a": [1, 1]})");
  const Run s = run({"solve", "--game", singular});
  CHECK(s.code == 2);
  CHECK(s.err.find("singular") != std::string::npos);

  const std::string malformed = dir.write("m.json", "{\"n\": 2,\n \"g\": [}");
  const Run m = run({"solve", "--game", malformed});
  CHECK(m.code == 1);
  CHECK(m.err.find("line 2") != std::string::npos);

  const std::string pg = dir.write("pg.json", R"({"n": 2, "g": [[0, 0.5], [0.5, 0]],
      "a": [0, 0], "theta": [1, 1], "gamma": {"c": [1, 1], "d": [0.5, 0.5]}})");
  const Run p = run({"solve", "--game", pg});
  REQUIRE(p.code == 0);
  CHECK(json::parse(p.out)["kind"] == "pg-ne");
}

TEST_CASE("design") {
  TempDir dir;
  const std::string problem = dir.write("p.json", kThreePlayerProblem);
  const Run r = run({"design", "--problem", problem, "--seed", "0"});
  REQUIRE(r.code == 0);
  const json doc = json::parse(r.out);
  bool printed_branch = false;
  for (const json& s : doc["solutions"]) {
    const double g21 = s["g"][1][0], g13 = s["g"][0][2], g32 = s["g"][2][1];
    if (std::abs(g21 - 1.18042) < 1e-3 && std::abs(g13 + 0.273107) < 1e-3 &&
        std::abs(g32 - 37.229) < 1e-3 * 37.229) {
      printed_branch = true;
    }
    CHECK(s["residual_ne"].get<double>() <= 1e-8);
  }
  CHECK(printed_branch);

  // Two players, one fixed nonzero link: no coincident design exists.
  const std::string none = dir.write(
      "n.json", R"({"n": 2, "a": [1, 1], "fixed": [[1, 2, 0.7]], "free": [[2, 1]]})");
  const Run n = run({"design", "--problem", none, "--starts", "8"});
  CHECK(n.code == 3);
}

TEST_CASE("certify") {
  TempDir dir;
  const Run r = run({"certify", "--game", dir.write("g.json", kFourNode)});
  REQUIRE(r.code == 0);
  const json certs = json::parse(r.out)["certificates"];
  REQUIRE(certs.size() == 6);
  CHECK(certs[0]["name"] == "prop1-strong-monotone");
  CHECK(certs[4]["name"] == "continuity-spectral");
  CHECK(certs[4]["margin"].get<double>() == doctest::Approx(0.4));
}

TEST_CASE("perturb") {
  TempDir dir;
  const Run r = run({"perturb", "--game", dir.write("g.json", kFourNode), "--pattern",
                     dir.write("p.json", kFourNodePattern), "--from", "-0.6", "--to",
                     "0.6", "--steps", "12"});
  REQUIRE(r.code == 0);
  std::istringstream lines(r.out);
  std::string line;
  std::getline(lines, line);
  CHECK(line == "delta,social_cost,feasible,min_x,spectral_margin");
  int rows = 0;
  bool infeasible = false;
  while (std::getline(lines, line)) {
    ++rows;
    infeasible = infeasible || line.find(",0,") != std::string::npos;
  }
  CHECK(rows == 13);
  CHECK(infeasible);
  CHECK(run({"perturb", "--game", dir.path("g.json"), "--pattern", dir.path("p.json"),
             "--steps", "0"})
            .code == 1);
}

TEST_CASE("random and --out") {
  TempDir dir;
  const std::string out = dir.path("stats.csv");
  const Run r = run({"random", "--n", "20", "--p", "0.3", "--samples", "10", "--seed", "1",
                     "--weights", "uniform:0.5,1.5", "--out", out});
  REQUIRE(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream in(out);
  std::string header, row;
  std::getline(in, header);
  std::getline(in, row);
  CHECK(header == "n,p,samples,fraction_singular,mean_min_sv,coincident");
  CHECK(row.rfind("20,0.3,10,", 0) == 0);
  CHECK(run({"random", "--n", "5", "--p", "0.3", "--samples", "2", "--seed", "1",
             "--weights", "triangular"})
            .code == 1);
  CHECK(run({"random", "--n", "5", "--p", "2", "--samples", "2", "--seed", "1"}).code == 1);
}

TEST_CASE("ir-check") {
  TempDir dir;
  const Run r = run({"ir-check", "--game", dir.write("g.json", kFourNode)});
  REQUIRE(r.code == 0);
  const json doc = json::parse(r.out);
  CHECK(doc["all_rational"] == true);
  for (const json& p : doc["players"]) {
    CHECK(p["cost_at_eq"].get<double>() == doctest::Approx(-0.5));
  }
  // Negative interior solution: falls back to the constrained solver.
  const Run c = run({"ir-check", "--game", dir.write("n.json", R"({"n": 2,
      "g": [[0, 2], [0, 0]], "a": [1, 1]})")});
  REQUIRE(c.code == 0);
  CHECK(json::parse(c.out)["equilibrium"]["kind"] == "constrained-ne");
}
