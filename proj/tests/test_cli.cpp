#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <doctest.h>
#include <json.hpp>

#include "lindemann/cli.hpp"
#include "lindemann/format.hpp"

using namespace lindemann;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

using Row = std::vector<std::string>;

std::vector<Row> parse_csv(const std::string& text) {
  std::vector<Row> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) break;
    Row row;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) row.push_back(cell);
    if (!line.empty() && line.back() == ',') row.emplace_back();
    rows.push_back(row);
  }
  return rows;
}

double num(const std::string& s) { return std::strtod(s.c_str(), nullptr); }

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("lindemann_test_" + name);
}

}  // namespace

TEST_CASE("help and usage errors") {
  CHECK(run({"--help"}).code == kExitOk);
  CHECK(run({"isoclines", "--help"}).out.find("--slopes") != std::string::npos);
  CHECK(run({}).code == kExitUsage);
  CHECK(run({"frobnicate"}).code == kExitUsage);
  CHECK(run({"isoclines"}).code == kExitUsage);
  CHECK(run({"isoclines", "--eps", "1", "--k1", "1", "--km1", "1", "--k2", "1"}).code == kExitUsage);
  CHECK(run({"isoclines", "--eps", "1", "--xmin", "0"}).code == kExitUsage);
  CHECK(run({"isoclines", "--eps", "1", "--n", "0"}).code == kExitUsage);
  CHECK(run({"isoclines", "--eps", "1", "--format", "xml"}).code == kExitUsage);
}

TEST_CASE("isoclines table") {
  const Run r = run({"isoclines", "--eps", "1", "--xmin", "0.1", "--xmax", "10", "--n", "100", "--slopes", "0.5"});
  REQUIRE(r.code == kExitOk);
  const auto rows = parse_csv(r.out);
  REQUIRE(rows.size() == 101);
  CHECK(rows[0] == Row{"x", "H", "V", "alpha", "F(0.5)"});
  for (const Row& row : rows) CHECK(row.size() == 5);

  const auto mid = parse_csv(run({"isoclines", "--eps", "1", "--xmin", "0.1", "--xmax", "10", "--n", "3", "--log"}).out);
  REQUIRE(mid.size() == 4);
  CHECK(num(mid[2][0]) == doctest::Approx(1.0));
  CHECK(num(mid[2][1]) == doctest::Approx(0.5));
  CHECK(num(mid[2][3]) == doctest::Approx(2.0 / 3.0));

  const auto flat = parse_csv(run({"isoclines", "--eps", "1", "--n", "20", "--slopes", "-1"}).out);
  for (std::size_t i = 1; i < flat.size(); ++i) CHECK(num(flat[i][4]) == 0.0);

  // F(., -2) has its pole at x = 1.
  const auto pole = parse_csv(run({"isoclines", "--eps", "1", "--xmin", "0.5", "--xmax", "1.5", "--n", "3",
                                   "--linear", "--slopes=-2"})
                                  .out);
  REQUIRE(pole.size() == 4);
  CHECK(pole[2][4].empty());
  CHECK_FALSE(pole[1][4].empty());
}

TEST_CASE("isoclines json mirrors the csv") {
  const Run r = run({"isoclines", "--eps", "2", "--n", "4", "--format", "json", "--slopes", "0.1"});
  REQUIRE(r.code == kExitOk);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["columns"].size() == 5);
  CHECK(j["rows"].size() == 4);
}

TEST_CASE("csv numbers round-trip") {
  const Run r = run({"isoclines", "--eps", "0.3", "--n", "50", "--log", "--slopes", "0.7,2.5"});
  const auto rows = parse_csv(r.out);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    for (const std::string& cell : rows[i]) {
      if (cell.empty()) continue;
      const double v = num(cell);
      CHECK(format_double(v) == cell);
    }
  }
}

TEST_CASE("slow manifold command") {
  const Run r = run({"slow-manifold", "--eps", "1"});
  REQUIRE(r.code == kExitOk);
  const auto rows = parse_csv(r.out);
  REQUIRE(rows.size() == 201);
  CHECK(rows[0] == Row{"x", "M", "lower", "upper", "est_error", "method"});
  for (std::size_t i = 1; i < rows.size(); ++i) {
    CHECK(num(rows[i][2]) < num(rows[i][1]));
    CHECK(num(rows[i][1]) < num(rows[i][3]));
    CHECK(rows[i][5] == "backward");
  }

  const auto both = parse_csv(run({"slow-manifold", "--eps", "1", "--n", "12", "--method", "both"}).out);
  REQUIRE(both.size() == 13);
  CHECK(both[0].back() == "delta");
  for (std::size_t i = 1; i < both.size(); ++i) CHECK(num(both[i].back()) <= 1e-7);

  const auto small = parse_csv(run({"slow-manifold", "--eps", "0.1"}).out);
  const std::size_t n = small.size() - 1;
  const double slope = (num(small[n][1]) - num(small[n - 1][1])) / (num(small[n][0]) - num(small[n - 1][0]));
  CHECK(slope == doctest::Approx(10.0).epsilon(0.01));

  CHECK(run({"slow-manifold", "--eps", "1", "--method", "guess"}).code == kExitUsage);
}

TEST_CASE("portrait command") {
  const Run axis = run({"portrait", "--eps", "1", "--init", "0,1", "--t-max", "1", "--rtol", "1e-10"});
  REQUIRE(axis.code == kExitOk);
  const auto rows = parse_csv(axis.out);
  CHECK(rows[0] == Row{"traj", "t", "x", "y"});
  CHECK(num(rows.back()[1]) == 1.0);
  CHECK(std::abs(num(rows.back()[3]) - std::exp(-1.0)) <= 1e-9);

  const Run ev = run({"portrait", "--eps", "1", "--init", "1,5", "--t-max", "10", "--events", "CrossV,CrossAlpha"});
  REQUIRE(ev.code == kExitOk);
  const auto split = ev.out.find("\n\n");
  REQUIRE(split != std::string::npos);
  const auto events = parse_csv(ev.out.substr(split + 2));
  REQUIRE(events.size() >= 3);
  CHECK(events[0] == Row{"traj", "t", "kind", "x", "y"});
  CHECK(events[1][2] == "CrossV");
  CHECK(events[2][2] == "CrossAlpha");

  const Run two = run({"portrait", "--eps", "2", "--init", "1,1", "--init", "3,0.5", "--t-max", "2", "--threads", "2"});
  const auto trajs = parse_csv(two.out);
  CHECK(trajs[1][0] == "0");
  CHECK(trajs.back()[0] == "1");

  const auto json = nlohmann::json::parse(
      run({"portrait", "--eps", "1", "--init", "1,1", "--t-max", "1", "--format", "json"}).out);
  CHECK(json["trajectories"].size() == 1);
}

TEST_CASE("portrait input validation") {
  const auto empty = temp_file("empty_inits.txt");
  { std::ofstream(empty) << "\n"; }
  const Run r = run({"portrait", "--eps", "1", "--inits", empty.string()});
  CHECK(r.code == kExitUsage);
  CHECK_FALSE(r.err.empty());
  CHECK(run({"portrait", "--eps", "1"}).code == kExitUsage);
  CHECK(run({"portrait", "--eps", "1", "--init", "1"}).code == kExitUsage);
  CHECK(run({"portrait", "--eps", "1", "--init", "1,-1"}).code == kExitUsage);
  CHECK(run({"portrait", "--eps", "1", "--init", "1,1", "--events", "CrossZ"}).code == kExitUsage);

  const auto list = temp_file("inits.txt");
  { std::ofstream(list) << "1,1\n# comment\n0.5, 2\n"; }
  const auto rows = parse_csv(run({"portrait", "--eps", "1", "--inits", list.string(), "--t-max", "1"}).out);
  CHECK(rows.back()[0] == "1");
  std::filesystem::remove(empty);
  std::filesystem::remove(list);
}

TEST_CASE("series command") {
  const auto origin = parse_csv(run({"series", "--eps", "1", "--kind", "origin", "--order", "5"}).out);
  REQUIRE(origin.size() == 5);
  CHECK(origin[1] == Row{"2", "1"});
  CHECK(origin[2] == Row{"3", "1"});
  CHECK(origin[3] == Row{"4", "0"});
  CHECK(origin[4] == Row{"5", "-5"});

  const auto inf = parse_csv(run({"series", "--eps", "1", "--kind", "infinity", "--order", "2"}).out);
  REQUIRE(inf.size() == 5);
  CHECK(inf[1] == Row{"-1", "1"});
  CHECK(inf[2] == Row{"0", "-0.5"});
  CHECK(inf[3] == Row{"1", "0.25"});
  CHECK(inf[4] == Row{"2", "-0.1875"});

  const auto two = parse_csv(run({"series", "--eps", "2", "--order", "3"}).out);
  CHECK(two.back() == Row{"3", "0"});

  const auto exact = parse_csv(run({"series", "--eps", "0.5", "--kind", "infinity", "--order", "2", "--exact"}).out);
  CHECK(exact[0] == Row{"n", "coefficient", "exact"});
  CHECK(exact[2][2] == "-4/3");

  CHECK(run({"series", "--eps", "1", "--order", "1"}).code == kExitUsage);
  CHECK(run({"series", "--eps", "1", "--kind", "infinity", "--order", "-2"}).code == kExitUsage);
  CHECK(run({"series", "--eps", "1", "--kind", "middle"}).code == kExitUsage);
}

TEST_CASE("verify command") {
  const Run r = run({"verify", "--eps", "1", "--suite", "fences"});
  REQUIRE(r.code == kExitOk);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["passed"] == true);
  CHECK(j["suite"] == "fences");
  CHECK(j["seed"] == 42);
  REQUIRE(j["reports"].size() == 1);
  CHECK(j["reports"][0]["worst_violation"].get<double>() <= 1e-8);

  CHECK(run({"verify", "--eps", "-1"}).code == kExitUsage);
  CHECK(run({"verify", "--eps", "1", "--suite", "everything"}).code == kExitUsage);

  const Run csv = run({"verify", "--eps", "2", "--suite", "concavity", "--format", "csv"});
  CHECK(csv.code == kExitOk);
  CHECK(csv.out.rfind("name,passed,samples_tested,worst_violation,tolerance,seed", 0) == 0);
}

TEST_CASE("verify reports do not depend on threads") {
  const std::vector<std::string> base{"verify", "--eps", "1", "--suite", "attraction", "--samples", "30"};
  auto threaded = base;
  threaded.insert(threaded.end(), {"--threads", "4"});
  const Run a = run(base), b = run(base), c = run(threaded);
  CHECK(a.out == b.out);
  CHECK(a.out == c.out);
}

TEST_CASE("nondim command") {
  const auto a = nlohmann::json::parse(run({"nondim", "--k1", "2", "--km1", "1", "--k2", "4", "--a0", "2"}).out);
  CHECK(a["eps"] == 0.5);
  CHECK(a["x0"] == 1.0);
  CHECK(a["y0"] == 0.0);
  CHECK(a["time_scale"] == 4.0);
  const auto b = nlohmann::json::parse(run({"nondim", "--k1", "1", "--km1", "1", "--k2", "1"}).out);
  CHECK(b["eps"] == 1.0);
  CHECK(b["x0"] == 0.0);
  CHECK(run({"nondim", "--k1", "1", "--km1", "0", "--k2", "1"}).code == kExitUsage);
  CHECK(run({"nondim", "--k1", "1", "--km1", "1", "--k2", "1", "--a0", "-1"}).code == kExitUsage);
}

TEST_CASE("rate constants stand in for eps") {
  const Run a = run({"isoclines", "--k1", "4", "--km1", "2", "--k2", "1", "--n", "5"});
  const Run b = run({"isoclines", "--eps", "0.5", "--n", "5"});
  REQUIRE(a.code == kExitOk);
  CHECK(a.out == b.out);
  CHECK(run({"isoclines", "--k1", "4", "--km1", "2", "--n", "5"}).code == kExitUsage);
}

TEST_CASE("config file with flag precedence") {
  const auto cfg = temp_file("config.json");
  { std::ofstream(cfg) << R"({"eps": 2, "n": 4, "slopes": [0.1, 0.2], "log": true})"; }
  const Run from_file = run({"isoclines", "--config", cfg.string()});
  REQUIRE(from_file.code == kExitOk);
  const auto rows = parse_csv(from_file.out);
  CHECK(rows.size() == 5);
  CHECK(rows[0].size() == 6);

  const Run flag_wins = run({"isoclines", "--config", cfg.string(), "--eps", "1"});
  const Run direct = run({"isoclines", "--eps", "1", "--n", "4", "--slopes", "0.1,0.2", "--log"});
  CHECK(flag_wins.out == direct.out);

  CHECK(run({"isoclines", "--config", temp_file("missing.json").string()}).code == kExitUsage);
  { std::ofstream(cfg) << "not json"; }
  CHECK(run({"isoclines", "--config", cfg.string()}).code == kExitUsage);
  std::filesystem::remove(cfg);
}

TEST_CASE("output file") {
  const auto path = temp_file("out.csv");
  const Run r = run({"series", "--eps", "1", "--order", "3", "--out", path.string()});
  REQUIRE(r.code == kExitOk);
  CHECK(r.out.empty());
  std::ifstream in(path);
  std::stringstream text;
  text << in.rdbuf();
  CHECK(text.str() == "n,coefficient\n2,1\n3,1\n");
  std::filesystem::remove(path);
  CHECK(run({"series", "--eps", "1", "--out", "/nonexistent/dir/x.csv"}).code == kExitUsage);
}
