#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "vz/cli.hpp"
#include "vz/error.hpp"
#include "vz/format.hpp"
#include "vz/problem_io.hpp"
#include "vz/render.hpp"

using namespace vz;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("vz_cli_test_" + name);
  fs::remove_all(dir);
  return dir;
}

cli::RunConfig config(const std::string& command, const std::string& problem, const std::string& out) {
  cli::RunConfig c;
  c.command = command;
  c.problem = std::string(VZ_EXAMPLES_DIR) + "/" + problem;
  c.out = out;
  return c;
}

}  // namespace

TEST_CASE("number formatting") {
  CHECK(shortest(0.1) == "0.1");
  CHECK(shortest(1.0 / 3.0) == "0.3333333333333333");
  CHECK(shortest(-INFINITY) == "-inf");
  CHECK(significant(1.0 / 3.0, 9) == "0.333333333");
}

TEST_CASE("argument parsing") {
  CHECK(cli::parse_n_list("25") == std::vector<int>{25});
  CHECK(cli::parse_n_list("25,50,100") == std::vector<int>{25, 50, 100});
  CHECK_THROWS_AS(cli::parse_n_list("25,x"), Error);
  const Window w = cli::parse_window("0.5,-1,3");
  CHECK(w.center == cplx(0.5, -1.0));
  CHECK(w.half_side == 3.0);
  CHECK_THROWS_AS(cli::parse_window("0,0,-1"), Error);
  CHECK_THROWS_AS(cli::parse_window("0,0"), Error);
}

TEST_CASE("problem files") {
  SUBCASE("polar form") {
    const auto p = parse_problem(R"({"poles":[{"re":1,"im":0,"order":2,"coeffs":[0,{"re":1,"im":0}]}]})");
    REQUIRE(p.rational);
    CHECK(p.rational->poles[0].order() == 2);
    const auto back = parse_problem(to_json(*p.rational));
    CHECK(back.rational->poles[0].coeffs[1] == cplx(1.0));
  }
  SUBCASE("numerator over poles") {
    const auto p = parse_problem(R"({"numerator":[1],"denominator_poles":[[0,1],{"re":0,"im":-1}]})");
    REQUIRE(p.rational);
    CHECK(std::abs(p.rational->poles[0].coeffs[0] - cplx(0, -0.5)) < 1e-15);
  }
  SUBCASE("lemniscate") {
    const auto p = parse_problem(R"({"polynomials":[[0,0,1],[-3,1]]})");
    REQUIRE(p.lemniscate);
    CHECK(p.sites().size() == 3);
  }
  SUBCASE("malformed") {
    CHECK_THROWS_AS(parse_problem("{"), Error);
    CHECK_THROWS_AS(parse_problem(R"({"poles":[{"re":1}]})"), Error);
    CHECK_THROWS_AS(parse_problem(R"({"nothing":1})"), Error);
  }
}

TEST_CASE("measure on two poles gives a single unit-mass row") {
  const auto dir = scratch("measure");
  REQUIRE(cli::run(config("measure", "two_pole.json", dir.string())) == 0);
  CHECK(slurp(dir / "measure.csv") == "i,j,t_lo,t_hi,mass\n0,1,-inf,inf,1\n");
  CHECK(fs::exists(dir / "measure_cdf.csv"));
}

TEST_CASE("compare reports a decreasing KS column") {
  const auto dir = scratch("compare");
  auto cfg = config("compare", "two_pole.json", dir.string());
  cfg.n_list = {25, 50, 100};
  REQUIRE(cli::run(cfg) == 0);
  const auto j = nlohmann::json::parse(slurp(dir / "compare.json"));
  REQUIRE(j.size() == 3);
  double prev = INFINITY;
  for (const auto& rep : j) {
    const double ks = rep["edges"][0]["ks"].get<double>();
    CHECK(ks < prev);
    prev = ks;
  }
  CHECK(fs::exists(dir / "atoms.csv"));
}

TEST_CASE("outputs are deterministic") {
  const auto a = scratch("det_a"), b = scratch("det_b");
  for (const auto& dir : {a, b}) {
    auto cfg = config("potential", "two_pole.json", dir.string());
    cfg.n_list = {10, 20};
    cfg.has_window = true;
    cfg.window = Window{{0.0, 0.0}, 3.0};
    cfg.grid = 40;
    REQUIRE(cli::run(cfg) == 0);
    auto r = config("roots", "equilateral.json", dir.string());
    r.n_list = {7};
    REQUIRE(cli::run(r) == 0);
  }
  for (const char* f : {"potential.csv", "potential.json", "roots.csv"}) CHECK(slurp(a / f) == slurp(b / f));
}

TEST_CASE("every subcommand writes its files") {
  const auto dir = scratch("all");
  auto run = [&](const std::string& cmd, const std::string& problem, std::vector<int> n) {
    auto cfg = config(cmd, problem, dir.string());
    cfg.n_list = std::move(n);
    cfg.grid = 32;
    return cli::run(cfg);
  };
  CHECK(run("derive", "equilateral.json", {3, 4}) == 0);
  CHECK(run("voronoi", "equilateral.json", {1}) == 0);
  CHECK(run("odecheck", "two_pole.json", {1, 2}) == 0);
  CHECK(run("render", "random_degree8.json", {5}) == 0);
  CHECK(run("lemniscate", "four_lines.json", {1, 2}) == 0);
  auto lr = config("lemniscate", "four_lines.json", dir.string());
  lr.lemniscate_render = true;
  lr.n_list = {2};
  lr.grid = 40;
  CHECK(cli::run(lr) == 0);
  for (const char* f : {"derive.csv", "diagnostics.csv", "voronoi.json", "odecheck.csv", "render.svg",
                        "lemniscate.json", "lemniscate_roots.csv", "lemniscate.svg"})
    CHECK(fs::exists(dir / f));
  const std::string svg = slurp(dir / "render.svg");
  CHECK(svg.find("<circle class=\"root\"") != std::string::npos);
  CHECK(svg.find("scale(1,-1)") != std::string::npos);
}

TEST_CASE("exit statuses") {
  const auto dir = scratch("exit");
  auto bad = config("potential", "two_pole.json", dir.string());
  bad.grid = 8;
  CHECK(cli::run(bad) == 1);
  auto missing = config("roots", "no_such_file.json", dir.string());
  CHECK(cli::run(missing) == 1);
  auto wrong = config("lemniscate", "two_pole.json", dir.string());
  CHECK(cli::run(wrong) == 1);
}

TEST_CASE("skeleton clipping reaches the window border") {
  const auto v = VoronoiDiagram::build({cplx(0, 1), cplx(0, -1)});
  const auto segs = clip_skeleton(v, Window{{0.0, 0.0}, 2.0});
  REQUIRE(segs.size() == 1);
  CHECK(std::abs(std::abs(segs[0].first.real()) - 2.0) < 1e-15);
  CHECK(std::abs(std::abs(segs[0].second.real()) - 2.0) < 1e-15);
  CHECK(clip_skeleton(v, Window{{0.0, 5.0}, 1.0}).empty());
}
