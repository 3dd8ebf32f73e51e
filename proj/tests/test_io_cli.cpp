#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "doctest.h"
#include "test_support.hpp"
#include "wbm/errors.hpp"
#include "wbm/io.hpp"

using namespace wbm;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(WBM_CLI) + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::string out;
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) out.append(buf.data(), n);
  const int status = pclose(p);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

fs::path scratch() {
  const fs::path d = fs::temp_directory_path() / "wbm_cli_test";
  fs::create_directories(d);
  return d;
}

std::string write_file(const std::string& name, const std::string& text) {
  const fs::path p = scratch() / name;
  std::ofstream(p) << text;
  return p.string();
}

std::vector<std::string> data_lines(const std::string& csv) {
  std::vector<std::string> v;
  std::istringstream in(csv);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line[0] != '#') v.push_back(line);
  }
  return v;
}

}  // namespace

TEST_CASE("csv layout") {
  RunConfig cfg;
  cfg.subcommand = "check";
  auto r = report_ge("ineq", EvalResult::approx(2.0, 0.01, Method::quadrature), EvalResult::exact(1.0));
  r.measure = "gaussian/n=2";
  r.bodies = "a,b";
  std::vector<ReportRow> rows{ReportRow::from_report("c1", r),
                              ReportRow::value("c1", "measure", "lebesgue/n=2", "K", EvalResult::exact(0.5))};
  std::ostringstream os;
  write_csv(os, cfg, rows);
  const auto lines = data_lines(os.str());
  REQUIRE(lines.size() == 3);
  CHECK(lines[0] == "claim_id,inequality,measure,body_ids,lhs,lhs_err,rhs,rhs_err,margin,verdict,lhs_method,rhs_method");
  CHECK(lines[1].rfind("c1,ineq,gaussian/n=2,\"a,b\",2,0.01,1,0,1,holds,quadrature,exact", 0) == 0);
  CHECK(lines[2].find(",value,") != std::string::npos);
  CHECK(os.str().rfind("# wbm-report/1\n# config: ", 0) == 0);
  CHECK(os.str().find("# summary: holds=1 violated=0 inconclusive=0") != std::string::npos);
}

TEST_CASE("json output parses and carries the config") {
  RunConfig cfg;
  cfg.subcommand = "measure";
  cfg.seed = 7;
  std::ostringstream os;
  write_json(os, cfg, {ReportRow::value("x", "measure", "m", "K", EvalResult::approx(1.0, 1e-3, Method::qmc))});
  const auto j = nlohmann::json::parse(os.str());
  CHECK(j["config"]["seed"] == 7);
  CHECK(j["reports"].size() == 1);
  CHECK(j["reports"][0]["lhs"]["method"] == "qmc");
}

TEST_CASE("doubles round trip through text") {
  for (double v : {0.1, 1.0 / 3, 6.02e23, -1e-300, 0.6826894921370859}) CHECK(std::stod(format_double(v)) == v);
  CHECK_THROWS_AS(output_format_from_string("xml"), ParseError);
  CHECK(output_format_from_string("structured-text") == OutputFormat::json);
}

TEST_CASE("cli: Gaussian measure of [-1, 1]") {
  const auto box = write_file("box.spec", R"({"type":"segment","a":[-1],"b":[1]})");
  const auto r = run("measure --measure gaussian --body " + box);
  REQUIRE(r.code == 0);
  const auto lines = data_lines(r.out);
  REQUIRE(lines.size() == 2);
  std::vector<std::string> cells;
  std::stringstream ss(lines[1]);
  std::string cell;
  while (std::getline(ss, cell, ',')) cells.push_back(cell);
  const double v = std::stod(cells[4]);
  CHECK(std::abs(v - std::erf(1 / std::sqrt(2.0))) < 1e-9);
  CHECK(std::abs(v - 0.6826895) < 1e-7);
}

TEST_CASE("cli: invalid configuration exits 2") {
  const auto box = write_file("box2.spec", R"({"type":"polytope","vertices":[[0,0],[1,0],[0,1]]})");
  const auto bad = write_file("bad.spec", R"({"type":"polytope"})");
  CHECK(run("").code == 2);
  CHECK(run("frobnicate").code == 2);
  CHECK(run("measure --measure cauchy --body " + box).code == 2);
  CHECK(run("measure --body " + bad).code == 2);
  CHECK(run("measure --format xml --body " + box).code == 2);
  CHECK(run("repro no-such-claim").code == 2);
  CHECK(run("check --inequality supermod_global --generator hexagon --sweep 3").code == 2);
  CHECK(run("convexfn --mode check --x 0,1,2 --y 0,1,0").code == 2);
  CHECK(run("search --target supermod_global --tolerance-scale -1").code == 2);
}

TEST_CASE("cli: identical config gives byte-identical output") {
  const std::string args = "check --inequality supermod_global --measure gaussian --generator symmetric_polygon --sweep 15 --seed 4";
  const auto a = run(args), b = run(args), c = run(args + "1");
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out != c.out);
  CHECK(a.out.find("\"seed\":4") != std::string::npos);
}

TEST_CASE("cli: repro exit codes") {
  CHECK(run("repro ac10").code == 0);
  CHECK(run("repro lebesgue-supermodular --budget 10").code == 0);
  // at an absurd tolerance scale nothing can be certified negative
  CHECK(run("repro ac6 --tolerance-scale 1e12").code == 1);
  CHECK(run("repro --list").code == 0);
}

TEST_CASE("cli: other subcommands run") {
  const auto k = write_file("k.spec", R"({"type":"polytope","vertices":[[-1,-1],[1,-1],[1,1],[-1,1]]})");
  const auto l = write_file("l.spec", R"({"type":"segment","a":[0,0],"b":[0,1]})");
  const auto m = write_file("m.spec", R"({"type":"ball","center":[0,0],"radius":0.5})");
  CHECK(run("body --body " + k + " --with " + l + " --direction 0,1").code == 0);
  const auto s = run("surface --measure x2 --body " + k);
  REQUIRE(s.code == 0);
  CHECK(s.out.find("weighted_surface_area") != std::string::npos);
  const auto mx = run("mixed --measure gaussian --bodyA " + k + " --bodyB " + l + " --path both");
  REQUIRE(mx.code == 0);
  CHECK(mx.out.find("mixed1_agreement") != std::string::npos);
  CHECK(run("mixed --order 2 --bodyA " + k + " --bodyB " + l + " --bodyC " + m).code == 0);
  CHECK(run("check --inequality fenchel --s 0.5 --bodies " + k + " " + m + " " + k).code == 0);
  CHECK(run("convexfn --mode naz --alpha-exp 2 --beta-exp 3 --lambda 10 --eps 0.5 --format json").code == 0);
  CHECK(run("convexfn --mode equality --alpha 1.5 -a -1 -b 2").code == 0);
  const auto found = run("search --target submod_global --measure gaussian --generator symmetric_polygon --scale 0.1,4 --budget 100");
  REQUIRE(found.code == 0);
  CHECK(found.out.find("violated") != std::string::npos);
}
