#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "dicer/cli.hpp"
#include "support.hpp"

using namespace dicer;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run invoke(RunConfig cfg) {
  std::ostringstream out, err;
  int code = run(cfg, out, err);
  return {code, out.str(), err.str()};
}

RunConfig cmd(const std::string& command, const std::string& input) {
  RunConfig cfg;
  cfg.command = command;
  cfg.input = input;
  return cfg;
}

// Scratch file helper; doctest runs are single process, plain names suffice.
std::string write_file(const std::string& name, const std::string& text) {
  std::string path = "cli_scratch_" + name;
  std::ofstream f(path);
  f << text;
  return path;
}

bool has_line(const std::string& text, const std::string& line) {
  std::istringstream in(text);
  std::string got;
  while (std::getline(in, got))
    if (got == line) return true;
  return false;
}

}  // namespace

TEST_CASE("diced command reports witnesses and uses exit codes") {
  Run good = invoke(cmd("diced", "fixture:square"));
  CHECK(good.code == 0);
  CHECK(has_line(good.out, "diced: yes"));

  Run bad = invoke(cmd("diced", "fixture:nondiced-line"));
  CHECK(bad.code == 1);
  CHECK(has_line(bad.out, "diced: no"));
  CHECK(has_line(bad.out, "witness: (1/2, 1)"));
}

TEST_CASE("sharp command reports the label region and total sharpness") {
  Run line = invoke(cmd("sharp", "fixture:diced-line"));
  CHECK(line.code == 1);
  CHECK(has_line(line.out, "label: x1^2*x2^2"));
  CHECK(has_line(line.out, "sharp: no"));
  CHECK(has_line(line.out, "label region: {(1, 1)}"));
  CHECK(has_line(line.out, "totally sharp: no"));

  Run sq = invoke(cmd("sharp", "fixture:square"));
  CHECK(sq.code == 0);
  CHECK(has_line(sq.out, "sharp: yes"));
  CHECK(has_line(sq.out, "full label cell: {(1, 0, 1), (1, 1, 0), (2, 0, 0)}"));

  Run stair = invoke(cmd("sharp", "fixture:staircase"));
  CHECK(stair.code == 1);
  CHECK(has_line(stair.out, "label region: empty"));
}

TEST_CASE("subdivide prints the complex and is byte stable") {
  Run r = invoke(cmd("subdivide", "fixture:square"));
  CHECK(r.code == 0);
  CHECK(has_line(r.out, "f-vector: 4 5 2"));
  CHECK(r.out.find("label x1^2") != std::string::npos);

  RunConfig js = cmd("subdivide", "fixture:prism");
  js.format = "json";
  Run a = invoke(js);
  Run b = invoke(js);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out.find("\"f_vector\"") != std::string::npos);
}

TEST_CASE("morse command runs the pipeline or names the failed hypothesis") {
  Run sq = invoke(cmd("morse", "fixture:square"));
  CHECK(sq.code == 0);
  CHECK(has_line(sq.out, "matching pairs: 1"));
  CHECK(has_line(sq.out,
                 "  {(1, 0, 1), (1, 1, 0)} <-> {(0, 1, 1), (1, 0, 1), (1, 1, 0)} label "
                 "x1*x2*x3"));
  CHECK(has_line(sq.out, "morse f-vector: 4 4 1"));

  Run line = invoke(cmd("morse", "fixture:diced-line"));
  CHECK(line.code == 1);
  CHECK(line.out.find("hypothesis failure:") != std::string::npos);
}

TEST_CASE("resolve checks the full chain and agrees with the oracle") {
  Run sq = invoke(cmd("resolve", "fixture:square"));
  CHECK(sq.code == 0);
  CHECK(has_line(sq.out, "ideal: x2*x3, x1*x3, x1*x2, x1^2"));
  CHECK(has_line(sq.out, "totals: 4 4 1"));
  CHECK(has_line(sq.out, "oracle agrees: yes"));

  RunConfig gf = cmd("resolve", "fixture:cube");
  gf.field = "gf:5";
  Run cube = invoke(gf);
  CHECK(cube.code == 0);
  CHECK(has_line(cube.out, "totals: 8 12 6 1"));

  Run nd = invoke(cmd("resolve", "fixture:nondiced-line"));
  CHECK(nd.code == 1);
  CHECK(has_line(nd.out, "witness: (1/2, 1)"));
}

TEST_CASE("oracle command works from files and fixtures") {
  std::string path = write_file("ideal.json", R"({"generators": [[1,0],[0,1]]})");
  Run r = invoke(cmd("oracle", path));
  CHECK(r.code == 0);
  CHECK(has_line(r.out, "ideal: x2, x1"));
  CHECK(has_line(r.out, "totals: 2 1"));
  std::remove(path.c_str());

  Run sq = invoke(cmd("oracle", "fixture:square"));
  CHECK(sq.code == 0);
  CHECK(has_line(sq.out, "totals: 4 4 1"));
}

TEST_CASE("verify-fine-mixed consumes fixtures and subdivision files") {
  Run stair = invoke(cmd("verify-fine-mixed", "fixture:staircase"));
  CHECK(stair.code == 0);
  CHECK(has_line(stair.out, "structure valid: yes"));
  CHECK(has_line(stair.out, "hypotheses hold: yes"));
  CHECK(has_line(stair.out, "cells: 3"));
  CHECK(has_line(stair.out, "totals: 6 8 3"));
  CHECK(has_line(stair.out, "oracle agrees: yes"));

  std::string path = write_file("stair.mix",
                                "# staircase\n"
                                "summands {1,2,3} {1,2,3}\n"
                                "cell {1,2,3} {3}\n"
                                "cell {1,2} {2,3}\n"
                                "cell {1} {1,2,3}\n");
  Run file = invoke(cmd("verify-fine-mixed", path));
  CHECK(file.code == 0);
  CHECK(file.out == stair.out);
  std::remove(path.c_str());

  // A subdivision with a missing cell fails verification, not parsing.
  std::string gap = write_file("gap.mix",
                               "summands {1,2,3} {1,2,3}\n"
                               "cell {1,2,3} {3}\n"
                               "cell {1} {1,2,3}\n");
  Run r = invoke(cmd("verify-fine-mixed", gap));
  CHECK(r.code == 1);
  CHECK(has_line(r.out, "structure valid: no"));
  CHECK(r.out.find("cell volumes sum to 2, the sum has volume 4") != std::string::npos);
  std::remove(gap.c_str());
}

TEST_CASE("polytope files must hold nonnegative integer vertices") {
  std::string good = write_file("sq.json", R"({"vertices": [[2,0,0],[1,1,0],[1,0,1],[0,1,1]]})");
  Polytope p = parse_polytope_file(good);
  CHECK(p.vertices.size() == 4);
  Run r = invoke(cmd("resolve", good));
  CHECK(r.code == 0);
  CHECK(has_line(r.out, "totals: 4 4 1"));
  std::remove(good.c_str());

  auto rejects = [](const std::string& name, const std::string& text, const std::string& needle) {
    std::string path = write_file(name, text);
    std::ostringstream out, err;
    RunConfig cfg = cmd("diced", path);
    CHECK(run(cfg, out, err) == 2);
    CHECK(err.str().find(needle) != std::string::npos);
    std::remove(path.c_str());
  };
  rejects("float.json", R"({"vertices": [[0.5, 1]]})", "not an integer");
  rejects("neg.json", R"({"vertices": [[-1, 0]]})", "negative coordinate");
  rejects("ragged.json", R"({"vertices": [[1,0],[1]]})", "mixed coordinate counts");
  rejects("syntax.json", R"({"vertices": [[1,0],)", "parse error");
  rejects("shape.json", R"({"points": [[1,0]]})", "expected an object");
}

TEST_CASE("mixed subdivision files carry line numbers in errors") {
  auto rejects = [](const std::string& text, const std::string& needle) {
    std::string path = write_file("bad.mix", text);
    std::ostringstream out, err;
    RunConfig cfg = cmd("verify-fine-mixed", path);
    CHECK(run(cfg, out, err) == 2);
    CAPTURE(err.str());
    CHECK(err.str().find(needle) != std::string::npos);
    std::remove(path.c_str());
  };
  rejects("cell {1,2} {1}\n", ":1: cell line before the summands line");
  rejects("summands {1,2}\nsummands {1,2}\ncell {1} {2}\n", ":2: duplicate summands line");
  rejects("summands {1,2\ncell {1} {2}\n", ":1: unmatched '{'");
  rejects("summands {1,1}\ncell {1} {1}\n", ":1: repeated index");
  rejects("summands {}\n", ":1: empty index set");
  rejects("summands {1,2}\nwall {1}\n", ":2: expected 'summands' or 'cell', got 'wall'");
  rejects("summands {1,2}\n", "no cell lines");
  rejects("# nothing\n", "missing summands line");
}

TEST_CASE("figure export picks a format from the dimension") {
  Run svg = invoke(cmd("export", "fixture:square"));
  CHECK(svg.code == 0);
  CHECK(svg.out.rfind("<svg", 0) == 0);
  // Two filled triangles, labeled lattice vertices.
  CHECK(svg.out.find("polygon") != std::string::npos);
  CHECK(svg.out.find("x1^2") != std::string::npos);

  Run off = invoke(cmd("export", "fixture:prism"));
  CHECK(off.code == 0);
  CHECK(off.out.rfind("OFF\n6 8 11\n", 0) == 0);

  // A fractional subdivision vertex is drawn in the warning color.
  Run frac = invoke(cmd("export", "fixture:nondiced-line"));
  CHECK(frac.code == 0);
  CHECK(frac.out.find("#cc3344") != std::string::npos);

  RunConfig mismatch = cmd("export", "fixture:prism");
  mismatch.format = "svg";
  CHECK(invoke(mismatch).code == 2);
  RunConfig flat = cmd("export", "fixture:square");
  flat.format = "off";
  CHECK(invoke(flat).code == 2);
}

TEST_CASE("unusable input is exit 2 with a distinct message") {
  Run fixture = invoke(cmd("diced", "fixture:nope"));
  CHECK(fixture.code == 2);
  CHECK(fixture.err.find("unknown fixture: nope") != std::string::npos);

  Run missing = invoke(cmd("diced", "no_such_file.json"));
  CHECK(missing.code == 2);
  CHECK(missing.err.find("cannot open") != std::string::npos);

  Run command = invoke(cmd("paint", "fixture:square"));
  CHECK(command.code == 2);
  CHECK(command.err.find("unknown command: paint") != std::string::npos);

  RunConfig field = cmd("resolve", "fixture:square");
  field.field = "gf:4";
  Run badfield = invoke(field);
  CHECK(badfield.code == 2);
  CHECK(badfield.err.find("bad --field") != std::string::npos);

  RunConfig fmt = cmd("resolve", "fixture:square");
  fmt.format = "svg";
  CHECK(invoke(fmt).code == 2);
  fmt.format = "yaml";
  CHECK(invoke(fmt).code == 2);
}

TEST_CASE("reports can be redirected to a file") {
  RunConfig cfg = cmd("resolve", "fixture:square");
  cfg.out = "cli_scratch_report.txt";
  Run r = invoke(cfg);
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream in(cfg.out);
  std::stringstream content;
  content << in.rdbuf();
  CHECK(has_line(content.str(), "totals: 4 4 1"));
  std::remove(cfg.out.c_str());
}

TEST_CASE("json reports parse and repeat byte for byte") {
  for (const char* command : {"diced", "sharp", "morse", "resolve", "oracle",
                              "verify-fine-mixed"}) {
    CAPTURE(command);
    RunConfig cfg = cmd(command, "fixture:square");
    cfg.format = "json";
    Run a = invoke(cfg);
    Run b = invoke(cfg);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out.front() == '{');
  }
}
