#include "doctest.h"

#include <array>
#include <cstdio>
#include <string>
#include <sys/wait.h>

namespace {

struct Run {
  int status = -1;
  std::string out;
};

Run run(const std::string& args) {
  const std::string command = std::string(RIBBON_CLI_PATH) + " " + args + " 2>&1";
  Run r;
  FILE* pipe = ::popen(command.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf{};
  while (const auto n = std::fread(buf.data(), 1, buf.size(), pipe)) r.out.append(buf.data(), n);
  const int raw = ::pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

std::string data(const std::string& name) { return std::string(RIBBON_DATA_DIR) + "/" + name; }

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("invariants table") {
  const auto r = run("invariants " + data("dumbbell.rg"));
  CHECK(r.status == 0);
  CHECK(r.out.find("V E F g n rank") != std::string::npos);
  CHECK(r.out.find("2 3 3 0 3 2") != std::string::npos);
  const auto theta = run("invariants " + data("theta_nonplanar.rg"));
  CHECK(theta.out.find("2 3 1 1 1 2") != std::string::npos);
}

TEST_CASE("inline literals and structured output") {
  const auto r = run("--format structured invariants 'darts 6;sigma (1 2 3)(4 6 5);iota (1 4)(2 5)(3 6)'");
  CHECK(r.status == 0);
  CHECK(r.out.find("\"g\": 0") != std::string::npos);
  CHECK(r.out.find("\"rank\": 2") != std::string::npos);
  const auto e = run("export " + data("dumbbell.rg"));
  CHECK(e.status == 0);
  CHECK(e.out == "darts 6\nsigma (1 2 3)(4 5 6)\niota (1 2)(3 6)(4 5)\ndoe 1\n");
  const auto dot = run("--format dot export " + data("dumbbell.rg"));
  CHECK(dot.out.rfind("graph ribbon {", 0) == 0);
}

TEST_CASE("moves from the command line") {
  const auto r = run("flip " + data("dumbbell.rg") + " 3");
  CHECK(r.status == 0);
  CHECK(r.out.find("sigma (1 6 5)(2 4 3)") != std::string::npos);
  const auto script = run("apply " + data("dumbbell.rg") + " 'flip 3;flip 3;flip 3;flip 3'");
  CHECK(script.status == 0);
  CHECK(script.out == "darts 6\nsigma (1 2 3)(4 5 6)\niota (1 2)(3 6)(4 5)\ndoe 1\n");
  const auto loop = run("flip " + data("dumbbell.rg") + " 1");
  CHECK(loop.status == 1);
  CHECK(loop.out.find("error: unflippable loop edge at dart 1") != std::string::npos);
  const auto bad = run("apply " + data("dumbbell.rg") + " 'flip 3;flip 3;flip 1'");
  CHECK(bad.status == 1);
  CHECK(bad.out.find("error: move 2: inapplicable flip 1") != std::string::npos);
}

TEST_CASE("relations and enumeration") {
  const auto r = run("relations " + data("dumbbell.rg"));
  CHECK(r.status == 0);
  CHECK(r.out.find("all relations hold") != std::string::npos);
  const auto e = run("enumerate 4");
  CHECK(e.status == 0);
  CHECK(e.out.find("V 4 marked types 60") != std::string::npos);
  CHECK(e.out.find("g 1 n 2 : 28") != std::string::npos);
  CHECK(run("enumerate 5").status == 1);
  const auto o = run("orbit " + data("dumbbell.rg"));
  CHECK(o.status == 0);
  const auto all = run("--moves flip,shuffle,doe orbit " + data("dumbbell.rg"));
  CHECK(all.status == 0);
  CHECK(all.out != o.out);
  CHECK(run("--threads 4 --moves flip,shuffle,doe orbit " + data("dumbbell.rg")).out == all.out);
  const auto dot = run("--format dot orbit " + data("dumbbell.rg"));
  CHECK(dot.out.rfind("digraph orbit {", 0) == 0);
}

TEST_CASE("isotropy uses its own default depth") {
  const auto r = run("isotropy " + data("dumbbell.rg"));
  CHECK(r.status == 0);
  CHECK(r.out.find("loop 0 (identity)") != std::string::npos);
  CHECK(r.out.find("loop 2") != std::string::npos);
  CHECK(r.out.find("loop 3") == std::string::npos);
  CHECK(run("isotropy --depth 9 " + data("dumbbell.rg")).status == 1);
}

TEST_CASE("farey subcommands") {
  const auto q = run("farey qmark 1/3");
  CHECK(q.status == 0);
  CHECK(q.out == "1/4\n");
  CHECK(run("farey qmark --inverse 3/8").out == "2/5\n");
  const auto m = run("farey flipmap '[[1,0],[0,1]]'");
  CHECK(m.status == 0);
  CHECK(m.out == "-1 [[0,-1],[1,1]]\n0 [[1,-1],[0,1]]\n1 [[1,-1],[1,0]]\ninf [[1,0],[1,1]]\n");
  const auto four = run("farey flipmap '[[1,0],[0,1]] [[1,0],[0,1]] [[1,0],[0,1]] [[1,0],[0,1]]'");
  CHECK(four.out == "all [[1,0],[0,1]]\n");
  const auto eval = run("farey eval 'all [[1,1],[0,1]]' 1/2");
  CHECK(eval.status == 0);
  CHECK(eval.out == "3/2\n");
}

TEST_CASE("exit codes") {
  CHECK(run("").status == 2);
  CHECK(run("frobnicate").status == 2);
  CHECK(run("invariants /no/such/file.rg").status == 2);
  CHECK(run("invariants 'darts 6;sigma (1 2 3)(4 5);iota (1 2)(4 5)(3 6)'").status == 1);
  CHECK(run("farey qmark 3/2").status == 1);
  CHECK(run("validate " + data("theta_planar.rg")).status == 0);
}

}  // TEST_SUITE
