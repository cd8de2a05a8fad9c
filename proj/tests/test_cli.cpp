#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "vast/cli.hpp"
#include "vast/report.hpp"

using namespace vast;

namespace {

struct Run {
  int code = 0;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  Run r;
  r.code = run_cli(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

int exit_status(const std::string& command) {
  const int raw = std::system(command.c_str());
  return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
}

}  // namespace

TEST_CASE("vast subcommand") {
  CHECK(run({"vast", "cyclic:6", "--set", "0,2,4"}).out == "J=3\n");
  CHECK(run({"vast", "cyclic:5", "--set", "all"}).out == "J=2\n");
  CHECK(run({"vast", "cyclic:6", "--set", "1,2"}).out == "not-vast m_max=6\n");
  CHECK(run({"vast", "cyclic:9", "--set", "0 2 3 4 5 6 7 8"}).out == "J=3\n");
  CHECK(run({"vast", "dihedral:4", "--set", "all"}).code == kExitOk);
  CHECK(run({"vast", "cyclic:x", "--set", "0"}).code == kExitUsage);
  CHECK(run({"vast", "cyclic:6", "--set", "9"}).code == kExitUsage);
  CHECK(run({"vast", "cyclic:6"}).code == kExitUsage);
  CHECK(run({}).code == kExitUsage);
  CHECK(run({"frobnicate"}).code == kExitUsage);
}

TEST_CASE("verify-props subcommand") {
  const auto ok = run({"verify-props", "--order-bound", "8"});
  CHECK(ok.code == kExitOk);
  CHECK(ok.out.find("all passed") != std::string::npos);
  for (const char* name : {"ramsey-cliques", "symmetry-monotonicity", "intersection", "product-free-complement",
                           "quotient-of-syndetic", "syndetic-below-vast", "finite-index-subgroups", "nonvast-syndetic-example"}) {
    CHECK(ok.out.find(name) != std::string::npos);
  }
  const auto vacuous = run({"verify-props", "--order-bound", "1"});
  CHECK(vacuous.code == kExitOk);
  const auto refused = run({"verify-props", "--order-bound", "20"});
  CHECK(refused.code == kExitUsage);
  CHECK(refused.err.find("--order-bound 12") != std::string::npos);
}

TEST_CASE("suite counts cases for every check") {
  for (const auto& c : run_prop_suite(6)) {
    CAPTURE(c.name);
    CHECK(c.failures == 0);
    CHECK(c.groups > 0);
  }
}

TEST_CASE("construct subcommand") {
  const auto missing = run({"construct", "t31", "--count", "10"});
  CHECK(missing.code == kExitUsage);
  CHECK(run({"construct", "t99"}).code == kExitUsage);
  CHECK(run({"construct", "s21", "--group", "torus"}).code == kExitUsage);
  CHECK(run({"construct", "t31", "--chooser", "left", "--group", "z-adic:3"}).code == kExitUsage);
  CHECK(run({"construct", "t31", "--chooser", "sideways"}).code == kExitUsage);

  const auto s21 = run({"construct", "s21", "--group", "boolean-omega", "--count", "50"});
  REQUIRE(s21.code == kExitOk);
  const auto r = parse_report(s21.out);
  CHECK(r.xi.size() >= 50);
  for (const auto& c : r.certificates) CHECK(c.verdict.kind == VerdictKind::exact);
  REQUIRE(r.verdict("unique-limit"));

  for (const char* pipeline : {"s11", "s21", "t22"}) {
    CAPTURE(pipeline);
    const auto z = run({"construct", pipeline, "--group", "z-adic:3", "--count", "8"});
    CHECK(z.code == kExitOk);
    CHECK_FALSE(parse_report(z.out).any_violation());
  }

  const std::string path = "cli_pair_test.rpt";
  const auto pair = run({"construct", "t31", "--count", "10", "--chooser", "left", "--out", path});
  CHECK(pair.code == kExitOk);
  CHECK(pair.out == "wrote " + path + " (2 reports)\n");
  const auto reports = parse_reports(slurp(path));
  REQUIRE(reports.size() == 2);
  for (const auto& rep : reports) {
    REQUIRE(rep.verdict("disjoint"));
    CHECK(rep.verdict("disjoint")->verdict.kind == VerdictKind::exact);
    CHECK(rep.verdict("limit-point")->verdict.kind == VerdictKind::exact);
  }
  std::remove(path.c_str());
}

TEST_CASE("script chooser through the command line") {
  const std::string script = "cli_script_test.txt";
  {
    std::ofstream f(script);
  }
  const auto empty = run({"construct", "t31", "--count", "4", "--chooser", "script:" + script});
  CHECK(empty.code == kExitViolation);
  CHECK(empty.err.find("chooser-exhausted") != std::string::npos);
  {
    std::ofstream f(script);
    f << "right\n";
  }
  const auto scripted = run({"construct", "t31", "--count", "4", "--chooser", "script:" + script});
  const auto right = run({"construct", "t31", "--count", "4", "--chooser", "right"});
  CHECK(scripted.code == kExitOk);
  // Same decisions, different policy note.
  const auto a = parse_reports(scripted.out);
  const auto b = parse_reports(right.out);
  REQUIRE(a.size() == 2);
  CHECK(a[0].xi == b[0].xi);
  CHECK(a[1].xi == b[1].xi);
  std::remove(script.c_str());
}

TEST_CASE("witness and split subcommands") {
  CHECK(run({"witness", "--f", "n+1", "--count", "3"}).out == "T[0]: 1\nT[1]: 2 4\nT[2]: 4 8 12\n");
  CHECK(run({"witness", "--f", "2^n", "--count", "3"}).out == "T[0]: 1\nT[1]: 2 4\nT[2]: 4 8 12 16\n");
  CHECK(run({"witness", "--chain", "z-adic:3", "--f", "2", "--count", "2"}).code == kExitOk);
  CHECK(run({"split", "--phi", "n+1", "--k", "3"}).out ==
        "phi=n+1\nside=left\nmethod=numeric\ninterval[0]=0 2\ninterval[1]=4 6\ninterval[2]=8 10\n");
  CHECK(run({"split", "--phi", "2n+1", "--k", "2", "--chooser", "right"}).out ==
        "phi=2n+1\nside=right\nmethod=numeric\ninterval[0]=2 6\ninterval[1]=14 30\n");
  CHECK(run({"split", "--phi", "n-1"}).code == kExitUsage);
}

TEST_CASE("golden reports") {
  const std::string dir = GOLDEN_DIR;
  CHECK(run({"construct", "s21", "--count", "4", "--depth", "64"}).out == slurp(dir + "/s21_count4_depth64.rpt"));
  CHECK(run({"construct", "t31", "--count", "3", "--chooser", "left", "--depth", "64"}).out ==
        slurp(dir + "/t31_left_count3_depth64.rpt"));
}

TEST_CASE("executable exit codes and byte-identical reruns") {
  const std::string exe = VASTCTL_PATH;
  CHECK(exit_status(exe + " vast cyclic:6 --set 0,2,4 > /dev/null") == 0);
  CHECK(exit_status(exe + " vast cyclic:6 > /dev/null 2>&1") == 2);
  CHECK(exit_status(exe + " construct t31 --count 10 > /dev/null 2>&1") == 2);
  CHECK(exit_status(exe + " construct t31 --count 10 --chooser right --out cli_a.rpt > /dev/null") == 0);
  CHECK(exit_status(exe + " construct t31 --count 10 --chooser right --out cli_b.rpt > /dev/null") == 0);
  CHECK(slurp("cli_a.rpt") == slurp("cli_b.rpt"));
  CHECK_FALSE(slurp("cli_a.rpt").empty());
  std::remove("cli_a.rpt");
  std::remove("cli_b.rpt");
}
