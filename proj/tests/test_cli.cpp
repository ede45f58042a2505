#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "blowup/cli.hpp"
#include "doctest.h"

namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "blowup-lab");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = blowup::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

class Workspace {
 public:
  Workspace() : dir_(fs::temp_directory_path() / "blowup_cli_test") { fs::create_directories(dir_); }
  ~Workspace() { fs::remove_all(dir_); }
  std::string file(const std::string& name, const std::string& text) const {
    const fs::path p = dir_ / name;
    std::ofstream(p) << text;
    return p.string();
  }

 private:
  fs::path dir_;
};

}  // namespace

TEST_CASE("balanced on a three-leaf star") {
  Workspace ws;
  const auto star = ws.file("star3.el", "n 4\n0 1\n0 2\n0 3\n");
  const Run r = run({"balanced", "--graph", star});
  CHECK(r.code == 0);
  CHECK(r.out == "{\"balanced\": false, \"core_order\": 2, \"k\": [1,3]}\n");
}

TEST_CASE("density of K2 in K2") {
  Workspace ws;
  const auto k2 = ws.file("K2.el", "n 2\n0 1\n");
  const Run r = run({"density", "--pattern", k2, "--target", k2, "--mode", "strong"});
  CHECK(r.code == 0);
  CHECK(r.out == "1/2\n");
  const auto weights = ws.file("w.json", "{\"0\": \"1/3\", \"1\": \"2/3\"}");
  CHECK(run({"density", "--pattern", k2, "--target", k2, "--weights", weights}).out == "4/9\n");
}

TEST_CASE("reduce C4") {
  Workspace ws;
  const auto c4 = ws.file("C4.el", "n 4\n0 1\n1 2\n2 3\n0 3\n");
  const Run r = run({"reduce", "--graph", c4});
  CHECK(r.code == 0);
  CHECK(r.out == "{\"core_order\": 2, \"core\": \"A_\", \"k\": [2,2], \"class_of\": [0,1,0,1]}\n");
}

TEST_CASE("graph6 input and blowup output") {
  Workspace ws;
  const auto k2 = ws.file("K2.g6", "A_\n");
  const Run r = run({"blowup", "--core", k2, "--k", "2,2", "--format", "graph6"});
  CHECK(r.code == 0);
  CHECK(r.out == "C]\n");
  CHECK(run({"aut", "--graph", k2}).out == "{\"count\": 2, \"automorphisms\": [[0,1],[1,0]]}\n");
}

TEST_CASE("optimize worked instance") {
  Workspace ws;
  const auto k2 = ws.file("K2.el", "n 2\n0 1\n");
  const Run r = run({"optimize", "--core", k2, "--k", "1,2", "--h", "1"});
  CHECK(r.code == 0);
  const auto at = r.out.find("\"value\": ");
  REQUIRE(at != std::string::npos);
  CHECK(std::abs(std::strtod(r.out.c_str() + at + 9, nullptr) - 0.25) <= 1e-12);
  CHECK(r.out.find("\"balanced\": false") != std::string::npos);
}

TEST_CASE("dichotomy and check-bound reports") {
  Workspace ws;
  const auto k2 = ws.file("K2.el", "n 2\n0 1\n");
  const Run d = run({"dichotomy", "--core", k2, "--k", "1,1", "--n", "2", "--psi", "0,0,1,1"});
  CHECK(d.code == 0);
  CHECK(d.out.find("\"outcome\": \"exception_set\"") != std::string::npos);
  const Run b = run({"check-bound", "biclique", "--graph", k2, "--r", "4", "--ell", "1", "--samples", "1000"});
  CHECK(b.code == 0);
  CHECK(b.out.find("\"passed\": true") != std::string::npos);
  const Run again = run({"check-bound", "biclique", "--graph", k2, "--r", "4", "--ell", "1", "--samples", "1000",
                         "--jobs", "2"});
  CHECK(again.out == b.out);
}

TEST_CASE("scan output is identical across job counts") {
  Workspace ws;
  const auto k2 = ws.file("K2.el", "n 2\n0 1\n");
  const Run one = run({"scan", "--core", k2, "--k", "1,1", "--h", "2", "--n", "5", "--jobs", "1"});
  const Run two = run({"scan", "--core", k2, "--k", "1,1", "--h", "2", "--n", "5", "--jobs", "2"});
  CHECK(one.code == 0);
  CHECK(one.out == two.out);
}

TEST_CASE("exit codes") {
  Workspace ws;
  const auto k2 = ws.file("K2.el", "n 2\n0 1\n");
  const auto p3 = ws.file("P3.el", "n 3\n0 1\n1 2\n");
  const auto bad = ws.file("bad.el", "n 2\n0 5\n");
  const auto p4 = ws.file("P4.el", "n 4\n0 1\n1 2\n2 3\n");
  CHECK(run({}).code == blowup::kExitUsage);
  CHECK(run({"frobnicate"}).code == blowup::kExitUsage);
  CHECK(run({"density", "--pattern", k2}).code == blowup::kExitUsage);
  CHECK(run({"reduce", "--graph", bad}).code == blowup::kExitParse);
  CHECK(run({"reduce", "--graph", (fs::temp_directory_path() / "missing.el").string()}).code == blowup::kExitParse);
  CHECK(run({"optimize", "--core", p3, "--k", "1,1,1"}).code == blowup::kExitPrecondition);
  CHECK(run({"scan", "--core", k2, "--k", "1,1", "--n", "10"}).code == blowup::kExitPrecondition);
  CHECK(run({"optimize", "--core", p4, "--k", "1,2,1,1", "--h", "2", "--tol", "1e-300"}).code == blowup::kExitNotConverged);
  const Run help = run({"--help"});
  CHECK(help.code == 0);
  CHECK_FALSE(help.out.empty());
}

TEST_CASE("selftest passes") {
  const Run r = run({"selftest"});
  CHECK(r.code == 0);
  CHECK(r.out.find("[FAIL]") == std::string::npos);
}
