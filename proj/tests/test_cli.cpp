#include <catch_amalgamated.hpp>
#include <nlohmann/json.hpp>

#include <cstdio>
#include <fstream>
#include <string>
#include <sys/wait.h>

namespace {

struct Run {
  int code;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(WKIT_BINARY) + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p);
  std::string out;
  char buf[4096];
  while (std::size_t got = fread(buf, 1, sizeof buf, p)) out.append(buf, got);
  const int status = pclose(p);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

nlohmann::json parse(const Run& r) {
  INFO(r.out);
  nlohmann::json j = nlohmann::json::parse(r.out, nullptr, false);
  REQUIRE_FALSE(j.is_discarded());
  return j;
}

}  // namespace

TEST_CASE("bracket output", "[cli]") {
  auto r = run("bracket --variant susy --n 1 --a 'omega(1)' --b 'omega(1)'");
  REQUIRE(r.code == 0);
  auto j = parse(r);
  CHECK(j["schema"] == "wkit/1");
  CHECK(j["command"] == "bracket");
  CHECK(j["text"] == "(omega(2,4)) + λχ(-2*κ^6)");
  CHECK(j["bracket"]["N"] == 1);

  auto t = run("bracket --variant nonsusy --n 1 --a 'nu(1,1)' --b 'nu(1,1)' --format text");
  CHECK(t.code == 0);
  CHECK(t.out.find("λ(-2*κ^2)") != std::string::npos);
}

TEST_CASE("output is deterministic", "[cli]") {
  const std::string args = "table --variant nonsusy --n 1";
  auto a = run(args), b = run(args);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  auto j = parse(a);
  CHECK(j["brackets"].size() == 10);
  CHECK(j["skew_images"].size() == 6);
}

TEST_CASE("table written to a file", "[cli]") {
  const std::string path = "wkit_cli_table.json";
  auto r = run("table --variant susy --n 1 --out " + path);
  CHECK(r.code == 0);
  std::ifstream in(path);
  REQUIRE(in);
  auto j = nlohmann::json::parse(in);
  CHECK(j["generators"].size() == 2);
  std::remove(path.c_str());
}

TEST_CASE("verify exit codes", "[cli]") {
  auto ok = run("verify --suite oracle --n 1");
  CHECK(ok.code == 0);
  CHECK(parse(ok)["schema"] == "wkit/1");
  CHECK(run("verify --suite affine --n 1").code == 0);
  CHECK(run("verify --suite jacobi --n 1").code == 0);
  auto bad = run("verify --suite sec5-susy --n 1");
  CHECK(bad.code == 1);
  CHECK(parse(bad)["sections"].size() >= 1);
}

TEST_CASE("usage errors exit with 2", "[cli]") {
  for (const char* args : {"bracket --variant susy --n 0 --a U --b U", "bracket --variant susy --n 1 --a 'omega(7)' --b U",
                           "bracket --variant susy --n 1 --a e --b U", "verify --suite nosuch --n 1", "bracket --n 1",
                           "frobnicate"}) {
    INFO(args);
    CHECK(run(args).code == 2);
  }
  auto r = run("bracket --variant susy --n 1 --a 'omega(1' --b U");
  CHECK(r.code == 2);
  CHECK(parse(r)["error"]["type"] == "ElementParseError");
}

TEST_CASE("other subcommands", "[cli]") {
  auto d = run("decompose --n 2");
  CHECK(d.code == 0);
  CHECK(parse(d)["schema"] == "wkit/1");
  auto g = run("gen --variant nonsusy --n 1");
  CHECK(g.code == 0);
  CHECK(parse(g)["schema"] == "wkit/1");
  CHECK(run("gen --variant susy --n 3").code == 2);
}
