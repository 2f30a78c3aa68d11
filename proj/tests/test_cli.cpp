#include <doctest.h>
#include <json.hpp>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args) {
  std::string cmd = std::string(LINCRIT_CLI_PATH) + " " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf{};
  while (std::size_t got = fread(buf.data(), 1, buf.size(), pipe)) r.out.append(buf.data(), got);
  int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

nlohmann::json parse(const Run& r) { return nlohmann::json::parse(r.out); }

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("pade build reports the order check") {
    Run r = run("pade build -k 1 -m 1 -n 1 --alpha 1/2");
    CHECK(r.code == 0);
    auto j = parse(r);
    CHECK(j["kind"].get<std::string>().rfind("pade", 0) == 0);
    CHECK(j.contains("version"));
    CHECK(j["precision_bits"] == 256);
  }

  TEST_CASE("usage errors exit with 2") {
    CHECK(run("pade build -k 1 -m 2 -n 1 --alpha 1/2,1/2").code == 2);
    CHECK(run("example1 2").code == 2);
    CHECK(run("--precision 32 example2 3 3").code == 2);
    CHECK(run("verify nosuchsuite").code == 2);
    CHECK(run("frobnicate").code == 2);
  }

  TEST_CASE("example2 thresholds") {
    auto j = parse(run("example2 10 10"));
    CHECK(j["levels"][0]["ceil"] == "1909");
    Run r = run("example2 11 11 --logq 2585");
    CHECK(r.code == 0);
    CHECK(parse(r)["best"]["delta"] == 112);
  }

  TEST_CASE("global options after the subcommand") {
    Run r = run("example2 4 4 --precision 192");
    CHECK(r.code == 0);
    CHECK(parse(r)["precision_bits"] == 192);
  }

  TEST_CASE("precision from the environment") {
    Run r = run("example2 3 3");
    CHECK(parse(r)["precision_bits"] == 256);
    std::string cmd = "PADE_PRECISION_BITS=160 " + std::string(LINCRIT_CLI_PATH) + " example2 3 3 > cli_env.json";
    REQUIRE(std::system(cmd.c_str()) == 0);
    std::ifstream in("cli_env.json");
    CHECK(nlohmann::json::parse(in)["precision_bits"] == 160);
  }

  TEST_CASE("verify is deterministic") {
    Run a = run("verify linalg --seed 5");
    Run b = run("verify linalg --seed 5");
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
  }

  TEST_CASE("criterion verdict and audit") {
    Run v = run("criterion verdict --reciprocal 1 1 10 -l 1 --plan reciprocal --mode refined --window 1 16");
    CHECK(v.code == 0);
    CHECK(parse(v)["bound"] == 2);
    Run bad = run("criterion audit --reciprocal 2 2 3 -l 2 --plan reciprocal-without-lcm -n 2");
    CHECK(bad.code == 1);
    Run good = run("criterion audit --reciprocal 2 2 3 -l 2 --plan reciprocal -n 2");
    CHECK(good.code == 0);
    CHECK(run("criterion verdict --reciprocal 1 1 10 -l 1 --mode refined --window 1 16").code == 2);
  }

  TEST_CASE("recurrence minors with the default bundle") {
    Run r = run("recurrence minors --roots 1,2,3 -l 2 --n-max 60");
    CHECK(r.code == 0);
    CHECK(parse(r)["limit"] == "2");
    CHECK(run("recurrence minors --roots 1,2 -l 3").code == 2);
  }

  TEST_CASE("decay as CSV") {
    Run r = run("--format csv criterion decay --reciprocal 1 1 10 -l 1 --plan reciprocal --window 1 10");
    CHECK(r.code == 0);
    CHECK(r.out.rfind("n,mu,cols,value,error,nth_root", 0) == 0);
  }

  TEST_CASE("family export and re-import") {
    REQUIRE(std::system((std::string(LINCRIT_CLI_PATH) +
                         " criterion export --reciprocal 1 2 3 -l 2 --window 1 9 --out cli_family.json")
                            .c_str()) == 0);
    Run r = run("criterion decay --family cli_family.json -l 2 --window 1 9");
    CHECK((r.code == 0 || r.code == 1));
    CHECK(parse(r)["minors"].size() == 1);
  }
}
