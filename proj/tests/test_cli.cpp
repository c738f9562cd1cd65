// End-to-end tests of the command-line tool: golden outputs for each
// subcommand, JSON mode, the enumeration threshold (flag and environment),
// and the exit-code contract. Each test drives the installed binary as a
// subprocess.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

#include "steinitz/json_io.hpp"
#include "steinitz/solenoid.hpp"
#include "steinitz/steinitz_number.hpp"

using nlohmann::json;

namespace {

struct RunResult {
  int code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spit(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  out << content;
  REQUIRE(out.good());
}

RunResult run_cli(const std::string& args, const std::string& env = "") {
  static int counter = 0;
  std::string base = "/tmp/steinitz_cli_test_" + std::to_string(++counter);
  std::string cmd = env + (env.empty() ? "" : " ") + STEINITZ_CLI_PATH + " " + args +
                    " >" + base + ".out 2>" + base + ".err";
  int status = std::system(cmd.c_str());
  RunResult r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(base + ".out");
  r.err = slurp(base + ".err");
  std::remove((base + ".out").c_str());
  std::remove((base + ".err").c_str());
  return r;
}

bool contains(const std::string& hay, const std::string& needle) {
  return hay.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("family-list names every built-in family") {
  RunResult r = run_cli("family-list");
  CHECK(r.code == 0);
  for (const char* name : {"toral-diagonal", "toral-product", "heis-selfembed",
                           "heis-stable", "heis-wild", "toy-model"}) {
    CHECK(contains(r.out, name));
  }
}

TEST_CASE("chain-invariants text golden for the self-embedding tower") {
  RunResult r = run_cli("chain-invariants --family heis-selfembed --p 2 --depth 3");
  REQUIRE(r.code == 0);
  CHECK(contains(r.out, "4096"));      // m_3 = 2^12
  CHECK(contains(r.out, "262144"));    // n_3 = 2^18
  CHECK(contains(r.out, "k*"));
  CHECK(contains(r.out, "Lagrange"));
  CHECK(contains(r.out, "ok"));
  CHECK(r.err.empty());
}

TEST_CASE("chain-invariants json mode carries the exact level table") {
  RunResult r =
      run_cli("chain-invariants --family heis-selfembed --p 2 --depth 3 --format json");
  REQUIRE(r.code == 0);
  json rep = json::parse(r.out);
  REQUIRE(rep["levels"].size() == 3);
  CHECK(rep["levels"][2]["m"] == 4096);
  CHECK(rep["levels"][2]["n"] == 262144);
  CHECK(rep["levels"][2]["k"] == 64);
  CHECK(rep["levels"][2]["k_star"]["value"] == 1);
  CHECK(rep["levels"][2]["k_star"]["status"] == "stabilized-at-depth");
  CHECK(rep["lagrange_ok"] == true);
}

TEST_CASE("global flags may follow the subcommand name") {
  RunResult r =
      run_cli("chain-invariants --format json --family toy-model --p 2 --n 2 --k 1 --depth 1");
  REQUIRE(r.code == 0);
  json rep = json::parse(r.out);
  CHECK(rep["levels"][0]["n"] == 64);
  CHECK(rep["levels"][0]["k"] == 2);
}

TEST_CASE("oracle cross-checks run under the threshold and skip above it") {
  RunResult r = run_cli(
      "chain-invariants --family heis-selfembed --p 2 --depth 3 --oracle verify");
  REQUIRE(r.code == 0);
  CHECK(contains(r.out, "passed"));
  CHECK(contains(r.out, "skipped"));  // level 3 quotient is above the default bound
  CHECK(!contains(r.out, "FAILED"));

  // A tiny environment threshold forces skips but never failures.
  RunResult tight = run_cli(
      "chain-invariants --family heis-selfembed --p 2 --depth 2 --oracle verify",
      "STEINITZ_ENUM_BOUND=10");
  REQUIRE(tight.code == 0);
  CHECK(contains(tight.out, "skipped"));
  CHECK(!contains(tight.out, "FAILED"));

  RunResult bad_env = run_cli("family-list", "STEINITZ_ENUM_BOUND=banana");
  CHECK(bad_env.code == 2);
  CHECK(contains(bad_env.err, "invalid-input"));
}

TEST_CASE("wild-witness emits the golden certificate as json") {
  RunResult r = run_cli(
      "wild-witness --family heis-wild --primes 2,3,5 --n 2 --r 1 "
      "--shallow 1 --deep 2 --format json");
  REQUIRE(r.code == 0);
  json w = json::parse(r.out);
  CHECK(w["shallow_level"] == 1);
  CHECK(w["deep_level"] == 2);
  CHECK(w["fixed_cylinders_checked"] == 3125);
  CHECK(w["moduli"] == json::array({36, 36, 36}));
  CHECK(w["verify_depth"].get<int>() >= 3);

  RunResult t = run_cli(
      "wild-witness --family heis-wild --primes 2,3,5 --n 2 --r 1 --shallow 1 --deep 2");
  REQUIRE(t.code == 0);
  CHECK(contains(t.out, "verification: passed"));
}

TEST_CASE("wild-witness reports absence without inventing a certificate") {
  RunResult r = run_cli(
      "wild-witness --family heis-stable --pi-f 2:2:1,3:2:1 --pi-inf 5 "
      "--shallow 1 --deep 3");
  REQUIRE(r.code == 0);
  CHECK(contains(r.out, "no witness found"));

  RunResult j = run_cli(
      "wild-witness --family heis-stable --pi-f 2:2:1,3:2:1 --pi-inf 5 "
      "--shallow 1 --deep 3 --format json");
  REQUIRE(j.code == 0);
  json doc = json::parse(j.out);
  CHECK(doc["witness"].is_null());
}

TEST_CASE("classify verdicts over the cli match the library goldens") {
  RunResult wild = run_cli(
      "classify --family heis-wild --primes 2,3,5 --n 2 --r 1 --depth 3 --format json");
  REQUIRE(wild.code == 0);
  json wdoc = json::parse(wild.out);
  CHECK(wdoc["verdict"] == "wild");
  CHECK(wdoc["witness"]["deep_level"] == 2);

  RunResult stable = run_cli(
      "classify --family heis-stable --pi-f 2:2:1,3:2:1 --pi-inf 5 --depth 3 --format json");
  REQUIRE(stable.code == 0);
  json sdoc = json::parse(stable.out);
  CHECK(sdoc["verdict"] == "stable");
  CHECK(sdoc["finite_spectrum_certificate"] == true);

  RunResult toral = run_cli("classify --family toral-diagonal --pi-f 2:1 --pi-inf 3 --depth 3");
  REQUIRE(toral.code == 0);
  CHECK(contains(toral.out, "stable"));
}

TEST_CASE("solenoid-compare prints the exact verdict lines") {
  using steinitz::SolenoidContinuation;
  steinitz::SolenoidPresentation two, four, alt;
  two.degrees = {2};
  two.continuation.kind = SolenoidContinuation::Kind::RepeatBlock;
  two.continuation.block = 1;
  four.degrees = {4};
  four.continuation.kind = SolenoidContinuation::Kind::RepeatBlock;
  four.continuation.block = 1;
  alt.degrees = {2, 3};
  alt.continuation.kind = SolenoidContinuation::Kind::RepeatBlock;
  alt.continuation.block = 2;
  spit("/tmp/steinitz_cli_two.json", steinitz::json::to_json(two));
  spit("/tmp/steinitz_cli_four.json", steinitz::json::to_json(four));
  spit("/tmp/steinitz_cli_alt.json", steinitz::json::to_json(alt));

  RunResult same = run_cli("solenoid-compare /tmp/steinitz_cli_two.json /tmp/steinitz_cli_four.json");
  REQUIRE(same.code == 0);
  CHECK(contains(same.out, "asymptotically equivalent: true; homeomorphic (1-d): true"));

  RunResult diff = run_cli("solenoid-compare /tmp/steinitz_cli_two.json /tmp/steinitz_cli_alt.json");
  REQUIRE(diff.code == 0);
  CHECK(contains(diff.out, "asymptotically equivalent: false; homeomorphic (1-d): false"));

  RunResult jr = run_cli(
      "solenoid-compare /tmp/steinitz_cli_two.json /tmp/steinitz_cli_four.json --format json");
  REQUIRE(jr.code == 0);
  json doc = json::parse(jr.out);
  CHECK(doc["asymptotically_equivalent"] == "true");
  CHECK(doc["homeomorphic_1d"] == "true");
}

TEST_CASE("spectra subcommand reads a bare order file") {
  steinitz::SteinitzNumber s = steinitz::SteinitzNumber::make(
      {{2, steinitz::Exponent::infinity()}, {3, steinitz::Exponent(2)}});
  spit("/tmp/steinitz_cli_order.json", steinitz::json::to_json(s));
  RunResult r = run_cli("spectra --input /tmp/steinitz_cli_order.json");
  REQUIRE(r.code == 0);
  CHECK(contains(r.out, "pi"));
  CHECK(contains(r.out, "2"));
}

TEST_CASE("exit codes: 2 for bad input, 3 for blown thresholds") {
  RunResult r = run_cli("chain-invariants --family no-such-family --depth 2");
  CHECK(r.code == 2);
  CHECK(contains(r.err, "invalid-input"));
  CHECK(json::accept(r.err));

  RunResult missing = run_cli("chain-invariants --input /tmp/definitely_not_here.json");
  CHECK(missing.code == 2);

  RunResult conflict = run_cli(
      "chain-invariants --family toy-model --input /tmp/also_absent.json --depth 1");
  CHECK(conflict.code == 2);

  RunResult tiny = run_cli(
      "wild-witness --family heis-wild --primes 2,3,5 --n 2 --r 1 "
      "--shallow 1 --deep 2 --threshold 10");
  CHECK(tiny.code == 3);
  CHECK(contains(tiny.err, "resource-bound"));

  RunResult noargs = run_cli("chain-invariants --depth 2");
  CHECK(noargs.code == 2);
}
