#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#ifndef GLCOH_CLI_PATH
#error "GLCOH_CLI_PATH must point at the command-line binary"
#endif

namespace {

struct RunResult {
  int code = -1;
  std::string out;  // stdout and stderr merged
};

RunResult run_cli(const std::string& args) {
  const std::string cmd = std::string(GLCOH_CLI_PATH) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult r;
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

nlohmann::json parse_json(const std::string& text) {
  return nlohmann::json::parse(text);
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

const char* kShear = "'[[1,1],[0,1]] mod 5'";
const char* kDiag = "'[[2,0],[0,3]] mod 5'";
const char* kScalar = "'[[2,0],[0,2]] mod 5'";
const char* kShearLift = "'[[1,1],[0,1]] mod 25'";

}  // namespace

TEST_CASE("closing a generator set reports order and invariant lines") {
  RunResult r = run_cli(std::string("close ") + kShear);
  REQUIRE(r.code == 0);
  nlohmann::json j = parse_json(r.out);
  CHECK(j["modulus"] == 5);
  CHECK(j["order"] == 5);
  CHECK(j["line_count"] == 1);
  CHECK(j["invariant_lines"].size() == 1);
  CHECK(j["det_image"] == nlohmann::json::array({1}));
  CHECK(j["diagonal_part_order"] == 1);

  RunResult d = run_cli(std::string("close ") + kDiag);
  REQUIRE(d.code == 0);
  nlohmann::json jd = parse_json(d.out);
  CHECK(jd["order"] == 4);
  CHECK(jd["line_count"] == 2);
  CHECK(jd["diagonal_part_order"] == 4);
}

TEST_CASE("close renders a table on request") {
  RunResult r = run_cli(std::string("close --output table ") + kShear);
  REQUIRE(r.code == 0);
  CHECK(r.out.find("order: 5") != std::string::npos);
  CHECK(r.out.find("invariant lines: 1") != std::string::npos);
}

TEST_CASE("cohomology summaries match the frozen examples") {
  SUBCASE("shear of order five") {
    RunResult r = run_cli(std::string("h1 ") + kShear);
    REQUIRE(r.code == 0);
    nlohmann::json j = parse_json(r.out);
    CHECK(j["group_order"] == 5);
    CHECK(j["z1_order"] == 25);
    CHECK(j["b1_order"] == 5);
    CHECK(j["invariants"] == nlohmann::json::array({5}));
    CHECK(j["h1loc_invariants"] == nlohmann::json::array());
  }

  SUBCASE("locally trivial part of the shear") {
    RunResult r = run_cli(std::string("h1loc ") + kShear);
    REQUIRE(r.code == 0);
    nlohmann::json j = parse_json(r.out);
    CHECK(j["z1_order"] == 5);
    CHECK(j["invariants"] == nlohmann::json::array());
  }

  SUBCASE("scalar group has no classes") {
    RunResult r = run_cli(std::string("h1 ") + kScalar);
    REQUIRE(r.code == 0);
    nlohmann::json j = parse_json(r.out);
    CHECK(j["z1_order"] == 25);
    CHECK(j["b1_order"] == 25);
    CHECK(j["invariants"] == nlohmann::json::array());
  }

  SUBCASE("lifted shear keeps one class of order twenty-five") {
    RunResult r = run_cli(std::string("h1 -p 5 -n 2 ") + kShearLift);
    REQUIRE(r.code == 0);
    nlohmann::json j = parse_json(r.out);
    CHECK(j["group_order"] == 25);
    CHECK(j["z1_order"] == 625);
    CHECK(j["b1_order"] == 25);
    CHECK(j["invariants"] == nlohmann::json::array({25}));
    CHECK(j["h1loc_invariants"] == nlohmann::json::array());
  }
}

TEST_CASE("generators can come from a commented group file") {
  const std::string path = "/tmp/glcoh_cli_group.txt";
  {
    std::ofstream out(path);
    out << "# upper-triangular pair\n"
        << "mod 5^1\n"
        << "\n"
        << "[[1,1],[0,1]]\n"
        << "[[2,0],[0,3]]  # diagonal of order four\n";
  }
  RunResult r = run_cli("close " + path);
  REQUIRE(r.code == 0);
  nlohmann::json j = parse_json(r.out);
  CHECK(j["order"] == 20);
  CHECK(j["modulus"] == 5);

  // Conflicting -p/-n is an error, not a silent override.
  RunResult bad = run_cli("close -p 7 " + path);
  CHECK(bad.code == 1);
  CHECK(bad.out.find("declares") != std::string::npos);
  std::remove(path.c_str());
}

TEST_CASE("malformed literals exit with usage status and a location") {
  RunResult r = run_cli("close '[[1,1],[0,1]'");
  CHECK(r.code == 64);
  CHECK(r.out.find("parse error") != std::string::npos);

  RunResult bad_entry = run_cli("close '[[1,x],[0,1]] mod 5'");
  CHECK(bad_entry.code == 64);
  CHECK(bad_entry.out.find("parse error") != std::string::npos);

  RunResult none = run_cli("h1 -p 5");
  CHECK(none.code == 64);
}

TEST_CASE("verify runs single checks and maps verdicts to exit codes") {
  RunResult r = run_cli("verify lemma-3.1 -p 5 --seed 42");
  REQUIRE(r.code == 0);
  nlohmann::json j = parse_json(r.out);
  REQUIRE(j["reports"].size() == 1);
  const auto& rep = j["reports"][0];
  CHECK(rep["check"]["id"] == "lemma-3.1");
  CHECK(rep["check"]["p"] == 5);
  CHECK(rep["verdict"] == "pass");
  CHECK(rep["failures"].empty());
  CHECK(rep["groups_tested"].get<std::size_t>() > 0);
  CHECK(j["verdict"] == "pass");

  RunResult tight = run_cli("verify lemma-3.1 -p 5 --seed 42 --budget 5");
  CHECK(tight.code == 2);
  nlohmann::json jt = parse_json(tight.out);
  CHECK(jt["reports"][0]["verdict"] == "inconclusive-budget");
}

TEST_CASE("unknown check ids list the registry and exit with usage status") {
  RunResult r = run_cli("verify lemma-9.9 -p 5");
  CHECK(r.code == 64);
  CHECK(r.out.find("lemma-2.3") != std::string::npos);
  CHECK(r.out.find("main-thm-search") != std::string::npos);
}

TEST_CASE("reports write to a file and reproduce byte for byte") {
  const std::string a = "/tmp/glcoh_cli_a.json";
  const std::string b = "/tmp/glcoh_cli_b.json";
  RunResult ra = run_cli("verify lemma-2.3 -p 5 --seed 42 --out " + a);
  RunResult rb = run_cli("verify lemma-2.3 -p 5 --seed 42 --out " + b);
  REQUIRE(ra.code == 0);
  REQUIRE(rb.code == 0);
  const std::string ja = slurp(a);
  CHECK(ja == slurp(b));
  CHECK(parse_json(ja)["verdict"] == "pass");
  std::remove(a.c_str());
  std::remove(b.c_str());

  // Table output is a human-readable summary of the same run.
  RunResult table = run_cli("verify lemma-2.3 -p 5 --seed 42 --output table");
  REQUIRE(table.code == 0);
  CHECK(table.out.find("lemma-2.3") != std::string::npos);
  CHECK(table.out.find("overall:") != std::string::npos);
}

TEST_CASE("usage errors do not masquerade as check failures") {
  RunResult r = run_cli("verify -p 5");
  CHECK(r.code == 64);
  RunResult unknown_cmd = run_cli("frobnicate");
  CHECK(unknown_cmd.code == 64);
  RunResult bad_output = run_cli("close --output yaml '[[1,1],[0,1]] mod 5'");
  CHECK(bad_output.code == 64);
}
