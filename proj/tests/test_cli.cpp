#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "nilorbit/run.hpp"
#include "nilorbit/tables.hpp"

using namespace nilorbit;

namespace {

RunConfig base(const std::string& cmd, const std::string& type, int rank) {
  RunConfig c;
  c.command = cmd;
  c.type = type;
  c.rank = rank;
  return c;
}

int run_binary(const std::string& args) {
  std::string cmd = std::string(NILORBIT_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

}  // namespace

TEST_CASE("param: A1 has two cells") {
  auto r = run_command(base("param", "A", 1));
  CHECK(r.exit_code == kOk);
  CHECK(r.output["meta"]["cell_count"] == 2);
  CHECK(r.output["cells"].size() == 2);
  CHECK(r.output["meta"]["config"]["command"] == "param");
  CHECK(r.output["meta"]["version"].get<std::string>() == "0.1.0");
}

TEST_CASE("param: B2 reports only bad primes") {
  auto r = run_command(base("param", "B", 2));
  CHECK(r.exit_code == kOk);
  for (auto& p : r.output["meta"]["excluded_primes"])
    CHECK(p.get<std::string>() == "2");
}

TEST_CASE("param: F4 subquotient l=3 has 14 positions") {
  auto cfg = base("param", "F", 4);
  cfg.subquotient = "3";
  auto r = run_command(cfg);
  CHECK(r.exit_code == kOk);
  CHECK(r.output["meta"]["positions"].size() == 14);
  for (auto& cell : r.output["cells"])
    CHECK(cell["pattern"].get<std::string>().size() == 14);
}

TEST_CASE("param: identical configs give byte-identical output") {
  auto cfg = base("param", "B", 3);
  auto a = run_command(cfg);
  auto b = run_command(cfg);
  CHECK(a.output.dump() == b.output.dump());
}

TEST_CASE("count: G2 table check passes") {
  auto cfg = base("count", "G", 2);
  cfg.check_table = true;
  auto r = run_command(cfg);
  CHECK(r.exit_code == kOk);
  CHECK(r.output["check_table"]["match"] == true);
  CHECK(r.output["report"]["total"].get<std::string>() == "v^3+5v^2+6v+1");
}

TEST_CASE("count: A3 per-q totals") {
  auto cfg = base("count", "A", 3);
  cfg.qs = {2, 3};
  auto r = run_command(cfg);
  CHECK(r.exit_code == kOk);
  CHECK(r.output["report"]["totals_per_q"]["2"].get<std::string>() == "16");
  CHECK(r.output["report"]["totals_per_q"]["3"].get<std::string>() == "57");
}

TEST_CASE("count: bad-prime q rejected as invalid input") {
  auto cfg = base("count", "B", 2);
  cfg.qs = {2};
  auto r = run_command(cfg);
  CHECK(r.exit_code == kInvalidInput);
  CHECK(r.output.contains("error"));
}

TEST_CASE("oracle: A2 compare at q=3") {
  auto cfg = base("oracle", "A", 2);
  cfg.qs = {3};
  cfg.compare = true;
  auto r = run_command(cfg);
  CHECK(r.exit_code == kOk);
  CHECK(r.output["runs"][0]["orbit_count"].get<std::string>() == "11");
  CHECK(r.output["runs"][0]["pipeline_count"].get<std::string>() == "11");
  CHECK(r.output["runs"][0]["match"] == true);
}

TEST_CASE("oracle: q=4 records the irreducible polynomial") {
  auto cfg = base("oracle", "A", 1);
  cfg.qs = {4};
  auto r = run_command(cfg);
  CHECK(r.exit_code == kOk);
  CHECK(r.output["runs"][0]["orbit_count"].get<std::string>() == "4");
  CHECK(r.output["runs"][0].contains("irreducible_poly"));
}

TEST_CASE("oracle: bad prime needs --force") {
  auto cfg = base("oracle", "G", 2);
  cfg.qs = {2};
  auto r = run_command(cfg);
  CHECK(r.exit_code == kInvalidInput);
  cfg.force = true;
  auto r2 = run_command(cfg);
  CHECK(r2.exit_code == kOk);
}

TEST_CASE("budget abort maps to exit 3") {
  auto cfg = base("param", "B", 3);
  cfg.budget_nodes = 2;
  auto r = run_command(cfg);
  CHECK(r.exit_code == kBudgetAbort);
  CHECK(r.output.contains("error"));
}

TEST_CASE("invalid type/rank maps to exit 2") {
  CHECK(run_command(base("param", "D", 3)).exit_code == kInvalidInput);
  CHECK(run_command(base("param", "X", 2)).exit_code == kInvalidInput);
  CHECK(run_command(base("nonsense", "A", 2)).exit_code == kInvalidInput);
}

TEST_CASE("subquotient parsing: levels, ranges, files") {
  auto cfg = base("param", "B", 3);
  cfg.subquotient = "1";
  CHECK(run_command(cfg).exit_code == kOk);
  cfg.subquotient = "1:2";
  auto r = run_command(cfg);
  CHECK(r.exit_code == kOk);
  cfg.subquotient = "2:1";
  CHECK(run_command(cfg).exit_code == kInvalidInput);
  cfg.subquotient = "@/nonexistent.json";
  CHECK(run_command(cfg).exit_code == kInvalidInput);

  std::string path = "/tmp/nilorbit_test_roots.json";
  {
    std::ofstream out(path);
    out << "{\"outer\": [9], \"inner\": []}";  // the highest root of B3
  }
  cfg.subquotient = "@" + path;
  auto rf = run_command(cfg);
  CHECK(rf.exit_code == kOk);
  CHECK(rf.output["meta"]["positions"].size() == 1);
  std::remove(path.c_str());
}

TEST_CASE("the installed binary honors the exit-code contract") {
  CHECK(run_binary("count --type G --rank 2 --check-table") == 0);
  CHECK(run_binary("oracle --type A --rank 2 --q 3 --compare") == 0);
  CHECK(run_binary("count --type B --rank 2 --q 2") == 2);
  CHECK(run_binary("param --type D --rank 3") == 2);
  CHECK(run_binary("param --type B --rank 3 --budget-nodes 2") == 3);
  CHECK(run_binary("oracle --type G --rank 2 --q 2") == 2);
  CHECK(run_binary("oracle --type G --rank 2 --q 4 --force --budget-enum 100") == 3);
  CHECK(run_binary("--version") == 0);
  CHECK(run_binary("count --type F --rank 4 --subquotient 3 --check-table") == 0);
}

TEST_CASE("binary writes the requested output file in both formats") {
  std::string path = "/tmp/nilorbit_test_out.json";
  CHECK(run_binary("count --type A --rank 2 --check-table --out " + path) == 0);
  {
    std::ifstream in(path);
    nlohmann::json j;
    in >> j;
    CHECK(j["check_table"]["match"] == true);
  }
  std::remove(path.c_str());
  std::string tpath = "/tmp/nilorbit_test_out.txt";
  CHECK(run_binary("count --type A --rank 2 --format text --out " + tpath) == 0);
  {
    std::ifstream in(tpath);
    std::stringstream ss;
    ss << in.rdbuf();
    CHECK(ss.str().find("v^2+3v+1") != std::string::npos);
  }
  std::remove(tpath.c_str());
}
