#pragma once

#include <string>
#include <vector>

#include "nilorbit/counter.hpp"
#include "nilorbit/oracle.hpp"

namespace nilorbit {

// Stable exit-code contract of the command layer.
enum ExitCode : int {
  kOk = 0,
  kInvalidInput = 2,
  kBudgetAbort = 3,
  kMismatch = 4,
};

struct RunConfig {
  std::string command;      // param | count | oracle
  std::string type = "A";   // A..G
  int rank = 1;
  std::vector<int> qs;
  std::string subquotient;  // "", "l", "l1:l2", or "@roots.json"
  bool normalize = true;
  bool substitute = true;
  bool nonunit_substitution = false;
  std::string strategy = "symbolic";  // symbolic | per-q | interpolate
  long long budget_nodes = 50'000'000;
  long long budget_enum = 100'000'000;
  std::string out_path;     // empty writes to stdout
  std::string format = "json";  // json | text
  bool check_table = false;
  bool compare = false;
  bool force = false;
  unsigned long long seed = 0;  // echoed into outputs for reproducibility

  nlohmann::ordered_json echo() const;
};

struct RunResult {
  int exit_code = kOk;
  nlohmann::ordered_json output;
};

// Executes one command; never throws (errors map to exit codes and an
// "error" field in the output).
RunResult run_command(const RunConfig& config);

// Renders result per config.format to config.out_path or stdout.
void write_result(const RunConfig& config, const RunResult& result);

}  // namespace nilorbit
