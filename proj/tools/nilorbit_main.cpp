#include <CLI11.hpp>
#include <string>

#include "nilorbit/run.hpp"
#include "nilorbit/version.hpp"

int main(int argc, char** argv) {
  CLI::App app{"adjoint-orbit parametrization and class-number counting for "
               "maximal unipotent subgroups of Chevalley groups"};
  app.set_version_flag("--version", nilorbit::kVersion);
  app.require_subcommand(1);

  nilorbit::RunConfig cfg;
  std::string qcsv;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--type", cfg.type, "root system type, one of A B C D E F G")->required();
    sub->add_option("--rank", cfg.rank, "rank of the root system")->required();
    sub->add_option("--subquotient", cfg.subquotient,
                    "l (term of the descending central series), l1:l2, or @roots.json");
    sub->add_flag("!--no-normalize", cfg.normalize, "disable torus normalization");
    sub->add_flag("!--no-subst", cfg.substitute, "disable linear substitutions");
    sub->add_flag("--nonunit-subst", cfg.nonunit_substitution,
                  "substitute through non-unit coefficients, recording the divided primes");
    sub->add_option("--budget-nodes", cfg.budget_nodes, "backtrack row-step budget");
    sub->add_option("--budget-enum", cfg.budget_enum, "per-cell enumeration budget");
    sub->add_option("--out", cfg.out_path, "output path (default stdout)");
    sub->add_option("--format", cfg.format, "json or text")
        ->check(CLI::IsMember({"json", "text"}));
    sub->add_option("--seed", cfg.seed, "seed echoed into output metadata");
    sub->add_option("--q", qcsv, "comma-separated prime powers");
  };

  CLI::App* param = app.add_subcommand("param", "compute the cell parametrization");
  add_common(param);

  CLI::App* count = app.add_subcommand("count", "assemble k(U(q)) from the parametrization");
  add_common(count);
  count->add_option("--strategy", cfg.strategy, "symbolic, per-q or interpolate")
      ->check(CLI::IsMember({"symbolic", "per-q", "interpolate"}));
  count->add_flag("--check-table", cfg.check_table,
                  "compare against the catalogued polynomial; exit 4 on mismatch");

  CLI::App* oracle = app.add_subcommand("oracle", "brute-force adjoint orbit count");
  add_common(oracle);
  oracle->add_flag("--compare", cfg.compare,
                   "also run the pipeline at the same q; exit 4 on mismatch");
  oracle->add_flag("--force", cfg.force, "allow bad-characteristic q");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : nilorbit::kInvalidInput;
  }

  cfg.command = param->parsed() ? "param" : count->parsed() ? "count" : "oracle";
  if (!qcsv.empty()) {
    std::size_t start = 0;
    while (start <= qcsv.size()) {
      std::size_t comma = qcsv.find(',', start);
      std::string tok = qcsv.substr(start, comma == std::string::npos ? std::string::npos
                                                                      : comma - start);
      if (!tok.empty()) {
        try {
          cfg.qs.push_back(std::stoi(tok));
        } catch (const std::exception&) {
          std::fprintf(stderr, "bad q value '%s'\n", tok.c_str());
          return nilorbit::kInvalidInput;
        }
      }
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
  }

  nilorbit::RunResult result = nilorbit::run_command(cfg);
  nilorbit::write_result(cfg, result);
  return result.exit_code;
}
