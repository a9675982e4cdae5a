#include "nilorbit/run.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include "nilorbit/tables.hpp"
#include "nilorbit/version.hpp"

namespace nilorbit {

nlohmann::ordered_json RunConfig::echo() const {
  nlohmann::ordered_json j;
  j["command"] = command;
  j["type"] = type;
  j["rank"] = rank;
  j["q"] = qs;
  j["subquotient"] = subquotient;
  j["normalize"] = normalize;
  j["substitute"] = substitute;
  j["nonunit_substitution"] = nonunit_substitution;
  j["strategy"] = strategy;
  j["budget_nodes"] = budget_nodes;
  j["budget_enum"] = budget_enum;
  j["format"] = format;
  j["check_table"] = check_table;
  j["compare"] = compare;
  j["force"] = force;
  j["seed"] = seed;
  return j;
}

namespace {

struct Resolved {
  RootDatum datum;
  BracketTable table;
  std::vector<int> positions;  // empty = full space
  int pure_l = -1;             // l when the subquotient is U^(l), else -1
};

std::vector<int> parse_index_list(const nlohmann::json& j, const RootDatum& d, const char* name) {
  std::vector<int> out;
  for (auto& e : j) {
    int v = e.get<int>();
    if (v < 1 || v > d.num_positive)
      throw std::invalid_argument(std::string(name) + ": root index " + std::to_string(v) +
                                  " out of range 1.." + std::to_string(d.num_positive));
    out.push_back(v - 1);
  }
  return out;
}

Resolved resolve(const RunConfig& cfg) {
  if (cfg.type.size() != 1 || cfg.type[0] < 'A' || cfg.type[0] > 'G')
    throw std::invalid_argument("--type must be one of A B C D E F G");
  RootDatum datum = build_root_system(cfg.type[0], cfg.rank);
  BracketTable table = build_bracket_table(datum);
  Resolved r{std::move(datum), std::move(table), {}, -1};

  const std::string& s = cfg.subquotient;
  if (s.empty()) return r;
  if (s[0] == '@') {
    std::ifstream in(s.substr(1));
    if (!in) throw std::invalid_argument("cannot open subquotient file " + s.substr(1));
    nlohmann::json j;
    in >> j;
    std::vector<int> outer = parse_index_list(j.at("outer"), r.datum, "outer");
    std::vector<int> inner;
    if (j.contains("inner")) inner = parse_index_list(j["inner"], r.datum, "inner");
    r.positions = subquotient_positions(r.datum, outer, inner);
    return r;
  }
  auto colon = s.find(':');
  auto parse_l = [&](const std::string& t) {
    std::size_t pos = 0;
    int v = std::stoi(t, &pos);
    if (pos != t.size() || v < 0) throw std::invalid_argument("bad subquotient level '" + t + "'");
    return v;
  };
  if (colon == std::string::npos) {
    int l = parse_l(s);
    r.positions = subquotient_positions(r.datum, descending_central_indices(r.datum, l), {});
    r.pure_l = l;
    return r;
  }
  int l1 = parse_l(s.substr(0, colon));
  int l2 = parse_l(s.substr(colon + 1));
  if (l1 > l2)
    throw std::invalid_argument("subquotient l1:l2 requires l1 <= l2");
  r.positions = subquotient_positions(r.datum, descending_central_indices(r.datum, l1),
                                      descending_central_indices(r.datum, l2));
  return r;
}

ParamOptions options_from(const RunConfig& cfg, const Resolved& res) {
  ParamOptions o;
  o.normalize = cfg.normalize;
  o.substitute = cfg.substitute;
  o.nonunit_substitution = cfg.nonunit_substitution;
  o.node_budget = cfg.budget_nodes;
  o.positions = res.positions;
  return o;
}

nlohmann::ordered_json base_meta(const RunConfig& cfg) {
  nlohmann::ordered_json meta;
  meta["version"] = kVersion;
  meta["config"] = cfg.echo();
  return meta;
}

RunResult cmd_param(const RunConfig& cfg) {
  Resolved res = resolve(cfg);
  Parametrization par = parametrize(res.table, options_from(cfg, res));
  nlohmann::ordered_json j = par.to_json();
  j["meta"]["version"] = kVersion;
  j["meta"]["datum"] = res.datum.to_json();
  j["meta"]["config"] = cfg.echo();
  return {kOk, std::move(j)};
}

RunResult cmd_count(const RunConfig& cfg) {
  Resolved res = resolve(cfg);
  Parametrization par = parametrize(res.table, options_from(cfg, res));
  CountStrategy strategy;
  if (cfg.strategy == "symbolic") strategy = CountStrategy::SymbolicFirst;
  else if (cfg.strategy == "per-q") strategy = CountStrategy::PerQOnly;
  else if (cfg.strategy == "interpolate") strategy = CountStrategy::Interpolate;
  else throw std::invalid_argument("--strategy must be symbolic, per-q or interpolate");
  if (cfg.check_table && strategy == CountStrategy::PerQOnly)
    throw std::invalid_argument("--check-table needs a polynomial strategy");

  CountReport rep = assemble_k(par, res.datum, strategy, cfg.qs, cfg.budget_enum);
  nlohmann::ordered_json j;
  j["meta"] = base_meta(cfg);
  std::vector<std::string> primes;
  for (auto& p : par.excluded_primes) primes.push_back(p.str());
  j["meta"]["excluded_primes"] = primes;
  j["meta"]["cell_count"] = par.cells.size();
  j["report"] = rep.to_json();

  int code = kOk;
  if (cfg.check_table) {
    std::optional<ClassPolynomial> ref =
        res.pure_l >= 0 ? tables::subquotient_class_number(cfg.type[0], cfg.rank, res.pure_l)
        : res.positions.empty() ? tables::class_number(cfg.type[0], cfg.rank)
                                : std::nullopt;
    if (!ref)
      throw std::invalid_argument("no catalogued reference polynomial for this case");
    bool match = rep.total && *rep.total == *ref;
    nlohmann::ordered_json chk;
    chk["reference"] = ref->str();
    chk["computed"] = rep.total ? rep.total->str() : "(none)";
    chk["match"] = match;
    j["check_table"] = chk;
    if (!match) code = kMismatch;
  }
  return {code, std::move(j)};
}

RunResult cmd_oracle(const RunConfig& cfg) {
  Resolved res = resolve(cfg);
  if (cfg.qs.empty()) throw std::invalid_argument("oracle needs --q");
  std::vector<int> positions = res.positions;
  if (positions.empty()) {
    positions.resize(res.datum.num_positive);
    for (int i = 0; i < res.datum.num_positive; ++i) positions[i] = i;
  }
  nlohmann::ordered_json j;
  j["meta"] = base_meta(cfg);
  nlohmann::ordered_json runs = nlohmann::ordered_json::array();
  int code = kOk;
  for (int q : cfg.qs) {
    Field f = field_for_q(q);
    if (res.datum.bad_primes.count(f.p()) && !cfg.force)
      throw std::invalid_argument("q = " + std::to_string(q) +
                                  " has bad characteristic for this type; the class-number "
                                  "bijection is not valid there (use --force to sweep anyway)");
    Int count = adjoint_orbit_count(res.table, f, positions, cfg.budget_enum);
    nlohmann::ordered_json e;
    e["type"] = cfg.type;
    e["rank"] = cfg.rank;
    e["q"] = q;
    e["space_dim"] = positions.size();
    e["orbit_count"] = count.str();
    if (f.e() > 1) e["irreducible_poly"] = f.irreducible();
    if (cfg.compare) {
      Parametrization par = parametrize(res.table, options_from(cfg, res));
      CountReport rep = assemble_k(par, res.datum, CountStrategy::PerQOnly, {q}, cfg.budget_enum);
      Int pipeline = rep.totals_per_q.at(q);
      e["pipeline_count"] = pipeline.str();
      bool match = pipeline == count;
      e["match"] = match;
      if (!match) code = kMismatch;
    }
    runs.push_back(std::move(e));
  }
  j["runs"] = std::move(runs);
  return {code, std::move(j)};
}

std::string render_text(const RunConfig& cfg, const nlohmann::ordered_json& j) {
  std::ostringstream os;
  os << "nilorbit " << kVersion << " " << cfg.command << " " << cfg.type << cfg.rank;
  if (!cfg.subquotient.empty()) os << " subquotient=" << cfg.subquotient;
  os << "\n";
  if (j.contains("error")) {
    os << "error: " << j["error"].get<std::string>() << "\n";
    return os.str();
  }
  if (cfg.command == "param") {
    os << "cells: " << j["meta"]["cell_count"] << "\n";
    os << "excluded primes:";
    for (auto& p : j["meta"]["excluded_primes"]) os << " " << p.get<std::string>();
    os << "\n";
  } else if (cfg.command == "count") {
    if (j["report"].contains("total"))
      os << "k = " << j["report"]["total"].get<std::string>() << "\n";
    if (j["report"].contains("totals_per_q"))
      for (auto& [q, c] : j["report"]["totals_per_q"].items())
        os << "k(q=" << q << ") = " << c.get<std::string>() << "\n";
    if (j.contains("check_table"))
      os << "table check: " << (j["check_table"]["match"].get<bool>() ? "match" : "MISMATCH")
         << "\n";
  } else if (cfg.command == "oracle") {
    for (auto& e : j["runs"]) {
      os << "q=" << e["q"] << ": " << e["orbit_count"].get<std::string>() << " orbits";
      if (e.contains("pipeline_count"))
        os << ", pipeline " << e["pipeline_count"].get<std::string>()
           << (e["match"].get<bool>() ? " (match)" : " (MISMATCH)");
      os << "\n";
    }
  }
  return os.str();
}

}  // namespace

RunResult run_command(const RunConfig& cfg) {
  try {
    if (cfg.command == "param") return cmd_param(cfg);
    if (cfg.command == "count") return cmd_count(cfg);
    if (cfg.command == "oracle") return cmd_oracle(cfg);
    throw std::invalid_argument("unknown command '" + cfg.command + "'");
  } catch (const BudgetExceeded& e) {
    nlohmann::ordered_json j;
    j["meta"] = base_meta(cfg);
    j["error"] = e.what();
    return {kBudgetAbort, std::move(j)};
  } catch (const VerificationError& e) {
    nlohmann::ordered_json j;
    j["meta"] = base_meta(cfg);
    j["error"] = e.what();
    return {kMismatch, std::move(j)};
  } catch (const std::invalid_argument& e) {
    nlohmann::ordered_json j;
    j["meta"] = base_meta(cfg);
    j["error"] = e.what();
    return {kInvalidInput, std::move(j)};
  }
}

void write_result(const RunConfig& cfg, const RunResult& result) {
  std::string body = cfg.format == "text" ? render_text(cfg, result.output)
                                          : result.output.dump(1) + "\n";
  if (cfg.out_path.empty()) {
    std::cout << body;
  } else {
    std::ofstream out(cfg.out_path, std::ios::binary);
    out << body;
  }
}

}  // namespace nilorbit
