#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "nilorbit/counter.hpp"
#include "nilorbit/oracle.hpp"
#include "nilorbit/parametrizer.hpp"

using namespace nilorbit;

namespace {

std::multiset<std::string> patterns(const Parametrization& p) {
  std::multiset<std::string> out;
  for (auto& c : p.cells) out.insert(c.pattern);
  return out;
}

// Reconstructs the coordinate vector (over the positions) of the cell point
// at a free-variable assignment; assumes the assignment satisfies the cell.
std::vector<int> cell_point(const Cell& cell, const Parametrization& par, const Field& f,
                            const std::map<int, int>& tau, int full_n) {
  // values for substituted variables, later substitutions first
  std::map<int, int> val(tau.begin(), tau.end());
  for (auto it = cell.substitutions.rbegin(); it != cell.substitutions.rend(); ++it) {
    int maxv = it->var;
    for (int v : it->num.vars()) maxv = std::max(maxv, v);
    std::vector<int> point(maxv + 1, -1);
    for (auto& [v, x] : val)
      if (v <= maxv) point[v] = x;
    int num = eval_poly(f, it->num, point);
    int den = f.from_int(it->den);
    REQUIRE(den != 0);
    val[it->var] = f.mul(num, f.inv(den));
  }
  std::vector<int> x(full_n, 0);
  int next_var = 1;
  for (std::size_t i = 0; i < cell.pattern.size(); ++i) {
    if (cell.pattern[i] != 'N') continue;
    bool pinned = std::find(cell.normalized.begin(), cell.normalized.end(),
                            static_cast<int>(i)) != cell.normalized.end();
    int value;
    if (pinned) {
      value = 1;
    } else {
      value = val.at(next_var);
      ++next_var;
    }
    x[par.positions[i]] = value;
  }
  return x;
}

}  // namespace

TEST_CASE("A1: the two one-step cells") {
  auto d = build_root_system('A', 1);
  auto t = build_bracket_table(d);
  auto p = parametrize(t);
  REQUIRE(p.cells.size() == 2);
  CHECK(patterns(p) == std::multiset<std::string>{"0", "N"});
  for (auto& c : p.cells) {
    CHECK(c.A.empty());
    CHECK(c.B.empty());
  }
  CHECK(p.excluded_primes.empty());
}

TEST_CASE("A2: the five hand-computed cells") {
  auto d = build_root_system('A', 2);
  auto t = build_bracket_table(d);
  auto p = parametrize(t);
  CHECK(patterns(p) == std::multiset<std::string>{"NNI", "N0I", "0NI", "00N", "000"});
  for (auto& c : p.cells) {
    CHECK(c.A.empty());
    CHECK(c.B.empty());
  }
  CHECK(p.excluded_primes.empty());
  // torus normalization pins both simple-root coefficients of the NNI cell
  for (auto& c : p.cells)
    if (c.pattern == "NNI") {
      CHECK(c.normalized == std::vector<int>{0, 1});
      CHECK(c.free_vars.empty());
    }
}

TEST_CASE("B2: excluded primes stay inside the bad primes") {
  auto d = build_root_system('B', 2);
  auto t = build_bracket_table(d);
  auto p = parametrize(t);
  CHECK(p.cells.size() == 7);
  for (auto& q : p.excluded_primes) CHECK(q == 2);
  // the 0NIN cell must refuse to pin the long root against the short one:
  // the coefficient matrix {(1,0),(1,2)} has a Smith divisor 2
  bool found = false;
  for (auto& c : p.cells)
    if (c.pattern == "0NIN") {
      found = true;
      CHECK(c.normalized == std::vector<int>{1});
      CHECK(c.free_vars.size() == 1);
    }
  CHECK(found);
}

TEST_CASE("unimodularity guard on explicit matrices") {
  CHECK(detail::unimodular_rows({}));
  CHECK(detail::unimodular_rows({{1, 0}, {0, 1}}));
  CHECK(detail::unimodular_rows({{1, 2}}));
  CHECK(detail::unimodular_rows({{2, 1}, {1, 1}}));
  CHECK(!detail::unimodular_rows({{2, 4}}));
  CHECK(!detail::unimodular_rows({{1, 0}, {1, 2}}));   // elementary divisor 2
  CHECK(!detail::unimodular_rows({{2, 0}, {0, 3}}));   // divisors 1, 6
  CHECK(!detail::unimodular_rows({{1, 0}, {1, 0}}));   // dependent rows
  CHECK(detail::unimodular_rows({{0, 1, 0}, {1, 0, 1}}));
}

TEST_CASE("exactly one all-zero cell everywhere") {
  for (auto [tp, r] : std::vector<std::pair<char, int>>{{'A', 3}, {'B', 3}, {'G', 2}, {'D', 4}}) {
    auto d = build_root_system(tp, r);
    auto t = build_bracket_table(d);
    auto p = parametrize(t);
    int zero = 0;
    for (auto& c : p.cells)
      if (c.pattern.find_first_not_of('0') == std::string::npos) ++zero;
    CHECK(zero == 1);
  }
}

TEST_CASE("deterministic byte-identical output") {
  auto d = build_root_system('B', 3);
  auto t = build_bracket_table(d);
  auto p1 = parametrize(t);
  auto p2 = parametrize(t);
  CHECK(p1.to_json().dump() == p2.to_json().dump());
}

TEST_CASE("partition: with both modifications off the cells tile the space") {
  // q-points counted cell by cell must sum to the oracle count, and no point
  // may satisfy two cells
  for (auto [tp, r, q] : std::vector<std::tuple<char, int, int>>{
           {'A', 2, 3}, {'A', 2, 5}, {'A', 3, 3}, {'B', 2, 3}, {'B', 2, 5}, {'G', 2, 5}}) {
    auto d = build_root_system(tp, r);
    auto t = build_bracket_table(d);
    ParamOptions o;
    o.normalize = false;
    o.substitute = false;
    auto p = parametrize(t, o);
    Field f = field_for_q(q);
    const int N = d.num_positive;
    // completeness
    Int total = 0;
    for (auto& c : p.cells) total += count_cell_at_q(c, f);
    std::vector<int> all(N);
    for (int i = 0; i < N; ++i) all[i] = i;
    CHECK(total == adjoint_orbit_count(t, f, all));
    // disjointness: group cells by support, check each assignment satisfies
    // at most one cell of the group
    std::map<std::string, std::vector<const Cell*>> by_support;
    for (auto& c : p.cells) {
      std::string s = c.pattern;
      for (auto& ch : s)
        if (ch == 'I') ch = '0';
      by_support[s].push_back(&c);
    }
    for (auto& [supp, cells] : by_support) {
      if (cells.size() < 2) continue;
      int m = static_cast<int>(std::count(supp.begin(), supp.end(), 'N'));
      std::vector<int> idx(m, 1);
      for (;;) {
        int hits = 0;
        for (const Cell* c : cells) {
          // with both modifications off, variable j is the j-th N position
          std::vector<int> point(m + 1, -1);
          for (int j = 0; j < m; ++j) point[j + 1] = idx[j];
          bool ok = true;
          for (auto& a : c->A)
            if (eval_poly(f, a, point) != 0) { ok = false; break; }
          if (ok)
            for (auto& b : c->B)
              if (eval_poly(f, b, point) == 0) { ok = false; break; }
          if (ok) ++hits;
        }
        CHECK(hits <= 1);
        int pos = 0;
        while (pos < m && ++idx[pos] == q) idx[pos++] = 1;
        if (pos == m) break;
        if (m == 0) break;
      }
    }
  }
}

TEST_CASE("soundness per prefix: rank of the reduced system matches the inert count") {
  std::mt19937_64 rng(31337);
  for (auto [tp, r, q] : std::vector<std::tuple<char, int, int>>{{'A', 3, 5}, {'B', 2, 5}, {'B', 3, 5}}) {
    auto d = build_root_system(tp, r);
    auto t = build_bracket_table(d);
    auto p = parametrize(t);  // default run, both modifications on
    Field f = field_for_q(q);
    const int N = d.num_positive;
    std::uniform_int_distribution<int> nonzero(1, q - 1);
    for (auto& cell : p.cells) {
      int tries = 0, used = 0;
      while (tries < 200 && used < 8) {
        ++tries;
        std::map<int, int> tau;
        for (int v : cell.free_vars) tau[v] = nonzero(rng);
        int maxv = 0;
        for (auto& [v, x] : tau) maxv = std::max(maxv, v);
        for (auto& a : cell.A)
          for (int v : a.vars()) maxv = std::max(maxv, v);
        for (auto& b : cell.B)
          for (int v : b.vars()) maxv = std::max(maxv, v);
        std::vector<int> point(maxv + 1, -1);
        for (auto& [v, x] : tau) point[v] = x;
        bool ok = true;
        for (auto& a : cell.A)
          if (eval_poly(f, a, point) != 0) { ok = false; break; }
        if (ok)
          for (auto& b : cell.B)
            if (eval_poly(f, b, point) == 0) { ok = false; break; }
        if (!ok) continue;
        ++used;
        std::vector<int> x = cell_point(cell, p, f, tau, N);
        int inert = 0;
        for (int i = 1; i <= N; ++i) {
          if (cell.pattern[i - 1] == 'I') ++inert;
          CHECK(N - centralizer_dim(t, f, x, i) == inert);
        }
      }
    }
  }
}

TEST_CASE("totals are invariant under the normalization and substitution switches") {
  for (auto [tp, r] : std::vector<std::pair<char, int>>{{'A', 2}, {'B', 2}}) {
    auto d = build_root_system(tp, r);
    auto t = build_bracket_table(d);
    for (int q : {3, 5}) {
      Field f = field_for_q(q);
      std::set<Int> totals;
      for (bool norm : {false, true})
        for (bool subst : {false, true}) {
          ParamOptions o;
          o.normalize = norm;
          o.substitute = subst;
          auto p = parametrize(t, o);
          Int total = 0;
          for (auto& c : p.cells) total += count_cell_at_q(c, f);
          totals.insert(total);
        }
      CHECK(totals.size() == 1);
    }
  }
}

TEST_CASE("subquotients") {
  auto d = build_root_system('A', 2);
  auto t = build_bracket_table(d);

  // degenerate subquotient: identical to the full run
  auto full = parametrize(t);
  auto degenerate = parametrize_subquotient(t, descending_central_indices(d, 0), {});
  CHECK(full.to_json()["cells"].dump() == degenerate.to_json()["cells"].dump());

  // the one-dimensional center: two cells, k = v + 1
  auto center = parametrize_subquotient(t, {2}, {});
  REQUIRE(center.cells.size() == 2);
  CHECK(patterns(center) == std::multiset<std::string>{"0", "N"});
  Field f5 = field_for_q(5);
  Int total = 0;
  for (auto& c : center.cells) total += count_cell_at_q(c, f5);
  CHECK(total == 5);  // v + 1 at v = 4

  CHECK_THROWS_WITH_AS(parametrize_subquotient(t, {0}, {}), doctest::Contains("not an ideal"),
                       std::invalid_argument);

  // subquotient totals agree with the oracle on a non-trivial case
  auto b3 = build_root_system('B', 3);
  auto tb3 = build_bracket_table(b3);
  auto derived = parametrize_subquotient(tb3, descending_central_indices(b3, 1), {});
  Field f3 = field_for_q(3);
  Int count = 0;
  for (auto& c : derived.cells) count += count_cell_at_q(c, f3);
  CHECK(count == adjoint_orbit_count(tb3, f3, subquotient_positions(
                                               b3, descending_central_indices(b3, 1), {})));
}

TEST_CASE("substitution modification on explicit constraint sets") {
  IntPoly t1 = IntPoly::var(1), t2 = IntPoly::var(2), t3 = IntPoly::var(3);

  SUBCASE("unit linear relation is eliminated") {
    auto out = detail::substitute_in_sets({t2 - t1}, {}, false);
    CHECK(!out.dead);
    CHECK(out.A.empty());
    REQUIRE(out.subs.size() == 1);
    CHECK(out.subs[0].den == 1);
    CHECK(out.primes.empty());
    CHECK(out.B.empty());  // the value t1 is a unit monomial, no condition needed
  }

  SUBCASE("pin to a constant") {
    auto out = detail::substitute_in_sets({t2 - IntPoly::constant(1)}, {t2 + t1}, false);
    CHECK(!out.dead);
    CHECK(out.A.empty());
    REQUIRE(out.B.size() == 1);
    CHECK(out.B[0] == t1 + IntPoly::constant(1));
  }

  SUBCASE("2t2 - t1 takes the unit route through t1, pricing the witness") {
    auto out = detail::substitute_in_sets({t2 * Int(2) - t1}, {}, false);
    CHECK(out.A.empty());
    REQUIRE(out.subs.size() == 1);
    CHECK(out.subs[0].var == 1);
    CHECK(out.subs[0].den == 1);
    // t1 = 2t2 is nonzero only away from characteristic 2
    CHECK(out.primes == std::set<Int>{2});
  }

  SUBCASE("nonlinear relations are left alone") {
    IntPoly f = t2 * Int(2) - t1 * t3;  // degree 2: outside the modification
    auto out = detail::substitute_in_sets({f}, {}, true);
    CHECK(out.A == std::vector<IntPoly>{f});
    CHECK(out.subs.empty());
  }

  SUBCASE("non-unit-only linear relation follows the policy") {
    IntPoly f = t2 * Int(2) - t1 * Int(3);  // no unit coefficient anywhere
    auto strict = detail::substitute_in_sets({f}, {}, false);
    CHECK(strict.A.size() == 1);
    CHECK(strict.subs.empty());
    CHECK(strict.primes.empty());

    auto loose = detail::substitute_in_sets({f}, {}, true);
    CHECK(loose.A.empty());
    REQUIRE(loose.subs.size() == 1);
    CHECK(loose.subs[0].var == 1);  // the first variable with a constant coefficient
    CHECK(loose.subs[0].den == 3);
    CHECK(loose.primes == std::set<Int>{2, 3});  // the division and the 2t2 witness
  }

  SUBCASE("count invariance of the non-unit substitution at odd q") {
    // {2t2 = 3t1} over (F_q^x)^2 has q-1 points for p coprime to 6; the
    // substituted cell must agree
    Cell original;
    original.pattern = "NN";
    original.A = {t2 * Int(2) - t1 * Int(3)};
    original.free_vars = {1, 2};
    original.m = 2;
    auto loose = detail::substitute_in_sets(original.A, {}, true);
    Cell reduced;
    reduced.pattern = "NN";
    reduced.A = loose.A;
    reduced.B = loose.B;
    reduced.substitutions = loose.subs;
    reduced.free_vars = {2};
    reduced.m = 2;
    for (int q : {5, 7, 11}) {
      Field f = field_for_q(q);
      CHECK(count_cell_solutions_at_q(original, f) == Int(q - 1));
      CHECK(count_cell_solutions_at_q(reduced, f) == Int(q - 1));
    }
  }

  SUBCASE("contradictory relations kill the branch") {
    auto out = detail::substitute_in_sets({t1 - IntPoly::constant(1), t1 - IntPoly::constant(3)},
                                          {}, false);
    CHECK(out.dead);
    CHECK(out.primes == std::set<Int>{2, 3});  // the contradiction needs p != 2; the t1 = 3 pin needs p != 3
  }
}

TEST_CASE("node budget aborts with diagnostics") {
  auto d = build_root_system('B', 3);
  auto t = build_bracket_table(d);
  ParamOptions o;
  o.node_budget = 3;
  CHECK_THROWS_AS(parametrize(t, o), BudgetExceeded);
}

TEST_CASE("every cell bookkeeping invariant holds") {
  for (auto [tp, r] : std::vector<std::pair<char, int>>{{'B', 3}, {'F', 4}}) {
    auto d = build_root_system(tp, r);
    auto t = build_bracket_table(d);
    auto p = parametrize(t);
    for (auto& c : p.cells) {
      CHECK(static_cast<int>(c.free_vars.size() + c.substitutions.size() + c.normalized.size()) ==
            c.m);
      CHECK(std::is_sorted(c.A.begin(), c.A.end(), IntPoly::less));
      CHECK(std::is_sorted(c.B.begin(), c.B.end(), IntPoly::less));
      for (auto& a : c.A)
        for (auto& b : c.B) CHECK(a != b);
    }
  }
}
