#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "nilorbit/zform.hpp"

namespace nilorbit {

struct ParamOptions {
  bool normalize = true;       // pin torus-normalizable coefficients to 1
  bool substitute = true;      // eliminate unit-coefficient linear relations in A
  bool nonunit_substitution = false;  // also divide by non-unit coefficients, recording primes
  long long node_budget = 50'000'000; // row-processing steps before aborting
  std::vector<int> positions;  // acted space (0-based root indices); empty = all of u
};

// One recorded variable elimination t_var := num/den.
struct Substitution {
  int var = 0;
  IntPoly num;
  Int den = 1;
};

// One output triple (c, A, B) together with its normalization record. The
// cell's F_q-points are the assignments of the free variables over nonzero
// field elements satisfying A = 0 and B != 0, counted with a factor
// (q-1)^{|normalized|} for the torus-pinned coordinates.
struct Cell {
  std::string pattern;  // over the positions, characters N (R_nn), 0 (R_0), I
  std::vector<IntPoly> A, B;         // sorted canonically, no duplicates
  std::vector<int> normalized;       // pattern positions pinned to 1 (0-based)
  std::vector<Substitution> substitutions;
  std::vector<int> free_vars;        // live variable ids, ascending
  int m = 0;                         // number of N entries

  nlohmann::ordered_json to_json() const;
};

struct Parametrization {
  char type_label = '?';
  char input_label = '?';
  int rank = 0;
  std::vector<int> positions;  // the acted space, 0-based root indices
  ParamOptions options;
  std::vector<Cell> cells;     // canonically sorted
  std::set<Int> excluded_primes;
  long long nodes = 0;

  nlohmann::ordered_json to_json() const;
};

// The depth-first backtrack over the pattern prefixes, producing the cells
// that partition the minimal representatives of the adjoint orbits on the
// positions span (all of u by default), valid away from excluded_primes and
// the bad primes of the type. Single-threaded and deterministic: identical
// inputs serialize byte-identically.
Parametrization parametrize(const BracketTable& table, const ParamOptions& options = {});

// Subquotient form: U acting on outer/inner for ideals outer >= inner.
Parametrization parametrize_subquotient(const BracketTable& table,
                                        const std::vector<int>& outer,
                                        const std::vector<int>& inner,
                                        ParamOptions options = {});

namespace detail {

// True iff the rows span a direct summand of Z^n (all Smith elementary
// divisors equal 1). This is the guard deciding which torus normalizations
// keep the (q-1)^{|J|} product count exact for every q.
bool unimodular_rows(std::vector<std::vector<long long>> rows);

// Test hook for the substitution modification on bare constraint sets.
struct SubstOutcome {
  std::vector<IntPoly> A, B;
  std::vector<Substitution> subs;
  std::set<Int> primes;
  bool dead = false;  // the constraints became unsatisfiable over k^x
};
SubstOutcome substitute_in_sets(std::vector<IntPoly> A, std::vector<IntPoly> B,
                                bool allow_nonunit);

}  // namespace detail

}  // namespace nilorbit
