#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nilorbit/gf.hpp"
#include "nilorbit/parametrizer.hpp"

namespace nilorbit {

// Polynomial in v = q-1 with exact integer coefficients, ascending order.
class ClassPolynomial {
 public:
  ClassPolynomial() = default;
  explicit ClassPolynomial(std::vector<Int> coeffs);
  static ClassPolynomial monomial(int degree, Int coeff = 1);

  const std::vector<Int>& coeffs() const { return c_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  Int coeff(int k) const { return k < static_cast<int>(c_.size()) ? c_[k] : Int(0); }

  Int eval_at_v(const Int& v) const;
  Int eval_at_q(const Int& q) const { return eval_at_v(q - 1); }

  ClassPolynomial operator+(const ClassPolynomial& o) const;
  ClassPolynomial operator-(const ClassPolynomial& o) const;
  ClassPolynomial operator*(const ClassPolynomial& o) const;
  bool operator==(const ClassPolynomial& o) const { return c_ == o.c_; }
  bool operator!=(const ClassPolynomial& o) const { return c_ != o.c_; }

  std::string str() const;  // descending display, e.g. "2v^4+18v^3+35v^2+14v+1"
  std::string str_in_q() const;  // the same polynomial expanded in q

 private:
  void trim();
  std::vector<Int> c_;
};

// Thrown when a computed result fails its verification (interpolation checks,
// table or oracle comparisons).
struct VerificationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Exact number of assignments of the cell's free variables over nonzero field
// elements with all of A vanishing and all of B nonvanishing. No torus factor.
Int count_cell_solutions_at_q(const Cell& cell, const Field& f,
                              long long enum_budget = 100'000'000);

// Full |X_{c,A,B}(q)|: solutions times (q-1)^{|normalized|}.
Int count_cell_at_q(const Cell& cell, const Field& f, long long enum_budget = 100'000'000);

// Exact symbolic count when the cell's constraints fall inside the solvable
// pattern library (variable eliminations with unit coefficients, case splits,
// inclusion-exclusion over B). Returns nullopt ("unresolved") otherwise;
// never guesses.
std::optional<ClassPolynomial> count_cell_symbolic(const Cell& cell);

// Newton interpolation of the cell count through exact per-q values at
// sample_qs (first degree_bound+1 nodes), then exact re-verification at every
// remaining sample. Throws VerificationError on any mismatch.
ClassPolynomial interpolate_and_verify(const Cell& cell, int degree_bound,
                                       const std::vector<int>& sample_qs,
                                       long long enum_budget = 100'000'000);

enum class CountStrategy { SymbolicFirst, PerQOnly, Interpolate };

struct CellReport {
  int cell_index = 0;
  std::string strategy;  // "symbolic" | "interpolated" | "per-q"
  std::optional<ClassPolynomial> polynomial;
  std::map<Int, Int> per_q;
  std::vector<Int> verified_at;
};

struct CountReport {
  CountStrategy strategy = CountStrategy::SymbolicFirst;
  std::vector<CellReport> cells;
  std::optional<ClassPolynomial> total;
  std::map<Int, Int> totals_per_q;
  std::vector<Int> verified_at;

  nlohmann::ordered_json to_json() const;
};

// Builds the field for a prime power (throws on a non-prime-power q or one
// without a recorded irreducible).
Field field_for_q(int q);

// Ascending prime powers q with characteristic outside `avoid`, usable with
// field_for_q.
std::vector<int> usable_qs(const std::set<Int>& avoid, int count, int min_q = 2);

// Sums the per-cell counts over the whole parametrization.
//  - SymbolicFirst: symbolic per cell, guarded interpolation for unresolved
//    cells, then the total is re-verified against brute per-q counts at the
//    smallest usable qs.
//  - PerQOnly: exact integer totals at the given qs.
//  - Interpolate: guarded interpolation for every cell.
// qs outside the valid primes (bad for the type or excluded by the run) are
// rejected with std::invalid_argument. Per-cell jobs are independent; the
// report assembles by deterministic reduction in cell order.
CountReport assemble_k(const Parametrization& par, const RootDatum& datum,
                       CountStrategy strategy, const std::vector<int>& qs = {},
                       long long enum_budget = 100'000'000);

}  // namespace nilorbit
