#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <json.hpp>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace nilorbit {

using Int = boost::multiprecision::cpp_int;

// Thrown by any operation that would exceed its configured resource budget;
// signals infeasible scale, not invalid input.
struct BudgetExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Monomial in the indeterminates t1, t2, ...: sparse exponent list sorted by
// variable id. The monomial order used everywhere is degree-then-lexicographic
// with t1 > t2 > ...
class Monomial {
 public:
  Monomial() = default;
  static Monomial var(int v, int exp = 1);

  bool is_one() const { return vx_.empty(); }
  int degree() const;
  int degree_in(int v) const;
  const std::vector<std::pair<int, int>>& factors() const { return vx_; }

  Monomial operator*(const Monomial& o) const;
  bool divides(const Monomial& o) const;
  Monomial operator/(const Monomial& o) const;  // pre: o | *this

  // -1/0/+1; a "smaller" monomial sorts before in the deglex order.
  static int cmp(const Monomial& a, const Monomial& b);
  bool operator==(const Monomial& o) const { return vx_ == o.vx_; }
  bool operator!=(const Monomial& o) const { return !(*this == o); }

 private:
  std::vector<std::pair<int, int>> vx_;  // (var, exp), var >= 1, exp >= 1
};

// Sparse multivariate polynomial with exact integer coefficients.
// Terms are kept sorted with the leading (largest) monomial first and never
// store a zero coefficient. Values are immutable: all operations return new
// polynomials.
class IntPoly {
 public:
  IntPoly() = default;  // the zero polynomial
  static IntPoly constant(Int c);
  static IntPoly var(int v);
  static IntPoly term(Int c, const Monomial& m);

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].first.is_one()); }
  bool is_monomial() const { return terms_.size() == 1; }
  int num_terms() const { return static_cast<int>(terms_.size()); }
  int degree() const;      // total degree, -1 for the zero polynomial
  int degree_in(int v) const;
  std::vector<int> vars() const;  // sorted distinct variable ids

  const std::vector<std::pair<Monomial, Int>>& terms() const { return terms_; }
  const Monomial& leading_monomial() const;  // pre: nonzero
  const Int& leading_coeff() const;          // pre: nonzero
  Int constant_term() const;

  IntPoly operator+(const IntPoly& o) const;
  IntPoly operator-(const IntPoly& o) const;
  IntPoly operator-() const;
  IntPoly operator*(const IntPoly& o) const;
  IntPoly operator*(const Int& c) const;
  bool operator==(const IntPoly& o) const { return terms_ == o.terms_; }
  bool operator!=(const IntPoly& o) const { return !(*this == o); }

  // Coefficient of t_v^k, a polynomial not involving t_v.
  IntPoly coeff_of(int v, int k) const;
  // p with t_v replaced by a (a may involve any variables other than t_v).
  IntPoly substitute(int v, const IntPoly& a) const;
  // p(t_v := num/den) * den^{deg_v p}; exact, never leaves Z[t].
  IntPoly substitute_cleared(int v, const IntPoly& num, const IntPoly& den) const;
  Int evaluate(const std::map<int, Int>& point) const;

  Int content() const;            // >= 0, gcd of coefficients (0 for zero)
  IntPoly primitive_part() const; // content divided out, sign of lc kept
  IntPoly sign_normalized() const;  // leading coefficient made positive

  std::string str() const;  // canonical form, e.g. "2t1^2t2-t3+5"
  static IntPoly parse(const std::string& s);

  // array-of-terms form [[coeff, [exponents]], ...] with dense exponent
  // vectors and string coefficients; bit-exact round trip
  nlohmann::json to_json_terms() const;
  static IntPoly from_json_terms(const nlohmann::json& j);

  // The total order from the row-reduction bookkeeping: number of terms,
  // then total degree, then leading coefficient, then the full term list
  // compared pairwise by (monomial, coefficient). Both inputs must be nonzero.
  static int compare(const IntPoly& a, const IntPoly& b);
  static bool less(const IntPoly& a, const IntPoly& b) { return compare(a, b) < 0; }

  // gcd over Z[t...], sign-normalized so the leading coefficient is positive.
  static IntPoly gcd(const IntPoly& a, const IntPoly& b);

 private:
  void insert_term(const Monomial& m, Int c);
  std::vector<std::pair<Monomial, Int>> terms_;
};

struct PolyQuotient {
  IntPoly numerator;  // the quotient is numerator/denominator, in lowest terms
  Int denominator;    // > 0
};
// Quotient p/d over Q[t...] if d divides p there, otherwise nullopt. d != 0.
std::optional<PolyQuotient> poly_divide(const IntPoly& p, const IntPoly& d);
bool poly_divides(const IntPoly& d, const IntPoly& p);
// pre: d | p with an integral quotient (asserted).
IntPoly poly_divide_exact(const IntPoly& p, const IntPoly& d);

// Set of prime divisors of |n| (empty for n in {-1,0,1}).
std::set<Int> prime_factors(Int n);
// Primes dividing the leading coefficient of p. pre: p nonzero.
std::set<Int> leading_coefficient_primes(const IntPoly& p);

}  // namespace nilorbit
