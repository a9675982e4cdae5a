#pragma once

#include <cstdint>
#include <vector>

#include "nilorbit/sympoly.hpp"

namespace nilorbit {

// Arithmetic tables for the finite field F_q, q = p^e. Elements are encoded
// as integers 0..q-1 whose base-p digits are the coefficients of a residue
// polynomial modulo a fixed irreducible polynomial (recorded for output
// metadata). Element 1 is the multiplicative identity, digit i corresponds
// to x^i. Absence of zero divisors is checked at construction, so a wrong
// irreducible cannot slip through. Intended for small q (tables are q^2).
class Field {
 public:
  static Field make(int p, int e);

  int p() const { return p_; }
  int e() const { return e_; }
  int q() const { return q_; }
  const std::vector<int>& irreducible() const { return irr_; }  // ascending, monic

  int add(int a, int b) const { return add_[a * q_ + b]; }
  int sub(int a, int b) const { return add_[a * q_ + neg_[b]]; }
  int mul(int a, int b) const { return mul_[a * q_ + b]; }
  int neg(int a) const { return neg_[a]; }
  int inv(int a) const { return inv_[a]; }
  int pow(int a, int n) const;

  int from_int(const Int& c) const;  // reduction of an integer constant mod p

 private:
  int p_ = 0, e_ = 0, q_ = 0;
  std::vector<int> irr_;
  std::vector<int> add_, mul_;  // q*q flat
  std::vector<int> neg_, inv_;
};

// Evaluates p at the given assignment (variable id -> field element);
// variables absent from the assignment are an error.
int eval_poly(const Field& f, const IntPoly& poly, const std::vector<int>& point_by_var);

}  // namespace nilorbit
