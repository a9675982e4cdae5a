#pragma once

#include <string>
#include <vector>

#include "nilorbit/rootdata.hpp"
#include "nilorbit/sympoly.hpp"

namespace nilorbit {

// Integer structure constants of the Chevalley Z-form of the nilradical:
// [e_i, e_j] = n(i,j) e_k whenever beta_i + beta_j = beta_k is a root, and 0
// otherwise. Signs are fixed by the extraspecial-pair convention on the
// canonical enumeration: the extraspecial constant of every root of height
// >= 2 is positive. Jacobi and the root-string magnitudes are verified
// exhaustively at construction. Immutable afterwards.
class BracketTable {
 public:
  explicit BracketTable(const RootDatum& datum);  // keeps its own copy

  const RootDatum& datum() const { return datum_; }
  int size() const { return datum_.num_positive; }

  // N_{ij}; zero iff beta_i + beta_j is not a positive root
  int constant(int i, int j) const { return n_[i][j]; }

  nlohmann::ordered_json to_json() const;

 private:
  void build();
  void verify() const;
  RootDatum datum_;
  std::vector<std::vector<int>> n_;
};

BracketTable build_bracket_table(const RootDatum& datum);

// Symbolic adjoint matrix of x_c(t) = sum t_j e_{c,j} over the R_nn positions
// of the pattern (characters N / 0 / I, length <= N):
//   [sum_k y_k e_k, x_c(t)] = sum_{j,k} P[j][k] y_k e_j,
// every entry linear in the t variables.
std::vector<std::vector<IntPoly>> ad_matrix_symbolic(const BracketTable& table,
                                                     const std::string& pattern);

// Integer matrices M_m of (ad e_root)^m / m! on the Z-form; M_0 = I and the
// list ends before the first zero power. Integrality is asserted.
std::vector<std::vector<std::vector<long long>>> divided_power_matrices(
    const BracketTable& table, int root_index);

}  // namespace nilorbit
