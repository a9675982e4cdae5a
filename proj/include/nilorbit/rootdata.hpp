#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"

namespace nilorbit {

// A root system of fixed simple type with a fixed enumeration of the positive
// roots: sorted by height, then lexicographically by simple-root coefficient
// vector. The enumeration extends the dominance order, which downstream code
// relies on. Simple roots are labelled in Bourbaki numbering. Immutable after
// construction.
struct RootDatum {
  char type_label;   // canonical type: one of A B C D E F G
  char input_label;  // type as requested (C2 is canonicalized to B2)
  int rank = 0;
  int num_positive = 0;                  // N
  std::vector<std::vector<int>> roots;   // coefficient vectors, enumeration order
  std::vector<int> heights;              // nondecreasing along the enumeration
  std::vector<std::vector<int>> cartan;  // cartan[i][j] = <alpha_i, alpha_j^vee>
  std::set<int> bad_primes;

  // index of beta_i + beta_j (0-based), or -1 when the sum is not a root
  int sum_index(int i, int j) const { return sum_[i][j]; }
  int index_of(const std::vector<int>& coeffs) const;  // -1 if not a positive root
  bool is_root(const std::vector<int>& coeffs) const;  // membership in Phi = Phi+ u -Phi+

  // squared length of beta_i, in the normalization of the internal realization
  long long norm2(int i) const { return norm2_[i]; }

  nlohmann::ordered_json to_json() const;

  std::vector<std::vector<int>> sum_;  // filled by build_root_system
  std::vector<long long> norm2_;
  std::map<std::vector<int>, int> index_;
};

// Constructs the root system for the given simple type, or throws
// std::invalid_argument naming the violated constraint.
RootDatum build_root_system(char type_label, int rank);

// { k : heights[k] >= l+1 }, 0-based, in enumeration order. These index the
// l-th term of the descending central series.
std::vector<int> descending_central_indices(const RootDatum& datum, int l);

// True iff S (0-based indices) is closed under adding any positive root.
bool validate_ideal(const RootDatum& datum, const std::vector<int>& indices);

}  // namespace nilorbit
