#pragma once

#include <vector>

#include "nilorbit/gf.hpp"
#include "nilorbit/zform.hpp"

namespace nilorbit {

using FieldMatrix = std::vector<std::vector<int>>;  // entries are field codes

// Positions (0-based root indices, ascending) spanning the subquotient
// outer/inner; both inputs must be ideals with outer containing inner.
// Throws std::invalid_argument naming the violating root pair otherwise.
std::vector<int> subquotient_positions(const RootDatum& datum,
                                       const std::vector<int>& outer,
                                       const std::vector<int>& inner);

// Generators of the image of U(q) acting on the span of the given positions:
// one invertible unitriangular matrix per (positive root, additive basis
// element of F_q). basis may override the default {1, x, x^2, ...}; it must
// be an F_p-basis of F_q.
std::vector<FieldMatrix> group_action_matrices(const BracketTable& table, const Field& f,
                                               const std::vector<int>& positions,
                                               const std::vector<int>& basis = {});

// Exact number of orbits of the generated group on the full vector space of
// the positions span, by repeated breadth-first orbit closure over all q^dim
// vectors. Throws BudgetExceeded when q^dim exceeds the budget.
Int adjoint_orbit_count(const BracketTable& table, const Field& f,
                        const std::vector<int>& positions, long long budget = 10'000'000,
                        const std::vector<int>& basis = {});

// dim of { y : [y, x] = 0 mod m_i } over F_q, i.e. N minus the rank of the
// first `prefix` coordinate rows of ad_x. x has N field-code coordinates.
int centralizer_dim(const BracketTable& table, const Field& f, const std::vector<int>& x,
                    int prefix);

}  // namespace nilorbit
