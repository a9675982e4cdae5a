#include "nilorbit/oracle.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <string>

namespace nilorbit {

std::vector<int> subquotient_positions(const RootDatum& datum, const std::vector<int>& outer,
                                       const std::vector<int>& inner) {
  auto check_ideal = [&](const std::vector<int>& s, const char* name) {
    std::set<int> in(s.begin(), s.end());
    for (int i : s)
      for (int j = 0; j < datum.num_positive; ++j) {
        int k = datum.sum_index(i, j);
        if (k >= 0 && !in.count(k))
          throw std::invalid_argument(std::string(name) + " is not an ideal: beta_" +
                                      std::to_string(i + 1) + " + beta_" + std::to_string(j + 1) +
                                      " = beta_" + std::to_string(k + 1) + " escapes");
      }
  };
  check_ideal(outer, "outer");
  check_ideal(inner, "inner");
  std::set<int> in(inner.begin(), inner.end());
  for (int i : inner)
    if (std::find(outer.begin(), outer.end(), i) == outer.end())
      throw std::invalid_argument("inner is not contained in outer: beta_" + std::to_string(i + 1));
  std::vector<int> pos;
  for (int i : outer)
    if (!in.count(i)) pos.push_back(i);
  std::sort(pos.begin(), pos.end());
  return pos;
}

std::vector<FieldMatrix> group_action_matrices(const BracketTable& table, const Field& f,
                                               const std::vector<int>& positions,
                                               const std::vector<int>& basis_in) {
  const int dim = static_cast<int>(positions.size());
  std::vector<int> basis = basis_in;
  if (basis.empty()) {
    int x = 1;
    for (int i = 0; i < f.e(); ++i) {
      basis.push_back(x);
      x *= f.p();  // code of the monomial x^i
    }
  }
  if (static_cast<int>(basis.size()) != f.e())
    throw std::invalid_argument("additive basis must have e elements");

  std::vector<FieldMatrix> gens;
  for (int root = 0; root < table.size(); ++root) {
    auto dp = divided_power_matrices(table, root);
    for (int s : basis) {
      FieldMatrix m(dim, std::vector<int>(dim, 0));
      for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) {
          int acc = 0, spow = 1;
          for (std::size_t k = 0; k < dp.size(); ++k) {
            long long entry = dp[k][positions[i]][positions[j]];
            if (entry != 0) acc = f.add(acc, f.mul(spow, f.from_int(Int(entry))));
            spow = f.mul(spow, s);
          }
          m[i][j] = acc;
        }
      // unipotence in the enumeration basis: 1s on the diagonal, zero above
      for (int i = 0; i < dim; ++i) {
        if (m[i][i] != 1) throw std::logic_error("group generator is not unipotent");
        for (int j = i + 1; j < dim; ++j)
          if (m[i][j] != 0) throw std::logic_error("group generator is not triangular");
      }
      gens.push_back(std::move(m));
    }
  }
  return gens;
}

Int adjoint_orbit_count(const BracketTable& table, const Field& f,
                        const std::vector<int>& positions, long long budget,
                        const std::vector<int>& basis) {
  const int dim = static_cast<int>(positions.size());
  const int q = f.q();
  long long space = 1;
  for (int i = 0; i < dim; ++i) {
    if (space > budget / q + 1) space = budget + 1;
    else space *= q;
    if (space > budget)
      throw BudgetExceeded("orbit sweep needs q^dim = " + std::to_string(q) + "^" +
                           std::to_string(dim) + " vectors, over the budget of " +
                           std::to_string(budget));
  }
  auto all_gens = group_action_matrices(table, f, positions, basis);
  std::vector<FieldMatrix> gens;  // identity generators contribute nothing
  for (auto& g : all_gens) {
    bool is_identity = true;
    for (int i = 0; i < dim && is_identity; ++i)
      for (int j = 0; j < dim; ++j)
        if (g[i][j] != (i == j ? 1 : 0)) {
          is_identity = false;
          break;
        }
    if (!is_identity) gens.push_back(std::move(g));
  }

  std::vector<bool> visited(space, false);
  std::vector<int> vec(dim), img(dim);
  std::vector<long long> worklist;
  auto decode = [&](long long code, std::vector<int>& v) {
    for (int i = 0; i < dim; ++i) {
      v[i] = static_cast<int>(code % q);
      code /= q;
    }
  };
  auto encode = [&](const std::vector<int>& v) {
    long long code = 0;
    for (int i = dim - 1; i >= 0; --i) code = code * q + v[i];
    return code;
  };

  Int orbits = 0;
  for (long long start = 0; start < space; ++start) {
    if (visited[start]) continue;
    ++orbits;
    visited[start] = true;
    worklist.clear();
    worklist.push_back(start);
    while (!worklist.empty()) {
      long long code = worklist.back();
      worklist.pop_back();
      decode(code, vec);
      for (const auto& g : gens) {
        for (int i = 0; i < dim; ++i) {
          int acc = 0;
          for (int j = 0; j < dim; ++j) {
            if (g[i][j] == 0 || vec[j] == 0) continue;
            acc = f.add(acc, f.mul(g[i][j], vec[j]));
          }
          img[i] = acc;
        }
        long long c2 = encode(img);
        if (!visited[c2]) {
          visited[c2] = true;
          worklist.push_back(c2);
        }
      }
    }
  }
  return orbits;
}

int centralizer_dim(const BracketTable& table, const Field& f, const std::vector<int>& x,
                    int prefix) {
  const RootDatum& d = table.datum();
  const int N = d.num_positive;
  if (static_cast<int>(x.size()) != N) throw std::invalid_argument("x must have N coordinates");
  if (prefix < 0 || prefix > N) throw std::invalid_argument("prefix out of range");
  // row j (j < prefix), column k: coefficient of e_j in [e_k, x]
  std::vector<std::vector<int>> m(prefix, std::vector<int>(N, 0));
  for (int k = 0; k < N; ++k)
    for (int l = 0; l < N; ++l) {
      int j = d.sum_index(k, l);
      if (j < 0 || j >= prefix || x[l] == 0) continue;
      int c = f.from_int(Int(table.constant(k, l)));
      m[j][k] = f.add(m[j][k], f.mul(c, x[l]));
    }
  // rank over F_q
  int rank = 0;
  for (int col = 0; col < N && rank < prefix; ++col) {
    int piv = -1;
    for (int r = rank; r < prefix; ++r)
      if (m[r][col] != 0) { piv = r; break; }
    if (piv < 0) continue;
    std::swap(m[rank], m[piv]);
    int inv = f.inv(m[rank][col]);
    for (int r = rank + 1; r < prefix; ++r) {
      if (m[r][col] == 0) continue;
      int factor = f.mul(m[r][col], inv);
      for (int c = col; c < N; ++c)
        m[r][c] = f.sub(m[r][c], f.mul(factor, m[rank][c]));
    }
    ++rank;
  }
  return N - rank;
}

}  // namespace nilorbit
