#include "nilorbit/zform.hpp"

#include <cassert>
#include <map>
#include <stdexcept>

namespace nilorbit {

namespace {

// p_{rs} = max{k >= 0 : beta_s - k beta_r in Phi}; the string magnitude rule
// gives |N_{rs}| = p_{rs} + 1 for any pair with beta_r + beta_s a root.
int string_down(const RootDatum& d, int r, int s) {
  std::vector<int> v = d.roots[s];
  int p = 0;
  for (;;) {
    bool zero = true;
    for (int x = 0; x < d.rank; ++x) {
      v[x] -= d.roots[r][x];
      if (v[x] != 0) zero = false;
    }
    if (zero || !d.is_root(v)) break;
    ++p;
  }
  return p;
}

}  // namespace

BracketTable::BracketTable(const RootDatum& datum) : datum_(datum) {
  build();
  verify();
}

BracketTable build_bracket_table(const RootDatum& datum) { return BracketTable(datum); }

void BracketTable::build() {
  const RootDatum& d = datum_;
  const int N = d.num_positive;
  n_.assign(N, std::vector<int>(N, 0));
  std::vector<std::vector<char>> known(N, std::vector<char>(N, 0));

  auto set_pair = [&](int r, int s, int value) {
    n_[r][s] = value;
    n_[s][r] = -value;
    known[r][s] = 1;
  };
  auto diff_index = [&](int a, int b) -> int {
    std::vector<int> v(d.rank);
    for (int x = 0; x < d.rank; ++x) v[x] = d.roots[a][x] - d.roots[b][x];
    return d.index_of(v);  // -1 when not a positive root
  };

  // Constants are found root by root in height order. For the target root the
  // extraspecial pair is pinned to +(p+1); every other special pair yields one
  // Jacobi relation that is linear in at most two same-level unknowns, so the
  // remainder is a small exact linear system.
  for (int g = 0; g < N; ++g) {
    if (d.heights[g] < 2) continue;
    std::vector<std::pair<int, int>> pairs;
    for (int r = 0; r < N; ++r) {
      int s = diff_index(g, r);
      if (s > r) pairs.push_back({r, s});
    }
    if (pairs.empty()) throw std::logic_error("non-simple root with no special pair");
    const auto [a, b] = pairs[0];  // sorted by r: the first is extraspecial
    set_pair(a, b, string_down(d, a, b) + 1);

    std::map<std::pair<int, int>, int> unknown_id;
    for (std::size_t k = 1; k < pairs.size(); ++k)
      unknown_id[pairs[k]] = static_cast<int>(k - 1);
    const int m = static_cast<int>(unknown_id.size());
    if (m == 0) continue;

    // value of N_{i,j} as (constant, coefficient-of-unknown, unknown-id)
    struct Term { long long c = 0; long long u = 0; int id = -1; };
    auto lookup = [&](int i, int j) -> Term {
      if (d.sum_index(i, j) < 0) return {};
      int lo = std::min(i, j), hi = std::max(i, j);
      long long sign = i < j ? 1 : -1;
      if (known[lo][hi]) return {sign * n_[lo][hi], 0, -1};
      auto it = unknown_id.find({lo, hi});
      if (it == unknown_id.end()) throw std::logic_error("bracket table: missing pair");
      return {0, sign, it->second};
    };

    // One relation per Jacobi triple of distinct positive roots summing to
    // the target: the inner brackets have lower height (known), the outer
    // ones are the same-level pairs being solved for.
    using Rat = boost::multiprecision::cpp_rational;
    std::vector<std::vector<Rat>> rows;
    for (int i = 0; i < N; ++i) {
      for (int j = i + 1; j < N; ++j) {
        std::vector<int> rest(d.rank);
        for (int x = 0; x < d.rank; ++x)
          rest[x] = d.roots[g][x] - d.roots[i][x] - d.roots[j][x];
        int k = d.index_of(rest);
        if (k <= j) continue;  // distinct triples once, i < j < k
        std::vector<Rat> row(m + 1, 0);
        bool touches_unknown = false;
        auto add_product = [&](int x, int y, int z) {
          // contributes N_{x,y} * N_{x+y,z}
          int xy = d.sum_index(x, y);
          if (xy < 0) return;
          Term lo = lookup(x, y);   // lower height, constant
          Term hi = lookup(xy, z);  // same level
          if (hi.id < 0) {
            row[m] -= Rat(lo.c) * hi.c;
          } else {
            row[hi.id] += Rat(lo.c) * hi.u;
            touches_unknown = true;
          }
        };
        add_product(i, j, k);
        add_product(j, k, i);
        add_product(k, i, j);
        if (touches_unknown) rows.push_back(std::move(row));
      }
    }

    // Row-echelon over Q; Jacobi relations are consistent and must pin every
    // unknown uniquely given the extraspecial normalization.
    const int R = static_cast<int>(rows.size());
    std::vector<int> pivot_row(m, -1);
    int rank = 0;
    for (int col = 0; col < m && rank < R; ++col) {
      int piv = -1;
      for (int rI = rank; rI < R; ++rI)
        if (rows[rI][col] != 0) { piv = rI; break; }
      if (piv < 0) continue;
      std::swap(rows[rank], rows[piv]);
      for (int rI = 0; rI < R; ++rI) {
        if (rI == rank || rows[rI][col] == 0) continue;
        Rat f = rows[rI][col] / rows[rank][col];
        for (int cI = col; cI <= m; ++cI) rows[rI][cI] -= f * rows[rank][cI];
      }
      pivot_row[col] = rank;
      ++rank;
    }
    for (int col = 0; col < m; ++col)
      if (pivot_row[col] < 0)
        throw std::logic_error("bracket table: Jacobi system does not determine all constants");
    for (int rI = rank; rI < R; ++rI)
      if (rows[rI][m] != 0)
        throw std::logic_error("bracket table: inconsistent Jacobi system");
    for (auto& [pr, id] : unknown_id) {
      int rI = pivot_row[id];
      Rat v = rows[rI][m] / rows[rI][id];
      if (boost::multiprecision::denominator(v) != 1)
        throw std::logic_error("bracket table: non-integral structure constant");
      set_pair(pr.first, pr.second,
               static_cast<int>(boost::multiprecision::numerator(v)));
    }
  }
}

void BracketTable::verify() const {
  const RootDatum& d = datum_;
  const int N = d.num_positive;
  auto get = [&](int i, int j) { return n_[i][j]; };
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) {
      int k = d.sum_index(i, j);
      if (k < 0) {
        if (n_[i][j] != 0) throw std::logic_error("nonzero constant on a non-root sum");
        continue;
      }
      if (n_[i][j] != -n_[j][i]) throw std::logic_error("antisymmetry violated");
      int expect = string_down(d, i, j) + 1;
      if (std::abs(n_[i][j]) != expect)
        throw std::logic_error("string magnitude violated at (" + std::to_string(i + 1) +
                               "," + std::to_string(j + 1) + ")");
    }
  // Jacobi over all triples: the coefficient at beta_i+beta_j+beta_k must cancel
  for (int i = 0; i < N; ++i)
    for (int j = i + 1; j < N; ++j)
      for (int k = j + 1; k < N; ++k) {
        long long total = 0;
        int ij = d.sum_index(i, j), jk = d.sum_index(j, k), ki = d.sum_index(k, i);
        if (ij >= 0 && d.sum_index(ij, k) >= 0) total += static_cast<long long>(get(i, j)) * get(ij, k);
        if (jk >= 0 && d.sum_index(jk, i) >= 0) total += static_cast<long long>(get(j, k)) * get(jk, i);
        if (ki >= 0 && d.sum_index(ki, j) >= 0) total += static_cast<long long>(get(k, i)) * get(ki, j);
        if (total != 0)
          throw std::logic_error("Jacobi identity violated at triple (" + std::to_string(i + 1) +
                                 "," + std::to_string(j + 1) + "," + std::to_string(k + 1) + ")");
      }
}

nlohmann::ordered_json BracketTable::to_json() const {
  nlohmann::ordered_json j;
  j["type"] = std::string(1, datum_.type_label);
  j["rank"] = datum_.rank;
  nlohmann::ordered_json cs = nlohmann::ordered_json::array();
  for (int i = 0; i < size(); ++i)
    for (int k = i + 1; k < size(); ++k)
      if (datum_.sum_index(i, k) >= 0)
        cs.push_back({i + 1, k + 1, n_[i][k]});
  j["constants"] = cs;
  return j;
}

std::vector<std::vector<IntPoly>> ad_matrix_symbolic(const BracketTable& table,
                                                     const std::string& pattern) {
  const RootDatum& d = table.datum();
  const int N = d.num_positive;
  if (static_cast<int>(pattern.size()) > N)
    throw std::invalid_argument("pattern longer than the number of positive roots");
  std::vector<std::vector<IntPoly>> P(N, std::vector<IntPoly>(N));
  int var = 0;
  for (int l = 0; l < static_cast<int>(pattern.size()); ++l) {
    char ch = pattern[l];
    if (ch != 'N' && ch != '0' && ch != 'I')
      throw std::invalid_argument("pattern characters must be N, 0 or I");
    if (ch != 'N') continue;
    ++var;
    for (int k = 0; k < N; ++k) {
      int row = d.sum_index(k, l);
      if (row < 0) continue;
      P[row][k] = P[row][k] + IntPoly::var(var) * Int(table.constant(k, l));
    }
  }
  return P;
}

std::vector<std::vector<std::vector<long long>>> divided_power_matrices(
    const BracketTable& table, int root_index) {
  const RootDatum& d = table.datum();
  const int N = d.num_positive;
  if (root_index < 0 || root_index >= N) throw std::invalid_argument("bad root index");
  // ad e_root: column j maps to N_{root,j} at row (root+j)
  std::vector<std::vector<Int>> ad(N, std::vector<Int>(N, 0));
  for (int j = 0; j < N; ++j) {
    int row = d.sum_index(root_index, j);
    if (row >= 0) ad[row][j] = table.constant(root_index, j);
  }
  std::vector<std::vector<std::vector<long long>>> out;
  std::vector<std::vector<Int>> power(N, std::vector<Int>(N, 0));
  for (int i = 0; i < N; ++i) power[i][i] = 1;
  Int factorial = 1;
  for (int m = 0;; ++m) {
    if (m > 0) {
      std::vector<std::vector<Int>> next(N, std::vector<Int>(N, 0));
      bool nonzero = false;
      for (int i = 0; i < N; ++i)
        for (int k = 0; k < N; ++k) {
          if (ad[i][k] == 0) continue;
          for (int j = 0; j < N; ++j) {
            if (power[k][j] == 0) continue;
            next[i][j] += ad[i][k] * power[k][j];
          }
        }
      for (int i = 0; i < N && !nonzero; ++i)
        for (int j = 0; j < N; ++j)
          if (next[i][j] != 0) { nonzero = true; break; }
      if (!nonzero) break;
      power = std::move(next);
      factorial *= m;
    }
    std::vector<std::vector<long long>> mat(N, std::vector<long long>(N, 0));
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < N; ++j) {
        if (power[i][j] == 0) continue;
        if (power[i][j] % factorial != 0)
          throw std::logic_error("divided power not integral");
        mat[i][j] = static_cast<long long>(power[i][j] / factorial);
      }
    out.push_back(std::move(mat));
  }
  return out;
}

}  // namespace nilorbit
