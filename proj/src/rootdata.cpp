#include "nilorbit/rootdata.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>
#include <stdexcept>

namespace nilorbit {

namespace {

// Simple roots as integer vectors in a Euclidean space, scaled by 2 so the
// E-type and F4 half-coordinates stay integral. Inner products carry a global
// factor of 4 which cancels in every Cartan ratio.
std::vector<std::vector<long long>> simple_roots_euclid(char type, int rank) {
  auto e = [&](int i, int n) {
    std::vector<long long> v(n, 0);
    v[i] = 2;
    return v;
  };
  std::vector<std::vector<long long>> s;
  switch (type) {
    case 'A': {
      int n = rank + 1;
      for (int i = 0; i < rank; ++i) {
        auto v = e(i, n);
        v[i + 1] -= 2;
        s.push_back(v);
      }
      break;
    }
    case 'B': {
      for (int i = 0; i + 1 < rank; ++i) {
        auto v = e(i, rank);
        v[i + 1] -= 2;
        s.push_back(v);
      }
      s.push_back(e(rank - 1, rank));
      break;
    }
    case 'C': {
      for (int i = 0; i + 1 < rank; ++i) {
        auto v = e(i, rank);
        v[i + 1] -= 2;
        s.push_back(v);
      }
      auto v = e(rank - 1, rank);
      v[rank - 1] *= 2;
      s.push_back(v);
      break;
    }
    case 'D': {
      for (int i = 0; i + 1 < rank; ++i) {
        auto v = e(i, rank);
        v[i + 1] -= 2;
        s.push_back(v);
      }
      auto v = e(rank - 2, rank);
      v[rank - 1] += 2;
      s.push_back(v);
      break;
    }
    case 'E': {
      // Bourbaki E8 realization; E6/E7 use the first 6/7 simple roots.
      std::vector<std::vector<long long>> e8 = {
          {1, -1, -1, -1, -1, -1, -1, 1},  // alpha1 = (e1+e8-e2-...-e7)/2
          {2, 2, 0, 0, 0, 0, 0, 0},        // alpha2 = e1+e2
          {-2, 2, 0, 0, 0, 0, 0, 0},       // alpha3 = e2-e1
          {0, -2, 2, 0, 0, 0, 0, 0},       // alpha4 = e3-e2
          {0, 0, -2, 2, 0, 0, 0, 0},
          {0, 0, 0, -2, 2, 0, 0, 0},
          {0, 0, 0, 0, -2, 2, 0, 0},
          {0, 0, 0, 0, 0, -2, 2, 0},
      };
      s.assign(e8.begin(), e8.begin() + rank);
      break;
    }
    case 'F': {
      s = {{0, 2, -2, 0},   // e2-e3
           {0, 0, 2, -2},   // e3-e4
           {0, 0, 0, 2},    // e4
           {1, -1, -1, -1}};  // (e1-e2-e3-e4)/2
      break;
    }
    case 'G': {
      s = {{2, -2, 0},       // e1-e2 (short)
           {-4, 2, 2}};      // -2e1+e2+e3 (long)
      break;
    }
    default:
      break;
  }
  return s;
}

long long dot(const std::vector<long long>& a, const std::vector<long long>& b) {
  long long r = 0;
  for (std::size_t i = 0; i < a.size(); ++i) r += a[i] * b[i];
  return r;
}

std::set<int> bad_primes_for(char type) {
  switch (type) {
    case 'A': return {};
    case 'B':
    case 'C':
    case 'D': return {2};
    case 'G':
    case 'F': return {2, 3};
    case 'E': return {};  // filled per rank by the caller
    default: return {};
  }
}

void check_type(char type, int rank) {
  auto fail = [&](const std::string& what) {
    throw std::invalid_argument("invalid root system " + std::string(1, type) +
                                std::to_string(rank) + ": " + what);
  };
  switch (type) {
    case 'A': if (rank < 1) fail("type A requires rank >= 1"); break;
    case 'B': if (rank < 2) fail("type B requires rank >= 2"); break;
    case 'C': if (rank < 2) fail("type C requires rank >= 2"); break;
    case 'D': if (rank < 4) fail("type D requires rank >= 4"); break;
    case 'E': if (rank < 6 || rank > 8) fail("type E requires rank in {6,7,8}"); break;
    case 'F': if (rank != 4) fail("type F requires rank 4"); break;
    case 'G': if (rank != 2) fail("type G requires rank 2"); break;
    default: fail("type must be one of A B C D E F G");
  }
}

int classical_count(char type, int rank) {
  switch (type) {
    case 'A': return rank * (rank + 1) / 2;
    case 'B':
    case 'C': return rank * rank;
    case 'D': return rank * rank - rank;
    case 'G': return 6;
    case 'F': return 24;
    case 'E': return rank == 6 ? 36 : rank == 7 ? 63 : 120;
    default: return -1;
  }
}

}  // namespace

RootDatum build_root_system(char type_label, int rank) {
  check_type(type_label, rank);
  RootDatum d;
  d.input_label = type_label;
  if (type_label == 'C' && rank == 2) type_label = 'B';  // same system up to relabeling
  d.type_label = type_label;
  d.rank = rank;
  d.bad_primes = bad_primes_for(type_label);
  if (type_label == 'E') d.bad_primes = rank == 8 ? std::set<int>{2, 3, 5} : std::set<int>{2, 3};

  auto simples = simple_roots_euclid(type_label, rank);
  assert(static_cast<int>(simples.size()) == rank);

  // cartan[i][j] = 2(a_i, a_j)/(a_j, a_j)
  d.cartan.assign(rank, std::vector<int>(rank, 0));
  for (int i = 0; i < rank; ++i)
    for (int j = 0; j < rank; ++j) {
      long long num = 2 * dot(simples[i], simples[j]);
      long long den = dot(simples[j], simples[j]);
      assert(num % den == 0);
      d.cartan[i][j] = static_cast<int>(num / den);
    }

  // Closure by height: gamma + alpha_i is a root iff the alpha_i-string
  // through gamma continues upward, i.e. p - <gamma, alpha_i^vee> > 0 where
  // p counts the steps downward that remain roots.
  std::set<std::vector<int>> known;
  std::vector<std::vector<int>> frontier;
  for (int i = 0; i < rank; ++i) {
    std::vector<int> v(rank, 0);
    v[i] = 1;
    known.insert(v);
    frontier.push_back(v);
  }
  std::vector<std::vector<int>> all(frontier);
  while (!frontier.empty()) {
    std::vector<std::vector<int>> next;
    for (auto& g : frontier) {
      for (int i = 0; i < rank; ++i) {
        long long pairing = 0;
        for (int j = 0; j < rank; ++j) pairing += static_cast<long long>(g[j]) * d.cartan[j][i];
        int p = 0;
        std::vector<int> down = g;
        for (;;) {
          down[i] -= 1;
          bool nonneg = true, zero = true;
          for (int x : down) {
            if (x < 0) nonneg = false;
            if (x != 0) zero = false;
          }
          if (zero || !nonneg || !known.count(down)) break;
          ++p;
        }
        if (p - pairing > 0) {
          std::vector<int> up = g;
          up[i] += 1;
          if (!known.count(up)) {
            known.insert(up);
            next.push_back(up);
            all.push_back(up);
          }
        }
      }
    }
    frontier = std::move(next);
  }

  std::sort(all.begin(), all.end(), [](const std::vector<int>& a, const std::vector<int>& b) {
    int ha = std::accumulate(a.begin(), a.end(), 0);
    int hb = std::accumulate(b.begin(), b.end(), 0);
    if (ha != hb) return ha < hb;
    return a < b;
  });
  d.roots = all;
  d.num_positive = static_cast<int>(all.size());
  if (d.num_positive != classical_count(type_label, rank))
    throw std::logic_error("root closure produced a wrong count for " +
                           std::string(1, type_label) + std::to_string(rank));

  d.heights.resize(d.num_positive);
  d.norm2_.resize(d.num_positive);
  for (int k = 0; k < d.num_positive; ++k) {
    d.heights[k] = std::accumulate(all[k].begin(), all[k].end(), 0);
    d.index_[all[k]] = k;
    std::vector<long long> v(simples[0].size(), 0);
    for (int j = 0; j < rank; ++j)
      for (std::size_t x = 0; x < v.size(); ++x) v[x] += static_cast<long long>(all[k][j]) * simples[j][x];
    d.norm2_[k] = dot(v, v);
  }

  d.sum_.assign(d.num_positive, std::vector<int>(d.num_positive, -1));
  for (int i = 0; i < d.num_positive; ++i)
    for (int j = 0; j < d.num_positive; ++j) {
      std::vector<int> s(rank);
      for (int x = 0; x < rank; ++x) s[x] = all[i][x] + all[j][x];
      auto it = d.index_.find(s);
      if (it != d.index_.end()) d.sum_[i][j] = it->second;
    }
  return d;
}

int RootDatum::index_of(const std::vector<int>& coeffs) const {
  auto it = index_.find(coeffs);
  return it == index_.end() ? -1 : it->second;
}

bool RootDatum::is_root(const std::vector<int>& coeffs) const {
  if (index_.count(coeffs)) return true;
  std::vector<int> neg(coeffs.size());
  for (std::size_t i = 0; i < coeffs.size(); ++i) neg[i] = -coeffs[i];
  return index_.count(neg) > 0;
}

std::vector<int> descending_central_indices(const RootDatum& datum, int l) {
  if (l < 0) throw std::invalid_argument("descending_central_indices: l must be >= 0");
  std::vector<int> out;
  for (int k = 0; k < datum.num_positive; ++k)
    if (datum.heights[k] >= l + 1) out.push_back(k);
  return out;
}

bool validate_ideal(const RootDatum& datum, const std::vector<int>& indices) {
  std::set<int> s(indices.begin(), indices.end());
  for (int i : indices)
    for (int j = 0; j < datum.num_positive; ++j) {
      int k = datum.sum_index(i, j);
      if (k >= 0 && !s.count(k)) return false;
    }
  return true;
}

nlohmann::ordered_json RootDatum::to_json() const {
  nlohmann::ordered_json j;
  j["type"] = std::string(1, type_label);
  if (input_label != type_label) j["input_type"] = std::string(1, input_label);
  j["rank"] = rank;
  j["roots"] = roots;
  std::vector<int> enumeration(num_positive);
  for (int k = 0; k < num_positive; ++k) enumeration[k] = k + 1;
  j["enumeration"] = enumeration;
  j["heights"] = heights;
  j["bad_primes"] = std::vector<int>(bad_primes.begin(), bad_primes.end());
  return j;
}

}  // namespace nilorbit
