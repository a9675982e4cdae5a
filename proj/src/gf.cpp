#include "nilorbit/gf.hpp"

#include <map>
#include <stdexcept>
#include <string>

namespace nilorbit {

namespace {

bool is_prime(int p) {
  if (p < 2) return false;
  for (int d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

// Conway polynomials for the small extensions the oracle and the counters
// use; coefficients ascending, monic.
const std::map<std::pair<int, int>, std::vector<int>> kIrreducibles = {
    {{2, 2}, {1, 1, 1}},       {{2, 3}, {1, 1, 0, 1}},
    {{2, 4}, {1, 1, 0, 0, 1}}, {{2, 5}, {1, 0, 1, 0, 0, 1}},
    {{3, 2}, {2, 2, 1}},       {{3, 3}, {1, 2, 0, 1}},
    {{5, 2}, {2, 4, 1}},       {{5, 3}, {3, 3, 0, 1}},
    {{7, 2}, {3, 6, 1}},       {{11, 2}, {2, 7, 1}},
    {{13, 2}, {2, 12, 1}},
};

}  // namespace

Field Field::make(int p, int e) {
  if (!is_prime(p)) throw std::invalid_argument("field characteristic must be prime, got " + std::to_string(p));
  if (e < 1) throw std::invalid_argument("field extension degree must be >= 1");
  Field f;
  f.p_ = p;
  f.e_ = e;
  long long q = 1;
  for (int i = 0; i < e; ++i) {
    q *= p;
    if (q > 4096) throw std::invalid_argument("field too large for table arithmetic: q > 4096");
  }
  f.q_ = static_cast<int>(q);

  if (e == 1) {
    f.irr_ = {0, 1};  // x - 0 placeholder; arithmetic is plain mod p
  } else {
    auto it = kIrreducibles.find({p, e});
    if (it == kIrreducibles.end())
      throw std::invalid_argument("no irreducible polynomial on record for GF(" +
                                  std::to_string(p) + "^" + std::to_string(e) + ")");
    f.irr_ = it->second;
  }

  auto digits = [&](int a) {
    std::vector<int> d(e);
    for (int i = 0; i < e; ++i) {
      d[i] = a % p;
      a /= p;
    }
    return d;
  };
  auto encode = [&](const std::vector<int>& d) {
    int a = 0;
    for (int i = e - 1; i >= 0; --i) a = a * p + d[i];
    return a;
  };

  f.add_.resize(static_cast<std::size_t>(f.q_) * f.q_);
  f.mul_.resize(static_cast<std::size_t>(f.q_) * f.q_);
  f.neg_.resize(f.q_);
  f.inv_.assign(f.q_, 0);
  for (int a = 0; a < f.q_; ++a) {
    auto da = digits(a);
    std::vector<int> n(e);
    for (int i = 0; i < e; ++i) n[i] = (p - da[i]) % p;
    f.neg_[a] = encode(n);
    for (int b = 0; b < f.q_; ++b) {
      auto db = digits(b);
      std::vector<int> s(e);
      for (int i = 0; i < e; ++i) s[i] = (da[i] + db[i]) % p;
      f.add_[a * f.q_ + b] = encode(s);
      // polynomial product reduced modulo the irreducible
      std::vector<int> prod(2 * e - 1, 0);
      for (int i = 0; i < e; ++i)
        for (int j = 0; j < e; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
      for (int k = 2 * e - 2; k >= e; --k) {
        int c = prod[k];
        if (c == 0) continue;
        prod[k] = 0;
        for (int i = 0; i < e; ++i)
          prod[k - e + i] = ((prod[k - e + i] - c * f.irr_[i]) % p + p) % p;
      }
      prod.resize(e);
      f.mul_[a * f.q_ + b] = encode(prod);
    }
  }
  for (int a = 1; a < f.q_; ++a) {
    int found = 0;
    for (int b = 1; b < f.q_; ++b)
      if (f.mul_[a * f.q_ + b] == 1) {
        f.inv_[a] = b;
        found = 1;
        break;
      }
    if (!found) throw std::logic_error("GF(" + std::to_string(f.q_) + "): element without inverse; polynomial not irreducible");
  }
  return f;
}

int Field::pow(int a, int n) const {
  int r = 1;
  while (n > 0) {
    if (n & 1) r = mul(r, a);
    a = mul(a, a);
    n >>= 1;
  }
  return r;
}

int Field::from_int(const Int& c) const {
  Int r = c % p_;
  if (r < 0) r += p_;
  return static_cast<int>(r);
}

int eval_poly(const Field& f, const IntPoly& poly, const std::vector<int>& point_by_var) {
  int total = 0;
  for (auto& [m, c] : poly.terms()) {
    int t = f.from_int(c);
    for (auto& [v, e] : m.factors()) {
      if (v >= static_cast<int>(point_by_var.size()) || point_by_var[v] < 0)
        throw std::invalid_argument("eval_poly: unbound variable t" + std::to_string(v));
      t = f.mul(t, f.pow(point_by_var[v], e));
    }
    total = f.add(total, t);
  }
  return total;
}

}  // namespace nilorbit
