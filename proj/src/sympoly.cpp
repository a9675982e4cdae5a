#include "nilorbit/sympoly.hpp"

#include <boost/multiprecision/cpp_int.hpp>
#include <algorithm>
#include <cassert>
#include <cctype>
#include <sstream>
#include <stdexcept>

namespace nilorbit {

namespace {
Int int_gcd(Int a, Int b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    Int r = a % b;
    a = b;
    b = r;
  }
  return a;
}
}  // namespace

// ---------------------------------------------------------------- Monomial

Monomial Monomial::var(int v, int exp) {
  assert(v >= 1 && exp >= 0);
  Monomial m;
  if (exp > 0) m.vx_.push_back({v, exp});
  return m;
}

int Monomial::degree() const {
  int d = 0;
  for (auto& [v, e] : vx_) d += e;
  return d;
}

int Monomial::degree_in(int v) const {
  for (auto& [w, e] : vx_)
    if (w == v) return e;
  return 0;
}

Monomial Monomial::operator*(const Monomial& o) const {
  Monomial r;
  std::size_t i = 0, j = 0;
  while (i < vx_.size() || j < o.vx_.size()) {
    if (j == o.vx_.size() || (i < vx_.size() && vx_[i].first < o.vx_[j].first)) {
      r.vx_.push_back(vx_[i++]);
    } else if (i == vx_.size() || o.vx_[j].first < vx_[i].first) {
      r.vx_.push_back(o.vx_[j++]);
    } else {
      r.vx_.push_back({vx_[i].first, vx_[i].second + o.vx_[j].second});
      ++i, ++j;
    }
  }
  return r;
}

bool Monomial::divides(const Monomial& o) const {
  std::size_t j = 0;
  for (auto& [v, e] : vx_) {
    while (j < o.vx_.size() && o.vx_[j].first < v) ++j;
    if (j == o.vx_.size() || o.vx_[j].first != v || o.vx_[j].second < e) return false;
  }
  return true;
}

Monomial Monomial::operator/(const Monomial& o) const {
  assert(o.divides(*this));
  Monomial r;
  std::size_t j = 0;
  for (auto& [v, e] : vx_) {
    int sub = 0;
    while (j < o.vx_.size() && o.vx_[j].first < v) ++j;
    if (j < o.vx_.size() && o.vx_[j].first == v) sub = o.vx_[j].second;
    if (e - sub > 0) r.vx_.push_back({v, e - sub});
  }
  return r;
}

int Monomial::cmp(const Monomial& a, const Monomial& b) {
  int da = a.degree(), db = b.degree();
  if (da != db) return da < db ? -1 : 1;
  // lex with t1 > t2 > ...: walk variables in increasing id; the monomial
  // with the higher exponent at the first differing variable is larger.
  std::size_t i = 0, j = 0;
  while (i < a.vx_.size() && j < b.vx_.size()) {
    if (a.vx_[i].first < b.vx_[j].first) return 1;   // a has smaller-id var -> larger
    if (b.vx_[j].first < a.vx_[i].first) return -1;
    if (a.vx_[i].second != b.vx_[j].second)
      return a.vx_[i].second < b.vx_[j].second ? -1 : 1;
    ++i, ++j;
  }
  if (i < a.vx_.size()) return 1;
  if (j < b.vx_.size()) return -1;
  return 0;
}

// ---------------------------------------------------------------- IntPoly

IntPoly IntPoly::constant(Int c) {
  IntPoly p;
  if (c != 0) p.terms_.push_back({Monomial(), std::move(c)});
  return p;
}

IntPoly IntPoly::var(int v) { return term(1, Monomial::var(v)); }

IntPoly IntPoly::term(Int c, const Monomial& m) {
  IntPoly p;
  if (c != 0) p.terms_.push_back({m, std::move(c)});
  return p;
}

int IntPoly::degree() const {
  if (terms_.empty()) return -1;
  return terms_[0].first.degree();  // deglex: leading term has max degree
}

int IntPoly::degree_in(int v) const {
  int d = 0;
  for (auto& [m, c] : terms_) d = std::max(d, m.degree_in(v));
  return d;
}

std::vector<int> IntPoly::vars() const {
  std::set<int> s;
  for (auto& [m, c] : terms_)
    for (auto& [v, e] : m.factors()) s.insert(v);
  return {s.begin(), s.end()};
}

const Monomial& IntPoly::leading_monomial() const {
  assert(!terms_.empty());
  return terms_[0].first;
}

const Int& IntPoly::leading_coeff() const {
  assert(!terms_.empty());
  return terms_[0].second;
}

Int IntPoly::constant_term() const {
  if (!terms_.empty() && terms_.back().first.is_one()) return terms_.back().second;
  return 0;
}

IntPoly IntPoly::operator+(const IntPoly& o) const {
  IntPoly r;
  std::size_t i = 0, j = 0;
  while (i < terms_.size() || j < o.terms_.size()) {
    if (j == o.terms_.size() ||
        (i < terms_.size() && Monomial::cmp(terms_[i].first, o.terms_[j].first) > 0)) {
      r.terms_.push_back(terms_[i++]);
    } else if (i == terms_.size() ||
               Monomial::cmp(o.terms_[j].first, terms_[i].first) > 0) {
      r.terms_.push_back(o.terms_[j++]);
    } else {
      Int c = terms_[i].second + o.terms_[j].second;
      if (c != 0) r.terms_.push_back({terms_[i].first, std::move(c)});
      ++i, ++j;
    }
  }
  return r;
}

IntPoly IntPoly::operator-() const {
  IntPoly r = *this;
  for (auto& [m, c] : r.terms_) c = -c;
  return r;
}

IntPoly IntPoly::operator-(const IntPoly& o) const { return *this + (-o); }

IntPoly IntPoly::operator*(const IntPoly& o) const {
  if (is_zero() || o.is_zero()) return {};
  std::map<Monomial, Int, decltype([](const Monomial& a, const Monomial& b) {
             return Monomial::cmp(a, b) > 0;
           })>
      acc;
  for (auto& [ma, ca] : terms_)
    for (auto& [mb, cb] : o.terms_) acc[ma * mb] += ca * cb;
  IntPoly r;
  for (auto& [m, c] : acc)
    if (c != 0) r.terms_.push_back({m, c});
  return r;
}

IntPoly IntPoly::operator*(const Int& c) const {
  if (c == 0) return {};
  IntPoly r = *this;
  for (auto& [m, k] : r.terms_) k *= c;
  return r;
}

IntPoly IntPoly::coeff_of(int v, int k) const {
  IntPoly r;
  for (auto& [m, c] : terms_) {
    if (m.degree_in(v) != k) continue;
    r.insert_term(m / Monomial::var(v, k), c);
  }
  return r;
}

void IntPoly::insert_term(const Monomial& m, Int c) {
  // used only where distinct source monomials stay distinct after division
  auto it = std::lower_bound(
      terms_.begin(), terms_.end(), m,
      [](const std::pair<Monomial, Int>& t, const Monomial& key) {
        return Monomial::cmp(t.first, key) > 0;
      });
  if (it != terms_.end() && it->first == m) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  } else {
    terms_.insert(it, {m, std::move(c)});
  }
}

IntPoly IntPoly::substitute(int v, const IntPoly& a) const {
  int d = degree_in(v);
  if (d == 0) return *this;
  // Horner in t_v
  IntPoly r = coeff_of(v, d);
  for (int k = d - 1; k >= 0; --k) r = r * a + coeff_of(v, k);
  return r;
}

IntPoly IntPoly::substitute_cleared(int v, const IntPoly& num, const IntPoly& den) const {
  int d = degree_in(v);
  if (d == 0) return *this;
  IntPoly r = coeff_of(v, d);
  for (int k = d - 1; k >= 0; --k) r = r * num + coeff_of(v, k) * den;
  // invariant: after step k the accumulated value equals
  // sum_{j>=k} coeff_j * num^{j-k} * den^{(d-k)-(j-k)}
  return r;
}

Int IntPoly::evaluate(const std::map<int, Int>& point) const {
  Int total = 0;
  for (auto& [m, c] : terms_) {
    Int t = c;
    for (auto& [v, e] : m.factors()) {
      auto it = point.find(v);
      if (it == point.end()) throw std::invalid_argument("evaluate: unbound variable t" + std::to_string(v));
      for (int k = 0; k < e; ++k) t *= it->second;
    }
    total += t;
  }
  return total;
}

Int IntPoly::content() const {
  Int g = 0;
  for (auto& [m, c] : terms_) {
    g = int_gcd(g, c);
    if (g == 1) break;
  }
  return g;
}

IntPoly IntPoly::primitive_part() const {
  Int c = content();
  if (c == 0 || c == 1) return *this;
  IntPoly r = *this;
  for (auto& [m, k] : r.terms_) k /= c;
  return r;
}

IntPoly IntPoly::sign_normalized() const {
  if (is_zero() || leading_coeff() > 0) return *this;
  return -*this;
}

std::string IntPoly::str() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto& [m, c] : terms_) {
    Int a = c;
    if (first) {
      if (a < 0) {
        os << '-';
        a = -a;
      }
      first = false;
    } else {
      os << (a < 0 ? '-' : '+');
      if (a < 0) a = -a;
    }
    if (a != 1 || m.is_one()) os << a;
    for (auto& [v, e] : m.factors()) {
      os << 't' << v;
      if (e > 1) os << '^' << e;
    }
  }
  return os.str();
}

IntPoly IntPoly::parse(const std::string& s) {
  IntPoly r;
  std::size_t i = 0;
  auto skip_ws = [&] { while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i; };
  skip_ws();
  if (i < s.size() && s.compare(i, 1, "0") == 0 && i + 1 == s.size()) return r;
  while (i < s.size()) {
    skip_ws();
    int sign = 1;
    if (s[i] == '+') ++i;
    else if (s[i] == '-') { sign = -1; ++i; }
    skip_ws();
    Int coeff = 1;
    bool saw_digits = false;
    std::string digits;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) digits += s[i++];
    if (!digits.empty()) { coeff = Int(digits); saw_digits = true; }
    Monomial m;
    while (i < s.size() && s[i] == 't') {
      ++i;
      std::string vd;
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) vd += s[i++];
      if (vd.empty()) throw std::invalid_argument("IntPoly::parse: variable id expected");
      int exp = 1;
      if (i < s.size() && s[i] == '^') {
        ++i;
        std::string ed;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ed += s[i++];
        if (ed.empty()) throw std::invalid_argument("IntPoly::parse: exponent expected");
        exp = std::stoi(ed);
      }
      m = m * Monomial::var(std::stoi(vd), exp);
    }
    if (!saw_digits && m.is_one())
      throw std::invalid_argument("IntPoly::parse: empty term in '" + s + "'");
    r = r + term(coeff * sign, m);
    skip_ws();
  }
  return r;
}

nlohmann::json IntPoly::to_json_terms() const {
  int maxvar = 0;
  for (auto& [m, c] : terms_)
    for (auto& [v, e] : m.factors()) maxvar = std::max(maxvar, v);
  nlohmann::json arr = nlohmann::json::array();
  for (auto& [m, c] : terms_) {
    std::vector<int> exps(maxvar, 0);
    for (auto& [v, e] : m.factors()) exps[v - 1] = e;
    arr.push_back({c.str(), exps});
  }
  return arr;
}

IntPoly IntPoly::from_json_terms(const nlohmann::json& j) {
  IntPoly p;
  for (auto& t : j) {
    Int c(t.at(0).get<std::string>());
    Monomial m;
    const auto& exps = t.at(1);
    for (std::size_t v = 0; v < exps.size(); ++v) {
      int e = exps[v].get<int>();
      if (e > 0) m = m * Monomial::var(static_cast<int>(v) + 1, e);
    }
    p = p + term(std::move(c), m);
  }
  return p;
}

int IntPoly::compare(const IntPoly& a, const IntPoly& b) {
  if (a.is_zero() || b.is_zero())
    throw std::invalid_argument("IntPoly::compare: zero polynomial");
  if (a.num_terms() != b.num_terms()) return a.num_terms() < b.num_terms() ? -1 : 1;
  if (a.degree() != b.degree()) return a.degree() < b.degree() ? -1 : 1;
  if (a.leading_coeff() != b.leading_coeff())
    return a.leading_coeff() < b.leading_coeff() ? -1 : 1;
  for (std::size_t k = 0; k < a.terms_.size(); ++k) {
    int mc = Monomial::cmp(a.terms_[k].first, b.terms_[k].first);
    if (mc != 0) return mc;
    if (a.terms_[k].second != b.terms_[k].second)
      return a.terms_[k].second < b.terms_[k].second ? -1 : 1;
  }
  return 0;
}

// ------------------------------------------------------------------- gcd

namespace {

// view of p as a univariate polynomial in t_v with IntPoly coefficients
std::vector<IntPoly> univariate(const IntPoly& p, int v) {
  int d = p.degree_in(v);
  std::vector<IntPoly> cs(d + 1);
  for (int k = 0; k <= d; ++k) cs[k] = p.coeff_of(v, k);
  return cs;
}

// content of p with respect to t_v: gcd of the univariate coefficients
IntPoly content_in(const IntPoly& p, int v) {
  IntPoly g;
  for (auto& c : univariate(p, v)) g = IntPoly::gcd(g, c);
  return g;
}

// pseudo-remainder of f by g in the variable v (primitive PRS step)
IntPoly prem(IntPoly f, const IntPoly& g, int v) {
  int dg = g.degree_in(v);
  IntPoly lcg = g.coeff_of(v, dg);
  while (!f.is_zero() && f.degree_in(v) >= dg) {
    int df = f.degree_in(v);
    IntPoly lcf = f.coeff_of(v, df);
    f = f * lcg - g * (lcf * IntPoly::term(1, Monomial::var(v, df - dg)));
    assert(f.is_zero() || f.degree_in(v) < df);
  }
  return f;
}

}  // namespace

IntPoly IntPoly::gcd(const IntPoly& a, const IntPoly& b) {
  if (a.is_zero()) return b.sign_normalized();
  if (b.is_zero()) return a.sign_normalized();
  if (a.is_constant() || b.is_constant()) {
    Int g = int_gcd(a.content(), b.content());
    return constant(g);
  }
  std::vector<int> va = a.vars(), vb = b.vars();
  int v = !va.empty() && (vb.empty() || va[0] <= vb[0]) ? va[0] : vb[0];
  IntPoly ca = content_in(a, v), cb = content_in(b, v);
  IntPoly pa = poly_divide_exact(a, ca), pb = poly_divide_exact(b, cb);
  IntPoly c = gcd(ca, cb);
  IntPoly r0 = pa, r1 = pb;
  if (r0.degree_in(v) < r1.degree_in(v)) std::swap(r0, r1);
  while (!r1.is_zero() && r1.degree_in(v) > 0) {
    IntPoly rem = prem(r0, r1, v);
    r0 = r1;
    if (rem.is_zero()) {
      r1 = IntPoly();
    } else {
      r1 = poly_divide_exact(rem, content_in(rem, v)).primitive_part();
    }
  }
  IntPoly g;
  if (r1.is_zero()) {
    // r0 is the gcd of the primitive parts up to content in v
    g = poly_divide_exact(r0, content_in(r0, v));
  } else {
    g = constant(1);  // a nonzero v-free remainder: primitive parts coprime
  }
  return (c * g).sign_normalized();
}

std::optional<PolyQuotient> poly_divide(const IntPoly& p, const IntPoly& d) {
  if (d.is_zero()) throw std::invalid_argument("poly_divide: zero divisor");
  using boost::multiprecision::cpp_rational;
  // remainder as terms with rational coefficients, leading first
  std::vector<std::pair<Monomial, cpp_rational>> rem, quot;
  rem.reserve(p.terms().size());
  for (auto& [m, c] : p.terms()) rem.push_back({m, cpp_rational(c)});
  const Monomial& lmd = d.leading_monomial();
  const Int& lcd = d.leading_coeff();
  while (!rem.empty()) {
    if (!lmd.divides(rem[0].first)) return std::nullopt;
    Monomial qm = rem[0].first / lmd;
    cpp_rational qc = rem[0].second / cpp_rational(lcd);
    quot.push_back({qm, qc});
    // rem -= qc*qm*d, merging sorted term lists
    std::vector<std::pair<Monomial, cpp_rational>> nxt;
    std::size_t i = 0, j = 0;
    while (i < rem.size() || j < d.terms().size()) {
      Monomial sm;
      bool have_s = j < d.terms().size();
      if (have_s) sm = qm * d.terms()[j].first;
      if (j == d.terms().size() ||
          (i < rem.size() && Monomial::cmp(rem[i].first, sm) > 0)) {
        nxt.push_back(rem[i++]);
      } else if (i == rem.size() || Monomial::cmp(sm, rem[i].first) > 0) {
        nxt.push_back({sm, -qc * cpp_rational(d.terms()[j].second)});
        ++j;
      } else {
        cpp_rational c = rem[i].second - qc * cpp_rational(d.terms()[j].second);
        if (c != 0) nxt.push_back({rem[i].first, c});
        ++i, ++j;
      }
    }
    rem = std::move(nxt);
  }
  Int den = 1;
  for (auto& [m, c] : quot) {
    Int cd = boost::multiprecision::denominator(c);
    den = den / int_gcd(den, cd) * cd;
  }
  IntPoly numer;
  for (auto& [m, c] : quot) {
    Int k = boost::multiprecision::numerator(c) * (den / boost::multiprecision::denominator(c));
    numer = numer + IntPoly::term(k, m);
  }
  return PolyQuotient{numer, den};
}

bool poly_divides(const IntPoly& d, const IntPoly& p) {
  if (p.is_zero()) return true;
  return poly_divide(p, d).has_value();
}

IntPoly poly_divide_exact(const IntPoly& p, const IntPoly& d) {
  if (p.is_zero()) return {};
  auto q = poly_divide(p, d);
  assert(q && q->denominator == 1);
  return q->numerator;
}

// ----------------------------------------------------------------- primes

std::set<Int> prime_factors(Int n) {
  std::set<Int> out;
  if (n < 0) n = -n;
  if (n <= 1) return out;
  for (Int p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
    if (n % p == 0) {
      out.insert(p);
      while (n % p == 0) n /= p;
    }
  }
  if (n > 1) out.insert(n);
  return out;
}

std::set<Int> leading_coefficient_primes(const IntPoly& p) {
  if (p.is_zero()) throw std::invalid_argument("leading_coefficient_primes: zero polynomial");
  return prime_factors(p.leading_coeff());
}

}  // namespace nilorbit
