#include "nilorbit/counter.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

namespace nilorbit {

// ---------------------------------------------------------- ClassPolynomial

ClassPolynomial::ClassPolynomial(std::vector<Int> coeffs) : c_(std::move(coeffs)) { trim(); }

ClassPolynomial ClassPolynomial::monomial(int degree, Int coeff) {
  std::vector<Int> c(degree + 1, 0);
  c[degree] = std::move(coeff);
  return ClassPolynomial(std::move(c));
}

void ClassPolynomial::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Int ClassPolynomial::eval_at_v(const Int& v) const {
  Int r = 0;
  for (int k = static_cast<int>(c_.size()) - 1; k >= 0; --k) r = r * v + c_[k];
  return r;
}

ClassPolynomial ClassPolynomial::operator+(const ClassPolynomial& o) const {
  std::vector<Int> c(std::max(c_.size(), o.c_.size()), 0);
  for (std::size_t k = 0; k < c.size(); ++k) {
    if (k < c_.size()) c[k] += c_[k];
    if (k < o.c_.size()) c[k] += o.c_[k];
  }
  return ClassPolynomial(std::move(c));
}

ClassPolynomial ClassPolynomial::operator-(const ClassPolynomial& o) const {
  std::vector<Int> c(std::max(c_.size(), o.c_.size()), 0);
  for (std::size_t k = 0; k < c.size(); ++k) {
    if (k < c_.size()) c[k] += c_[k];
    if (k < o.c_.size()) c[k] -= o.c_[k];
  }
  return ClassPolynomial(std::move(c));
}

ClassPolynomial ClassPolynomial::operator*(const ClassPolynomial& o) const {
  if (is_zero() || o.is_zero()) return {};
  std::vector<Int> c(c_.size() + o.c_.size() - 1, 0);
  for (std::size_t i = 0; i < c_.size(); ++i)
    for (std::size_t j = 0; j < o.c_.size(); ++j) c[i + j] += c_[i] * o.c_[j];
  return ClassPolynomial(std::move(c));
}

namespace {
std::string poly_display(const std::vector<Int>& asc, const char* sym) {
  if (asc.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int k = static_cast<int>(asc.size()) - 1; k >= 0; --k) {
    Int a = asc[k];
    if (a == 0) continue;
    if (first) {
      if (a < 0) os << '-';
      first = false;
    } else {
      os << (a < 0 ? '-' : '+');
    }
    Int mag = a < 0 ? -a : a;
    if (mag != 1 || k == 0) os << mag;
    if (k >= 1) {
      os << sym;
      if (k > 1) os << '^' << k;
    }
  }
  return os.str();
}
}  // namespace

std::string ClassPolynomial::str() const { return poly_display(c_, "v"); }

std::string ClassPolynomial::str_in_q() const {
  // substitute v = q-1 exactly
  std::vector<Int> q_coeffs(c_.size(), 0);
  std::vector<Int> pow = {1};  // (q-1)^k, ascending in q
  for (std::size_t k = 0; k < c_.size(); ++k) {
    for (std::size_t j = 0; j < pow.size(); ++j) q_coeffs[j] += c_[k] * pow[j];
    // pow *= (q-1)
    std::vector<Int> next(pow.size() + 1, 0);
    for (std::size_t j = 0; j < pow.size(); ++j) {
      next[j] -= pow[j];
      next[j + 1] += pow[j];
    }
    pow = std::move(next);
  }
  while (!q_coeffs.empty() && q_coeffs.back() == 0) q_coeffs.pop_back();
  return poly_display(q_coeffs, "q");
}

// ----------------------------------------------------------- per-q counting

namespace {

void check_enum_budget(int q, int nvars, long long budget) {
  long long total = 1;
  for (int i = 0; i < nvars; ++i) {
    total *= q - 1;
    if (total > budget)
      throw BudgetExceeded("cell enumeration needs (q-1)^" + std::to_string(nvars) + " = (" +
                           std::to_string(q - 1) + ")^" + std::to_string(nvars) +
                           " assignments, over the budget");
  }
}

}  // namespace

Int count_cell_solutions_at_q(const Cell& cell, const Field& f, long long enum_budget) {
  const int q = f.q();
  const auto& vars = cell.free_vars;
  check_enum_budget(q, static_cast<int>(vars.size()), enum_budget);
  int maxvar = 0;
  for (int v : vars) maxvar = std::max(maxvar, v);
  for (auto& a : cell.A)
    for (int v : a.vars()) maxvar = std::max(maxvar, v);
  for (auto& b : cell.B)
    for (int v : b.vars()) maxvar = std::max(maxvar, v);
  std::vector<int> point(maxvar + 1, -1);

  Int solutions = 0;
  std::vector<int> idx(vars.size(), 1);  // values 1..q-1 per free variable
  for (;;) {
    for (std::size_t i = 0; i < vars.size(); ++i) point[vars[i]] = idx[i];
    bool ok = true;
    for (auto& a : cell.A)
      if (eval_poly(f, a, point) != 0) {
        ok = false;
        break;
      }
    if (ok)
      for (auto& b : cell.B)
        if (eval_poly(f, b, point) == 0) {
          ok = false;
          break;
        }
    if (ok) ++solutions;
    // advance the odometer
    std::size_t pos = 0;
    while (pos < idx.size()) {
      if (++idx[pos] < q) break;
      idx[pos] = 1;
      ++pos;
    }
    if (pos == idx.size()) break;
    if (vars.empty()) break;
  }
  return solutions;
}

Int count_cell_at_q(const Cell& cell, const Field& f, long long enum_budget) {
  Int torus = 1;
  for (std::size_t i = 0; i < cell.normalized.size(); ++i) torus *= f.q() - 1;
  return torus * count_cell_solutions_at_q(cell, f, enum_budget);
}

// --------------------------------------------------------- symbolic counting

namespace {

// Exact point counting over tori by constraint solving: eliminate variables
// with unit coefficients, split on non-unit coefficients, inclusion-exclusion
// over the nonvanishing set. Conservative: any constraint whose truth could
// depend on the characteristic (integer contents, non-unit constants) makes
// the cell "unresolved" instead of guessing.
class SymbolicCounter {
 public:
  std::optional<ClassPolynomial> count(std::vector<int> vars, std::vector<IntPoly> A,
                                       std::vector<IntPoly> B, int depth) {
    if (++nodes_ > kMaxNodes || depth > kMaxDepth) return std::nullopt;
    // normalize B: drop conditions that always hold, detect impossible ones
    std::vector<IntPoly> keep;
    for (auto& b : B) {
      if (b.is_zero()) return ClassPolynomial{};  // 0 != 0: empty cell
      IntPoly s = b.sign_normalized();
      if (s.is_monomial()) {
        if (s.leading_coeff() != 1) return std::nullopt;  // prime-dependent
        continue;                                         // nonzero on the torus
      }
      keep.push_back(s);
    }
    std::sort(keep.begin(), keep.end(), IntPoly::less);
    keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
    if (keep.size() > 12) return std::nullopt;
    // inclusion-exclusion over which B-members vanish
    ClassPolynomial total;
    for (std::size_t mask = 0; mask < (std::size_t(1) << keep.size()); ++mask) {
      std::vector<IntPoly> A2 = A;
      int bits = 0;
      for (std::size_t i = 0; i < keep.size(); ++i)
        if (mask & (std::size_t(1) << i)) {
          A2.push_back(keep[i]);
          ++bits;
        }
      auto z = zcount(vars, std::move(A2), depth + 1);
      if (!z) return std::nullopt;
      total = bits % 2 == 0 ? total + *z : total - *z;
    }
    return total;
  }

 private:
  std::optional<ClassPolynomial> zcount(std::vector<int> vars, std::vector<IntPoly> A,
                                        int depth) {
    if (++nodes_ > kMaxNodes || depth > kMaxDepth) return std::nullopt;
    std::vector<IntPoly> live;
    for (auto& a : A) {
      if (a.is_zero()) continue;
      IntPoly s = a.sign_normalized();
      if (s.is_monomial()) {
        // a monomial never vanishes on the torus unless its integer
        // coefficient does, which is characteristic-dependent
        if (s.leading_coeff() == 1) return ClassPolynomial{};
        return std::nullopt;
      }
      if (s.content() != 1) return std::nullopt;  // prime-dependent vanishing scale
      live.push_back(s);
    }
    std::sort(live.begin(), live.end(), IntPoly::less);
    live.erase(std::unique(live.begin(), live.end()), live.end());

    // variables untouched by the constraints contribute a free torus factor
    std::set<int> used;
    for (auto& a : live)
      for (int v : a.vars()) used.insert(v);
    int unused = 0;
    std::vector<int> vs;
    for (int v : vars) {
      if (used.count(v)) vs.push_back(v);
      else ++unused;
    }
    ClassPolynomial factor = ClassPolynomial::monomial(unused);
    if (live.empty()) return factor;

    // constraints may mention variables outside vars only if they were never
    // free; that cannot happen for well-formed cells
    for (auto& a : live)
      for (int v : a.vars())
        if (std::find(vs.begin(), vs.end(), v) == vs.end()) return std::nullopt;

    struct Pick {
      int cls = 4;  // 1: unit constant, 2: unit monomial, 3: split
      std::size_t poly = 0;
      int var = 0;
    } best;
    for (std::size_t i = 0; i < live.size() && best.cls > 1; ++i) {
      for (int v : live[i].vars()) {
        if (live[i].degree_in(v) != 1) continue;
        IntPoly cf = live[i].coeff_of(v, 1);
        int cls;
        if (cf.is_constant())
          cls = (cf.constant_term() == 1 || cf.constant_term() == -1) ? 1 : 3;
        else if (cf.is_monomial())
          cls = (cf.leading_coeff() == 1 || cf.leading_coeff() == -1) ? 2 : 3;
        else
          cls = 3;
        if (cls < best.cls) best = {cls, i, v};
        if (best.cls == 1) break;
      }
    }
    if (best.cls == 4) return std::nullopt;  // no variable of degree one anywhere

    const IntPoly f = live[best.poly];
    const int v = best.var;
    IntPoly C = f.coeff_of(v, 1);
    IntPoly rest = f - C * IntPoly::var(v);
    live.erase(live.begin() + best.poly);
    std::vector<int> vs2 = vs;
    vs2.erase(std::find(vs2.begin(), vs2.end(), v));

    if (best.cls <= 2) {
      // C is a unit constant or unit monomial: t_v = -rest/C is determined and
      // nonzero exactly when rest is
      bool neg = C.leading_coeff() < 0;
      IntPoly den = neg ? -C : C;
      IntPoly num = neg ? rest : -rest;
      if (num.is_zero()) return ClassPolynomial{};  // t_v = 0 is off the torus
      std::vector<IntPoly> A2;
      for (auto& a : live) A2.push_back(a.substitute_cleared(v, num, den));
      auto sub = count(vs2, std::move(A2), {num}, depth + 1);
      if (!sub) return std::nullopt;
      return factor * *sub;
    }

    // split on C: the C != 0 part eliminates t_v rationally, the C = 0 part
    // keeps it and forces rest = 0 as well
    std::vector<IntPoly> A_nz;
    for (auto& a : live) A_nz.push_back(a.substitute_cleared(v, -rest, C));
    auto part1 = count(vs2, std::move(A_nz), {C, rest}, depth + 1);
    if (!part1) return std::nullopt;
    std::vector<IntPoly> A_z = live;
    A_z.push_back(C);
    A_z.push_back(rest);
    auto part2 = zcount(vs, std::move(A_z), depth + 1);
    if (!part2) return std::nullopt;
    // t_v stays free in the C = 0 part and is not counted by vs-based
    // recursion twice: zcount(vs, ...) still ranges over t_v
    return factor * (*part1 + *part2);
  }

  long long nodes_ = 0;
  static constexpr long long kMaxNodes = 200'000;
  static constexpr int kMaxDepth = 64;
};

}  // namespace

std::optional<ClassPolynomial> count_cell_symbolic(const Cell& cell) {
  SymbolicCounter counter;
  auto solutions = counter.count(cell.free_vars, cell.A, cell.B, 0);
  if (!solutions) return std::nullopt;
  return *solutions * ClassPolynomial::monomial(static_cast<int>(cell.normalized.size()));
}

// ------------------------------------------------------------ interpolation

Field field_for_q(int q) {
  if (q < 2) throw std::invalid_argument("q must be a prime power >= 2");
  int p = 0;
  for (int d = 2; d <= q; ++d)
    if (q % d == 0) {
      p = d;
      break;
    }
  int e = 0, m = q;
  while (m % p == 0) {
    m /= p;
    ++e;
  }
  if (m != 1) throw std::invalid_argument(std::to_string(q) + " is not a prime power");
  return Field::make(p, e);
}

std::vector<int> usable_qs(const std::set<Int>& avoid, int count, int min_q) {
  std::vector<int> out;
  for (int q = std::max(2, min_q); static_cast<int>(out.size()) < count; ++q) {
    if (q > 4096)
      throw std::invalid_argument("not enough usable prime powers below the table limit");
    int p = 0;
    for (int d = 2; d <= q; ++d)
      if (q % d == 0) {
        p = d;
        break;
      }
    int m = q;
    int e = 0;
    while (m % p == 0) {
      m /= p;
      ++e;
    }
    if (m != 1 || avoid.count(p)) continue;
    if (e > 1) {
      try {
        field_for_q(q);
      } catch (const std::exception&) {
        continue;  // no irreducible on record
      }
    }
    out.push_back(q);
  }
  return out;
}

ClassPolynomial interpolate_and_verify(const Cell& cell, int degree_bound,
                                       const std::vector<int>& sample_qs,
                                       long long enum_budget) {
  if (static_cast<int>(sample_qs.size()) < degree_bound + 1 + 3)
    throw std::invalid_argument("interpolation needs degree_bound+1 nodes plus >= 3 checks");
  using Rat = boost::multiprecision::cpp_rational;
  const int n = degree_bound + 1;
  std::vector<Int> xs;
  std::vector<Int> ys;
  for (int i = 0; i < n; ++i) {
    Field f = field_for_q(sample_qs[i]);
    xs.push_back(sample_qs[i] - 1);  // nodes in v
    ys.push_back(count_cell_solutions_at_q(cell, f, enum_budget));
  }
  // Newton divided differences
  std::vector<Rat> coeffs_newton;
  std::vector<Rat> col(n);
  for (int i = 0; i < n; ++i) col[i] = Rat(ys[i]);
  coeffs_newton.push_back(col[0]);
  for (int level = 1; level < n; ++level) {
    for (int i = 0; i + level < n; ++i)
      col[i] = (col[i + 1] - col[i]) / Rat(xs[i + level] - xs[i]);
    coeffs_newton.push_back(col[0]);
  }
  // expand the Newton form into ascending coefficients in v
  std::vector<Rat> poly = {0};
  for (int level = n - 1; level >= 0; --level) {
    // poly = poly*(v - xs[level]) + coeffs_newton[level]
    std::vector<Rat> next(poly.size() + 1, Rat(0));
    for (std::size_t i = 0; i < poly.size(); ++i) {
      next[i + 1] += poly[i];
      next[i] -= poly[i] * Rat(xs[level]);
    }
    next[0] += coeffs_newton[level];
    poly = std::move(next);
  }
  std::vector<Int> coeffs;
  for (auto& c : poly) {
    if (boost::multiprecision::denominator(c) != 1)
      throw VerificationError("interpolated cell count is not an integer polynomial");
    coeffs.push_back(Int(boost::multiprecision::numerator(c)));
  }
  ClassPolynomial solutions{std::move(coeffs)};
  for (std::size_t i = n; i < sample_qs.size(); ++i) {
    Field f = field_for_q(sample_qs[i]);
    Int expect = count_cell_solutions_at_q(cell, f, enum_budget);
    if (solutions.eval_at_q(sample_qs[i]) != expect)
      throw VerificationError("interpolation verification failed at q = " +
                              std::to_string(sample_qs[i]) + " (pattern " + cell.pattern + ")");
  }
  return solutions * ClassPolynomial::monomial(static_cast<int>(cell.normalized.size()));
}

// ---------------------------------------------------------------- assembly

namespace {

std::set<Int> avoided_primes(const Parametrization& par, const RootDatum& datum) {
  std::set<Int> avoid = par.excluded_primes;
  for (int p : datum.bad_primes) avoid.insert(p);
  return avoid;
}

void require_valid_q(int q, const std::set<Int>& avoid) {
  Field f = field_for_q(q);  // validates prime power
  if (avoid.count(f.p()))
    throw std::invalid_argument("q = " + std::to_string(q) +
                                " uses a bad or excluded prime for this run");
}

}  // namespace

CountReport assemble_k(const Parametrization& par, const RootDatum& datum,
                       CountStrategy strategy, const std::vector<int>& qs,
                       long long enum_budget) {
  CountReport report;
  report.strategy = strategy;
  std::set<Int> avoid = avoided_primes(par, datum);

  if (strategy == CountStrategy::PerQOnly) {
    if (qs.empty()) throw std::invalid_argument("per-q counting needs at least one q");
    for (int q : qs) require_valid_q(q, avoid);
    for (int q : qs) report.totals_per_q[q] = 0;
    int idx = 0;
    for (auto& cell : par.cells) {
      CellReport cr;
      cr.cell_index = idx++;
      cr.strategy = "per-q";
      for (int q : qs) {
        Field f = field_for_q(q);
        Int c = count_cell_at_q(cell, f, enum_budget);
        cr.per_q[q] = c;
        report.totals_per_q[q] += c;
      }
      report.cells.push_back(std::move(cr));
    }
    return report;
  }

  ClassPolynomial total;
  int idx = 0;
  for (auto& cell : par.cells) {
    CellReport cr;
    cr.cell_index = idx++;
    std::optional<ClassPolynomial> poly;
    if (strategy == CountStrategy::SymbolicFirst) {
      poly = count_cell_symbolic(cell);
      if (poly) cr.strategy = "symbolic";
    }
    if (!poly) {
      int bound = static_cast<int>(cell.free_vars.size());
      auto samples = usable_qs(avoid, bound + 1 + 3);
      poly = interpolate_and_verify(cell, bound, samples, enum_budget);
      cr.strategy = "interpolated";
      for (std::size_t i = bound + 1; i < samples.size(); ++i)
        cr.verified_at.push_back(samples[i]);
    }
    total = total + *poly;
    cr.polynomial = std::move(poly);
    report.cells.push_back(std::move(cr));
  }

  // end-to-end check of the assembled polynomial against brute counts
  for (int q : usable_qs(avoid, 2)) {
    Int brute = 0;
    bool feasible = true;
    for (auto& cell : par.cells) {
      long long need = 1;
      for (std::size_t i = 0; i < cell.free_vars.size() && feasible; ++i) {
        need *= q - 1;
        if (need > enum_budget) feasible = false;
      }
      if (!feasible) break;
      brute += count_cell_at_q(cell, field_for_q(q), enum_budget);
    }
    if (!feasible) continue;
    if (total.eval_at_q(q) != brute)
      throw VerificationError("assembled polynomial disagrees with brute count at q = " +
                              std::to_string(q) + ": " + total.eval_at_q(q).str() + " vs " +
                              brute.str());
    report.verified_at.push_back(q);
  }
  for (int q : qs) {
    require_valid_q(q, avoid);
    report.totals_per_q[q] = total.eval_at_q(q);
  }
  report.total = std::move(total);
  return report;
}

nlohmann::ordered_json CountReport::to_json() const {
  nlohmann::ordered_json j;
  j["strategy"] = strategy == CountStrategy::SymbolicFirst ? "symbolic"
                  : strategy == CountStrategy::PerQOnly    ? "per-q"
                                                           : "interpolate";
  if (total) {
    j["total"] = total->str();
    j["total_in_q"] = total->str_in_q();
    std::vector<std::string> cs;
    for (auto& c : total->coeffs()) cs.push_back(c.str());
    j["total_coeffs_ascending_v"] = cs;
  }
  if (!totals_per_q.empty()) {
    nlohmann::ordered_json t;
    for (auto& [q, c] : totals_per_q) t[q.str()] = c.str();
    j["totals_per_q"] = t;
  }
  if (!verified_at.empty()) {
    std::vector<std::string> v;
    for (auto& q : verified_at) v.push_back(q.str());
    j["verified_at"] = v;
  }
  nlohmann::ordered_json cells = nlohmann::ordered_json::array();
  for (auto& c : this->cells) {
    nlohmann::ordered_json e;
    e["cell_id"] = c.cell_index;
    e["strategy"] = c.strategy;
    if (c.polynomial) e["polynomial"] = c.polynomial->str();
    if (!c.per_q.empty()) {
      nlohmann::ordered_json t;
      for (auto& [q, n] : c.per_q) t[q.str()] = n.str();
      e["per_q"] = t;
    }
    if (!c.verified_at.empty()) {
      std::vector<std::string> v;
      for (auto& q : c.verified_at) v.push_back(q.str());
      e["verified_at"] = v;
    }
    cells.push_back(std::move(e));
  }
  j["cells"] = cells;
  return j;
}

}  // namespace nilorbit
