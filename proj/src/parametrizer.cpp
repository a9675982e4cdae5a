#include "nilorbit/parametrizer.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>

#include "nilorbit/oracle.hpp"

namespace nilorbit {

namespace detail {

bool unimodular_rows(std::vector<std::vector<long long>> m) {
  const int rows = static_cast<int>(m.size());
  if (rows == 0) return true;
  const int cols = static_cast<int>(m[0].size());
  int r0 = 0, c0 = 0;
  while (r0 < rows && c0 < cols) {
    // locate a nonzero entry of minimal modulus in the working submatrix
    int bi = -1, bj = -1;
    long long best = 0;
    for (int i = r0; i < rows; ++i)
      for (int j = c0; j < cols; ++j) {
        long long a = m[i][j] < 0 ? -m[i][j] : m[i][j];
        if (a != 0 && (bi < 0 || a < best)) {
          bi = i, bj = j, best = a;
        }
      }
    if (bi < 0) break;  // submatrix is zero
    std::swap(m[r0], m[bi]);
    for (int i = 0; i < rows; ++i) std::swap(m[i][c0], m[i][bj]);
    bool again = false;
    for (int i = r0 + 1; i < rows; ++i) {
      long long q = m[i][c0] / m[r0][c0];
      for (int j = c0; j < cols; ++j) m[i][j] -= q * m[r0][j];
      if (m[i][c0] != 0) again = true;
    }
    for (int j = c0 + 1; j < cols; ++j) {
      long long q = m[r0][j] / m[r0][c0];
      for (int i = r0; i < rows; ++i) m[i][j] -= q * m[i][c0];
      if (m[r0][j] != 0) again = true;
    }
    if (again) continue;  // a smaller pivot appeared; repeat on the same corner
    long long d = m[r0][c0] < 0 ? -m[r0][c0] : m[r0][c0];
    if (d != 1) {
      // a remaining entry not divisible by the pivot would shrink it further
      bool shrinkable = false;
      for (int i = r0 + 1; i < rows && !shrinkable; ++i)
        for (int j = c0 + 1; j < cols; ++j)
          if (m[i][j] % d != 0) {
            for (int jj = c0; jj < cols; ++jj) m[r0][jj] += m[i][jj];
            shrinkable = true;
            break;
          }
      if (shrinkable) continue;
      return false;  // the first elementary divisor exceeds 1
    }
    ++r0, ++c0;
  }
  return r0 == rows;  // full row rank with all divisors 1
}

}  // namespace detail

namespace {

void insert_sorted(std::vector<IntPoly>& set, const IntPoly& f) {
  auto it = std::lower_bound(set.begin(), set.end(), f, IntPoly::less);
  if (it != set.end() && *it == f) return;
  set.insert(it, f);
}

void resort(std::vector<IntPoly>& set) {
  std::sort(set.begin(), set.end(), IntPoly::less);
  set.erase(std::unique(set.begin(), set.end()), set.end());
}

void record_primes(std::set<Int>& sink, const Int& n) {
  auto ps = prime_factors(n);
  sink.insert(ps.begin(), ps.end());
}

struct State {
  std::string c;
  std::vector<IntPoly> A, B;
  std::vector<int> pivot;                 // -1 when the row produced no pivot
  std::vector<std::vector<IntPoly>> Q;    // reduced rows, each of length N
  std::vector<IntPoly> coeff_num;         // x_c coefficient per processed position
  std::vector<Int> coeff_den;
  std::vector<int> normalized;            // pattern positions pinned to 1
  std::vector<Substitution> subs;
  std::vector<char> var_dead;             // indexed by variable id
  int next_var = 1;
};

// Drops trivially-decided members of A and B. Returns false when the branch
// is dead: an A-constraint that cannot vanish on (k^x)^m, or a B-constraint
// identically zero. Non-unit integer factors route to the prime sink.
bool cleanup_sets(State& st, std::set<Int>& primes) {
  std::vector<IntPoly> keep;
  for (auto& a : st.A) {
    if (a.is_zero()) continue;
    if (a.is_monomial()) {
      Int c = a.leading_coeff();
      if (c < 0) c = -c;
      if (c != 1) record_primes(primes, c);
      return false;  // a monomial never vanishes on nonzero coordinates
    }
    keep.push_back(a);
  }
  st.A = std::move(keep);
  resort(st.A);
  keep.clear();
  for (auto& b : st.B) {
    if (b.is_zero()) return false;  // 0 != 0 is unsatisfiable
    if (b.is_monomial()) {
      Int c = b.leading_coeff();
      if (c < 0) c = -c;
      if (c != 1) record_primes(primes, c);
      continue;  // automatically nonzero
    }
    keep.push_back(b);
  }
  st.B = std::move(keep);
  resort(st.B);
  return true;
}

// The second modification: eliminate t_v whenever A holds a linear relation
// with a +-1 coefficient on t_v (or any constant coefficient when the
// non-unit policy is on, with the divided primes recorded). The eliminated
// coordinate still has to be nonzero, so its value polynomial joins B.
bool apply_substitutions(State& st, const ParamOptions& opt, std::set<Int>& primes) {
  if (!opt.substitute) return cleanup_sets(st, primes);
  bool changed = true;
  while (changed) {
    changed = false;
    if (!cleanup_sets(st, primes)) return false;
    for (std::size_t idx = 0; idx < st.A.size(); ++idx) {
      const IntPoly f = st.A[idx];
      if (f.degree() != 1) continue;
      int the_var = 0;
      Int the_coeff = 0;
      for (int v : f.vars()) {
        IntPoly cf = f.coeff_of(v, 1);
        if (!cf.is_constant()) continue;
        Int c = cf.constant_term();
        if (c == 1 || c == -1) {
          the_var = v;
          the_coeff = c;
          break;
        }
        if (the_var == 0 && opt.nonunit_substitution) {
          the_var = v;
          the_coeff = c;
        }
      }
      if (the_var == 0) continue;

      IntPoly rest = f - IntPoly::var(the_var) * the_coeff;
      Int den = the_coeff < 0 ? -the_coeff : the_coeff;
      IntPoly num = the_coeff < 0 ? rest : -rest;
      if (den != 1) record_primes(primes, den);
      st.A.erase(st.A.begin() + idx);

      IntPoly denp = IntPoly::constant(den);
      for (auto& a : st.A) a = a.substitute_cleared(the_var, num, denp);
      for (auto& b : st.B) b = b.substitute_cleared(the_var, num, denp);
      for (auto& row : st.Q) {
        int md = 0;
        for (auto& ent : row) md = std::max(md, ent.degree_in(the_var));
        if (md == 0) continue;
        for (auto& ent : row) {
          int dd = ent.degree_in(the_var);
          IntPoly s = ent.substitute_cleared(the_var, num, denp);
          for (int k = dd; k < md; ++k) s = s * den;  // uniform row scale den^md
          ent = s;
        }
      }
      for (std::size_t l = 0; l < st.coeff_num.size(); ++l) {
        int dd = st.coeff_num[l].degree_in(the_var);
        if (dd == 0) continue;
        st.coeff_num[l] = st.coeff_num[l].substitute_cleared(the_var, num, denp);
        for (int k = 0; k < dd; ++k) st.coeff_den[l] *= den;
      }
      if (static_cast<int>(st.var_dead.size()) <= the_var) st.var_dead.resize(the_var + 1, 0);
      st.var_dead[the_var] = 1;
      st.subs.push_back({the_var, num, den});

      // pivot entries are nonvanishing on the cell; one vanishing identically
      // means the cell is empty
      for (std::size_t j = 0; j < st.Q.size(); ++j)
        if (st.pivot[j] >= 0 && st.Q[j][st.pivot[j]].is_zero()) return false;

      if (num.is_zero()) return false;  // t_v = 0 contradicts t_v in k^x
      if (num.is_monomial()) {
        Int c = num.leading_coeff();
        if (c < 0) c = -c;
        if (c != 1) record_primes(primes, c);
      } else {
        insert_sorted(st.B, num);
      }
      resort(st.A);
      changed = true;
      break;
    }
  }
  return cleanup_sets(st, primes);
}

class Solver {
 public:
  Solver(const BracketTable& table, std::vector<int> positions, const ParamOptions& opts)
      : table_(table), d_(table.datum()), positions_(std::move(positions)), opt_(opts) {}

  Parametrization run() {
    const int L = static_cast<int>(positions_.size());
    Parametrization out;
    out.type_label = d_.type_label;
    out.input_label = d_.input_label;
    out.rank = d_.rank;
    out.positions = positions_;
    out.options = opt_;

    std::vector<State> stack;
    State cur;
    bool have_cur = true;
    while (have_cur) {
      int i = static_cast<int>(cur.c.size());
      if (i < L) {
        if (++out.nodes > opt_.node_budget)
          throw BudgetExceeded("parametrize: node budget exceeded after " +
                               std::to_string(out.nodes - 1) + " row steps at depth " +
                               std::to_string(i));
        step(cur, i, stack, out);
        continue;
      }
      emit(out, cur);
      have_cur = false;
      while (!stack.empty()) {
        cur = std::move(stack.back());
        stack.pop_back();
        if (apply_substitutions(cur, opt_, out.excluded_primes)) {
          have_cur = true;
          break;
        }
        // the popped branch is empty over every valid prime: prune it
      }
    }
    finalize(out);
    return out;
  }

 private:
  std::vector<IntPoly> build_row(const State& st, int i, std::set<Int>& primes) const {
    const int N = d_.num_positive;
    Int common = 1;
    for (int l = 0; l < i; ++l) {
      if (st.c[l] != 'N') continue;
      const Int& dl = st.coeff_den[l];
      Int g = boost::multiprecision::gcd(common, dl);
      common = common / g * dl;
    }
    if (common != 1) record_primes(primes, common);  // the whole row is scaled
    std::vector<IntPoly> row(N);
    const auto& target = d_.roots[positions_[i]];
    for (int l = 0; l < i; ++l) {
      if (st.c[l] != 'N') continue;
      std::vector<int> diff(d_.rank);
      for (int x = 0; x < d_.rank; ++x) diff[x] = target[x] - d_.roots[positions_[l]][x];
      int k = d_.index_of(diff);
      if (k < 0) continue;
      Int scale = Int(table_.constant(k, positions_[l])) * (common / st.coeff_den[l]);
      row[k] = row[k] + st.coeff_num[l] * scale;
    }
    return row;
  }

  void reduce_row(const State& st, std::vector<IntPoly>& row) const {
    for (std::size_t j = 0; j < st.Q.size(); ++j) {
      int pj = st.pivot[j];
      if (pj < 0 || row[pj].is_zero()) continue;
      const IntPoly& pivot_poly = st.Q[j][pj];
      IntPoly g = IntPoly::gcd(pivot_poly, row[pj]);
      IntPoly u = poly_divide_exact(pivot_poly, g);
      IntPoly w = poly_divide_exact(row[pj], g);
      for (auto& ent : row) ent = ent * u;
      for (std::size_t k = 0; k < row.size(); ++k) row[k] = row[k] - st.Q[j][k] * w;
      assert(row[pj].is_zero());
    }
  }

  // primes that every available nonvanishing justification of f needs
  static void record_justification(std::set<Int>& sink, const IntPoly& f,
                                   const std::vector<IntPoly>& B) {
    Int g = 0;
    if (f.is_monomial()) {
      Int c = f.leading_coeff();
      g = c < 0 ? -c : c;
    }
    if (g != 1)
      for (auto& b : B) {
        auto q = poly_divide(b, f);
        if (q) {
          g = boost::multiprecision::gcd(g, q->denominator);
          if (g == 1) break;
        }
      }
    if (g != 1 && g != 0) record_primes(sink, g);
  }

  void step(State& cur, int i, std::vector<State>& stack, Parametrization& out) {
    std::vector<IntPoly> row = build_row(cur, i, out.excluded_primes);
    reduce_row(cur, row);

    // R_i: nonzero entries not divisible by any member of A
    struct Cand {
      const IntPoly* f;
      int col;
      bool qualifies;  // monomial or divides a member of B
    };
    std::vector<Cand> cands;
    for (int k = 0; k < static_cast<int>(row.size()); ++k) {
      if (row[k].is_zero()) continue;
      bool excluded = false;
      Int dgcd = 0;
      for (auto& a : cur.A) {
        auto q = poly_divide(row[k], a);
        if (q) {
          excluded = true;
          dgcd = dgcd == 0 ? q->denominator : boost::multiprecision::gcd(dgcd, q->denominator);
          if (dgcd == 1) break;
        }
      }
      if (excluded) {
        if (dgcd != 1) record_primes(out.excluded_primes, dgcd);
        continue;
      }
      bool qual = row[k].is_monomial();
      if (!qual)
        for (auto& b : cur.B)
          if (poly_divides(row[k], b)) {
            qual = true;
            break;
          }
      cands.push_back({&row[k], k, qual});
    }

    if (cands.empty()) {
      // ramification for every relevant point: branch into R_nn and R_0
      cur.Q.push_back(row);
      cur.pivot.push_back(-1);
      State sibling = cur;
      sibling.c += '0';
      sibling.coeff_num.push_back(IntPoly());
      sibling.coeff_den.push_back(1);
      stack.push_back(std::move(sibling));
      cur.c += 'N';
      if (try_pin(cur, i)) {
        cur.coeff_num.push_back(IntPoly::constant(1));
      } else {
        int v = cur.next_var++;
        if (static_cast<int>(cur.var_dead.size()) <= v) cur.var_dead.resize(v + 1, 0);
        cur.coeff_num.push_back(IntPoly::var(v));
      }
      cur.coeff_den.push_back(1);
      return;
    }

    auto least_of = [](const std::vector<Cand>& cs, bool only_qualifying) -> const Cand* {
      const Cand* best = nullptr;
      for (auto& c : cs) {
        if (only_qualifying && !c.qualifies) continue;
        if (!best || IntPoly::less(*c.f, *best->f) ||
            (*c.f == *best->f && c.col < best->col))
          best = &c;
      }
      return best;
    };

    if (const Cand* pick = least_of(cands, true)) {
      // inert for every relevant point; the justification may cost primes
      record_justification(out.excluded_primes, *pick->f, cur.B);
      cur.c += 'I';
      cur.pivot.push_back(pick->col);
      cur.coeff_num.push_back(IntPoly());
      cur.coeff_den.push_back(1);
      cur.Q.push_back(std::move(row));
      return;
    }

    const Cand* pick = least_of(cands, false);
    // the f = 0 side is revisited later with A extended; the f != 0 side
    // continues as an inert step with f recorded in B
    State sibling = cur;  // pre-append snapshot: the sibling redoes this row
    insert_sorted(sibling.A, *pick->f);
    stack.push_back(std::move(sibling));
    insert_sorted(cur.B, *pick->f);
    cur.c += 'I';
    cur.pivot.push_back(pick->col);
    cur.coeff_num.push_back(IntPoly());
    cur.coeff_den.push_back(1);
    cur.Q.push_back(std::move(row));
  }

  bool try_pin(State& st, int i) const {
    if (!opt_.normalize) return false;
    std::vector<std::vector<long long>> rows;
    for (int j : st.normalized) {
      const auto& r = d_.roots[positions_[j]];
      rows.emplace_back(r.begin(), r.end());
    }
    const auto& r = d_.roots[positions_[i]];
    rows.emplace_back(r.begin(), r.end());
    if (!detail::unimodular_rows(std::move(rows))) return false;
    st.normalized.push_back(i);
    return true;
  }

  void emit(Parametrization& out, const State& st) {
    Cell cell;
    cell.pattern = st.c;
    cell.A = st.A;
    cell.B = st.B;
    cell.normalized = st.normalized;
    cell.substitutions = st.subs;
    for (int v = 1; v < st.next_var; ++v)
      if (v >= static_cast<int>(st.var_dead.size()) || !st.var_dead[v])
        cell.free_vars.push_back(v);
    cell.m = static_cast<int>(std::count(st.c.begin(), st.c.end(), 'N'));
    assert(static_cast<int>(cell.free_vars.size() + cell.substitutions.size() +
                            cell.normalized.size()) == cell.m);
    out.cells.push_back(std::move(cell));
  }

  void finalize(Parametrization& out) const {
    auto triple = [](const Cell& c) {
      std::string k = c.pattern + "|";
      for (auto& a : c.A) k += a.str() + ";";
      k += "|";
      for (auto& b : c.B) k += b.str() + ";";
      return k;
    };
    auto key = [&](const Cell& c) {
      std::string k = triple(c) + "|";
      for (int j : c.normalized) k += std::to_string(j) + ",";
      k += "|";
      for (auto& s : c.substitutions)
        k += std::to_string(s.var) + ":" + s.num.str() + "/" + s.den.str() + ",";
      return k;
    };
    std::sort(out.cells.begin(), out.cells.end(),
              [&](const Cell& x, const Cell& y) { return key(x) < key(y); });
    for (std::size_t i = 1; i < out.cells.size(); ++i)
      if (triple(out.cells[i - 1]) == triple(out.cells[i]))
        throw std::logic_error("parametrize: duplicate cell " + triple(out.cells[i]));
    int zero_cells = 0;
    for (auto& c : out.cells)
      if (c.pattern.find_first_not_of('0') == std::string::npos) ++zero_cells;
    if (zero_cells != 1)
      throw std::logic_error("parametrize: expected exactly one all-zero cell, found " +
                             std::to_string(zero_cells));
  }

  const BracketTable& table_;
  const RootDatum& d_;
  std::vector<int> positions_;
  ParamOptions opt_;
};

}  // namespace

Parametrization parametrize(const BracketTable& table, const ParamOptions& options) {
  ParamOptions opts = options;
  if (opts.positions.empty()) {
    opts.positions.resize(table.size());
    std::iota(opts.positions.begin(), opts.positions.end(), 0);
  }
  Solver solver(table, opts.positions, opts);
  return solver.run();
}

Parametrization parametrize_subquotient(const BracketTable& table, const std::vector<int>& outer,
                                        const std::vector<int>& inner, ParamOptions options) {
  options.positions = subquotient_positions(table.datum(), outer, inner);
  return parametrize(table, options);
}

namespace detail {

SubstOutcome substitute_in_sets(std::vector<IntPoly> A, std::vector<IntPoly> B,
                                bool allow_nonunit) {
  State st;
  st.A = std::move(A);
  st.B = std::move(B);
  resort(st.A);
  resort(st.B);
  ParamOptions opt;
  opt.substitute = true;
  opt.nonunit_substitution = allow_nonunit;
  SubstOutcome out;
  out.dead = !apply_substitutions(st, opt, out.primes);
  out.A = std::move(st.A);
  out.B = std::move(st.B);
  out.subs = std::move(st.subs);
  return out;
}

}  // namespace detail

nlohmann::ordered_json Cell::to_json() const {
  nlohmann::ordered_json j;
  j["pattern"] = pattern;
  nlohmann::ordered_json a = nlohmann::ordered_json::array();
  for (auto& f : A) a.push_back(f.str());
  j["A"] = a;
  nlohmann::ordered_json b = nlohmann::ordered_json::array();
  for (auto& f : B) b.push_back(f.str());
  j["B"] = b;
  std::vector<int> norm1;
  for (int p : normalized) norm1.push_back(p + 1);
  j["normalized"] = norm1;
  nlohmann::ordered_json subs = nlohmann::ordered_json::array();
  for (auto& s : substitutions) {
    nlohmann::ordered_json e;
    e["var"] = s.var;
    e["num"] = s.num.str();
    if (s.den != 1) e["den"] = s.den.str();
    subs.push_back(e);
  }
  j["substitutions"] = subs;
  j["free_vars"] = free_vars;
  j["m"] = m;
  return j;
}

nlohmann::ordered_json Parametrization::to_json() const {
  nlohmann::ordered_json j;
  nlohmann::ordered_json meta;
  meta["type"] = std::string(1, type_label);
  if (input_label != type_label) meta["input_type"] = std::string(1, input_label);
  meta["rank"] = rank;
  std::vector<int> pos1;
  for (int p : positions) pos1.push_back(p + 1);
  meta["positions"] = pos1;
  nlohmann::ordered_json o;
  o["normalize"] = options.normalize;
  o["substitute"] = options.substitute;
  o["nonunit_substitution"] = options.nonunit_substitution;
  meta["options"] = o;
  std::vector<std::string> primes;
  for (auto& p : excluded_primes) primes.push_back(p.str());
  meta["excluded_primes"] = primes;
  meta["cell_count"] = cells.size();
  meta["nodes"] = nodes;
  j["meta"] = meta;
  nlohmann::ordered_json cs = nlohmann::ordered_json::array();
  for (auto& c : cells) cs.push_back(c.to_json());
  j["cells"] = cs;
  return j;
}

}  // namespace nilorbit
