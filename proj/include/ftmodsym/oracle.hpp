#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <utility>
#include <vector>

#include "ftmodsym/error.hpp"
#include "ftmodsym/linalg.hpp"
#include "ftmodsym/projective.hpp"

namespace ftmodsym {

enum class RelationKind { TwoTerm, ThreeTerm, Diagonal };

inline const char* relation_kind_name(RelationKind k) {
  switch (k) {
    case RelationKind::TwoTerm: return "two-term";
    case RelationKind::ThreeTerm: return "three-term";
    case RelationKind::Diagonal: return "diagonal";
  }
  return "?";
}

using SparseRow = std::map<std::size_t, Integer>;

struct Relation {
  RelationKind kind;
  std::size_t source;  // index of x
  SparseRow row;       // may be empty when the terms cancel
};

struct RelationSystem {
  std::vector<P1Point> generators;
  std::vector<Relation> rows;
};

// One row per x for (x)+(x sigma), (x)+(x tau)+(x tau^2), and (x)-(x delta)
// for every delta = diag(lambda, 1), lambda != 1.
inline RelationSystem build_relations(const P1List& pts) {
  const LevelContext& ctx = pts.level();
  const FqField& f = ctx.field();
  const Mat2 sigma = Mat2::sigma(f), tau = Mat2::tau(f);
  RelationSystem sys;
  sys.generators = pts.points();
  auto add = [](SparseRow& row, std::size_t i, int c) {
    auto& slot = row[i];
    slot += c;
    if (slot == 0) row.erase(i);
  };
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const P1Point& x = pts[i];
    const P1Point xs = *p1_act(x, sigma, ctx);
    const P1Point xt = *p1_act(x, tau, ctx);
    const P1Point xtt = *p1_act(xt, tau, ctx);
    Relation two{RelationKind::TwoTerm, i, {}};
    add(two.row, i, 1);
    add(two.row, pts.index_of(xs), 1);
    sys.rows.push_back(std::move(two));
    Relation three{RelationKind::ThreeTerm, i, {}};
    add(three.row, i, 1);
    add(three.row, pts.index_of(xt), 1);
    add(three.row, pts.index_of(xtt), 1);
    sys.rows.push_back(std::move(three));
    for (Elem lambda = 2; lambda < f.q(); ++lambda) {
      Relation diag{RelationKind::Diagonal, i, {}};
      add(diag.row, i, 1);
      add(diag.row, pts.index_of(*p1_act(x, Mat2::delta(f, lambda), ctx)), -1);
      sys.rows.push_back(std::move(diag));
    }
  }
  return sys;
}

// Structure of Z^n / (row lattice) and the class of each unit vector in a
// basis of the free part tensored with Q.
struct QuotientSolution {
  std::size_t rank = 0;
  ZVector torsion;              // invariant factors > 1
  std::vector<QVector> coords;  // per column, length rank
};

namespace detail {

inline void normalize_sign(SparseRow& row) {
  if (!row.empty() && row.begin()->second < 0)
    for (auto& [c, a] : row) a = -a;
}

}  // namespace detail

// Unit-pivot sparse elimination, then Smith form and RREF on what is left.
inline QuotientSolution solve_quotient(std::size_t n, std::vector<SparseRow> input) {
  std::set<SparseRow> unique;
  for (auto& r : input) {
    if (r.empty()) continue;
    detail::normalize_sign(r);
    unique.insert(std::move(r));
  }
  std::vector<SparseRow> rows(unique.begin(), unique.end());
  std::vector<bool> alive(rows.size(), true);
  std::vector<std::set<std::size_t>> col_rows(n);
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (auto& [c, a] : rows[r]) col_rows[c].insert(r);

  struct Substitution {
    std::size_t col;
    SparseRow row;
  };
  std::vector<Substitution> subs;
  std::vector<bool> eliminated(n, false);

  while (true) {
    std::size_t best_r = rows.size(), best_c = 0, best_cost = SIZE_MAX;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (!alive[r]) continue;
      for (auto& [c, a] : rows[r]) {
        if (a != 1 && a != -1) continue;
        const std::size_t cost = (rows[r].size() - 1) * (col_rows[c].size() - 1);
        if (cost < best_cost) {
          best_cost = cost;
          best_r = r;
          best_c = c;
        }
      }
      if (best_cost == 0) break;
    }
    if (best_r == rows.size()) break;
    const SparseRow pivot = rows[best_r];
    const Integer a_rc = pivot.at(best_c);
    alive[best_r] = false;
    for (auto& [c, a] : pivot) col_rows[c].erase(best_r);
    const std::vector<std::size_t> targets(col_rows[best_c].begin(), col_rows[best_c].end());
    for (std::size_t i : targets) {
      SparseRow& row = rows[i];
      const Integer factor = row.at(best_c) * a_rc;
      for (auto& [c, a] : pivot) {
        auto it = row.find(c);
        if (it == row.end()) {
          row.emplace(c, -factor * a);
          col_rows[c].insert(i);
        } else {
          it->second -= factor * a;
          if (it->second == 0) {
            row.erase(it);
            col_rows[c].erase(i);
          }
        }
      }
      if (row.empty()) alive[i] = false;
    }
    eliminated[best_c] = true;
    subs.push_back({best_c, pivot});
  }

  std::vector<std::size_t> remaining, pos(n, SIZE_MAX);
  for (std::size_t c = 0; c < n; ++c)
    if (!eliminated[c]) {
      pos[c] = remaining.size();
      remaining.push_back(c);
    }
  ZMatrix dense;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (!alive[r]) continue;
    ZVector row(remaining.size(), Integer(0));
    for (auto& [c, a] : rows[r]) {
      ensure(!eliminated[c], "eliminated column survived elimination");
      row[pos[c]] = a;
    }
    dense.push_back(std::move(row));
  }

  QuotientSolution out;
  const ZVector inv = smith_invariants(dense);
  for (const Integer& x : inv)
    if (x > 1) out.torsion.push_back(x);
  out.rank = remaining.size() - inv.size();

  QMatrix qdense;
  for (auto& row : dense) qdense.push_back(to_rational(row));
  Rref red = rref(std::move(qdense));
  std::vector<bool> is_pivot(remaining.size(), false);
  for (auto c : red.pivots) is_pivot[c] = true;
  std::vector<std::size_t> free_pos(remaining.size(), SIZE_MAX);
  std::size_t nfree = 0;
  for (std::size_t j = 0; j < remaining.size(); ++j)
    if (!is_pivot[j]) free_pos[j] = nfree++;
  ensure(nfree == out.rank, "Smith and RREF ranks disagree");

  out.coords.assign(n, QVector(out.rank, Rational(0)));
  for (std::size_t j = 0; j < remaining.size(); ++j)
    if (!is_pivot[j]) out.coords[remaining[j]][free_pos[j]] = 1;
  for (std::size_t i = 0; i < red.pivots.size(); ++i) {
    QVector& v = out.coords[remaining[red.pivots[i]]];
    for (std::size_t j = 0; j < remaining.size(); ++j)
      if (!is_pivot[j] && red.m[i][j] != 0) v[free_pos[j]] = -red.m[i][j];
  }
  for (auto it = subs.rbegin(); it != subs.rend(); ++it) {
    const Integer a_rc = it->row.at(it->col);
    QVector v(out.rank, Rational(0));
    for (auto& [c, a] : it->row) {
      if (c == it->col) continue;
      const Rational k = Rational(-a_rc * a);
      for (std::size_t t = 0; t < out.rank; ++t)
        if (out.coords[c][t] != 0) v[t] += k * out.coords[c][t];
    }
    out.coords[it->col] = std::move(v);
  }
  return out;
}

struct PresentationResult {
  std::vector<P1Point> generators;
  std::size_t rank = 0;
  ZVector torsion;
  std::vector<std::size_t> basis;  // generator indices forming a basis of the free part
  std::vector<QVector> coords;     // per generator, in that basis
};

// Greedily picks the first vectors (in order) that are linearly independent.
inline std::vector<std::size_t> greedy_independent(const std::vector<QVector>& vs, std::size_t target) {
  std::vector<std::size_t> chosen;
  std::vector<QVector> echelon;
  std::vector<std::size_t> lead;
  for (std::size_t i = 0; i < vs.size() && chosen.size() < target; ++i) {
    QVector v = vs[i];
    for (std::size_t k = 0; k < echelon.size(); ++k)
      if (v[lead[k]] != 0) v = v - scaled(echelon[k], v[lead[k]]);
    auto nz = std::find_if(v.begin(), v.end(), [](const Rational& x) { return x != 0; });
    if (nz == v.end()) continue;
    const std::size_t l = static_cast<std::size_t>(nz - v.begin());
    v = scaled(v, 1 / v[l]);
    for (auto& e : echelon)
      if (e[l] != 0) e = e - scaled(v, e[l]);
    echelon.push_back(std::move(v));
    lead.push_back(l);
    chosen.push_back(i);
  }
  return chosen;
}

inline PresentationResult solve_presentation(const P1List& pts) {
  RelationSystem sys = build_relations(pts);
  std::vector<SparseRow> rows;
  rows.reserve(sys.rows.size());
  for (auto& r : sys.rows) rows.push_back(std::move(r.row));
  QuotientSolution sol = solve_quotient(pts.size(), std::move(rows));

  PresentationResult out;
  out.generators = pts.points();
  out.rank = sol.rank;
  out.torsion = sol.torsion;
  out.basis = greedy_independent(sol.coords, sol.rank);
  ensure(out.basis.size() == sol.rank, "greedy basis selection fell short");
  std::vector<QVector> cols;
  for (auto i : out.basis) cols.push_back(sol.coords[i]);
  const auto change = inverse(from_columns(cols, sol.rank));
  ensure(change.has_value(), "greedy basis is singular");
  out.coords.reserve(pts.size());
  for (const auto& v : sol.coords) out.coords.push_back(*change * v);
  return out;
}

// Divisor m0*[0] + minf*[inf] on the two cusp classes of a prime level.
struct CuspDivisor {
  Rational at_zero = 0;
  Rational at_inf = 0;

  bool is_zero() const { return at_zero == 0 && at_inf == 0; }
  Rational degree() const { return at_zero + at_inf; }
  friend bool operator==(const CuspDivisor&, const CuspDivisor&) = default;
  CuspDivisor& operator+=(const CuspDivisor& o) {
    at_zero += o.at_zero;
    at_inf += o.at_inf;
    return *this;
  }
  friend CuspDivisor operator*(const Rational& k, CuspDivisor d) {
    d.at_zero *= k;
    d.at_inf *= k;
    return d;
  }
  std::string str() const {
    return format_rational(at_zero) + "*[0] + " + format_rational(at_inf) + "*[inf]";
  }
};

// Boundary of xi(u:v) = [b/v, a/u]: (class of a/u) - (class of b/v). A cusp
// with reduced denominator w is in the class of infinity iff P | w.
inline CuspDivisor boundary(const P1Point& x, const LevelContext& ctx) {
  require(ctx.is_prime(), "level_not_prime", "boundary map needs a prime level");
  CuspDivisor out;
  (x.u.is_zero() ? out.at_inf : out.at_zero) += 1;
  (x.v.is_zero() ? out.at_inf : out.at_zero) -= 1;
  return out;
}

struct ParabolicSubspace {
  std::size_t rank = 0;
  QMatrix inclusion;  // columns: basis of the kernel, in presentation coordinates
};

inline ParabolicSubspace parabolic_subspace(const PresentationResult& pres, const LevelContext& ctx) {
  require(ctx.is_prime(), "level_not_prime", "parabolic subspace needs a prime level");
  QMatrix functional(1, QVector(pres.rank, Rational(0)));
  for (std::size_t j = 0; j < pres.rank; ++j)
    functional[0][j] = boundary(pres.generators[pres.basis[j]], ctx).at_inf;
  auto ker = kernel(functional, pres.rank);
  return {ker.size(), from_columns(ker, pres.rank)};
}

}  // namespace ftmodsym
