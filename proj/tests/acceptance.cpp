// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on failure.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

#include "ftmodsym/hecke.hpp"
#include "ftmodsym/winding.hpp"

using namespace ftmodsym;

namespace {

const FqField& F(std::uint64_t q) { return FqField::of_order(q); }
Poly P(const char* s, std::uint64_t q) { return parse_poly(s, F(q)); }

std::vector<Poly> primes_of(std::uint64_t q, int d) {
  std::vector<Poly> out;
  for (const Poly& m : enumerate_monic(d, F(q)))
    if (is_irreducible(m)) out.push_back(m);
  return out;
}

Integer ipow(std::uint64_t q, int k) {
  Integer r = 1;
  for (int i = 0; i < k; ++i) r *= q;
  return r;
}

QMatrix Q(std::initializer_list<std::initializer_list<long>> rows) {
  QMatrix m;
  for (auto r : rows) {
    QVector v;
    for (long x : r) v.emplace_back(x);
    m.push_back(std::move(v));
  }
  return m;
}

// Collects failed checks with a short description.
struct Check {
  std::ostringstream why;
  bool ok = true;
  void expect(bool cond, const std::string& what) {
    if (cond) return;
    if (ok) why << what;
    ok = false;
  }
};

QVector parabolic_of(const SymbolSpace& V, const char* u, const char* v, std::uint64_t q) {
  return V.to_parabolic(V.coords(p1_normalize(P(u, q), P(v, q), V.level())));
}

void golden_degree_three(Check& c) {
  const LevelContext ctx(P("T^3+T+1", 2));
  const SymbolSpace V(ctx, BasisKind::Explicit);
  c.expect(V.parabolic_labels() == std::vector<std::string>{"(T:1)", "(T+1:1)"}, "parabolic basis");
  const auto T = hecke_matrix(V, P("T", 2), true);
  c.expect(T.rows == Q({{-3, -1}, {2, 1}}), "T_(T) matrix");
  c.expect(charpoly(T.rows) == std::vector<Rational>{1, 2, -1}, "T_(T) charpoly");
  HeckeCache cache(V);
  const auto w = winding_element(V, cache);
  c.expect(w.e == QVector{Rational(1, 7), Rational(1, 7)}, "winding element");
  c.expect(winding_denominator(w) == 7, "denominator");
  c.expect(eta_parabolic(cache, P("T", 2), F(2)) * w.e == scaled(parabolic_of(V, "T", "1", 2), Rational(-1)),
           "eta_T e");
}

void golden_degree_four(Check& c) {
  const LevelContext ctx(P("T^4+T+1", 2));
  const SymbolSpace V(ctx, BasisKind::EvenCompletion);
  std::vector<P1Point> fam;
  for (const char* u : {"T", "T+1", "T^2", "T^2+1"}) fam.push_back(p1_normalize(P(u, 2), P("1", 2), ctx));
  std::vector<QVector> cols;
  for (const auto& x : fam) {
    c.expect(boundary(x, ctx).is_zero(), "family not parabolic");
    cols.push_back(V.coords(x));
  }
  c.expect(rank(cols) == 4 && V.genus() == 4, "family rank");
  if (!c.ok) return;
  const QMatrix w = atkin_lehner_matrix(V, false).rows;
  const QMatrix B = from_columns(cols, V.dim());
  QMatrix got = zero_matrix(4, 4);
  for (std::size_t j = 0; j < 4; ++j) {
    const auto s = solve(B, w * cols[j]);
    c.expect(s.has_value(), "w leaves the family span");
    if (!s) return;
    for (std::size_t i = 0; i < 4; ++i) got[i][j] = (*s)[i];
  }
  const QMatrix expect = Q({{-1, 0, 0, -1}, {0, -1, -1, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}});
  c.expect(got == expect || got == transpose(expect), "w matrix");
  c.expect(kernel(got + identity_matrix(4), 4).size() == 2, "(-1)-eigenspace dimension");
}

void oracle_equivalence(Check& c) {
  for (auto [q, d] : std::vector<std::pair<std::uint64_t, int>>{{2, 3}, {2, 5}, {3, 3}, {5, 3}})
    for (const Poly& N : primes_of(q, d)) {
      const LevelContext ctx(N);
      const P1List pts(ctx);
      const auto pres = solve_presentation(pts);
      const ExplicitRewriter rw(ctx);
      const Integer size = 1 + (ipow(q, d) - q) / (q * q - 1);
      c.expect(Integer(rw.size()) == size && rw.size() == pres.rank, "basis size at " + N.str());
      if (!c.ok) return;
      std::vector<QVector> image;
      for (const auto& y : rw.basis()) image.push_back(pres.coords[pts.index_of(p1a_reduce(y, ctx))]);
      for (std::size_t i = 0; i < pts.size(); ++i) {
        const QVector r = rw.rewrite(pts[i]);
        QVector via(pres.rank, Rational(0));
        for (std::size_t j = 0; j < r.size(); ++j)
          if (r[j] != 0) via = via + scaled(image[j], r[j]);
        c.expect(via == pres.coords[i], "coordinates at " + N.str() + " " + pts[i].str());
        if (!c.ok) return;
      }
    }
}

void presentation_structure(Check& c) {
  for (auto [q, d] : std::vector<std::pair<std::uint64_t, int>>{{2, 2}, {2, 3}, {2, 4}, {3, 2}, {3, 3}})
    for (const Poly& N : primes_of(q, d)) {
      const LevelContext ctx(N);
      const auto pres = solve_presentation(P1List(ctx));
      const Integer g = genus_formula(ctx);
      const std::size_t cusps = 2;
      c.expect(Integer(pres.rank) == g + cusps - 1, "rank at " + N.str());
      if (d % 2 == 1)
        c.expect(pres.torsion.empty(), "torsion at " + N.str());
      else
        c.expect(pres.torsion == ZVector{Integer(q + 1)}, "torsion at " + N.str());
      c.expect(Integer(parabolic_subspace(pres, ctx).rank) == g, "parabolic rank at " + N.str());
    }
}

int root_count(const Poly& m) {
  const FqField& f = m.field();
  int n = 0;
  for (Elem x = 0; x < f.q(); ++x) {
    Elem v = 0;
    for (auto it = m.coeffs().rbegin(); it != m.coeffs().rend(); ++it) v = f.add(f.mul(v, x), *it);
    n += v == 0;
  }
  return n;
}

void heilbronn_cardinalities(Check& c) {
  for (std::uint64_t q : {2, 3, 5})
    for (int k : {1, 2})
      for (const Poly& m : enumerate_monic(k, F(q))) {
        const auto S = heilbronn_enumerate(m);
        const std::size_t expect = k == 1 ? 2 * q : 3 * q * q + q * root_count(m) - q;
        c.expect(S.matrices.size() == expect, "cardinality at " + m.str());
        for (const auto& M : S.matrices) {
          c.expect(M.det() == m, "determinant at " + m.str());
          c.expect(M.a.is_monic() && M.d.is_monic() && M.a.degree() > M.b.degree() && M.d.degree() > M.c.degree(),
                   "degree constraints at " + m.str());
        }
      }
}

void hecke_cross_validation(Check& c) {
  for (auto [q, d] : std::vector<std::pair<std::uint64_t, int>>{{2, 3}, {2, 5}, {3, 3}, {3, 5}})
    for (const Poly& N : primes_of(q, d)) {
      const LevelContext ctx(N);
      const FqField& f = ctx.field();
      const SymbolSpace V(ctx, BasisKind::Oracle);
      const P1Point zero_inf{Poly::zero(f), Poly::one(f)};
      for (int k = 0; k <= 2; ++k)
        for (const Poly& m : enumerate_monic(k, f)) {
          const bool same = V.coords(hecke_on_generator(zero_inf, m, ctx)) ==
                            V.coords(hecke_via_definition(m, Cusp::zero(f), Cusp::infinity(f), ctx));
          c.expect(same, "at " + N.str() + " m=" + m.str());
          if (!c.ok) return;
        }
    }
}

void hecke_identities(Check& c) {
  for (auto [q, t] : std::vector<std::pair<std::uint64_t, const char*>>{
           {2, "T^3+T+1"}, {3, "T^3+2*T+1"}, {5, "T^3+T+1"}, {2, "T^4+T+1"}, {2, "T^5+T^2+1"}}) {
    const LevelContext ctx(P(t, q));
    const FqField& f = ctx.field();
    const SymbolSpace V(ctx, SymbolSpace::default_kind(ctx));
    const QMatrix I = identity_matrix(V.dim());
    std::map<Poly, QMatrix> op;
    for (const Poly& m : monic_up_to(2, ctx)) op.emplace(m, hecke_ambient(V, m));
    for (auto i = op.begin(); i != op.end(); ++i)
      for (auto j = std::next(i); j != op.end(); ++j)
        c.expect(i->second * j->second == j->second * i->second,
                 std::string("commutativity at ") + t + ": " + i->first.str() + ", " + j->first.str());
    for (int k = 1; k <= 2; ++k)
      for (const Poly& l : enumerate_monic(k, f)) {
        if (!is_irreducible(l) || !coprime(l, ctx.N())) continue;
        const Rational nl(ipow(q, k));
        QMatrix prev = I, cur = op.at(l);
        Poly power = l;
        for (int i = 1; i <= (k == 1 ? 2 : 1); ++i) {
          const QMatrix next = hecke_ambient(V, power * l);
          c.expect(cur * op.at(l) == next + scaled(prev, nl), std::string("recurrence at ") + t + " l=" + l.str());
          prev = cur;
          cur = next;
          power = power * l;
        }
      }
    const auto w = atkin_lehner_matrix(V, false);
    c.expect(w.rows * w.rows == I, std::string("w^2 at ") + t);
    const auto wp = atkin_lehner_matrix(V, true);
    c.expect(wp.rows + parabolic_block(V, hecke_ambient(V, ctx.N())) == zero_matrix(V.genus(), V.genus()),
             std::string("w = -T_p at ") + t);
  }
}

void eisenstein_index(Check& c) {
  for (auto [q, t, n] : std::vector<std::tuple<std::uint64_t, const char*, int>>{
           {2, "T^3+T+1", 7}, {3, "T^3+2*T+1", 13}, {2, "T^5+T^2+1", 31}}) {
    const LevelContext ctx(P(t, q));
    const SymbolSpace V(ctx, SymbolSpace::default_kind(ctx));
    c.expect(eisenstein_number(ctx) == n, std::string("N(p) at ") + t);
    const auto idx = hecke_algebra_index(V);
    std::cout << "  " << t << " (q=" << q << "): index "
              << (idx.index ? idx.index->str() : std::string("none")) << ", cap " << idx.cap
              << (idx.stable ? ", stable" : ", not stable") << "\n";
    c.expect(idx.index.has_value() && *idx.index == n, std::string("index at ") + t);
    c.expect(idx.stable, std::string("stability at ") + t);
  }
}

void independence_and_nonvanishing(Check& c) {
  {
    const LevelContext ctx(P("T^5+T^2+1", 2));
    const SymbolSpace V(ctx, BasisKind::Explicit);
    HeckeCache cache(V);
    const auto w = winding_element(V, cache);
    c.expect(independence_rank(V, cache, w, 1) == 3, "rank over Q");
    c.expect(independence_rank_mod_p(V, cache, w, 1) == 3, "rank over F2");
    const auto nv = nonvanishing_count(V, cache, w, ctx.d() + 1);
    std::cout << "  T^5+T^2+1 (q=2): nonvanishing " << nv.count << " of " << V.genus() << "\n";
    c.expect(Integer(nv.count) >= ideal_count(F(2), 1) && ideal_count(F(2), 1) == 3, "nonvanishing lower bound");
  }
  for (auto [q, t] : std::vector<std::pair<std::uint64_t, const char*>>{{2, "T^3+T+1"}, {3, "T^3+2*T+1"}, {5, "T^3+T+1"}}) {
    const LevelContext ctx(P(t, q));
    const SymbolSpace V(ctx, BasisKind::Explicit);
    HeckeCache cache(V);
    const auto nv = nonvanishing_count(V, cache, winding_element(V, cache), ctx.d() + 1);
    c.expect(nv.count == V.genus(), std::string("degree three count at ") + t);
  }
}

std::uint64_t brute_coprime(int i, int j, const FqField& f) {
  std::uint64_t n = 0;
  for (const Poly& a : enumerate_monic(i, f))
    for (const Poly& b : enumerate_monic(j, f)) n += coprime(a, b);
  return n;
}

void counting_formulas(Check& c) {
  for (std::uint64_t q : {2, 3}) {
    const FqField& f = F(q);
    for (int i = 0; i <= 6; ++i)
      for (int j = 0; i + j <= 6; ++j)
        c.expect(count_coprime(i, j, f) == brute_coprime(i, j, f),
                 "N_{" + std::to_string(i) + "," + std::to_string(j) + "} at q=" + std::to_string(q));
    for (int e = 0; e <= 3; ++e) {
      std::uint64_t pairs = 0;
      for (const Poly& u : enumerate_below(e + 1, f))
        for (const Poly& v : enumerate_below(e + 1, f)) pairs += coprime(u, v);
      const Integer brute = pairs / (q - 1), formula = ipow(q, 2 * e + 1) + 1;
      c.expect(brute == formula && Integer(p1a_truncated_enumerate(e, f).size()) == formula,
               "|P1(A)_" + std::to_string(e) + "| at q=" + std::to_string(q));
    }
  }
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Check&)>>> criteria{
      {"golden example, q=2, T^3+T+1", golden_degree_three},
      {"golden example, q=2, T^4+T+1", golden_degree_four},
      {"explicit basis agrees with the oracle", oracle_equivalence},
      {"presentation rank and torsion", presentation_structure},
      {"Heilbronn cardinalities", heilbronn_cardinalities},
      {"Hecke cross-validation", hecke_cross_validation},
      {"Hecke algebra identities", hecke_identities},
      {"Eisenstein quotient index", eisenstein_index},
      {"independence and nonvanishing", independence_and_nonvanishing},
      {"counting formulas", counting_formulas},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Check c;
    const auto start = std::chrono::steady_clock::now();
    try {
      criteria[i].second(c);
    } catch (const std::exception& e) {
      c.expect(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    char t[32];
    std::snprintf(t, sizeof t, "%.2fs", secs);
    std::cout << (c.ok ? "PASS " : "FAIL ") << i + 1 << ": " << criteria[i].first << " (" << t << ")";
    if (!c.ok) std::cout << ": " << c.why.str();
    std::cout << std::endl;
    failed += !c.ok;
  }
  return failed == 0 ? 0 : 1;
}
