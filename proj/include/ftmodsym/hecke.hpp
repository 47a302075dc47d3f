#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ftmodsym/linalg.hpp"
#include "ftmodsym/parallel.hpp"
#include "ftmodsym/space.hpp"
#include "ftmodsym/symbols.hpp"

namespace ftmodsym {

// S_m: (a b; c d) with a, d monic, deg a > deg b, deg d > deg c, ad - bc = m.
struct HeilbronnSet {
  Poly m;
  std::vector<Mat2> matrices;
};

inline HeilbronnSet heilbronn_enumerate(const Poly& m) {
  require(!m.is_zero(), "zero_input", "S_m needs a nonzero m");
  require(m.is_monic(), "not_monic", "S_m needs a monic generator");
  const FqField& f = m.field();
  const int n = m.degree().value();
  HeilbronnSet out{m, {}};
  for (int i = 0; i <= n; ++i) {
    const auto as = enumerate_monic(i, f);
    const auto ds = enumerate_monic(n - i, f);
    const auto bs = enumerate_below(i, f);  // deg b < deg a, includes 0
    const auto cs = enumerate_below(n - i, f);
    for (const Poly& a : as)
      for (const Poly& d : ds) {
        const Poly ad = a * d;
        for (const Poly& b : bs) {
          if (b.is_zero()) {
            if (ad != m) continue;
            for (const Poly& c : cs) out.matrices.push_back({a, b, c, d});
            continue;
          }
          auto [c, r] = divmod(ad - m, b);
          if (!r.is_zero() || c.degree() >= d.degree()) continue;
          out.matrices.push_back({a, b, c, d});
        }
      }
  }
  std::sort(out.matrices.begin(), out.matrices.end());
  return out;
}

inline FormalSum hecke_on_generator(const P1Point& x, const HeilbronnSet& S, const LevelContext& ctx) {
  FormalSum out;
  for (const Mat2& M : S.matrices)
    if (auto y = p1_act(x, M, ctx)) out.add(*y, 1);
  return out;
}

inline FormalSum hecke_on_generator(const P1Point& x, const Poly& m, const LevelContext& ctx) {
  return hecke_on_generator(x, heilbronn_enumerate(m), ctx);
}

// Upper triangular (a b; 0 d) with ad = m, a, d monic, a prime to the level,
// deg b < deg d.
inline std::vector<Mat2> hecke_triangular(const Poly& m, const LevelContext& ctx) {
  const FqField& f = m.field();
  std::vector<Mat2> out;
  const int n = m.degree().value();
  for (int i = 0; i <= n; ++i)
    for (const Poly& a : enumerate_monic(i, f)) {
      auto [d, r] = divmod(m, a);
      if (!r.is_zero() || !coprime(a, ctx.N())) continue;
      for (const Poly& b : enumerate_below(n - i, f)) out.push_back({a, b, Poly::zero(f), d});
    }
  return out;
}

inline FormalSum hecke_via_definition(const Poly& m, const Cusp& r, const Cusp& s, const LevelContext& ctx) {
  FormalSum out;
  for (const Mat2& M : hecke_triangular(m, ctx)) out += xi_path(r.apply(M), s.apply(M), ctx);
  return out;
}

// w_n on xi(x) = [g0, g inf]: the path [-1/(n g0), -1/(n g inf)].
inline FormalSum atkin_lehner_on_generator(const P1Point& x, const LevelContext& ctx) {
  const FqField& f = ctx.field();
  const Mat2 g = gl2_lift(x, ctx);
  const Mat2 w{Poly::zero(f), -Poly::one(f), ctx.N(), Poly::zero(f)};
  const Cusp r = Cusp::zero(f).apply(g), s = Cusp::infinity(f).apply(g);
  return xi_path(r.apply(w), s.apply(w), ctx);
}

struct OperatorMatrix {
  std::string label;
  std::vector<std::string> basis;
  QMatrix rows;  // column j is the image of basis element j
};

// Matrix of a linear map given on generators, on the ambient basis.
template <class OnGenerator>
QMatrix ambient_matrix(const SymbolSpace& V, OnGenerator&& image) {
  std::vector<QVector> cols(V.dim());
  parallel_for(V.dim(), [&](std::size_t j) { cols[j] = V.coords(image(V.basis_generators()[j])); });
  return from_columns(cols, V.dim());
}

// Restriction of an ambient matrix to the parabolic basis.
inline QMatrix parabolic_block(const SymbolSpace& V, const QMatrix& ambient) {
  require(V.has_parabolic(), "level_not_prime", "parabolic block needs a prime level");
  std::vector<QVector> cols;
  for (const auto& b : V.parabolic_basis()) {
    auto y = V.try_to_parabolic(ambient * b);
    ensure(y.has_value(), "operator does not preserve the parabolic subspace");
    cols.push_back(*y);
  }
  return from_columns(cols, V.genus());
}

inline std::string hecke_label(const std::string& op, const Poly& m) { return op + "_(" + m.str() + ")"; }

inline QMatrix hecke_ambient(const SymbolSpace& V, const Poly& m) {
  const HeilbronnSet S = heilbronn_enumerate(m);
  return ambient_matrix(V, [&](const P1Point& x) { return hecke_on_generator(x, S, V.level()); });
}

inline OperatorMatrix hecke_matrix(const SymbolSpace& V, const Poly& m, bool parabolic) {
  QMatrix a = hecke_ambient(V, m);
  if (parabolic) return {hecke_label("T", m), V.parabolic_labels(), parabolic_block(V, a)};
  return {hecke_label("T", m), V.basis_labels(), std::move(a)};
}

inline OperatorMatrix eta_matrix(const SymbolSpace& V, const Poly& m, bool parabolic) {
  OperatorMatrix t = hecke_matrix(V, m, parabolic);
  Integer shift = 1;
  for (int i = 0; i < m.degree().value(); ++i) shift *= V.level().field().q();
  shift += 1;
  for (std::size_t i = 0; i < t.rows.size(); ++i) t.rows[i][i] -= Rational(shift);
  t.label = hecke_label("eta", m);
  return t;
}

inline OperatorMatrix atkin_lehner_matrix(const SymbolSpace& V, bool parabolic) {
  QMatrix a = ambient_matrix(V, [&](const P1Point& x) { return atkin_lehner_on_generator(x, V.level()); });
  const std::string label = "w_(" + V.level().N().str() + ")";
  if (parabolic) return {label, V.parabolic_labels(), parabolic_block(V, a)};
  return {label, V.basis_labels(), std::move(a)};
}

// Integer eigenvalues of a matrix with integral characteristic polynomial.
inline std::vector<Integer> integer_eigenvalues(const QMatrix& a) {
  const auto cp = charpoly(a);
  std::vector<Integer> out;
  for (const auto& c : cp)
    if (denom(c) != 1) return out;
  Rational bound = 0;
  for (const auto& row : a) {
    Rational s = 0;
    for (const auto& x : row) s += x < 0 ? Rational(-x) : x;
    bound = std::max(bound, s);
  }
  const Integer B = numer(bound) / denom(bound) + 1;
  for (Integer k = -B; k <= B; ++k) {
    Rational v = 0;
    for (const auto& c : cp) v = v * Rational(k) + c;
    if (v == 0) out.push_back(k);
  }
  return out;
}

struct HeckeAlgebraIndex {
  int cap = 0;
  std::size_t lattice_rank = 0;
  ZVector invariants;         // Smith invariants of the Eisenstein sub-lattice
  std::optional<Integer> index;  // order of the quotient, if finite
  bool stable = false;        // same result at cap + 1
  std::optional<Integer> index_next;
};

namespace detail {

inline ZVector flatten_integral(const QMatrix& m) {
  ZVector out;
  for (const auto& row : m)
    for (const auto& x : row) {
      ensure(denom(x) == 1, "Hecke matrix is not integral on the parabolic lattice");
      out.push_back(numer(x));
    }
  return out;
}

inline QMatrix unflatten(const ZVector& v, std::size_t g) {
  QMatrix m = zero_matrix(g, g);
  for (std::size_t i = 0; i < g; ++i)
    for (std::size_t j = 0; j < g; ++j) m[i][j] = Rational(v[i * g + j]);
  return m;
}

// Coordinates of v in the row lattice of an HNF basis, if v lies in it.
inline std::optional<ZVector> hnf_coordinates(const ZMatrix& H, ZVector v) {
  ZVector coords(H.size(), Integer(0));
  for (std::size_t r = 0; r < H.size(); ++r) {
    std::size_t c = 0;
    while (H[r][c] == 0) ++c;
    if (v[c] % H[r][c] != 0) return std::nullopt;
    coords[r] = v[c] / H[r][c];
    for (std::size_t j = c; j < v.size(); ++j) v[j] -= coords[r] * H[r][j];
  }
  for (const auto& x : v)
    if (x != 0) return std::nullopt;
  return coords;
}

struct IndexAtCap {
  std::size_t rank;
  ZVector invariants;
  std::optional<Integer> index;
};

// Z-lattice of the ring generated by the given matrices (closure of their
// span under multiplication by the generators), in HNF.
inline ZMatrix ring_closure(const std::vector<QMatrix>& generators, std::size_t g) {
  ZMatrix rows;
  for (const auto& m : generators) rows.push_back(flatten_integral(m));
  ZMatrix H = hnf_rows(rows);
  for (;;) {
    ZMatrix grown = H;
    for (const auto& row : H) {
      const QMatrix b = unflatten(row, g);
      for (const auto& m : generators) grown.push_back(flatten_integral(b * m));
    }
    ZMatrix next = hnf_rows(std::move(grown));
    if (next == H) return H;
    H = std::move(next);
  }
}

inline IndexAtCap index_at_cap(const SymbolSpace& V, int cap) {
  const LevelContext& ctx = V.level();
  const FqField& f = ctx.field();
  const std::size_t g = V.genus();
  std::vector<std::pair<Poly, QMatrix>> hecke;
  for (int k = 0; k <= cap; ++k)
    for (const Poly& r : enumerate_monic(k, f))
      if (coprime(r, ctx.N())) hecke.emplace_back(r, parabolic_block(V, hecke_ambient(V, r)));
  std::vector<QMatrix> gens;
  for (auto& [r, m] : hecke) gens.push_back(m);
  const ZMatrix H = ring_closure(gens, g);
  std::vector<QMatrix> algebra_basis;
  for (const auto& row : H) algebra_basis.push_back(unflatten(row, g));

  ZMatrix ideal;
  for (auto& [r, m] : hecke) {
    if (r.degree() < Degree(1) || !is_irreducible(r)) continue;
    Integer shift = 1;
    for (int i = 0; i < r.degree().value(); ++i) shift *= f.q();
    QMatrix eta = m;
    for (std::size_t i = 0; i < g; ++i) eta[i][i] -= Rational(shift + 1);
    for (const auto& t : algebra_basis) {
      auto c = hnf_coordinates(H, flatten_integral(t * eta));
      ensure(c.has_value(), "ring closure is not closed under eta");
      ideal.push_back(std::move(*c));
    }
  }
  IndexAtCap out{H.size(), smith_invariants(ideal), std::nullopt};
  if (out.invariants.size() == H.size()) {
    Integer idx = 1;
    for (const auto& x : out.invariants) idx *= x;
    out.index = idx;
  }
  return out;
}

}  // namespace detail

inline int default_algebra_cap(const LevelContext& ctx) { return std::max(2, ctx.d() - 2); }

// Order of T / I_E, with T the ring generated by the parabolic T_r (deg r <=
// cap, r prime to the level) and I_E the ideal generated by eta_l (l prime of
// deg <= cap). With no explicit cap, the cap grows from the default until the
// lattice has rank g and the index agrees with the next cap, up to deg P + 1.
inline HeckeAlgebraIndex hecke_algebra_index(const SymbolSpace& V, std::optional<int> cap_opt = {}) {
  require(V.has_parabolic() && V.genus() > 0, "no_parabolic_part",
          "Hecke algebra index needs a prime level with nonzero genus");
  const int first = cap_opt.value_or(default_algebra_cap(V.level()));
  const int last = cap_opt ? first : std::max(first, V.level().d() + 1);
  HeckeAlgebraIndex out;
  auto here = detail::index_at_cap(V, first);
  for (int cap = first;; ++cap) {
    const auto next = detail::index_at_cap(V, cap + 1);
    out.cap = cap;
    out.lattice_rank = here.rank;
    out.invariants = here.invariants;
    out.index = here.index;
    out.index_next = next.index;
    out.stable = here.rank == V.genus() && here.index && next.index && *here.index == *next.index &&
                 next.rank == here.rank;
    if (out.stable || cap >= last) return out;
    here = next;
  }
}

inline Integer eisenstein_number(const LevelContext& ctx) {
  const Integer q = ctx.field().q();
  Integer qd = 1;
  for (int i = 0; i < ctx.d(); ++i) qd *= q;
  if (ctx.d() % 2 == 1) return (qd - 1) / (q - 1);
  return (qd - 1) / (q * q - 1);
}

}  // namespace ftmodsym
