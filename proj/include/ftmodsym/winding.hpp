#pragma once

#include <map>
#include <optional>
#include <vector>

#include "ftmodsym/hecke.hpp"
#include "ftmodsym/linalg.hpp"
#include "ftmodsym/space.hpp"

namespace ftmodsym {

inline Integer q_power(const FqField& f, int k) {
  Integer r = 1;
  for (int i = 0; i < k; ++i) r *= f.q();
  return r;
}

// g = (q^d - q)/(q^2 - 1) for odd d, (q^d - q^2)/(q^2 - 1) for even d.
inline Integer genus_formula(const LevelContext& ctx) {
  const Integer q = ctx.field().q();
  const Integer qd = q_power(ctx.field(), ctx.d());
  if (ctx.d() % 2 == 1) return (qd - q) / (q * q - 1);
  return (qd - q * q) / (q * q - 1);
}

// Monic polynomials of degree <= r prime to the level ("ideals of degree <= r").
inline std::vector<Poly> monic_up_to(int r, const LevelContext& ctx) {
  std::vector<Poly> out;
  for (int k = 0; k <= r; ++k)
    for (const Poly& m : enumerate_monic(k, ctx.field()))
      if (coprime(m, ctx.N())) out.push_back(m);
  return out;
}

// Hecke matrices computed once per m. Only T_l for irreducible l comes from
// S_l; other m use T_{mm'} = T_m T_{m'} for coprime m, m' and
// T_{l^{i+1}} = T_{l^i} T_l - q^{deg l} T_{l^{i-1}}, applied to vectors by
// apply_* and to matrices by ambient/parabolic.
class HeckeCache {
 public:
  explicit HeckeCache(const SymbolSpace& V) : V_(&V) {}

  const QMatrix& ambient(const Poly& m) {
    auto it = amb_.find(m);
    if (it != amb_.end()) return it->second;
    return amb_.emplace(m, compose(m, V_->dim(), [&](const Poly& l) -> const QMatrix& { return prime_ambient(l); }))
        .first->second;
  }
  const QMatrix& parabolic(const Poly& m) {
    auto it = par_.find(m);
    if (it != par_.end()) return it->second;
    return par_.emplace(m, compose(m, V_->genus(), [&](const Poly& l) -> const QMatrix& { return prime_parabolic(l); }))
        .first->second;
  }
  QVector apply_ambient(const Poly& m, QVector v) {
    return apply(m, std::move(v), [&](const Poly& l) -> const QMatrix& { return prime_ambient(l); });
  }
  QVector apply_parabolic(const Poly& m, QVector v) {
    return apply(m, std::move(v), [&](const Poly& l) -> const QMatrix& { return prime_parabolic(l); });
  }

 private:
  const QMatrix& prime_ambient(const Poly& l) {
    auto it = prime_amb_.find(l);
    if (it != prime_amb_.end()) return it->second;
    return prime_amb_.emplace(l, hecke_ambient(*V_, l)).first->second;
  }
  const QMatrix& prime_parabolic(const Poly& l) {
    auto it = prime_par_.find(l);
    if (it != prime_par_.end()) return it->second;
    return prime_par_.emplace(l, parabolic_block(*V_, prime_ambient(l))).first->second;
  }

  Rational norm(const Poly& l) const { return Rational(q_power(l.field(), l.degree().value())); }

  template <class Prime, class X>
  X prime_power(const Poly& l, int a, X x, Prime&& T) {
    X prev = x;
    X cur = T(l) * x;
    for (int i = 1; i < a; ++i) {
      X next = T(l) * cur;
      next = next - scaled(prev, norm(l));
      prev = std::move(cur);
      cur = std::move(next);
    }
    return cur;
  }

  template <class Prime>
  QVector apply(const Poly& m, QVector v, Prime&& T) {
    if (m.degree() < Degree(1)) return v;
    for (const auto& [l, a] : factor_monic(m)) v = prime_power(l, a, std::move(v), T);
    return v;
  }

  template <class Prime>
  QMatrix compose(const Poly& m, std::size_t n, Prime&& T) {
    QMatrix x = identity_matrix(n);
    if (m.degree() < Degree(1)) return x;
    for (const auto& [l, a] : factor_monic(m)) x = prime_power(l, a, std::move(x), T);
    return x;
  }

  const SymbolSpace* V_;
  std::map<Poly, QMatrix> prime_amb_, prime_par_, amb_, par_;
};

struct WindingElement {
  QVector e;           // parabolic coordinates
  Poly aux_m;          // the degree-one m used
  std::vector<Poly> checked_with;  // further m giving the same e
};

// The parabolic vector eta_m [0, inf], in parabolic coordinates.
inline QVector eta_zero_infinity(const SymbolSpace& V, HeckeCache& cache, const Poly& m) {
  const FqField& f = V.level().field();
  const QVector z = V.coords(P1Point{Poly::zero(f), Poly::one(f)});
  QVector v = cache.apply_ambient(m, z);
  v = v - scaled(z, Rational(q_power(f, m.degree().value()) + 1));
  return V.to_parabolic(v);
}

inline QMatrix eta_parabolic(HeckeCache& cache, const Poly& m, const FqField& f) {
  QMatrix t = cache.parabolic(m);
  const Integer shift = q_power(f, m.degree().value()) + 1;
  for (std::size_t i = 0; i < t.size(); ++i) t[i][i] -= Rational(shift);
  return t;
}

// e with eta_m e = eta_m [0, inf] for a degree-one m with eta_m invertible,
// confirmed with every other degree-one m.
inline WindingElement winding_element(const SymbolSpace& V, HeckeCache& cache) {
  const LevelContext& ctx = V.level();
  require(ctx.is_prime(), "level_not_prime", "winding element needs a prime level");
  require(ctx.d() >= 3, "degree_too_small", "winding element needs deg P >= 3");
  const FqField& f = ctx.field();
  std::optional<WindingElement> out;
  for (const Poly& m : enumerate_monic(1, f)) {
    const QMatrix eta = eta_parabolic(cache, m, f);
    if (determinant(eta) == 0) continue;
    const QVector e = *inverse(eta) * eta_zero_infinity(V, cache, m);
    if (!out) {
      out = WindingElement{e, m, {}};
    } else {
      ensure(e == out->e, "winding element depends on the auxiliary m");
      out->checked_with.push_back(m);
    }
  }
  require(out.has_value(), "no_invertible_eta", "no degree-one m with eta_m invertible");
  return *out;
}

inline WindingElement winding_element(const SymbolSpace& V) {
  HeckeCache cache(V);
  return winding_element(V, cache);
}

// Least positive integer making e integral in the parabolic lattice.
inline Integer winding_denominator(const WindingElement& w) { return common_denominator(w.e); }

// Rank over Q of {T_m e : deg m <= r}.
inline std::size_t independence_rank(const SymbolSpace& V, HeckeCache& cache, const WindingElement& w, int r) {
  std::vector<QVector> vs;
  for (const Poly& m : monic_up_to(r, V.level())) vs.push_back(cache.apply_parabolic(m, w.e));
  return rank(vs);
}

// Rank over Q of {T_m [0, inf] : deg m <= r} in the full space.
inline std::size_t zero_infinity_rank(const SymbolSpace& V, HeckeCache& cache, int r) {
  const FqField& f = V.level().field();
  const QVector z = V.coords(P1Point{Poly::zero(f), Poly::one(f)});
  std::vector<QVector> vs;
  for (const Poly& m : monic_up_to(r, V.level())) vs.push_back(cache.apply_ambient(m, z));
  return rank(vs);
}

// Rank over Fp of {T_m (delta_e e)} in the integral parabolic lattice mod p.
inline std::size_t independence_rank_mod_p(const SymbolSpace& V, HeckeCache& cache, const WindingElement& w,
                                           int r) {
  const Integer delta = winding_denominator(w);
  const QVector de = scaled(w.e, Rational(delta));
  ZMatrix rows;
  for (const Poly& m : monic_up_to(r, V.level())) rows.push_back(to_integer(cache.apply_parabolic(m, de)));
  return rank_mod_p(rows, V.level().field().p());
}

struct NonvanishingResult {
  std::size_t count = 0;      // rank of the lattice spanned by T_m e
  int stable_at_cap = 0;      // degree cap at which growth stopped
  bool full = false;          // count reached the genus
  std::map<int, std::size_t> ranks;  // cap -> rank
};

// Grows the cap until the rank equals g or stays unchanged for two
// consecutive increments.
inline NonvanishingResult nonvanishing_count(const SymbolSpace& V, HeckeCache& cache, const WindingElement& w,
                                             int max_cap) {
  NonvanishingResult out;
  std::vector<QVector> vs;
  std::size_t unchanged = 0;
  for (int c = 0; c <= max_cap; ++c) {
    for (const Poly& m : enumerate_monic(c, V.level().field()))
      if (coprime(m, V.level().N())) vs.push_back(cache.apply_parabolic(m, w.e));
    const std::size_t r = rank(vs);
    unchanged = (c > 0 && r == out.ranks[c - 1]) ? unchanged + 1 : 0;
    out.ranks[c] = r;
    out.count = r;
    out.stable_at_cap = c;
    if (r == V.genus()) {
      out.full = true;
      return out;
    }
    if (unchanged >= 2) return out;
  }
  throw PreconditionError("unstable_at_cap", "nonvanishing rank still growing at cap " + std::to_string(max_cap));
}

inline bool atkin_lehner_negates(const SymbolSpace& V, const WindingElement& w) {
  const QMatrix wp = atkin_lehner_matrix(V, true).rows;
  return wp * w.e == scaled(w.e, Rational(-1));
}

inline int floor_half_d_minus_3(const LevelContext& ctx) { return (ctx.d() - 3) / 2; }

// (q^{r+1} - 1)/(q - 1): the number of monic polynomials of degree <= r.
inline Integer ideal_count(const FqField& f, int r) {
  return (q_power(f, r + 1) - 1) / (f.q() - 1);
}

// ((q^{r+1}-1)/(q-1))^2 q^4 >= (q^2-1) g, i.e. the lower bound dominates
// (q^2-1)^{1/2} g^{1/2} / q^2.
inline bool lower_bound_inequality(const LevelContext& ctx) {
  const FqField& f = ctx.field();
  const Integer c = ideal_count(f, floor_half_d_minus_3(ctx));
  const Integer q = f.q();
  return c * c * q * q * q * q >= (q * q - 1) * genus_formula(ctx);
}

struct WindingHomomorphismDeg3 {
  std::vector<Poly> n;          // monic degree one
  std::vector<QVector> images;  // eta_n e / (q - 1), parabolic coordinates
  Rational det = 0;
  bool matches_generators = false;  // images[i] == -xi(n_i : 1)
};

inline WindingHomomorphismDeg3 winding_homomorphism_deg3(const SymbolSpace& V, HeckeCache& cache,
                                                         const WindingElement& w) {
  const LevelContext& ctx = V.level();
  require(ctx.d() == 3, "degree_not_3", "winding homomorphism basis needs deg P = 3");
  const FqField& f = ctx.field();
  WindingHomomorphismDeg3 out;
  out.matches_generators = true;
  for (const Poly& n : enumerate_monic(1, f)) {
    QVector img = eta_parabolic(cache, n, f) * w.e;
    img = scaled(img, Rational(1) / Rational(static_cast<long>(f.q() - 1)));
    const QVector expect = V.to_parabolic(scaled(V.coords(p1_normalize(n, Poly::one(f), ctx)), Rational(-1)));
    out.matches_generators = out.matches_generators && img == expect;
    out.n.push_back(n);
    out.images.push_back(std::move(img));
  }
  out.det = determinant(from_columns(out.images, V.genus()));
  return out;
}

// Rank over Q of the image of the winding homomorphism restricted to
// {T_r eta_l : deg r, deg l <= cap, l prime}.
inline std::size_t winding_image_rank(const SymbolSpace& V, HeckeCache& cache, const WindingElement& w, int cap) {
  const FqField& f = V.level().field();
  std::vector<QVector> vs;
  for (const Poly& l : monic_up_to(cap, V.level())) {
    if (l.degree() < Degree(1) || !is_irreducible(l)) continue;
    const QVector el = eta_parabolic(cache, l, f) * w.e;
    for (const Poly& r : monic_up_to(cap, V.level())) vs.push_back(cache.apply_parabolic(r, el));
  }
  return rank(vs);
}

}  // namespace ftmodsym
