#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "ftmodsym/error.hpp"
#include "ftmodsym/poly.hpp"

namespace ftmodsym {

// 2x2 matrix (a b; c d) over A. Points are row vectors: (u:v)M = (au+cv : bu+dv).
struct Mat2 {
  Poly a, b, c, d;

  static Mat2 identity(const FqField& f) {
    return {Poly::one(f), Poly::zero(f), Poly::zero(f), Poly::one(f)};
  }
  // (0 1; -1 0)
  static Mat2 sigma(const FqField& f) {
    return {Poly::zero(f), Poly::one(f), -Poly::one(f), Poly::zero(f)};
  }
  // (0 -1; 1 -1)
  static Mat2 tau(const FqField& f) {
    return {Poly::zero(f), -Poly::one(f), Poly::one(f), -Poly::one(f)};
  }
  // diag(lambda, 1)
  static Mat2 delta(const FqField& f, Elem lambda) {
    return {Poly::constant(f, lambda), Poly::zero(f), Poly::zero(f), Poly::one(f)};
  }

  Poly det() const { return a * d - b * c; }
  friend Mat2 operator*(const Mat2& x, const Mat2& y) {
    return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c,
            x.c * y.b + x.d * y.d};
  }
  friend bool operator==(const Mat2&, const Mat2&) = default;
  friend auto operator<=>(const Mat2& x, const Mat2& y) {
    return std::tie(x.a, x.b, x.c, x.d) <=> std::tie(y.a, y.b, y.c, y.d);
  }
  std::string str() const {
    return "(" + a.str() + " " + b.str() + "; " + c.str() + " " + d.str() + ")";
  }
};

// The level n, given by its monic generator N.
class LevelContext {
 public:
  explicit LevelContext(const Poly& N) : N_(N) {
    require(!N.is_zero() && N.degree() >= Degree(1), "bad_level", "level must have degree >= 1");
    require(N.is_monic(), "bad_level", "level polynomial must be monic");
    d_ = N.degree().value();
    prime_ = is_irreducible(N);
    order_ = 1;
    for (int i = 0; i < d_; ++i) order_ *= field().q();
    if (!prime_)
      for (const Poly& w : enumerate_below(d_, field()))
        if (!w.is_zero() && coprime(w, N_)) units_.push_back(w);
  }

  const FqField& field() const { return N_.field(); }
  const Poly& N() const { return N_; }
  int d() const { return d_; }
  bool is_prime() const { return prime_; }
  // |A/n| = q^d
  std::uint64_t residue_count() const { return order_; }
  // Units of A/n, only populated for composite levels.
  const std::vector<Poly>& units() const { return units_; }

  Poly reduce(const Poly& x) const { return x % N_; }

 private:
  Poly N_;
  int d_ = 0;
  bool prime_ = false;
  std::uint64_t order_ = 0;
  std::vector<Poly> units_;
};

// Point (u:v) of P^1(A/n), always stored in canonical form.
struct P1Point {
  Poly u, v;

  friend bool operator==(const P1Point&, const P1Point&) = default;
  // Global order: deg u, deg v, then coefficients of u, then of v.
  friend std::strong_ordering operator<=>(const P1Point& x, const P1Point& y) {
    if (auto c = x.u.degree() <=> y.u.degree(); c != 0) return c;
    if (auto c = x.v.degree() <=> y.v.degree(); c != 0) return c;
    if (auto c = x.u <=> y.u; c != 0) return c;
    return x.v <=> y.v;
  }
  std::string str() const { return "(" + u.str() + ":" + v.str() + ")"; }
  friend std::ostream& operator<<(std::ostream& os, const P1Point& x) { return os << x.str(); }
};

inline bool coprime_to_level(const Poly& u, const Poly& v, const LevelContext& ctx) {
  Poly g = gcd(u, v);
  if (g.is_zero()) return false;
  return coprime(g, ctx.N());
}

// Canonical representative. Prime level: (u/v : 1) or (1 : 0). Composite
// level: least (wu, wv) over units w of A/n.
inline P1Point p1_normalize(const Poly& u0, const Poly& v0, const LevelContext& ctx) {
  const Poly u = ctx.reduce(u0), v = ctx.reduce(v0);
  require(coprime_to_level(u, v, ctx), "not_coprime",
          "(" + u0.str() + ":" + v0.str() + ") is not coprime to the level");
  const FqField& f = ctx.field();
  if (ctx.is_prime()) {
    if (v.is_zero()) return {Poly::one(f), Poly::zero(f)};
    return {ctx.reduce(u * inverse_mod(v, ctx.N())), Poly::one(f)};
  }
  std::optional<P1Point> best;
  for (const Poly& w : ctx.units()) {
    P1Point cand{ctx.reduce(w * u), ctx.reduce(w * v)};
    if (!best || cand < *best) best = std::move(cand);
  }
  return *best;
}

inline std::optional<P1Point> p1_try_normalize(const Poly& u, const Poly& v, const LevelContext& ctx) {
  if (!coprime_to_level(ctx.reduce(u), ctx.reduce(v), ctx)) return std::nullopt;
  return p1_normalize(u, v, ctx);
}

// All points of P^1(A/n), each once, in the global order.
inline std::vector<P1Point> p1_enumerate(const LevelContext& ctx) {
  const FqField& f = ctx.field();
  const auto residues = enumerate_below(ctx.d(), f);
  std::vector<P1Point> out;
  if (ctx.is_prime()) {
    out.push_back({Poly::one(f), Poly::zero(f)});
    for (const Poly& x : residues) out.push_back({x, Poly::one(f)});
  } else {
    for (const Poly& u : residues)
      for (const Poly& v : residues) {
        if (!coprime_to_level(u, v, ctx)) continue;
        P1Point p = p1_normalize(u, v, ctx);
        if (p.u == u && p.v == v) out.push_back(std::move(p));
      }
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline std::optional<P1Point> p1_act(const P1Point& x, const Mat2& M, const LevelContext& ctx) {
  return p1_try_normalize(M.a * x.u + M.c * x.v, M.b * x.u + M.d * x.v, ctx);
}

// Enumeration of P^1(A/n) with constant-time index lookup.
class P1List {
 public:
  explicit P1List(const LevelContext& ctx) : ctx_(&ctx), points_(p1_enumerate(ctx)) {
    for (std::size_t i = 0; i < points_.size(); ++i) index_.emplace(key(points_[i]), i);
  }

  const LevelContext& level() const { return *ctx_; }
  const std::vector<P1Point>& points() const { return points_; }
  std::size_t size() const { return points_.size(); }
  const P1Point& operator[](std::size_t i) const { return points_[i]; }

  // Index of a canonical point.
  std::size_t index_of(const P1Point& x) const {
    auto it = index_.find(key(x));
    ensure(it != index_.end(), "point " + x.str() + " is not canonical");
    return it->second;
  }
  std::size_t index_of(const Poly& u, const Poly& v) const {
    return index_of(p1_normalize(u, v, *ctx_));
  }

 private:
  std::uint64_t key(const P1Point& x) const {
    return x.u.index() * ctx_->residue_count() + x.v.index();
  }

  const LevelContext* ctx_;
  std::vector<P1Point> points_;
  std::unordered_map<std::uint64_t, std::size_t> index_;
};

// Point of P^1(A): coprime (u, v) up to Fq^x, with u monic, or (0, 1).
struct P1APoint {
  Poly u, v;

  friend bool operator==(const P1APoint&, const P1APoint&) = default;
  friend std::strong_ordering operator<=>(const P1APoint& x, const P1APoint& y) {
    if (auto c = x.u.degree() <=> y.u.degree(); c != 0) return c;
    if (auto c = x.v.degree() <=> y.v.degree(); c != 0) return c;
    if (auto c = x.u <=> y.u; c != 0) return c;
    return x.v <=> y.v;
  }
  std::string str() const { return "[" + u.str() + ":" + v.str() + "]"; }
  friend std::ostream& operator<<(std::ostream& os, const P1APoint& x) { return os << x.str(); }
};

inline P1APoint p1a_normalize(const Poly& u, const Poly& v) {
  require(coprime(u, v), "not_coprime", "(" + u.str() + "," + v.str() + ") is not coprime");
  const FqField& f = u.field();
  if (u.is_zero()) return {u, Poly::one(f)};
  const Elem k = f.inv(u.lead());
  return {u.scaled(k), v.scaled(k)};
}

inline P1APoint p1a_act(const P1APoint& x, const Mat2& M) {
  return p1a_normalize(M.a * x.u + M.c * x.v, M.b * x.u + M.d * x.v);
}

// Reduction P^1(A) -> P^1(A/n).
inline P1Point p1a_reduce(const P1APoint& x, const LevelContext& ctx) {
  return p1_normalize(x.u, x.v, ctx);
}

// Points with deg u <= max_u and deg v <= max_v, sorted.
inline std::vector<P1APoint> p1a_box(int max_u, int max_v, const FqField& f) {
  require(max_u >= 0 && max_v >= 0, "negative_degree", "negative degree bound");
  std::vector<P1APoint> out;
  out.push_back({Poly::zero(f), Poly::one(f)});
  const auto vs = enumerate_below(max_v + 1, f);
  for (int k = 0; k <= max_u; ++k)
    for (const Poly& u : enumerate_monic(k, f))
      for (const Poly& v : vs)
        if (coprime(u, v)) out.push_back({u, v});
  std::sort(out.begin(), out.end());
  return out;
}

// P^1(A)_e: deg u <= e and deg v <= e.
inline std::vector<P1APoint> p1a_truncated_enumerate(int e, const FqField& f) {
  return p1a_box(e, e, f);
}

// C_k: points of P^1(A)_k with u or v of degree exactly k.
inline std::vector<P1APoint> c_k(int k, const FqField& f) {
  std::vector<P1APoint> out;
  for (auto& x : p1a_truncated_enumerate(k, f))
    if (x.u.degree() == Degree(k) || x.v.degree() == Degree(k)) out.push_back(std::move(x));
  return out;
}

enum class DPart { Greater, Less, EqualBullet, EqualOther };

// Which piece of C_k = D^> + D^< + D_bullet + D^bullet a point of C_k lies in.
inline DPart d_part(const P1APoint& x) {
  const Degree du = x.u.degree(), dv = x.v.degree();
  if (du > dv) return DPart::Greater;
  if (du < dv) return DPart::Less;
  const FqField& f = x.u.field();
  return f.add(x.u.lead(), x.v.lead()) == 0 ? DPart::EqualBullet : DPart::EqualOther;
}

inline std::vector<P1APoint> d_set(int k, const FqField& f, DPart part) {
  std::vector<P1APoint> out;
  for (auto& x : c_k(k, f))
    if (d_part(x) == part) out.push_back(std::move(x));
  return out;
}
inline std::vector<P1APoint> d_greater(int k, const FqField& f) { return d_set(k, f, DPart::Greater); }
inline std::vector<P1APoint> d_less(int k, const FqField& f) { return d_set(k, f, DPart::Less); }
inline std::vector<P1APoint> d_bullet_lower(int k, const FqField& f) {
  return d_set(k, f, DPart::EqualBullet);
}
inline std::vector<P1APoint> d_bullet_upper(int k, const FqField& f) {
  return d_set(k, f, DPart::EqualOther);
}
inline std::vector<P1APoint> d_equal(int k, const FqField& f) {
  std::vector<P1APoint> out;
  for (auto& x : c_k(k, f))
    if (x.u.degree() == x.v.degree()) out.push_back(std::move(x));
  return out;
}
// D^{>+}: elements of D^> with u monic and v monic or zero.
inline std::vector<P1APoint> d_greater_plus(int k, const FqField& f) {
  std::vector<P1APoint> out;
  for (auto& x : d_greater(k, f))
    if (x.v.is_zero() || x.v.is_monic()) out.push_back(std::move(x));
  return out;
}

// P_e (deg u <= e, deg v <= e-1) and S_e (deg u = e, deg v <= e-1), e >= 1.
inline std::vector<P1APoint> p_e(int e, const FqField& f) {
  require(e >= 1, "negative_degree", "P_e needs e >= 1");
  return p1a_box(e, e - 1, f);
}
inline std::vector<P1APoint> s_e(int e, const FqField& f) {
  std::vector<P1APoint> out;
  for (auto& x : p_e(e, f))
    if (x.u.degree() == Degree(e)) out.push_back(std::move(x));
  return out;
}

// Number of coprime pairs of monic polynomials of degrees exactly i and j.
inline std::uint64_t count_coprime(int i, int j, const FqField& f) {
  require(i >= 0 && j >= 0, "negative_degree", "count_coprime: negative degree");
  std::uint64_t q = f.q(), r = 1;
  if (std::min(i, j) == 0) {
    for (int k = 0; k < std::max(i, j); ++k) r *= q;
    return r;
  }
  for (int k = 0; k < i + j - 1; ++k) r *= q;
  return (q - 1) * r;
}

// Degree bounds (num, den) of the small representatives of P^1(A/p).
inline std::pair<int, int> lift_bounds(const LevelContext& ctx) {
  const int d = ctx.d();
  if (d % 2 == 1) return {(d - 1) / 2, (d - 1) / 2};
  return {d / 2, d / 2 - 1};
}

// The set of small representatives: P^1(A)_{(d-1)/2} for odd d, P_{d/2} for even d.
inline std::vector<P1APoint> small_representatives(const LevelContext& ctx) {
  auto [nb, db] = lift_bounds(ctx);
  return p1a_box(nb, db, ctx.field());
}

inline std::optional<P1APoint> lift_small_exhaustive(const P1Point& x, const LevelContext& ctx) {
  for (const P1APoint& y : small_representatives(ctx))
    if (p1a_reduce(y, ctx) == x) return y;
  return std::nullopt;
}

// Preimage of x among the small representatives, by rational reconstruction
// with an exhaustive fallback.
inline P1APoint lift_small(const P1Point& x, const LevelContext& ctx) {
  require(ctx.is_prime(), "level_not_prime", "lift_small needs a prime level");
  const FqField& f = ctx.field();
  if (x.v.is_zero()) return {Poly::one(f), Poly::zero(f)};
  auto [nb, db] = lift_bounds(ctx);
  if (nb + db < ctx.d())
    if (auto r = rational_reconstruct(x.u, ctx.N(), nb, db))
      return p1a_normalize(r->first, r->second);
  auto y = lift_small_exhaustive(x, ctx);
  ensure(y.has_value(), "no small representative for " + x.str());
  return *y;
}

// Parses "(u:v)" and normalizes it at the given level.
inline P1Point parse_point(const std::string& text, const LevelContext& ctx) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  if (s.size() < 5 || s.front() != '(' || s.back() != ')')
    throw ParseError("point must look like (u:v), got '" + text + "'");
  const auto colon = s.find(':');
  if (colon == std::string::npos || s.find(':', colon + 1) != std::string::npos)
    throw ParseError("point must contain exactly one ':', got '" + text + "'");
  Poly u = parse_poly(s.substr(1, colon - 1), ctx.field());
  Poly v = parse_poly(s.substr(colon + 1, s.size() - colon - 2), ctx.field());
  return p1_normalize(u, v, ctx);
}

}  // namespace ftmodsym
