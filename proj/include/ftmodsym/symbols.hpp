#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "ftmodsym/linalg.hpp"
#include "ftmodsym/oracle.hpp"
#include "ftmodsym/projective.hpp"

namespace ftmodsym {

// Point of P^1(K): num/den reduced with den monic, or infinity = 1/0.
class Cusp {
 public:
  Cusp(const Poly& num, const Poly& den) {
    require(!(num.is_zero() && den.is_zero()), "bad_cusp", "0/0 is not a cusp");
    const FqField& f = num.field();
    if (den.is_zero()) {
      num_ = Poly::one(f);
      den_ = Poly::zero(f);
      return;
    }
    const Poly g = gcd(num, den);
    Poly n = num / g, d = den / g;
    const Elem k = f.inv(d.lead());
    num_ = n.scaled(k);
    den_ = d.scaled(k);
  }
  static Cusp infinity(const FqField& f) { return Cusp(Poly::one(f), Poly::zero(f)); }
  static Cusp zero(const FqField& f) { return Cusp(Poly::zero(f), Poly::one(f)); }

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  bool is_infinity() const { return den_.is_zero(); }

  // Moebius action of (a b; c d): r -> (a r + b) / (c r + d).
  Cusp apply(const Mat2& M) const {
    return Cusp(M.a * num_ + M.b * den_, M.c * num_ + M.d * den_);
  }

  friend bool operator==(const Cusp&, const Cusp&) = default;
  friend auto operator<=>(const Cusp& x, const Cusp& y) {
    return std::tie(x.den_, x.num_) <=> std::tie(y.den_, y.num_);
  }
  std::string str() const {
    if (is_infinity()) return "inf";
    if (den_.is_one()) return num_.str();
    return "(" + num_.str() + ")/(" + den_.str() + ")";
  }

 private:
  Poly num_, den_;
};

// Sparse rational combination of generators (u:v).
class FormalSum {
 public:
  using Map = std::map<P1Point, Rational>;

  FormalSum() = default;
  static FormalSum of(const P1Point& x, const Rational& c = 1) {
    FormalSum s;
    s.add(x, c);
    return s;
  }

  void add(const P1Point& x, const Rational& c) {
    if (c == 0) return;
    auto& slot = terms_[x];
    slot += c;
    if (slot == 0) terms_.erase(x);
  }
  FormalSum& operator+=(const FormalSum& o) {
    for (auto& [x, c] : o.terms_) add(x, c);
    return *this;
  }
  FormalSum& operator-=(const FormalSum& o) {
    for (auto& [x, c] : o.terms_) add(x, -c);
    return *this;
  }
  friend FormalSum operator+(FormalSum a, const FormalSum& b) { return a += b; }
  friend FormalSum operator-(FormalSum a, const FormalSum& b) { return a -= b; }
  friend FormalSum operator*(const Rational& k, const FormalSum& a) {
    FormalSum out;
    for (auto& [x, c] : a.terms_) out.add(x, k * c);
    return out;
  }

  const Map& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  Rational coefficient(const P1Point& x) const {
    auto it = terms_.find(x);
    return it == terms_.end() ? Rational(0) : it->second;
  }
  friend bool operator==(const FormalSum&, const FormalSum&) = default;

  std::string str() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (auto& [x, c] : terms_) {
      if (!out.empty()) out += " + ";
      out += format_rational(c) + "*" + x.str();
    }
    return out;
  }

 private:
  Map terms_;
};

// A matrix in GL2(A) whose bottom row reduces to x: xi(x) = [g 0, g inf].
inline Mat2 gl2_lift(const P1Point& x, const LevelContext& ctx) {
  const FqField& f = ctx.field();
  const Poly& N = ctx.N();
  Poly U = x.u, V = x.v;
  auto good = [](const Poly& a, const Poly& b) { return coprime(a, b); };
  if (!good(U, V)) {
    bool found = false;
    // u = 0 only pairs with a constant v; otherwise move u to N.
    if (U.is_zero() && !V.is_constant()) U = N;
    const std::uint64_t limit = std::max<std::uint64_t>(ctx.residue_count(), 1) * f.q() * f.q();
    for (std::uint64_t k = 1; k < limit && !found; ++k) {
      const Poly cand = V + Poly::from_index(f, k) * N;
      if (good(U, cand)) {
        V = cand;
        found = true;
      }
    }
    ensure(found, "no coprime lift for " + x.str());
  }
  const auto g = xgcd(U, V);
  ensure(g.g.is_one(), "lift not coprime");
  // s U + t V = 1  =>  det (t -s; U V) = 1
  return {g.t, -g.s, U, V};
}

// The single generator for [g 0, g inf] with g in GL2(A).
inline P1Point generator_of(const Mat2& g, const LevelContext& ctx) {
  return p1_normalize(g.c, g.d, ctx);
}

// Formal sum F with xi(F) = [0, r], from the continued fraction of r.
inline FormalSum xi_from_zero(const Cusp& r, const LevelContext& ctx) {
  const FqField& f = ctx.field();
  FormalSum out;
  if (r == Cusp::zero(f)) return out;
  Poly p2 = Poly::zero(f), q2 = Poly::one(f);  // p_{k-2}/q_{k-2}
  Poly p1 = Poly::one(f), q1 = Poly::zero(f);  // p_{k-1}/q_{k-1}
  // k = -1 term: [0, inf] = xi(0:1)
  out.add(p1_normalize(q1, q2, ctx), 1);
  if (r.is_infinity()) return out;
  Poly a = r.num(), b = r.den();
  bool first = true;
  while (!b.is_zero()) {
    auto [ak, rem] = divmod(a, b);
    a = std::exchange(b, rem);
    Poly pk = ak * p1 + p2, qk = ak * q1 + q2;
    if (first && ak.is_zero()) {
      // [0, inf] + [inf, 0] cancels exactly as a path
      out = FormalSum();
    } else {
      out.add(p1_normalize(qk, q1, ctx), 1);
    }
    first = false;
    p2 = std::exchange(p1, pk);
    q2 = std::exchange(q1, qk);
  }
  return out;
}

// Formal sum F with xi(F) = [r, s] = [0, s] - [0, r].
inline FormalSum xi_path(const Cusp& r, const Cusp& s, const LevelContext& ctx) {
  if (r == s) return {};
  return xi_from_zero(s, ctx) - xi_from_zero(r, ctx);
}

// Image of [r, s] under the matrix M acting on cusps.
inline FormalSum xi_path_transformed(const Mat2& M, const Cusp& r, const Cusp& s, const LevelContext& ctx) {
  return xi_path(r.apply(M), s.apply(M), ctx);
}

inline bool cusp_is_infinity_class(const Cusp& c, const LevelContext& ctx) {
  require(ctx.is_prime(), "level_not_prime", "cusp classes need a prime level");
  return ctx.N().divides(c.den());
}

inline CuspDivisor cusp_divisor(const Cusp& c, const LevelContext& ctx) {
  CuspDivisor d;
  (cusp_is_infinity_class(c, ctx) ? d.at_inf : d.at_zero) = 1;
  return d;
}

inline CuspDivisor boundary_sum(const FormalSum& F, const LevelContext& ctx) {
  CuspDivisor out;
  for (auto& [x, c] : F.terms()) out += c * boundary(x, ctx);
  return out;
}

// Coordinates of a formal sum in the oracle basis.
inline QVector oracle_coords(const FormalSum& F, const PresentationResult& pres, const P1List& pts) {
  QVector v(pres.rank, Rational(0));
  for (auto& [x, c] : F.terms()) {
    const QVector& cx = pres.coords[pts.index_of(x)];
    for (std::size_t i = 0; i < v.size(); ++i)
      if (cx[i] != 0) v[i] += c * cx[i];
  }
  return v;
}

inline Cusp parse_cusp(const std::string& text, const FqField& f) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  if (s == "inf" || s == "oo") return Cusp::infinity(f);
  auto strip = [](std::string t) {
    if (t.size() >= 2 && t.front() == '(' && t.back() == ')') t = t.substr(1, t.size() - 2);
    return t;
  };
  const auto slash = s.find('/');
  if (slash == std::string::npos) return Cusp(parse_poly(strip(s), f), Poly::one(f));
  return Cusp(parse_poly(strip(s.substr(0, slash)), f), parse_poly(strip(s.substr(slash + 1)), f));
}

}  // namespace ftmodsym
