#pragma once

#include <algorithm>
#include <cctype>
#include <climits>
#include <compare>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "ftmodsym/error.hpp"
#include "ftmodsym/field.hpp"

namespace ftmodsym {

// Polynomial degree with a sentinel for deg 0 that sorts below every integer.
// Arithmetic on the sentinel is absorbing; it never turns into -1.
class Degree {
 public:
  constexpr Degree() = default;
  constexpr Degree(int v) : v_(v) {}  // NOLINT: implicit from int on purpose
  static constexpr Degree neg_inf() { return Degree(kNegInf, 0); }

  constexpr bool is_neg_inf() const { return v_ == kNegInf; }
  int value() const {
    ensure(!is_neg_inf(), "degree of the zero polynomial used as an integer");
    return v_;
  }

  friend constexpr auto operator<=>(Degree, Degree) = default;
  friend constexpr Degree operator+(Degree a, Degree b) {
    if (a.is_neg_inf() || b.is_neg_inf()) return neg_inf();
    return Degree(a.v_ + b.v_);
  }

  std::string str() const { return is_neg_inf() ? "-inf" : std::to_string(v_); }

 private:
  static constexpr int kNegInf = INT_MIN;
  constexpr Degree(int v, int) : v_(v) {}
  int v_ = kNegInf;
};

// Element of A = Fq[T]. Coefficients are stored lowest degree first with no
// trailing zeros; the zero polynomial has no coefficients.
class Poly {
 public:
  Poly() = default;
  explicit Poly(const FqField& f) : f_(&f) {}
  Poly(const FqField& f, std::vector<Elem> coeffs) : f_(&f), c_(std::move(coeffs)) {
    for (Elem a : c_) ensure(a < f.q(), "coefficient out of range");
    trim();
  }

  static Poly zero(const FqField& f) { return Poly(f); }
  static Poly constant(const FqField& f, Elem a) { return Poly(f, {a}); }
  static Poly one(const FqField& f) { return constant(f, 1); }
  static Poly monomial(const FqField& f, Elem a, int k) {
    std::vector<Elem> c(k + 1, 0);
    c[k] = a;
    return Poly(f, std::move(c));
  }
  static Poly T(const FqField& f) { return monomial(f, 1, 1); }

  // The polynomial whose coefficients are the base-q digits of `index`
  // (constant term least significant). Bijective onto A.
  static Poly from_index(const FqField& f, std::uint64_t index) {
    std::vector<Elem> c;
    while (index) {
      c.push_back(static_cast<Elem>(index % f.q()));
      index /= f.q();
    }
    return Poly(f, std::move(c));
  }
  std::uint64_t index() const {
    std::uint64_t r = 0;
    for (std::size_t i = c_.size(); i-- > 0;) r = r * f_->q() + c_[i];
    return r;
  }

  const FqField& field() const { return *f_; }
  const std::vector<Elem>& coeffs() const { return c_; }
  Degree degree() const {
    return c_.empty() ? Degree::neg_inf() : Degree(static_cast<int>(c_.size()) - 1);
  }
  bool is_zero() const { return c_.empty(); }
  bool is_one() const { return c_.size() == 1 && c_[0] == 1; }
  bool is_constant() const { return c_.size() <= 1; }
  bool is_monic() const { return !c_.empty() && c_.back() == 1; }
  Elem coeff(int i) const { return i >= 0 && std::size_t(i) < c_.size() ? c_[i] : 0; }
  // Leading coefficient; 0 for the zero polynomial.
  Elem lead() const { return c_.empty() ? 0 : c_.back(); }

  Poly monic() const {
    if (is_zero() || is_monic()) return *this;
    return scaled(f_->inv(lead()));
  }
  Poly scaled(Elem a) const {
    if (a == 0) return Poly(*f_);
    std::vector<Elem> c(c_);
    for (Elem& x : c) x = f_->mul(x, a);
    return Poly(*f_, std::move(c));
  }

  Poly operator-() const {
    std::vector<Elem> c(c_);
    for (Elem& x : c) x = f_->neg(x);
    return Poly(*f_, std::move(c));
  }
  friend Poly operator+(const Poly& a, const Poly& b) {
    check_same(a, b);
    std::vector<Elem> c(std::max(a.c_.size(), b.c_.size()), 0);
    for (std::size_t i = 0; i < c.size(); ++i)
      c[i] = a.f_->add(i < a.c_.size() ? a.c_[i] : 0, i < b.c_.size() ? b.c_[i] : 0);
    return Poly(*a.f_, std::move(c));
  }
  friend Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }
  friend Poly operator*(const Poly& a, const Poly& b) {
    check_same(a, b);
    if (a.is_zero() || b.is_zero()) return Poly(*a.f_);
    const FqField& f = *a.f_;
    std::vector<Elem> c(a.c_.size() + b.c_.size() - 1, 0);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i] == 0) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j)
        c[i + j] = f.add(c[i + j], f.mul(a.c_[i], b.c_[j]));
    }
    return Poly(f, std::move(c));
  }
  Poly& operator+=(const Poly& b) { return *this = *this + b; }
  Poly& operator-=(const Poly& b) { return *this = *this - b; }
  Poly& operator*=(const Poly& b) { return *this = *this * b; }

  friend std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
    check_same(a, b);
    require(!b.is_zero(), "division_by_zero", "polynomial division by zero");
    const FqField& f = *a.f_;
    if (a.c_.size() < b.c_.size()) return {Poly(f), a};
    std::vector<Elem> r(a.c_);
    std::vector<Elem> quo(a.c_.size() - b.c_.size() + 1, 0);
    const Elem inv_lead = f.inv(b.lead());
    for (std::size_t k = quo.size(); k-- > 0;) {
      const Elem top = r[k + b.c_.size() - 1];
      if (top == 0) continue;
      const Elem coef = f.mul(top, inv_lead);
      quo[k] = coef;
      for (std::size_t j = 0; j < b.c_.size(); ++j)
        r[k + j] = f.sub(r[k + j], f.mul(coef, b.c_[j]));
    }
    return {Poly(f, std::move(quo)), Poly(f, std::move(r))};
  }
  friend Poly operator/(const Poly& a, const Poly& b) { return divmod(a, b).first; }
  friend Poly operator%(const Poly& a, const Poly& b) { return divmod(a, b).second; }
  bool divides(const Poly& a) const { return (a % *this).is_zero(); }

  friend bool operator==(const Poly& a, const Poly& b) {
    return a.c_ == b.c_ && (a.f_ == b.f_ || a.c_.empty());
  }
  // Order by degree, then coefficients from the top down. Coincides with the
  // order of index().
  friend std::strong_ordering operator<=>(const Poly& a, const Poly& b) {
    if (a.c_.size() != b.c_.size()) return a.c_.size() <=> b.c_.size();
    for (std::size_t i = a.c_.size(); i-- > 0;)
      if (a.c_[i] != b.c_[i]) return a.c_[i] <=> b.c_[i];
    return std::strong_ordering::equal;
  }

  std::string str() const {
    if (c_.empty()) return "0";
    std::string out;
    for (std::size_t i = c_.size(); i-- > 0;) {
      if (c_[i] == 0) continue;
      if (!out.empty()) out += '+';
      if (i == 0) {
        out += std::to_string(c_[i]);
        continue;
      }
      if (c_[i] != 1) out += std::to_string(c_[i]) + "*";
      out += "T";
      if (i > 1) out += "^" + std::to_string(i);
    }
    return out;
  }
  friend std::ostream& operator<<(std::ostream& os, const Poly& p) { return os << p.str(); }

 private:
  static void check_same(const Poly& a, const Poly& b) {
    ensure(a.f_ && a.f_ == b.f_, "polynomials over different fields");
  }
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }

  const FqField* f_ = nullptr;
  std::vector<Elem> c_;
};

struct Xgcd {
  Poly g, s, t;
};

// g = s*a + t*b with g the monic gcd.
inline Xgcd xgcd(const Poly& a, const Poly& b) {
  require(!(a.is_zero() && b.is_zero()), "zero_input", "xgcd of two zero polynomials");
  const FqField& f = a.field();
  Poly r0 = a, r1 = b;
  Poly s0 = Poly::one(f), s1 = Poly::zero(f);
  Poly t0 = Poly::zero(f), t1 = Poly::one(f);
  while (!r1.is_zero()) {
    auto [quo, rem] = divmod(r0, r1);
    r0 = std::exchange(r1, rem);
    s0 = std::exchange(s1, s0 - quo * s1);
    t0 = std::exchange(t1, t0 - quo * t1);
  }
  const Elem k = f.inv(r0.lead());
  return {r0.scaled(k), s0.scaled(k), t0.scaled(k)};
}

inline Poly gcd(const Poly& a, const Poly& b) {
  if (a.is_zero() && b.is_zero()) return a;
  return xgcd(a, b).g;
}

inline bool coprime(const Poly& a, const Poly& b) {
  return !(a.is_zero() && b.is_zero()) && gcd(a, b).is_one();
}

// Inverse of a modulo m; requires gcd(a, m) = 1.
inline Poly inverse_mod(const Poly& a, const Poly& m) {
  auto x = xgcd(a % m, m);
  require(x.g.is_one(), "not_invertible", a.str() + " is not invertible modulo " + m.str());
  return x.s % m;
}

// The q^d monic polynomials of degree d, ordered by the base-q index of their
// lower coefficients (constant term least significant).
inline std::vector<Poly> enumerate_monic(int d, const FqField& f) {
  require(d >= 0, "negative_degree", "enumerate_monic: negative degree");
  std::uint64_t count = 1;
  for (int i = 0; i < d; ++i) count *= f.q();
  std::vector<Poly> out;
  out.reserve(count);
  const Poly top = Poly::monomial(f, 1, d);
  for (std::uint64_t k = 0; k < count; ++k) out.push_back(top + Poly::from_index(f, k));
  return out;
}

// All polynomials of degree < d, including 0, in index order.
inline std::vector<Poly> enumerate_below(int d, const FqField& f) {
  std::uint64_t count = 1;
  for (int i = 0; i < d; ++i) count *= f.q();
  std::vector<Poly> out;
  out.reserve(count);
  for (std::uint64_t k = 0; k < count; ++k) out.push_back(Poly::from_index(f, k));
  return out;
}

inline bool is_irreducible(const Poly& f) {
  require(f.degree() >= Degree(1), "constant_polynomial", "irreducibility of a constant");
  const int d = f.degree().value();
  for (int k = 1; 2 * k <= d; ++k)
    for (const Poly& g : enumerate_monic(k, f.field()))
      if (g.divides(f)) return false;
  return true;
}

// Monic irreducible factors with multiplicity, by trial division, in
// increasing order. The unit part is dropped.
inline std::vector<std::pair<Poly, int>> factor_monic(Poly f) {
  require(!f.is_zero(), "zero_input", "factorization of zero");
  f = f.monic();
  std::vector<std::pair<Poly, int>> out;
  for (int k = 1; 2 * k <= f.degree().value(); ++k)
    for (const Poly& g : enumerate_monic(k, f.field())) {
      int e = 0;
      while (g.divides(f)) {
        f = f / g;
        ++e;
      }
      if (e > 0) out.emplace_back(g, e);
    }
  if (f.degree() >= Degree(1)) out.emplace_back(f, 1);
  return out;
}

// Small fraction u/v = x mod P with deg u <= num_bound, deg v <= den_bound,
// gcd(u, v) = 1, v monic. Half-extended Euclid on (P, x).
inline std::optional<std::pair<Poly, Poly>> rational_reconstruct(const Poly& x, const Poly& P,
                                                                  int num_bound, int den_bound) {
  require(!P.is_zero() && x.degree() < P.degree(), "bad_residue",
          "rational_reconstruct: residue must be reduced mod P");
  require(num_bound >= 0 && den_bound >= 0 && num_bound + den_bound < P.degree().value(),
          "ambiguous_bounds", "rational_reconstruct: need num_bound + den_bound < deg P");
  const FqField& f = P.field();
  if (x.is_zero()) return std::pair{Poly::zero(f), Poly::one(f)};
  Poly r0 = P, r1 = x;
  Poly t0 = Poly::zero(f), t1 = Poly::one(f);
  while (r1.degree() > Degree(num_bound)) {
    auto [quo, rem] = divmod(r0, r1);
    r0 = std::exchange(r1, rem);
    t0 = std::exchange(t1, t0 - quo * t1);
  }
  if (t1.is_zero() || t1.degree() > Degree(den_bound) || !coprime(r1, t1)) return std::nullopt;
  const Elem k = f.inv(t1.lead());
  return std::pair{r1.scaled(k), t1.scaled(k)};
}

// Text format: "c*T^k" monomials joined by '+', highest degree first,
// coefficient omitted when 1. '-' separators are also accepted on input.
inline Poly parse_poly(const std::string& text, const FqField& f) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  if (s.empty()) throw ParseError("empty polynomial");
  Poly result(f);
  std::size_t i = 0;
  bool first = true;
  auto read_int = [&](const char* what) {
    if (i >= s.size() || !std::isdigit(static_cast<unsigned char>(s[i])))
      throw ParseError(std::string("expected ") + what + " in polynomial '" + text + "'");
    std::uint64_t v = 0;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
      v = v * 10 + (s[i++] - '0');
      if (v > (1u << 30)) throw ParseError("number too large in polynomial '" + text + "'");
    }
    return v;
  };
  while (i < s.size()) {
    bool negate = false;
    if (s[i] == '+' || s[i] == '-') {
      negate = s[i] == '-';
      ++i;
    } else if (!first) {
      throw ParseError("expected '+' in polynomial '" + text + "'");
    }
    first = false;
    std::uint64_t c = 1;
    bool have_coeff = false;
    if (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
      c = read_int("coefficient");
      have_coeff = true;
      if (c >= f.q())
        throw ParseError("coefficient " + std::to_string(c) + " out of range for q=" +
                         std::to_string(f.q()));
    }
    int k = 0;
    if (i < s.size() && (s[i] == '*' || s[i] == 'T')) {
      if (s[i] == '*') {
        if (!have_coeff) throw ParseError("dangling '*' in polynomial '" + text + "'");
        ++i;
      }
      if (i >= s.size() || s[i] != 'T') throw ParseError("expected 'T' in polynomial '" + text + "'");
      ++i;
      k = 1;
      if (i < s.size() && s[i] == '^') {
        ++i;
        k = static_cast<int>(read_int("exponent"));
        if (k > 4096) throw ParseError("exponent too large in polynomial '" + text + "'");
      }
    } else if (!have_coeff) {
      throw ParseError("malformed polynomial '" + text + "'");
    }
    Poly term = Poly::monomial(f, static_cast<Elem>(c), k);
    result += negate ? -term : term;
  }
  return result;
}

}  // namespace ftmodsym
