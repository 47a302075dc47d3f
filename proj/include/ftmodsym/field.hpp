#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "ftmodsym/error.hpp"

namespace ftmodsym {

// Encoded element of Fq: an integer in [0, q) whose base-p digits are the
// coordinates in the polynomial basis 1, x, x^2, ... of the defining modulus.
using Elem = std::uint32_t;

inline bool is_prime_number(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

namespace detail {

// Dense polynomial over Fp, lowest degree first, no trailing zeros.
using PrimePoly = std::vector<std::uint32_t>;

inline void trim(PrimePoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

inline std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p) {
  // p is prime, a != 0
  std::uint64_t r = 1, b = a, e = p - 2;
  while (e) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return static_cast<std::uint32_t>(r);
}

inline PrimePoly rem(PrimePoly a, const PrimePoly& b, std::uint32_t p) {
  const std::uint32_t lead_inv = inv_mod(b.back(), p);
  while (a.size() >= b.size()) {
    const std::uint64_t c = std::uint64_t(a.back()) * lead_inv % p;
    const std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i)
      a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + p - c * b[i] % p) % p);
    trim(a);
  }
  return a;
}

// Monic polynomial of degree `deg` whose lower coefficients are the base-p
// digits of `index` (constant term least significant).
inline PrimePoly monic_from_index(std::uint64_t index, int deg, std::uint32_t p) {
  PrimePoly f(deg + 1, 0);
  for (int i = 0; i < deg; ++i) {
    f[i] = static_cast<std::uint32_t>(index % p);
    index /= p;
  }
  f[deg] = 1;
  return f;
}

inline bool prime_poly_irreducible(const PrimePoly& f, std::uint32_t p) {
  const int deg = static_cast<int>(f.size()) - 1;
  for (int k = 1; 2 * k <= deg; ++k) {
    std::uint64_t count = 1;
    for (int i = 0; i < k; ++i) count *= p;
    for (std::uint64_t idx = 0; idx < count; ++idx)
      if (rem(f, monic_from_index(idx, k, p), p).empty()) return false;
  }
  return true;
}

}  // namespace detail

// The finite field with q = p^e elements. Instances are interned and live for
// the whole program, so polynomials may hold plain pointers to them.
class FqField {
 public:
  static constexpr std::uint32_t kMaxExtensionOrder = 1024;

  // Deterministic: for e > 1 the modulus is the lexicographically least
  // monic irreducible polynomial of degree e over Fp.
  static const FqField& make(std::uint32_t p, int e = 1) {
    require(is_prime_number(p), "non_prime_characteristic",
            "characteristic " + std::to_string(p) + " is not prime");
    require(e >= 1, "bad_extension_degree", "extension degree must be >= 1");
    static std::mutex mutex;
    static std::map<std::pair<std::uint32_t, int>, std::unique_ptr<FqField>> registry;
    std::lock_guard lock(mutex);
    auto& slot = registry[{p, e}];
    if (!slot) slot.reset(new FqField(p, e));
    return *slot;
  }

  // Accepts q = p^e and factors it.
  static const FqField& of_order(std::uint64_t q) {
    require(q >= 2, "not_prime_power", "q must be a prime power >= 2");
    std::uint64_t p = 2;
    while (q % p != 0) ++p;
    int e = 0;
    std::uint64_t r = q;
    while (r % p == 0) {
      r /= p;
      ++e;
    }
    require(r == 1, "not_prime_power", std::to_string(q) + " is not a prime power");
    return make(static_cast<std::uint32_t>(p), e);
  }

  std::uint32_t p() const { return p_; }
  int e() const { return e_; }
  std::uint32_t q() const { return q_; }
  // Coefficients over Fp of the defining modulus (empty when e == 1).
  const std::vector<std::uint32_t>& modulus() const { return modulus_; }

  Elem add(Elem a, Elem b) const {
    if (e_ == 1) return (a + b) % p_;
    return add_[a * q_ + b];
  }
  Elem neg(Elem a) const {
    if (e_ == 1) return a == 0 ? 0 : p_ - a;
    return neg_[a];
  }
  Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }
  Elem mul(Elem a, Elem b) const {
    if (e_ == 1) return static_cast<Elem>(std::uint64_t(a) * b % p_);
    return mul_[a * q_ + b];
  }
  Elem inv(Elem a) const {
    require(a != 0, "division_by_zero", "inverse of zero in Fq");
    if (e_ == 1) return detail::inv_mod(a, p_);
    return inv_[a];
  }
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }

  // Nonzero elements in increasing encoding order.
  std::vector<Elem> units() const {
    std::vector<Elem> out;
    for (Elem a = 1; a < q_; ++a) out.push_back(a);
    return out;
  }

 private:
  FqField(std::uint32_t p, int e) : p_(p), e_(e), q_(1) {
    std::uint64_t q = 1;
    for (int i = 0; i < e; ++i) q *= p;
    if (e > 1)
      require(q <= kMaxExtensionOrder, "field_too_large",
              "extension fields are limited to q <= " + std::to_string(kMaxExtensionOrder));
    q_ = static_cast<std::uint32_t>(q);
    if (e > 1) build_tables();
  }

  void build_tables() {
    const std::uint64_t count = q_;
    for (std::uint64_t idx = 0; idx < count; ++idx) {
      auto f = detail::monic_from_index(idx, e_, p_);
      if (detail::prime_poly_irreducible(f, p_)) {
        modulus_ = f;
        break;
      }
    }
    ensure(!modulus_.empty(), "no irreducible modulus found");
    auto digits = [&](Elem a) {
      detail::PrimePoly f(e_, 0);
      for (int i = 0; i < e_; ++i) {
        f[i] = a % p_;
        a /= p_;
      }
      detail::trim(f);
      return f;
    };
    auto encode = [&](const detail::PrimePoly& f) {
      Elem a = 0;
      for (std::size_t i = f.size(); i-- > 0;) a = a * p_ + f[i];
      return a;
    };
    add_.assign(std::size_t(q_) * q_, 0);
    mul_.assign(std::size_t(q_) * q_, 0);
    neg_.assign(q_, 0);
    inv_.assign(q_, 0);
    for (Elem a = 0; a < q_; ++a) {
      const auto fa = digits(a);
      detail::PrimePoly na(fa.size());
      for (std::size_t i = 0; i < fa.size(); ++i) na[i] = fa[i] == 0 ? 0 : p_ - fa[i];
      neg_[a] = encode(na);
      for (Elem b = 0; b < q_; ++b) {
        const auto fb = digits(b);
        detail::PrimePoly s(std::max(fa.size(), fb.size()), 0);
        for (std::size_t i = 0; i < s.size(); ++i)
          s[i] = ((i < fa.size() ? fa[i] : 0) + (i < fb.size() ? fb[i] : 0)) % p_;
        detail::trim(s);
        add_[a * q_ + b] = encode(s);
        if (fa.empty() || fb.empty()) continue;
        detail::PrimePoly prod(fa.size() + fb.size() - 1, 0);
        for (std::size_t i = 0; i < fa.size(); ++i)
          for (std::size_t j = 0; j < fb.size(); ++j)
            prod[i + j] = static_cast<std::uint32_t>((prod[i + j] + std::uint64_t(fa[i]) * fb[j]) % p_);
        detail::trim(prod);
        mul_[a * q_ + b] = encode(detail::rem(prod, modulus_, p_));
      }
    }
    for (Elem a = 1; a < q_; ++a)
      for (Elem b = 1; b < q_; ++b)
        if (mul_[a * q_ + b] == 1) {
          inv_[a] = b;
          break;
        }
  }

  std::uint32_t p_;
  int e_;
  std::uint32_t q_;
  std::vector<std::uint32_t> modulus_;
  std::vector<Elem> add_, mul_, neg_, inv_;
};

inline const FqField& field_make(std::uint32_t p, int e) { return FqField::make(p, e); }

}  // namespace ftmodsym
