#pragma once

#include <map>
#include <utility>
#include <vector>

#include "ftmodsym/linalg.hpp"
#include "ftmodsym/projective.hpp"
#include "ftmodsym/symbols.hpp"

namespace ftmodsym {

// Index set of the explicit family: (1,0), then for k = 1, 2, ... with
// 2k < d all coprime (u, v), u monic of degree k, v monic of degree < k.
// Ordered by k, then u, then v.
inline std::vector<P1APoint> explicit_family(const LevelContext& ctx) {
  const FqField& f = ctx.field();
  std::vector<P1APoint> out{{Poly::one(f), Poly::zero(f)}};
  for (int k = 1; 2 * k < ctx.d(); ++k)
    for (const Poly& u : enumerate_monic(k, f))
      for (int j = 0; j < k; ++j)
        for (const Poly& v : enumerate_monic(j, f))
          if (coprime(u, v)) out.push_back({u, v});
  std::sort(out.begin() + 1, out.end(), [](const P1APoint& x, const P1APoint& y) {
    return std::tie(x.u, x.v) < std::tie(y.u, y.v);
  });
  return out;
}

inline std::vector<P1APoint> basis_enumerate(const LevelContext& ctx) {
  require(ctx.is_prime(), "level_not_prime", "explicit basis needs a prime level");
  require(ctx.d() % 2 == 1, "even_degree",
          "explicit basis needs odd degree; use the free family for even degree");
  return explicit_family(ctx);
}

struct BasisBlock {
  int k;
  std::size_t begin, end;  // half-open range in the basis
};

inline std::vector<BasisBlock> blocks_of(const std::vector<P1APoint>& family) {
  std::vector<BasisBlock> out;
  for (std::size_t i = 0; i < family.size(); ++i) {
    const int k = family[i].u.degree().value();
    if (out.empty() || out.back().k != k) out.push_back({k, i, i});
    out.back().end = i + 1;
  }
  return out;
}

inline std::vector<BasisBlock> subspace_decomposition(const LevelContext& ctx) {
  return blocks_of(basis_enumerate(ctx));
}

// Expresses each xi(x) in the explicit basis, with at most two nonzero
// coordinates, directly from the small lift of x.
class ExplicitRewriter {
 public:
  explicit ExplicitRewriter(const LevelContext& ctx) : ctx_(&ctx), basis_(basis_enumerate(ctx)) {
    for (std::size_t i = 0; i < basis_.size(); ++i) index_.emplace(key(basis_[i].u, basis_[i].v), i);
  }

  const LevelContext& level() const { return *ctx_; }
  const std::vector<P1APoint>& basis() const { return basis_; }
  std::size_t size() const { return basis_.size(); }

  QVector rewrite(const P1Point& x) const {
    QVector out(basis_.size(), Rational(0));
    const P1APoint y = lift_small(x, *ctx_);
    const Poly& u = y.u;
    const Poly& v = y.v;
    if (v.is_zero()) {
      out[0] += 1;
    } else if (u.is_zero()) {
      out[0] -= 1;
    } else if (u.is_constant() && v.is_constant()) {
      // xi(x) = 0
    } else if (u.degree() > v.degree()) {
      out[at(u.monic(), v.monic())] += 1;
    } else if (u.degree() < v.degree()) {
      out[at(v.monic(), u.monic())] -= 1;
    } else {
      const Poly w = u.scaled(v.lead()) - v.scaled(u.lead());
      ensure(!w.is_zero() && w.degree() < u.degree(), "equal-degree rewrite did not drop degree");
      const Poly wm = w.monic();
      out[at(u.monic(), wm)] += 1;
      out[at(v.monic(), wm)] -= 1;
    }
    return out;
  }

  QVector rewrite_sum(const FormalSum& F) const {
    QVector out(basis_.size(), Rational(0));
    for (auto& [x, c] : F.terms()) {
      const QVector r = rewrite(x);
      for (std::size_t i = 0; i < r.size(); ++i)
        if (r[i] != 0) out[i] += c * r[i];
    }
    return out;
  }

  std::size_t at(const Poly& u, const Poly& v) const {
    auto it = index_.find(key(u, v));
    ensure(it != index_.end(), "(" + u.str() + "," + v.str() + ") is not a basis element");
    return it->second;
  }

 private:
  static std::pair<std::uint64_t, std::uint64_t> key(const Poly& u, const Poly& v) {
    return {u.index(), v.index()};
  }

  const LevelContext* ctx_;
  std::vector<P1APoint> basis_;
  std::map<std::pair<std::uint64_t, std::uint64_t>, std::size_t> index_;
};

inline QVector rewrite(const P1Point& x, const LevelContext& ctx) {
  return ExplicitRewriter(ctx).rewrite(x);
}

// Even degree: the same index set is free but too small. The completion adds
// xi(u:1), u monic of degree d/2 in enumeration order, whenever that raises
// the rank, and then arbitrary generators in point order if still short.
struct EvenCompletion {
  std::vector<P1Point> generators;  // the family followed by the added points
  std::size_t family_size = 0;
  std::size_t pattern_added = 0;    // how many (u:1), deg u = d/2, were used
  bool pattern_suffices = false;    // true if no arbitrary generator was needed
  bool family_free = false;         // the family is independent in the quotient
};

inline EvenCompletion complete_even_family(const LevelContext& ctx, const PresentationResult& pres,
                                           const P1List& pts) {
  require(ctx.is_prime(), "level_not_prime", "completion needs a prime level");
  const FqField& f = ctx.field();
  EvenCompletion out;
  std::vector<QVector> vecs;
  for (const auto& y : explicit_family(ctx)) {
    out.generators.push_back(p1a_reduce(y, ctx));
    vecs.push_back(pres.coords[pts.index_of(out.generators.back())]);
  }
  out.family_size = out.generators.size();
  out.family_free = rank(vecs) == vecs.size();
  std::vector<P1Point> candidates;
  for (const Poly& u : enumerate_monic(ctx.d() / 2, f)) candidates.push_back(p1_normalize(u, Poly::one(f), ctx));
  const std::size_t pattern_end = candidates.size();
  for (const auto& x : pts.points()) candidates.push_back(x);
  std::size_t r = rank(vecs);
  for (std::size_t i = 0; i < candidates.size() && r < pres.rank; ++i) {
    vecs.push_back(pres.coords[pts.index_of(candidates[i])]);
    const std::size_t r2 = rank(vecs);
    if (r2 == r) {
      vecs.pop_back();
      continue;
    }
    r = r2;
    out.generators.push_back(candidates[i]);
    if (i < pattern_end) ++out.pattern_added;
  }
  ensure(r == pres.rank, "completion did not reach full rank");
  out.pattern_suffices = out.generators.size() == out.family_size + out.pattern_added;
  return out;
}

}  // namespace ftmodsym
