#include <gtest/gtest.h>

#include <set>

#include "ftmodsym/projective.hpp"

using namespace ftmodsym;

namespace {

const FqField& F(std::uint64_t q) { return FqField::of_order(q); }
Poly P(const char* s, std::uint64_t q) { return parse_poly(s, F(q)); }

std::uint64_t pow_u(std::uint64_t b, int e) {
  std::uint64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

// (u1:v1) = (u2:v2) in P^1(A/n) iff u1 v2 - u2 v1 = 0 mod n.
bool same_class(const Poly& u1, const Poly& v1, const Poly& u2, const Poly& v2, const LevelContext& ctx) {
  return ctx.reduce(u1 * v2 - u2 * v1).is_zero();
}

std::size_t brute_force_p1_size(const LevelContext& ctx) {
  const auto res = enumerate_below(ctx.d(), ctx.field());
  std::vector<std::pair<Poly, Poly>> reps;
  for (const Poly& u : res)
    for (const Poly& v : res) {
      if (!coprime_to_level(u, v, ctx)) continue;
      bool seen = false;
      for (const auto& [a, b] : reps)
        if (same_class(u, v, a, b, ctx)) {
          seen = true;
          break;
        }
      if (!seen) reps.emplace_back(u, v);
    }
  return reps.size();
}

std::uint64_t brute_force_coprime(int i, int j, const FqField& f) {
  std::uint64_t n = 0;
  for (const Poly& a : enumerate_monic(i, f))
    for (const Poly& b : enumerate_monic(j, f)) n += coprime(a, b);
  return n;
}

// Coprime (u, v), deg <= e, counted up to scalars directly from pairs.
std::uint64_t brute_force_truncated(int e, const FqField& f) {
  std::uint64_t pairs = 0;
  for (const Poly& u : enumerate_below(e + 1, f))
    for (const Poly& v : enumerate_below(e + 1, f)) pairs += coprime(u, v);
  return pairs / (f.q() - 1);
}

const std::vector<std::pair<std::uint64_t, const char*>> kPrimeLevels{
    {2, "T^3+T+1"}, {2, "T^4+T+1"}, {2, "T^5+T^2+1"}, {3, "T^2+1"}, {3, "T^3+2*T+1"}, {5, "T^3+T+1"}};
const std::vector<std::pair<std::uint64_t, const char*>> kCompositeLevels{
    {2, "T^2"}, {2, "T^3+T"}, {2, "T^4"}, {3, "T^2+2*T"}, {3, "T^3"}};

}  // namespace

TEST(Normalize, PrimeFastPathExample) {
  const LevelContext ctx(P("T^3+T+1", 2));
  const Poly u = P("T^2+T", 2), v = P("T^2", 2);
  const P1Point x = p1_normalize(u, v, ctx);
  EXPECT_TRUE(x.v.is_one());
  EXPECT_TRUE(same_class(x.u, x.v, u, v, ctx));
  EXPECT_EQ(x.u, ctx.reduce(u * xgcd(v, ctx.N()).s));
}

TEST(Normalize, InfinityAndErrors) {
  const LevelContext ctx(P("T^3+T+1", 2));
  const P1Point inf = p1_normalize(P("1", 2), P("0", 2), ctx);
  EXPECT_TRUE(inf.u.is_one() && inf.v.is_zero());
  EXPECT_THROW(p1_normalize(P("0", 2), P("0", 2), ctx), PreconditionError);
  EXPECT_THROW(p1_normalize(P("T^3+T+1", 2), P("0", 2), ctx), PreconditionError);
  EXPECT_THROW(LevelContext(P("T^2+T", 3).scaled(2)), PreconditionError);
}

TEST(Normalize, CompositeLevelClasses) {
  const LevelContext ctx(P("T^2", 2));
  EXPECT_FALSE(ctx.is_prime());
  EXPECT_THROW(p1_normalize(P("T", 2), P("T", 2), ctx), PreconditionError);
  const P1Point a = p1_normalize(P("T+1", 2), P("T", 2), ctx);
  const P1Point b = p1_normalize(P("1", 2), P("T", 2), ctx);  // (T+1)^{-1} = T+1 mod T^2
  EXPECT_EQ(a, b);
}

TEST(Enumerate, PrimeCounts) {
  EXPECT_EQ(P1List(LevelContext(P("T^3+T+1", 2))).size(), 9u);
  EXPECT_EQ(P1List(LevelContext(P("T^2+1", 3))).size(), 10u);
  for (auto [q, t] : kPrimeLevels) {
    const LevelContext ctx(P(t, q));
    EXPECT_EQ(P1List(ctx).size(), pow_u(q, ctx.d()) + 1) << t;
  }
}

TEST(Enumerate, CompositeMatchesBruteForce) {
  for (auto [q, t] : kCompositeLevels) {
    const LevelContext ctx(P(t, q));
    const P1List pts(ctx);
    EXPECT_EQ(pts.size(), brute_force_p1_size(ctx)) << t;
    for (std::size_t i = 0; i < pts.size(); ++i)
      for (std::size_t j = i + 1; j < pts.size(); ++j)
        EXPECT_FALSE(same_class(pts[i].u, pts[i].v, pts[j].u, pts[j].v, ctx));
  }
}

TEST(Enumerate, SortedAndIndexed) {
  for (auto [q, t] : kCompositeLevels) {
    const LevelContext ctx(P(t, q));
    const P1List pts(ctx);
    EXPECT_TRUE(std::is_sorted(pts.points().begin(), pts.points().end()));
    for (std::size_t i = 0; i < pts.size(); ++i) EXPECT_EQ(pts.index_of(pts[i]), i);
  }
}

TEST(Action, Examples) {
  const FqField& f = F(2);
  const LevelContext ctx(P("T^3+T+1", 2));
  const P1Point zero = p1_normalize(P("0", 2), P("1", 2), ctx);
  const Mat2 M{P("T", 2), P("0", 2), P("0", 2), P("1", 2)};
  EXPECT_EQ(p1_act(zero, M, ctx), zero);
  for (const P1Point& x : p1_enumerate(ctx)) {
    EXPECT_EQ(p1_act(x, Mat2::identity(f), ctx), x);
    const auto s = p1_act(x, Mat2::sigma(f), ctx);
    ASSERT_TRUE(s);
    EXPECT_TRUE(same_class(s->u, s->v, -x.v, x.u, ctx));
  }
  // Non-unit determinant can leave the coprime locus.
  const Mat2 N{ctx.N(), P("0", 2), P("0", 2), P("1", 2)};
  EXPECT_FALSE(p1_act(p1_normalize(P("1", 2), P("0", 2), ctx), N, ctx).has_value());
}

TEST(ActionProperty, SigmaSquaredAndTauCubed) {
  for (auto levels : {kPrimeLevels, kCompositeLevels})
    for (auto [q, t] : levels) {
      const LevelContext ctx(P(t, q));
      const FqField& f = ctx.field();
      const Mat2 s = Mat2::sigma(f), tau = Mat2::tau(f);
      for (const P1Point& x : p1_enumerate(ctx)) {
        EXPECT_EQ(p1_act(*p1_act(x, s, ctx), s, ctx), x);
        EXPECT_EQ(p1_act(x, tau * tau * tau, ctx), x);
      }
    }
}

TEST(NormalizeProperty, IdempotentAndUnitInvariant) {
  for (auto levels : {kPrimeLevels, kCompositeLevels})
    for (auto [q, t] : levels) {
      const LevelContext ctx(P(t, q));
      if (ctx.d() > 4 || q > 3) continue;
      const auto res = enumerate_below(ctx.d(), ctx.field());
      std::vector<Poly> units;
      for (const Poly& w : res)
        if (coprime(w, ctx.N())) units.push_back(w);
      for (const Poly& u : res)
        for (const Poly& v : res) {
          const auto x = p1_try_normalize(u, v, ctx);
          if (!x) continue;
          ASSERT_EQ(p1_normalize(x->u, x->v, ctx), *x);
          ASSERT_TRUE(same_class(x->u, x->v, u, v, ctx));
          for (const Poly& w : units) ASSERT_EQ(p1_normalize(w * u, w * v, ctx), *x);
        }
    }
}

TEST(Truncated, Examples) {
  EXPECT_EQ(p1a_truncated_enumerate(1, F(2)).size(), 9u);
  const auto g = d_greater(0, F(2));
  ASSERT_EQ(g.size(), 1u);
  EXPECT_EQ(g[0], (P1APoint{P("1", 2), P("0", 2)}));
  EXPECT_EQ(d_greater_plus(0, F(2)), g);
  const auto b = d_bullet_lower(0, F(3));
  ASSERT_EQ(b.size(), 1u);
  EXPECT_EQ(b[0], (P1APoint{P("1", 3), P("2", 3)}));
  EXPECT_EQ(d_greater_plus(2, F(3)).size(), 27u);
  EXPECT_THROW(p1a_truncated_enumerate(-1, F(2)), PreconditionError);
}

TEST(Truncated, CountsMatchBruteForce) {
  for (std::uint64_t q : {2, 3})
    for (int e = 1; e <= 3; ++e) {
      const auto pts = p1a_truncated_enumerate(e, F(q));
      EXPECT_EQ(pts.size(), pow_u(q, 2 * e + 1) + 1);
      EXPECT_EQ(pts.size(), brute_force_truncated(e, F(q)));
    }
}

TEST(CountCoprime, Examples) {
  EXPECT_EQ(count_coprime(1, 1, F(2)), 2u);
  EXPECT_EQ(count_coprime(0, 3, F(3)), 27u);
  EXPECT_THROW(count_coprime(-1, 2, F(2)), PreconditionError);
}

TEST(CountCoprime, MatchesBruteForce) {
  for (std::uint64_t q : {2, 3})
    for (int i = 0; i <= 6; ++i)
      for (int j = 0; i + j <= 6; ++j)
        EXPECT_EQ(count_coprime(i, j, F(q)), brute_force_coprime(i, j, F(q))) << q << " " << i << " " << j;
}

TEST(TruncatedProperty, DSetsPartitionAndPermute) {
  for (std::uint64_t q : {2, 3, 4})
    for (int k = 0; k <= 3; ++k) {
      if (q == 4 && k == 3) continue;
      const FqField& f = F(q);
      const auto ck = c_k(k, f);
      const auto gt = d_greater(k, f), lt = d_less(k, f), lo = d_bullet_lower(k, f),
                 up = d_bullet_upper(k, f), eq = d_equal(k, f);
      EXPECT_EQ(gt.size() + lt.size() + eq.size(), ck.size());
      EXPECT_EQ(lo.size() + up.size(), eq.size());
      std::set<P1APoint> all(gt.begin(), gt.end());
      all.insert(lt.begin(), lt.end());
      all.insert(eq.begin(), eq.end());
      EXPECT_EQ(all.size(), ck.size());

      auto image = [&](const std::vector<P1APoint>& xs, const Mat2& M) {
        std::set<P1APoint> out;
        for (const auto& x : xs) out.insert(p1a_act(x, M));
        return out;
      };
      auto as_set = [](const std::vector<P1APoint>& xs) { return std::set<P1APoint>(xs.begin(), xs.end()); };
      const Mat2 tau = Mat2::tau(f), sigma = Mat2::sigma(f);
      EXPECT_EQ(image(lo, tau), as_set(gt));
      EXPECT_EQ(image(gt, tau), as_set(lt));
      EXPECT_EQ(image(lt, tau), as_set(lo));
      EXPECT_EQ(image(gt, sigma), as_set(lt));
      EXPECT_EQ(image(lt, sigma), as_set(gt));
      if (k > 0) EXPECT_EQ(d_greater_plus(k, f).size(), pow_u(q, 2 * k - 1));

      // Stability of the truncated set under sigma, tau and diagonal matrices.
      const auto te = p1a_truncated_enumerate(k, f);
      const auto ts = as_set(te);
      EXPECT_EQ(image(te, sigma), ts);
      EXPECT_EQ(image(te, tau), ts);
      for (Elem l : f.units()) EXPECT_EQ(image(te, Mat2::delta(f, l)), ts);
    }
}

TEST(LiftSmall, Examples) {
  const LevelContext ctx(P("T^3+T+1", 2));
  const P1Point inf = p1_normalize(P("1", 2), P("0", 2), ctx);
  EXPECT_EQ(lift_small(inf, ctx), (P1APoint{P("1", 2), P("0", 2)}));
  EXPECT_THROW(lift_small(inf, LevelContext(P("T^2", 2))), PreconditionError);
}

TEST(LiftSmall, BijectionOntoSmallRepresentatives) {
  for (auto [q, t] : kPrimeLevels) {
    const LevelContext ctx(P(t, q));
    const P1List pts(ctx);
    const auto reps = small_representatives(ctx);
    ASSERT_EQ(reps.size(), pts.size()) << t;
    std::set<P1APoint> images;
    for (const P1Point& x : pts.points()) {
      const P1APoint y = lift_small(x, ctx);
      EXPECT_EQ(p1a_reduce(y, ctx), x);
      EXPECT_EQ(lift_small_exhaustive(x, ctx), y);
      images.insert(y);
    }
    EXPECT_EQ(images, std::set<P1APoint>(reps.begin(), reps.end()));
    for (const P1APoint& y : reps) EXPECT_EQ(lift_small(p1a_reduce(y, ctx), ctx), y);
  }
}

TEST(LiftSmall, EvenDegreeImageIsPe) {
  const LevelContext ctx(P("T^4+T+1", 2));
  std::set<P1APoint> images;
  for (const P1Point& x : p1_enumerate(ctx)) images.insert(lift_small(x, ctx));
  EXPECT_EQ(images.size(), 17u);
  for (const auto& y : images) {
    EXPECT_LE(y.u.degree(), Degree(2));
    EXPECT_LE(y.v.degree(), Degree(1));
  }
  const auto pe = p_e(2, F(2));
  EXPECT_EQ(images, std::set<P1APoint>(pe.begin(), pe.end()));
}

TEST(ParsePoint, Format) {
  const LevelContext ctx(P("T^3+T+1", 2));
  EXPECT_EQ(parse_point("(T:1)", ctx).str(), "(T:1)");
  EXPECT_EQ(parse_point("( 1 : 0 )", ctx).str(), "(1:0)");
  EXPECT_THROW(parse_point("T:1", ctx), ParseError);
  EXPECT_THROW(parse_point("(T:1:1)", ctx), ParseError);
  EXPECT_THROW(parse_point("(0:0)", ctx), PreconditionError);
}
