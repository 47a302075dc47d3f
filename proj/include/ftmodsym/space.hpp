#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ftmodsym/explicit_basis.hpp"
#include "ftmodsym/linalg.hpp"
#include "ftmodsym/oracle.hpp"
#include "ftmodsym/symbols.hpp"

namespace ftmodsym {

enum class BasisKind {
  Explicit,        // prime level, odd degree: the explicit basis and rewrite
  EvenCompletion,  // prime level, even degree: free family + completion
  Oracle,          // any level: the presentation's greedy basis
};

inline const char* basis_kind_name(BasisKind k) {
  switch (k) {
    case BasisKind::Explicit: return "explicit";
    case BasisKind::EvenCompletion: return "even-completion";
    case BasisKind::Oracle: return "oracle";
  }
  return "?";
}

// The space of modular symbols at a level with a chosen Q-basis, the
// coordinates of every generator, and (prime level) an integral basis of the
// torsion-free parabolic lattice.
class SymbolSpace {
 public:
  SymbolSpace(const LevelContext& ctx, BasisKind kind) : ctx_(ctx), pts_(ctx_), kind_(kind) {
    switch (kind) {
      case BasisKind::Explicit: build_explicit(); break;
      case BasisKind::EvenCompletion: build_even(); break;
      case BasisKind::Oracle: build_oracle(); break;
    }
    if (ctx_.is_prime()) build_parabolic();
  }
  SymbolSpace(const SymbolSpace&) = delete;
  SymbolSpace& operator=(const SymbolSpace&) = delete;

  static BasisKind default_kind(const LevelContext& ctx) {
    if (!ctx.is_prime()) return BasisKind::Oracle;
    return ctx.d() % 2 == 1 ? BasisKind::Explicit : BasisKind::EvenCompletion;
  }

  const LevelContext& level() const { return ctx_; }
  const P1List& points() const { return pts_; }
  BasisKind kind() const { return kind_; }
  std::size_t dim() const { return gens_.size(); }
  const std::vector<P1Point>& basis_generators() const { return gens_; }
  const std::vector<std::string>& basis_labels() const { return labels_; }
  const std::optional<PresentationResult>& presentation() const { return pres_; }
  const std::optional<ExplicitRewriter>& rewriter() const { return rewriter_; }
  const std::optional<EvenCompletion>& completion() const { return completion_; }

  const QVector& coords(const P1Point& x) const { return coords_[pts_.index_of(x)]; }
  QVector coords(const FormalSum& F) const {
    QVector v(dim(), Rational(0));
    for (auto& [x, c] : F.terms()) {
      const QVector& cx = coords(x);
      for (std::size_t i = 0; i < v.size(); ++i)
        if (cx[i] != 0) v[i] += c * cx[i];
    }
    return v;
  }
  // Formal sum of basis generators with the given coordinates.
  FormalSum as_sum(const QVector& v) const {
    FormalSum F;
    for (std::size_t i = 0; i < v.size(); ++i) F.add(gens_[i], v[i]);
    return F;
  }

  // ---- parabolic part (prime level only) ----
  bool has_parabolic() const { return ctx_.is_prime(); }
  std::size_t genus() const { return par_basis_.size(); }
  const std::vector<QVector>& parabolic_basis() const { return par_basis_; }
  const std::vector<std::string>& parabolic_labels() const { return par_labels_; }
  // True when the parabolic basis consists of basis generators.
  bool parabolic_from_generators() const { return par_from_gens_; }

  bool is_parabolic(const QVector& ambient) const {
    require(has_parabolic(), "level_not_prime", "parabolic part needs a prime level");
    return boundary_of(ambient) == 0;
  }
  // Coordinates of an ambient vector in the parabolic basis (exact, checked).
  std::optional<QVector> try_to_parabolic(const QVector& ambient) const {
    QVector sel(par_rows_.size());
    for (std::size_t i = 0; i < par_rows_.size(); ++i) sel[i] = ambient[par_rows_[i]];
    QVector y = par_left_ * sel;
    if (from_parabolic(y) != ambient) return std::nullopt;
    return y;
  }
  QVector to_parabolic(const QVector& ambient) const {
    auto y = try_to_parabolic(ambient);
    ensure(y.has_value(), "vector is not in the parabolic subspace");
    return *y;
  }
  QVector from_parabolic(const QVector& y) const {
    QVector v(dim(), Rational(0));
    for (std::size_t j = 0; j < y.size(); ++j)
      if (y[j] != 0)
        for (std::size_t i = 0; i < v.size(); ++i) v[i] += y[j] * par_basis_[j][i];
    return v;
  }

  // Multiplicity at [inf] of the boundary of an ambient vector.
  Rational boundary_of(const QVector& ambient) const {
    Rational r = 0;
    for (std::size_t i = 0; i < dim(); ++i) r += ambient[i] * gen_boundary_[i];
    return r;
  }

 private:
  void build_explicit() {
    rewriter_.emplace(ctx_);
    for (const auto& y : rewriter_->basis()) {
      gens_.push_back(p1a_reduce(y, ctx_));
      labels_.push_back("(" + y.u.str() + ":" + y.v.str() + ")");
    }
    coords_.reserve(pts_.size());
    for (const auto& x : pts_.points()) coords_.push_back(rewriter_->rewrite(x));
  }

  void build_oracle() {
    pres_ = solve_presentation(pts_);
    for (auto i : pres_->basis) {
      gens_.push_back(pts_[i]);
      labels_.push_back(pts_[i].str());
    }
    coords_ = pres_->coords;
  }

  void build_even() {
    require(ctx_.is_prime() && ctx_.d() % 2 == 0, "bad_basis_kind",
            "even completion needs a prime level of even degree");
    pres_ = solve_presentation(pts_);
    completion_ = complete_even_family(ctx_, *pres_, pts_);
    std::vector<QVector> cols;
    for (const auto& x : completion_->generators) {
      gens_.push_back(x);
      labels_.push_back(x.str());
      cols.push_back(pres_->coords[pts_.index_of(x)]);
    }
    const auto change = inverse(from_columns(cols, pres_->rank));
    ensure(change.has_value(), "completed family is not a basis");
    coords_.reserve(pts_.size());
    for (const auto& v : pres_->coords) coords_.push_back(*change * v);
  }

  void build_parabolic() {
    for (const auto& x : gens_) gen_boundary_.push_back(boundary(x, ctx_).at_inf);
    // The parabolic lattice is spanned by xi(u:v) with u, v nonzero mod P.
    std::vector<QVector> spanning;
    for (std::size_t i = 0; i < pts_.size(); ++i)
      if (!pts_[i].u.is_zero() && !pts_[i].v.is_zero()) spanning.push_back(coords_[i]);
    Integer D = 1;
    for (const auto& v : spanning) D = lcm(D, common_denominator(v));
    ZMatrix scaled_rows;
    for (const auto& v : spanning) scaled_rows.push_back(to_integer(scaled(v, Rational(D))));
    const ZMatrix H = hnf_rows(scaled_rows);

    // Prefer the parabolic basis generators when they span the same lattice.
    std::vector<std::size_t> par_gens;
    for (std::size_t i = 0; i < gens_.size(); ++i)
      if (gen_boundary_[i] == 0) par_gens.push_back(i);
    bool use_gens = par_gens.size() == H.size();
    if (use_gens) {
      ZMatrix gen_rows;
      for (auto i : par_gens) {
        QVector e(dim(), Rational(0));
        e[i] = 1;
        gen_rows.push_back(to_integer(scaled(e, Rational(D))));
      }
      use_gens = hnf_rows(gen_rows) == H;
    }
    par_from_gens_ = use_gens;
    if (use_gens) {
      for (auto i : par_gens) {
        QVector e(dim(), Rational(0));
        e[i] = 1;
        par_basis_.push_back(std::move(e));
        par_labels_.push_back(labels_[i]);
      }
    } else {
      for (std::size_t r = 0; r < H.size(); ++r) {
        par_basis_.push_back(scaled(to_rational(H[r]), Rational(1) / Rational(D)));
        par_labels_.push_back("h" + std::to_string(r + 1));
      }
    }
    // Left inverse from a set of independent coordinate rows.
    const std::size_t g = par_basis_.size();
    par_rows_ = rref(par_basis_).pivots;
    ensure(par_rows_.size() == g, "parabolic basis is not independent");
    QMatrix square = zero_matrix(g, g);
    for (std::size_t i = 0; i < g; ++i)
      for (std::size_t j = 0; j < g; ++j) square[i][j] = par_basis_[j][par_rows_[i]];
    auto inv = inverse(square);
    ensure(g == 0 || inv.has_value(), "parabolic basis selection is singular");
    par_left_ = g == 0 ? QMatrix{} : *inv;
  }

  LevelContext ctx_;
  P1List pts_;
  BasisKind kind_;
  std::vector<P1Point> gens_;
  std::vector<std::string> labels_;
  std::vector<QVector> coords_;
  std::optional<PresentationResult> pres_;
  std::optional<ExplicitRewriter> rewriter_;
  std::optional<EvenCompletion> completion_;

  std::vector<Rational> gen_boundary_;
  std::vector<QVector> par_basis_;
  std::vector<std::string> par_labels_;
  std::vector<std::size_t> par_rows_;
  QMatrix par_left_;
  bool par_from_gens_ = false;
};

}  // namespace ftmodsym
