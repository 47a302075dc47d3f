#pragma once

#include <cstdint>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "ftmodsym/hecke.hpp"
#include "ftmodsym/oracle.hpp"
#include "ftmodsym/space.hpp"
#include "ftmodsym/symbols.hpp"
#include "ftmodsym/winding.hpp"

namespace ftmodsym::io {

using Json = nlohmann::ordered_json;

inline Json rational(const Rational& x) { return format_rational(x); }

inline Json vector(const QVector& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(rational(x));
  return out;
}

inline Json integer(const Integer& x) {
  if (x >= 0 && x <= Integer(std::numeric_limits<std::int64_t>::max())) return static_cast<std::int64_t>(x);
  return x.str();
}

inline Json conventions(const LevelContext& ctx) {
  return Json{
      {"q", ctx.field().q()},
      {"level", ctx.N().str()},
      {"prime", ctx.is_prime()},
      {"field_encoding", "base-p digits over the least monic irreducible modulus"},
      {"point_order", "(deg u, deg v, coefficients from the top)"},
      {"xi", "xi(u:v) = [g0, g inf], g in GL2(A) with bottom row (u, v)"},
      {"matrix_convention", "column j is the image of basis element j"},
  };
}

inline Json presentation(const PresentationResult& pres, const P1List& pts) {
  Json torsion = Json::array();
  for (const auto& t : pres.torsion) torsion.push_back(integer(t));
  Json basis = Json::array();
  for (auto i : pres.basis) basis.push_back(pts[i].str());
  Json coords = Json::object();
  for (std::size_t i = 0; i < pts.size(); ++i) coords[pts[i].str()] = vector(pres.coords[i]);
  return Json{{"rank", pres.rank}, {"torsion", torsion}, {"basis", basis}, {"coords", coords}};
}

inline Json formal_sum(const FormalSum& F) {
  Json out = Json::object();
  for (const auto& [x, c] : F.terms()) out[x.str()] = rational(c);
  return out;
}

inline Json basis(const SymbolSpace& V) {
  Json out{{"kind", basis_kind_name(V.kind())}, {"basis", V.basis_labels()}};
  if (V.kind() == BasisKind::Explicit) {
    Json blocks = Json::array();
    for (const auto& b : blocks_of(V.rewriter()->basis()))
      blocks.push_back(Json{{"k", b.k}, {"begin", b.begin}, {"end", b.end}});
    out["blocks"] = blocks;
  }
  if (const auto& c = V.completion()) {
    out["family_size"] = c->family_size;
    out["family_free"] = c->family_free;
    out["pattern_added"] = c->pattern_added;
    out["pattern_suffices"] = c->pattern_suffices;
  }
  if (V.has_parabolic()) {
    out["genus"] = V.genus();
    out["parabolic_basis"] = V.parabolic_labels();
  }
  return out;
}

inline Json matrix(const OperatorMatrix& m) {
  Json rows = Json::array();
  for (const auto& r : m.rows) rows.push_back(vector(r));
  Json cp = Json::array();
  for (const auto& c : charpoly(m.rows)) cp.push_back(rational(c));
  return Json{{"basis", m.basis}, {"label", m.label}, {"rows", rows}, {"charpoly", cp}};
}

inline std::string matrix_csv(const OperatorMatrix& m) {
  std::string out;
  for (const auto& r : m.rows) {
    for (std::size_t j = 0; j < r.size(); ++j) {
      if (j) out += ',';
      out += format_rational(r[j]);
    }
    out += '\n';
  }
  return out;
}

inline Json mat2(const Mat2& M) { return Json::array({M.a.str(), M.b.str(), M.c.str(), M.d.str()}); }

inline Json heilbronn(const HeilbronnSet& S) {
  Json ms = Json::array();
  for (const auto& M : S.matrices) ms.push_back(mat2(M));
  return Json{{"m", S.m.str()}, {"count", S.matrices.size()}, {"matrices", ms}};
}

struct WindingReport {
  WindingElement element;
  Integer denominator;
  std::map<int, std::size_t> ranks;
  std::map<int, std::size_t> ranks_mod_p;
  NonvanishingResult nonvanishing;
};

inline Json winding(const WindingReport& w, const SymbolSpace& V) {
  Json ranks = Json::object();
  for (const auto& [r, k] : w.ranks) ranks[std::to_string(r)] = k;
  Json ranks_p = Json::object();
  for (const auto& [r, k] : w.ranks_mod_p) ranks_p[std::to_string(r)] = k;
  Json nv_ranks = Json::object();
  for (const auto& [c, k] : w.nonvanishing.ranks) nv_ranks[std::to_string(c)] = k;
  return Json{
      {"basis", V.parabolic_labels()},
      {"e", vector(w.element.e)},
      {"denominator", integer(w.denominator)},
      {"aux_m", w.element.aux_m.str()},
      {"ranks", ranks},
      {"ranks_mod_p", ranks_p},
      {"nonvanishing", w.nonvanishing.count},
      {"stable_at_cap", w.nonvanishing.stable_at_cap},
      {"nonvanishing_ranks", nv_ranks},
      {"genus", V.genus()},
  };
}

}  // namespace ftmodsym::io
