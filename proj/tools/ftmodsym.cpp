// ftmodsym: modular symbols for Gamma_0(n) over Fq[T] from the command line.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "ftmodsym/json_io.hpp"
#include "ftmodsym/verify.hpp"

using namespace ftmodsym;
using io::Json;

namespace {

struct Job {
  std::string q = "2";
  std::string level;
  std::string m;
  std::string point;
  std::string suite;
  std::string format = "json";
  std::string out;
  int cap = -1;
  std::uint64_t seed = 1;
  bool force = false;
  bool ambient = false;
  bool eta = false;
  bool algebra_index = false;
};

constexpr std::uint64_t kMaxPoints = 20000;

const FqField& parse_field(const std::string& text) {
  std::uint64_t q = 0;
  try {
    const auto caret = text.find('^');
    if (caret == std::string::npos) {
      std::size_t used = 0;
      q = std::stoull(text, &used);
      if (used != text.size()) throw ParseError("");
    } else {
      std::size_t u1 = 0, u2 = 0;
      const std::string ps = text.substr(0, caret), es = text.substr(caret + 1);
      const std::uint64_t p = std::stoull(ps, &u1);
      const int e = std::stoi(es, &u2);
      if (u1 != ps.size() || u2 != es.size() || e < 1 || e > 30) throw ParseError("");
      q = 1;
      for (int i = 0; i < e; ++i) q *= p;
    }
  } catch (const std::exception&) {
    throw ParseError("--q must be a prime power like 4 or 2^2, got '" + text + "'");
  }
  if (q > 1024) throw PreconditionError("field_too_large", "q is limited to 1024");
  return FqField::of_order(q);
}

LevelContext make_level(const Job& job) {
  if (job.level.empty()) throw ParseError("--level is required");
  const FqField& f = parse_field(job.q);
  const Poly N = parse_poly(job.level, f);
  require(N.degree() >= Degree(1), "constant_level", "level must have degree >= 1");
  require(N.is_monic(), "level_not_monic", "level must be monic");
  std::uint64_t count = 1;
  for (int i = 0; i < N.degree().value() && count <= kMaxPoints; ++i) count *= f.q();
  require(job.force || count <= kMaxPoints, "too_large",
          "q^d exceeds " + std::to_string(kMaxPoints) + "; pass --force to run anyway");
  return LevelContext(N);
}

Poly parse_m(const Job& job, const FqField& f) {
  if (job.m.empty()) throw ParseError("--m is required");
  const Poly m = parse_poly(job.m, f);
  require(!m.is_zero() && m.is_monic(), "m_not_monic", "m must be a monic polynomial");
  return m;
}

std::optional<int> cap_of(const Job& job) {
  if (job.cap < 0) return std::nullopt;
  return job.cap;
}

void emit(const Job& job, const std::string& text) {
  if (job.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream os(job.out);
  if (!os) throw PreconditionError("cannot_write", "cannot open " + job.out);
  os << text;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

std::string text_vector(const QVector& v, const std::vector<std::string>& labels) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] == 0) continue;
    if (!s.empty()) s += " + ";
    s += format_rational(v[i]) + " " + labels[i];
  }
  return s.empty() ? "0" : s;
}

std::string text_matrix(const OperatorMatrix& m) {
  std::ostringstream os;
  os << m.label << " on [";
  for (std::size_t i = 0; i < m.basis.size(); ++i) os << (i ? ", " : "") << m.basis[i];
  os << "]\n";
  for (const auto& r : m.rows) {
    for (std::size_t j = 0; j < r.size(); ++j) os << (j ? " " : "  ") << format_rational(r[j]);
    os << "\n";
  }
  os << "charpoly:";
  for (const auto& c : charpoly(m.rows)) os << " " << format_rational(c);
  os << "\n";
  return os.str();
}

void require_format(const Job& job, bool csv_ok) {
  if (job.format == "json" || job.format == "text") return;
  if (job.format == "csv" && csv_ok) return;
  throw ParseError("format '" + job.format + "' is not available for this command");
}

int cmd_basis(const Job& job) {
  require_format(job, false);
  const LevelContext ctx = make_level(job);
  const SymbolSpace V(ctx, SymbolSpace::default_kind(ctx));
  if (job.format == "text") {
    std::ostringstream os;
    os << "basis (" << basis_kind_name(V.kind()) << ", " << V.dim() << "):";
    for (const auto& l : V.basis_labels()) os << " " << l;
    os << "\n";
    if (V.has_parabolic()) {
      os << "parabolic (" << V.genus() << "):";
      for (const auto& l : V.parabolic_labels()) os << " " << l;
      os << "\n";
    }
    emit(job, os.str());
    return 0;
  }
  Json j = io::basis(V);
  j["conventions"] = io::conventions(ctx);
  emit(job, dump(j));
  return 0;
}

int cmd_rewrite(const Job& job) {
  require_format(job, false);
  const LevelContext ctx = make_level(job);
  const P1Point x = parse_point(job.point, ctx);
  const SymbolSpace V(ctx, SymbolSpace::default_kind(ctx));
  const QVector& c = V.coords(x);
  if (job.format == "text") {
    emit(job, "xi" + x.str() + " = " + text_vector(c, V.basis_labels()) + "\n");
    return 0;
  }
  Json j{{"point", x.str()}};
  if (ctx.is_prime()) j["lift"] = lift_small(x, ctx).str();
  j["basis"] = V.basis_labels();
  j["coords"] = io::vector(c);
  j["conventions"] = io::conventions(ctx);
  emit(job, dump(j));
  return 0;
}

int cmd_oracle(const Job& job) {
  require_format(job, false);
  const LevelContext ctx = make_level(job);
  const P1List pts(ctx);
  const PresentationResult pres = solve_presentation(pts);
  if (job.format == "text") {
    std::ostringstream os;
    os << "generators " << pts.size() << ", rank " << pres.rank << ", torsion [";
    for (std::size_t i = 0; i < pres.torsion.size(); ++i) os << (i ? " " : "") << pres.torsion[i];
    os << "]\nbasis:";
    for (auto i : pres.basis) os << " " << pts[i].str();
    os << "\n";
    emit(job, os.str());
    return 0;
  }
  Json j = io::presentation(pres, pts);
  j["conventions"] = io::conventions(ctx);
  emit(job, dump(j));
  return 0;
}

int cmd_hecke(const Job& job) {
  const LevelContext ctx = make_level(job);
  const SymbolSpace V(ctx, SymbolSpace::default_kind(ctx));
  if (job.algebra_index) {
    require_format(job, false);
    const auto idx = hecke_algebra_index(V, cap_of(job));
    Json inv = Json::array();
    for (const auto& x : idx.invariants) inv.push_back(io::integer(x));
    Json j{{"cap", idx.cap},
           {"lattice_rank", idx.lattice_rank},
           {"genus", V.genus()},
           {"invariants", inv},
           {"index", idx.index ? io::integer(*idx.index) : Json()},
           {"index_next_cap", idx.index_next ? io::integer(*idx.index_next) : Json()},
           {"stable", idx.stable},
           {"expected", io::integer(eisenstein_number(ctx))}};
    if (job.format == "text")
      emit(job, "index " + (idx.index ? idx.index->str() : std::string("undefined")) + " at cap " +
                    std::to_string(idx.cap) + (idx.stable ? " (stable)" : " (unstable)") + "\n");
    else
      emit(job, dump(j));
    return 0;
  }
  require_format(job, true);
  const Poly m = parse_m(job, ctx.field());
  const bool parabolic = !job.ambient && V.has_parabolic() && V.genus() > 0;
  const OperatorMatrix M = job.eta ? eta_matrix(V, m, parabolic) : hecke_matrix(V, m, parabolic);
  if (job.format == "csv") emit(job, io::matrix_csv(M));
  else if (job.format == "text") emit(job, text_matrix(M));
  else {
    Json j = io::matrix(M);
    j["conventions"] = io::conventions(ctx);
    emit(job, dump(j));
  }
  return 0;
}

int cmd_heilbronn(const Job& job) {
  require_format(job, false);
  const FqField& f = parse_field(job.q);
  const HeilbronnSet S = heilbronn_enumerate(parse_m(job, f));
  if (job.format == "text") {
    std::ostringstream os;
    os << "S_(" << S.m.str() << "): " << S.matrices.size() << " matrices\n";
    for (const auto& M : S.matrices) os << "  " << M.str() << "\n";
    emit(job, os.str());
    return 0;
  }
  emit(job, dump(io::heilbronn(S)));
  return 0;
}

int cmd_atkin_lehner(const Job& job) {
  require_format(job, true);
  const LevelContext ctx = make_level(job);
  const SymbolSpace V(ctx, SymbolSpace::default_kind(ctx));
  const bool parabolic = !job.ambient && V.has_parabolic() && V.genus() > 0;
  const OperatorMatrix W = atkin_lehner_matrix(V, parabolic);
  QMatrix shifted = W.rows;
  for (std::size_t i = 0; i < shifted.size(); ++i) shifted[i][i] += 1;
  const std::size_t minus_dim = kernel(shifted, shifted.size()).size();
  if (job.format == "csv") emit(job, io::matrix_csv(W));
  else if (job.format == "text")
    emit(job, text_matrix(W) + "(-1)-eigenspace dimension: " + std::to_string(minus_dim) + "\n");
  else {
    Json j = io::matrix(W);
    j["minus_one_eigenspace_dimension"] = minus_dim;
    j["conventions"] = io::conventions(ctx);
    emit(job, dump(j));
  }
  return 0;
}

int cmd_winding(const Job& job) {
  require_format(job, false);
  const LevelContext ctx = make_level(job);
  require(ctx.is_prime(), "level_not_prime", "winding element needs a prime level");
  require(ctx.d() >= 3, "degree_too_small", "winding element needs deg P >= 3");
  const SymbolSpace V(ctx, SymbolSpace::default_kind(ctx));
  HeckeCache cache(V);
  io::WindingReport rep{winding_element(V, cache), 0, {}, {}, {}};
  rep.denominator = winding_denominator(rep.element);
  const int r = floor_half_d_minus_3(ctx);
  for (int k = 0; k <= r; ++k) {
    rep.ranks[k] = independence_rank(V, cache, rep.element, k);
    rep.ranks_mod_p[k] = independence_rank_mod_p(V, cache, rep.element, k);
  }
  rep.nonvanishing = nonvanishing_count(V, cache, rep.element, cap_of(job).value_or(ctx.d() + 1));
  if (job.format == "text") {
    std::ostringstream os;
    os << "e = " << text_vector(rep.element.e, V.parabolic_labels()) << "\n";
    os << "denominator " << rep.denominator << " (N = " << eisenstein_number(ctx) << ")\n";
    for (const auto& [k, v] : rep.ranks)
      os << "rank deg<=" << k << ": " << v << " over Q, " << rep.ranks_mod_p[k] << " mod p\n";
    os << "nonvanishing " << rep.nonvanishing.count << " of " << V.genus() << ", stable at cap "
       << rep.nonvanishing.stable_at_cap << "\n";
    emit(job, os.str());
    return 0;
  }
  Json j = io::winding(rep, V);
  j["eisenstein_number"] = io::integer(eisenstein_number(ctx));
  j["atkin_lehner_negates_e"] = atkin_lehner_negates(V, rep.element);
  if (ctx.d() % 2 == 0) j["winding_image_rank"] = winding_image_rank(V, cache, rep.element, 2);
  j["conventions"] = io::conventions(ctx);
  emit(job, dump(j));
  return 0;
}

int cmd_nonvanish(const Job& job) {
  require_format(job, false);
  const LevelContext ctx = make_level(job);
  require(ctx.is_prime(), "level_not_prime", "nonvanishing count needs a prime level");
  require(ctx.d() >= 3, "degree_too_small", "nonvanishing count needs deg P >= 3");
  const SymbolSpace V(ctx, SymbolSpace::default_kind(ctx));
  HeckeCache cache(V);
  const WindingElement w = winding_element(V, cache);
  const auto nv = nonvanishing_count(V, cache, w, cap_of(job).value_or(ctx.d() + 1));
  const Integer bound = ideal_count(ctx.field(), floor_half_d_minus_3(ctx));
  if (job.format == "text") {
    emit(job, std::to_string(nv.count) + " of " + std::to_string(V.genus()) + ", stable at cap " +
                  std::to_string(nv.stable_at_cap) + ", lower bound " + bound.str() + "\n");
    return 0;
  }
  Json ranks = Json::object();
  for (const auto& [c, k] : nv.ranks) ranks[std::to_string(c)] = k;
  emit(job, dump(Json{{"nonvanishing", nv.count},
                      {"genus", V.genus()},
                      {"stable_at_cap", nv.stable_at_cap},
                      {"full", nv.full},
                      {"ranks", ranks},
                      {"lower_bound", io::integer(bound)},
                      {"inequality_holds", lower_bound_inequality(ctx)}}));
  return 0;
}

int cmd_verify(const Job& job) {
  require_format(job, false);
  const LevelContext ctx = make_level(job);
  verify::Options opt;
  opt.seed = job.seed;
  opt.cap = cap_of(job);
  std::vector<std::string> names = verify::suite_names();
  if (!job.suite.empty()) {
    if (std::find(names.begin(), names.end(), job.suite) == names.end())
      throw ParseError("unknown suite '" + job.suite + "'");
    names = {job.suite};
  }
  Json suites = Json::array();
  Json first = nullptr;
  bool all = true;
  std::ostringstream text;
  for (const auto& n : names) {
    const auto r = verify::run_suite(n, ctx, opt);
    Json checks = Json::array();
    for (const auto& c : r.checks) {
      Json cj{{"name", c.name}, {"ok", c.ok}};
      if (!c.detail.empty()) cj[c.info ? "value" : "detail"] = c.detail;
      checks.push_back(cj);
    }
    Json sj{{"suite", n}, {"passed", r.passed()}};
    if (r.skipped) sj["skipped"] = r.skip_reason;
    sj["checks"] = checks;
    suites.push_back(sj);
    text << n << ": " << (r.skipped ? "skipped (" + r.skip_reason + ")" : r.passed() ? "pass" : "FAIL") << "\n";
    for (const auto& c : r.checks)
      if (c.info) text << "  " << c.name << ": " << c.detail << "\n";
    if (const auto* fail = r.first_failure()) {
      text << "  first failure: " << fail->name << " " << fail->detail << "\n";
      if (all) first = Json{{"suite", n}, {"name", fail->name}, {"detail", fail->detail}};
      all = false;
    }
  }
  if (job.format == "text") emit(job, text.str());
  else
    emit(job, dump(Json{{"level", ctx.N().str()},
                        {"q", ctx.field().q()},
                        {"seed", job.seed},
                        {"passed", all},
                        {"first_failure", first},
                        {"suites", suites}}));
  return all ? 0 : 1;
}

void fail_json(const std::string& kind, const std::string& reason, const std::string& message) {
  std::cout << Json{{"error", kind}, {"reason", reason}, {"message", message}}.dump() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Modular symbols for Gamma_0(n) over Fq[T]"};
  app.require_subcommand(1);
  Job job;

  auto common = [&](CLI::App* sub, bool level) {
    sub->add_option("--q", job.q, "field order, e.g. 3 or 2^2")->capture_default_str();
    if (level) sub->add_option("--level", job.level, "level polynomial, e.g. \"T^3+T+1\"");
    sub->add_option("--format", job.format, "json, csv or text")
        ->check(CLI::IsMember({"json", "csv", "text"}))
        ->capture_default_str();
    sub->add_option("--out", job.out, "write output to a file");
    sub->add_option("--cap", job.cap, "degree cap for Hecke growth");
    sub->add_option("--seed", job.seed, "random seed for property checks")->capture_default_str();
    sub->add_flag("--force", job.force, "allow q^d above the size guard");
  };

  std::vector<std::pair<CLI::App*, std::function<int(const Job&)>>> commands;
  auto add = [&](const char* name, const char* help, bool level, std::function<int(const Job&)> fn) {
    CLI::App* sub = app.add_subcommand(name, help);
    common(sub, level);
    commands.emplace_back(sub, std::move(fn));
    return sub;
  };

  add("basis", "basis of the symbol space", true, cmd_basis);
  add("rewrite", "coordinates of a generator (u:v)", true, cmd_rewrite)
      ->add_option("point", job.point, "point, e.g. \"(T:1)\"")
      ->required();
  add("oracle", "presentation by generators and relations", true, cmd_oracle);
  auto* hecke = add("hecke", "matrix of T_m", true, cmd_hecke);
  hecke->add_option("--m", job.m, "monic m");
  hecke->add_flag("--ambient", job.ambient, "full space instead of the parabolic block");
  hecke->add_flag("--eta", job.eta, "eta_m = T_m - (q^deg m + 1)");
  hecke->add_flag("--algebra-index", job.algebra_index, "Eisenstein quotient of the Hecke algebra");
  add("heilbronn", "the matrix set S_m", false, cmd_heilbronn)->add_option("--m", job.m, "monic m");
  add("atkin-lehner", "matrix of w_n", true, cmd_atkin_lehner)
      ->add_flag("--ambient", job.ambient, "full space instead of the parabolic block");
  add("winding", "winding element and Hecke ranks", true, cmd_winding);
  add("nonvanish", "rank of the Hecke orbit of e", true, cmd_nonvanish);
  add("verify", "run invariant suites", true, cmd_verify)->add_option("--suite", job.suite, "one suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    for (auto& [sub, fn] : commands)
      if (sub->parsed()) return fn(job);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    fail_json("parse", "parse_error", e.what());
    return 2;
  } catch (const PreconditionError& e) {
    fail_json("precondition", e.reason, e.what());
    return 3;
  } catch (const InvariantError& e) {
    std::cerr << "invariant violated: " << e.what() << "\n";
    fail_json("invariant", "invariant_violated", e.what());
    return 1;
  }
  return 2;
}
