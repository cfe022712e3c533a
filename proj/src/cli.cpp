#include "liespec/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <ostream>
#include <sstream>

#include "liespec/arrangement.hpp"
#include "liespec/catalog.hpp"
#include "liespec/formats.hpp"
#include "liespec/report.hpp"

namespace liespec {

namespace {

using nlohmann::ordered_json;

struct CliConfig {
  std::string format = "json";
  int tower_depth = TowerContext::kDefaultMaxDepth;
  std::ostream* out = nullptr;
  std::ostream* err = nullptr;

  bool json() const { return format == "json"; }
};

struct CliFailure {
  int exit_code;
};

void emit_error(const CliConfig& cfg, const std::string& code, const std::string& message) {
  if (cfg.json()) {
    ordered_json j;
    j["error"] = {{"code", code}, {"message", message}};
    *cfg.err << j.dump(2) << "\n";
  } else {
    *cfg.err << "error [" << code << "]: " << message << "\n";
  }
}

int error_exit_code(ErrorCode code) {
  switch (code) {
    case ErrorCode::UnknownEntry:
    case ErrorCode::ParameterConstraintViolated:
    case ErrorCode::InvalidArgument:
      return 2;
    default:
      return 1;
  }
}

std::string read_file(const CliConfig& cfg, const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    emit_error(cfg, "FileError", "cannot open " + path);
    throw CliFailure{2};
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void emit_diagnostics(const CliConfig& cfg, const std::string& path,
                      const std::vector<Diagnostic>& diags) {
  if (cfg.json()) {
    ordered_json arr = ordered_json::array();
    for (const Diagnostic& d : diags)
      arr.push_back({{"line", d.line}, {"col", d.col}, {"message", d.message}});
    ordered_json j;
    j["error"] = {{"code", "ParseError"}, {"file", path}, {"diagnostics", arr}};
    *cfg.err << j.dump(2) << "\n";
  } else {
    for (const Diagnostic& d : diags)
      *cfg.err << path << ":" << d.line << ":" << d.col << ": " << d.message << "\n";
  }
}

DocFormat sniff_format(const std::string& text) {
  for (char c : text) {
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r') continue;
    return c == '{' ? DocFormat::Json : DocFormat::Dsl;
  }
  return DocFormat::Dsl;
}

AlgebraDocument load_document(const CliConfig& cfg, const std::string& path) {
  std::string text = read_file(cfg, path);
  ParseResult res = parse_document(text, sniff_format(text));
  if (!res.ok()) {
    emit_diagnostics(cfg, path, res.diagnostics);
    throw CliFailure{2};
  }
  return *res.doc;
}

LieAlgebra load_algebra(const CliConfig& cfg, const std::string& path) {
  return document_to_algebra(load_document(cfg, path), cfg.tower_depth);
}

ordered_json scalars_json(const std::vector<FieldElement>& v) {
  ordered_json arr = ordered_json::array();
  for (const FieldElement& e : v) arr.push_back(e.str());
  return arr;
}

ordered_json matrix_json(const MatrixK& m) {
  ordered_json rows = ordered_json::array();
  for (int i = 0; i < m.rows(); ++i) rows.push_back(scalars_json(m.row(i)));
  return rows;
}

std::string poincare_text(const std::vector<long long>& p) {
  std::ostringstream out;
  bool first = true;
  for (size_t d = 0; d < p.size(); ++d) {
    if (p[d] == 0) continue;
    if (!first) out << " + ";
    if (d == 0)
      out << p[d];
    else if (p[d] == 1)
      out << (d == 1 ? "t" : "t^" + std::to_string(d));
    else
      out << p[d] << (d == 1 ? "*t" : "*t^" + std::to_string(d));
    first = false;
  }
  if (first) out << 0;
  return out.str();
}

// ---------------------------------------------------------------------- //

int cmd_validate(const CliConfig& cfg, const std::string& file) {
  LieAlgebra L = load_algebra(cfg, file);
  auto violations = validate(L);
  if (cfg.json()) {
    ordered_json j;
    j["valid"] = violations.empty();
    ordered_json arr = ordered_json::array();
    for (const auto& v : violations) {
      ordered_json jv;
      jv["triple"] = {v.i + 1, v.j + 1, v.k + 1};
      jv["residual"] = scalars_json(v.residual);
      arr.push_back(std::move(jv));
    }
    j["violations"] = std::move(arr);
    *cfg.out << j.dump(2) << "\n";
  } else {
    if (violations.empty()) {
      *cfg.out << "ok\n";
    } else {
      for (const auto& v : violations) {
        *cfg.out << "jacobi violation at (" << v.i + 1 << "," << v.j + 1 << "," << v.k + 1
                 << "), residual:";
        for (const auto& c : v.residual) *cfg.out << " " << c.str();
        *cfg.out << "\n";
      }
    }
  }
  return 0;
}

int cmd_charpoly(const CliConfig& cfg, const std::string& file, bool reduced,
                 bool single_z0, bool terms) {
  LieAlgebra L = load_algebra(cfg, file);
  CharPoly cp = char_poly(L);
  MultiPoly red = single_z0 ? cp.Q.divided_by_power(0, 1) : cp.reduced;
  if (cfg.json()) {
    ordered_json j;
    j["charpoly"] = cp.Q.str();
    j["z0_multiplicity"] = cp.z0_multiplicity;
    if (reduced || single_z0) j["reduced"] = red.str();
    if (terms) j["terms"] = poly_to_json(cp.Q);
    *cfg.out << j.dump(2) << "\n";
  } else {
    *cfg.out << "Q = " << cp.Q.str() << "\n";
    *cfg.out << "z0_multiplicity = " << cp.z0_multiplicity << "\n";
    if (reduced || single_z0) *cfg.out << "Q* = " << red.str() << "\n";
  }
  return 0;
}

ordered_json factors_json(const LinearFactorization& f) {
  ordered_json arr = ordered_json::array();
  for (const LinearFactor& lf : f.factors) {
    ordered_json jf;
    jf["coeffs"] = scalars_json(lf.coeffs);
    jf["mult"] = lf.multiplicity;
    arr.push_back(std::move(jf));
  }
  return arr;
}

int cmd_factor(const CliConfig& cfg, const std::string& file) {
  LieAlgebra L = load_algebra(cfg, file);
  CharPoly cp = char_poly(L);
  LinearFactorization f = linear_factorize(cp, adjoint(L));
  if (cfg.json()) {
    ordered_json j;
    j["charpoly"] = cp.Q.str();
    j["z0_multiplicity"] = cp.z0_multiplicity;
    j["factors"] = factors_json(f);
    j["residual"] = f.residual.str();
    *cfg.out << j.dump(2) << "\n";
  } else {
    *cfg.out << "Q = " << cp.Q.str() << "\n";
    for (const LinearFactor& lf : f.factors) {
      *cfg.out << "factor (";
      for (size_t c = 0; c < lf.coeffs.size(); ++c)
        *cfg.out << (c ? ", " : "") << lf.coeffs[c].str();
      *cfg.out << ") ^ " << lf.multiplicity << "\n";
    }
    *cfg.out << "residual = " << f.residual.str() << "\n";
  }
  return 0;
}

int cmd_spectral(const CliConfig& cfg, const std::string& file) {
  LieAlgebra L = load_algebra(cfg, file);
  CharPoly cp = char_poly(L);
  LinearFactorization f = linear_factorize(cp, adjoint(L));
  SpectralMatrix sm = spectral_matrix(f);  // throws NotFullyFactorable if needed
  int r = spectral_rank(sm);
  auto nil = nilradical_basis(L, sm);
  int k = k_count(f);
  if (cfg.json()) {
    ordered_json j;
    j["factors"] = factors_json(f);
    j["spectral_matrix"] = matrix_json(sm.lambda);
    j["rank_lambda"] = r;
    j["k"] = k;
    ordered_json niljson = ordered_json::array();
    for (const auto& v : nil) niljson.push_back(scalars_json(v));
    j["nilradical"] = std::move(niljson);
    *cfg.out << j.dump(2) << "\n";
  } else {
    *cfg.out << "spectral matrix:\n";
    for (int i = 0; i < sm.lambda.rows(); ++i) {
      for (int c = 0; c < sm.lambda.cols(); ++c)
        *cfg.out << (c ? " " : "  ") << sm.lambda.at(i, c).str();
      *cfg.out << "\n";
    }
    *cfg.out << "rank_lambda = " << r << "\n";
    *cfg.out << "k = " << k << "\n";
    *cfg.out << "nilradical dimension = " << nil.size() << "\n";
  }
  return 0;
}

int cmd_poincare(const CliConfig& cfg, const std::string& file) {
  LieAlgebra L = load_algebra(cfg, file);
  InvariantReport r = invariant_report(L);
  if (!r.poincare)
    raise(ErrorCode::NotFullyFactorable,
          "Poincare polynomial is only computed for solvable algebras");
  if (cfg.json()) {
    *cfg.out << ordered_json(*r.poincare).dump() << "\n";
  } else {
    *cfg.out << poincare_text(*r.poincare) << "\n";
  }
  return 0;
}

int cmd_invariants(const CliConfig& cfg, const std::string& file) {
  LieAlgebra L = load_algebra(cfg, file);
  InvariantReport r = invariant_report(L);
  if (cfg.json()) {
    *cfg.out << report_to_json(r).dump(2) << "\n";
  } else {
    *cfg.out << "dim = " << r.dim << "\n";
    *cfg.out << "solvable = " << (r.solvable ? "true" : "false") << "\n";
    *cfg.out << "nilpotent = " << (r.nilpotent ? "true" : "false") << "\n";
    *cfg.out << "z0_multiplicity = " << r.cp.z0_multiplicity << "\n";
    *cfg.out << "charpoly = " << r.cp.Q.str() << "\n";
    *cfg.out << "residual = " << r.factorization.residual.str() << "\n";
    if (r.rank_lambda) *cfg.out << "rank_lambda = " << *r.rank_lambda << "\n";
    if (r.k) *cfg.out << "k = " << *r.k << "\n";
    if (r.poincare) *cfg.out << "poincare = " << poincare_text(*r.poincare) << "\n";
  }
  return 0;
}

struct ComparisonCheck {
  std::string name;
  ordered_json lhs, rhs;
  bool differs;
};

int cmd_compare(const CliConfig& cfg, const std::string& file_a, const std::string& file_b) {
  LieAlgebra A = load_algebra(cfg, file_a);
  LieAlgebra B = load_algebra(cfg, file_b);
  InvariantReport ra = invariant_report(A);
  InvariantReport rb = invariant_report(B);

  std::vector<ComparisonCheck> checks;
  checks.push_back({"dim", ra.dim, rb.dim, ra.dim != rb.dim});
  checks.push_back({"solvable", ra.solvable, rb.solvable, ra.solvable != rb.solvable});
  checks.push_back({"nilpotent", ra.nilpotent, rb.nilpotent, ra.nilpotent != rb.nilpotent});
  checks.push_back({"z0_multiplicity", ra.cp.z0_multiplicity, rb.cp.z0_multiplicity,
                    ra.cp.z0_multiplicity != rb.cp.z0_multiplicity});
  bool ta = std::all_of(ra.trace_vec.begin(), ra.trace_vec.end(),
                        [](const FieldElement& e) { return e.is_zero(); });
  bool tb = std::all_of(rb.trace_vec.begin(), rb.trace_vec.end(),
                        [](const FieldElement& e) { return e.is_zero(); });
  checks.push_back({"trace_vector_vanishes", ta, tb, ta != tb});
  if (ra.k && rb.k) checks.push_back({"k", *ra.k, *rb.k, *ra.k != *rb.k});
  if (ra.rank_lambda && rb.rank_lambda)
    checks.push_back(
        {"rank_lambda", *ra.rank_lambda, *rb.rank_lambda, *ra.rank_lambda != *rb.rank_lambda});
  if (ra.poincare && rb.poincare)
    checks.push_back({"poincare", *ra.poincare, *rb.poincare, *ra.poincare != *rb.poincare});

  auto spec_a = one_dim_extension_spectrum(ra);
  auto spec_b = one_dim_extension_spectrum(rb);
  if (spec_a && spec_b && spec_a->size() == spec_b->size()) {
    auto ratio = extension_spectrum_ratio(*spec_a, *spec_b);
    ComparisonCheck c;
    c.name = "extension_spectrum_up_to_scalar";
    c.lhs = scalars_json(*spec_a);
    c.rhs = scalars_json(*spec_b);
    c.differs = !ratio.has_value();
    checks.push_back(std::move(c));
  }

  const ComparisonCheck* first_diff = nullptr;
  for (const auto& c : checks)
    if (c.differs) {
      first_diff = &c;
      break;
    }

  if (cfg.json()) {
    ordered_json j;
    if (first_diff) {
      j["verdict"] = "distinguished";
      j["by"] = first_diff->name;
      j["lhs"] = first_diff->lhs;
      j["rhs"] = first_diff->rhs;
    } else {
      j["verdict"] = "indistinguishable_by_computed_invariants";
      ordered_json names = ordered_json::array();
      for (const auto& c : checks) names.push_back(c.name);
      j["checked"] = std::move(names);
    }
    *cfg.out << j.dump(2) << "\n";
  } else {
    if (first_diff)
      *cfg.out << "distinguished by " << first_diff->name << ": " << first_diff->lhs.dump()
               << " vs " << first_diff->rhs.dump() << "\n";
    else
      *cfg.out << "indistinguishable by computed invariants\n";
  }
  return 0;
}

int cmd_transform(const CliConfig& cfg, const std::string& file, const std::string& mfile,
                  bool check_aut, bool check_unitary) {
  LieAlgebra L = load_algebra(cfg, file);
  std::string mtext = read_file(cfg, mfile);
  MatrixParseResult mres = parse_matrix_document(mtext);
  if (!mres.rows) {
    emit_diagnostics(cfg, mfile, mres.diagnostics);
    throw CliFailure{2};
  }
  MatrixK B = matrix_from_literals(*mres.rows, L.context());
  if (B.rows() != L.dim() || B.cols() != L.dim())
    raise(ErrorCode::DimensionMismatch, "matrix shape does not match the algebra dimension");
  LieAlgebra Lt = change_basis(L.with_context(B.context()), B);
  AlgebraDocument doc = algebra_to_document(Lt, "transformed");
  std::optional<bool> aut, unitary;
  if (check_aut) aut = is_automorphism(L.with_context(B.context()), B);
  if (check_unitary) unitary = is_unitary(B);
  if (cfg.json()) {
    ordered_json j = document_to_json(doc);
    if (aut) j["is_automorphism"] = *aut;
    if (unitary) j["is_unitary"] = *unitary;
    *cfg.out << j.dump(2) << "\n";
  } else {
    if (aut) *cfg.out << "# is_automorphism: " << (*aut ? "true" : "false") << "\n";
    if (unitary) *cfg.out << "# is_unitary: " << (*unitary ? "true" : "false") << "\n";
    *cfg.out << serialize_document(doc, DocFormat::Dsl);
  }
  return 0;
}

int cmd_catalog_list(const CliConfig& cfg) {
  if (cfg.json()) {
    ordered_json arr = ordered_json::array();
    for (const CatalogEntry& e : catalog_entries()) {
      ordered_json je;
      je["name"] = e.name;
      je["aliases"] = e.aliases;
      je["description"] = e.description;
      ordered_json params = ordered_json::array();
      for (const ParamSpec& p : e.params)
        params.push_back({{"name", p.name}, {"constraint", p.constraint}});
      je["params"] = std::move(params);
      arr.push_back(std::move(je));
    }
    *cfg.out << arr.dump(2) << "\n";
  } else {
    for (const CatalogEntry& e : catalog_entries()) {
      *cfg.out << e.name;
      for (const auto& a : e.aliases) *cfg.out << " (alias " << a << ")";
      if (!e.params.empty()) {
        *cfg.out << " [";
        for (size_t p = 0; p < e.params.size(); ++p)
          *cfg.out << (p ? ", " : "") << e.params[p].name << ": " << e.params[p].constraint;
        *cfg.out << "]";
      }
      *cfg.out << " - " << e.description << "\n";
    }
  }
  return 0;
}

int cmd_catalog_show(const CliConfig& cfg, const std::string& name,
                     const std::vector<std::string>& param_args) {
  std::map<std::string, FieldElement> params;
  for (const std::string& p : param_args) {
    size_t eq = p.find('=');
    if (eq == std::string::npos)
      raise(ErrorCode::InvalidArgument, "parameter must look like name=value: " + p);
    std::string key = p.substr(0, eq);
    std::string val = p.substr(eq + 1);
    auto g = parse_gauss_literal(val);
    if (!g) raise(ErrorCode::InvalidArgument, "invalid scalar literal '" + val + "'");
    TowerContext ctx(cfg.tower_depth);
    FieldElement v(g->re, ctx);
    if (!g->im.is_zero()) {
      auto [gctx, iu] = adjoin_sqrt(ctx, FieldElement(Rational(-1), ctx));
      v = FieldElement(g->re, gctx) + FieldElement(g->im, gctx) * iu;
    }
    params.emplace(key, v);
  }
  LieAlgebra L = catalog_get(name, params);
  AlgebraDocument doc = algebra_to_document(L, name);
  *cfg.out << serialize_document(doc, cfg.json() ? DocFormat::Json : DocFormat::Dsl);
  return 0;
}

int cmd_rep_sl2(const CliConfig& cfg, int m, bool closed_form) {
  auto mats = sl2_irrep(m);
  CharPoly cp = char_poly_pencil(mats);
  MultiPoly cf = sl2_closed_form(m);
  if (cfg.json()) {
    ordered_json j;
    j["m"] = m;
    j["dim"] = m + 1;
    j["matrices"] = {{"H", matrix_json(mats[0])},
                     {"X", matrix_json(mats[1])},
                     {"Y", matrix_json(mats[2])}};
    j["charpoly"] = cp.Q.str();
    if (closed_form) j["closed_form"] = cf.str();
    *cfg.out << j.dump(2) << "\n";
  } else {
    *cfg.out << "m = " << m << ", dim = " << m + 1 << "\n";
    *cfg.out << "charpoly = " << cp.Q.str() << "\n";
    if (closed_form) *cfg.out << "closed_form = " << cf.str() << "\n";
  }
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CliConfig cfg;
  cfg.out = &out;
  cfg.err = &err;

  CLI::App app{"exact spectral invariants of finite-dimensional Lie algebras"};
  app.set_help_all_flag("--help-all");
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--format", cfg.format, "output format")
      ->check(CLI::IsMember({"json", "text"}))
      ->capture_default_str();
  app.add_option("--tower-depth", cfg.tower_depth, "maximum quadratic tower depth")
      ->check(CLI::Range(1, 8))
      ->capture_default_str();

  std::string file_a, file_b, mfile, name;
  bool flag_reduced = false, flag_single = false, flag_terms = false, flag_aut = false,
       flag_unitary = false,
       flag_closed = false;
  int rep_m = 0;
  std::vector<std::string> param_args;

  auto* c_validate = app.add_subcommand("validate", "check the Lie algebra axioms");
  c_validate->add_option("file", file_a, "algebra file")->required();

  auto* c_charpoly = app.add_subcommand("charpoly", "characteristic polynomial of the adjoint pencil");
  c_charpoly->add_option("file", file_a, "algebra file")->required();
  c_charpoly->add_flag("--reduced", flag_reduced, "also print Q with all z0 factors removed");
  c_charpoly->add_flag("--single-z0", flag_single, "divide out a single z0 instead");
  c_charpoly->add_flag("--terms", flag_terms, "include the polynomial as a JSON term list");

  auto* c_factor = app.add_subcommand("factor", "linear factorization of the characteristic polynomial");
  c_factor->add_option("file", file_a, "algebra file")->required();

  auto* c_spectral = app.add_subcommand("spectral", "spectral matrix, rank, and nilradical");
  c_spectral->add_option("file", file_a, "algebra file")->required();

  auto* c_poincare = app.add_subcommand("poincare", "Poincare polynomial of the eigen-variety complement");
  c_poincare->add_option("file", file_a, "algebra file")->required();

  auto* c_invariants = app.add_subcommand("invariants", "full invariant report");
  c_invariants->add_option("file", file_a, "algebra file")->required();

  auto* c_compare = app.add_subcommand("compare", "non-isomorphism certificate search");
  c_compare->add_option("file_a", file_a, "first algebra")->required();
  c_compare->add_option("file_b", file_b, "second algebra")->required();

  auto* c_transform = app.add_subcommand("transform", "change of basis, optionally checking the matrix");
  c_transform->add_option("file", file_a, "algebra file")->required();
  c_transform->add_option("--matrix", mfile, "matrix file")->required();
  c_transform->add_flag("--check-aut", flag_aut, "report whether the matrix is an automorphism");
  c_transform->add_flag("--check-unitary", flag_unitary, "report whether the matrix is unitary");

  auto* c_catalog = app.add_subcommand("catalog", "built-in algebra presets");
  auto* c_list = c_catalog->add_subcommand("list", "list catalog entries");
  auto* c_show = c_catalog->add_subcommand("show", "emit a catalog algebra as a file");
  c_show->add_option("name", name, "entry name")->required();
  c_show->add_option("--param", param_args, "parameter assignment name=value");
  c_catalog->require_subcommand(1);

  auto* c_rep = app.add_subcommand("rep", "representation pencils");
  auto* c_rep_sl2 = c_rep->add_subcommand("sl2", "irreducible sl(2) representation");
  c_rep_sl2->add_option("--m", rep_m, "highest weight")->required()->check(CLI::Range(0, 11));
  c_rep_sl2->add_flag("--closed-form", flag_closed, "include the closed-form polynomial");
  c_rep->require_subcommand(1);

  for (CLI::App* sub : app.get_subcommands([](const CLI::App*) { return true; })) {
    sub->fallthrough();
    for (CLI::App* nested : sub->get_subcommands([](const CLI::App*) { return true; }))
      nested->fallthrough();
  }

  std::vector<std::string> argv_like = args;
  try {
    std::vector<const char*> argv;
    argv.push_back("liespec");
    for (const std::string& a : argv_like) argv.push_back(a.c_str());
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    emit_error(cfg, "ArgumentError", e.what());
    return 2;
  }

  try {
    if (c_validate->parsed()) return cmd_validate(cfg, file_a);
    if (c_charpoly->parsed()) return cmd_charpoly(cfg, file_a, flag_reduced, flag_single, flag_terms);
    if (c_factor->parsed()) return cmd_factor(cfg, file_a);
    if (c_spectral->parsed()) return cmd_spectral(cfg, file_a);
    if (c_poincare->parsed()) return cmd_poincare(cfg, file_a);
    if (c_invariants->parsed()) return cmd_invariants(cfg, file_a);
    if (c_compare->parsed()) return cmd_compare(cfg, file_a, file_b);
    if (c_transform->parsed()) return cmd_transform(cfg, file_a, mfile, flag_aut, flag_unitary);
    if (c_catalog->parsed()) {
      if (c_list->parsed()) return cmd_catalog_list(cfg);
      if (c_show->parsed()) return cmd_catalog_show(cfg, name, param_args);
    }
    if (c_rep->parsed() && c_rep_sl2->parsed()) return cmd_rep_sl2(cfg, rep_m, flag_closed);
    emit_error(cfg, "ArgumentError", "no command given");
    return 2;
  } catch (const CliFailure& f) {
    return f.exit_code;
  } catch (const Error& e) {
    emit_error(cfg, error_code_name(e.code()), e.what());
    return error_exit_code(e.code());
  } catch (const std::exception& e) {
    emit_error(cfg, "InternalError", e.what());
    return 1;
  }
}

}  // namespace liespec
