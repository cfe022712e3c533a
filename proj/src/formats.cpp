#include "liespec/formats.hpp"

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>
#include <utility>

namespace liespec {

std::string format_gauss_literal(const GaussLit& g) {
  if (g.im.is_zero()) return g.re.str();
  Rational mag = g.im.abs();
  if (g.re.is_zero()) {
    std::string imag = mag.is_one() ? "i" : mag.str() + "i";
    return (g.im.sign() < 0 ? "-" : "") + imag;
  }
  return g.re.str() + (g.im.sign() < 0 ? "-" : "+") + mag.str() + "i";
}

namespace {

bool is_digit(char c) { return c >= '0' && c <= '9'; }

/// Character scanner for one logical line; literals contain no internal
/// whitespace, tokens are separated by any amount of it.
class Scanner {
public:
  Scanner(const std::string& s, int line_no) : s_(s), line_(line_no) {}

  void skip_ws() {
    while (pos_ < s_.size() && (s_[pos_] == ' ' || s_[pos_] == '\t')) ++pos_;
  }
  bool eof() {
    skip_ws();
    return pos_ >= s_.size();
  }
  int col() const { return static_cast<int>(pos_) + 1; }
  int line() const { return line_; }
  size_t mark() const { return pos_; }
  void reset(size_t m) { pos_ = m; }

  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
  bool match(char c) {
    skip_ws();
    if (peek() != c) return false;
    ++pos_;
    return true;
  }

  std::optional<std::string> ident() {
    skip_ws();
    size_t start = pos_;
    auto head = [](char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; };
    auto tail = [](char c) {
      return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.';
    };
    if (pos_ >= s_.size() || !head(s_[pos_])) return std::nullopt;
    ++pos_;
    while (pos_ < s_.size() && tail(s_[pos_])) ++pos_;
    return s_.substr(start, pos_ - start);
  }

  std::optional<long> unsigned_int() {
    skip_ws();
    size_t start = pos_;
    while (pos_ < s_.size() && is_digit(s_[pos_])) ++pos_;
    if (pos_ == start || pos_ - start > 9) {
      pos_ = start;
      return std::nullopt;
    }
    return std::stol(s_.substr(start, pos_ - start));
  }

  // rat ::= [+-]? digits ("/" digits)?   (no internal whitespace)
  std::optional<Rational> rat() {
    skip_ws();
    size_t start = pos_;
    size_t p = pos_;
    if (p < s_.size() && (s_[p] == '+' || s_[p] == '-')) ++p;
    size_t digits = p;
    while (p < s_.size() && is_digit(s_[p])) ++p;
    if (p == digits) {
      pos_ = start;
      return std::nullopt;
    }
    if (p < s_.size() && s_[p] == '/') {
      size_t den = ++p;
      while (p < s_.size() && is_digit(s_[p])) ++p;
      if (p == den) {
        pos_ = start;
        return std::nullopt;
      }
    }
    auto parsed = Rational::parse(s_.substr(start, p - start));
    if (!parsed) {
      pos_ = start;
      return std::nullopt;
    }
    pos_ = p;
    return parsed;
  }

  // gauss ::= rat | rat ("+"|"-") rat "i" | [+-]? rat? "i"
  // Greedy with backtracking so that "3/5+4/5i" is one literal while the
  // "+" of "1*x1 + x2" stays a term separator.
  std::optional<GaussLit> gauss() {
    skip_ws();
    size_t start = pos_;
    auto r1 = rat();
    if (r1) {
      if (peek() == 'i') {
        ++pos_;
        return GaussLit{Rational(0), *r1};
      }
      if (peek() == '+' || peek() == '-') {
        size_t mid = pos_;
        bool neg = s_[pos_] == '-';
        ++pos_;
        auto r2 = rat();
        Rational mag = r2 ? *r2 : Rational(1);
        if (peek() == 'i') {
          ++pos_;
          return GaussLit{*r1, neg ? -mag : mag};
        }
        pos_ = mid;  // the sign belongs to the next term
      }
      return GaussLit{*r1, Rational(0)};
    }
    size_t p = pos_;
    bool neg = false;
    if (p < s_.size() && (s_[p] == '+' || s_[p] == '-')) {
      neg = s_[p] == '-';
      ++p;
    }
    if (p < s_.size() && s_[p] == 'i') {
      pos_ = p + 1;
      return GaussLit{Rational(0), neg ? Rational(-1) : Rational(1)};
    }
    pos_ = start;
    return std::nullopt;
  }

private:
  const std::string& s_;
  size_t pos_ = 0;
  int line_;
};

struct DocBuilder {
  AlgebraDocument doc;
  std::vector<Diagnostic> diags;
  bool saw_dim = false;
  bool saw_name = false;
  bool saw_field = false;

  void error(int line, int col, const std::string& msg) { diags.push_back({line, col, msg}); }
};

// term ::= gauss "*" "x" int | "x" int
std::optional<BracketTerm> parse_term(Scanner& sc, DocBuilder& b) {
  sc.skip_ws();
  size_t start = sc.mark();
  auto g = sc.gauss();
  if (g) {
    if (!sc.match('*')) {
      // could still be a bare "xN" that gauss cannot start with; gauss
      // consumed digits, so this really is a malformed term
      b.error(sc.line(), sc.col(), "expected '*' and a basis reference after coefficient");
      return std::nullopt;
    }
    sc.skip_ws();
    if (sc.peek() != 'x') {
      b.error(sc.line(), sc.col(), "expected basis reference like x2");
      return std::nullopt;
    }
    sc.match('x');
    auto idx = sc.unsigned_int();
    if (!idx) {
      b.error(sc.line(), sc.col(), "expected basis index after x");
      return std::nullopt;
    }
    return BracketTerm{static_cast<int>(*idx), *g};
  }
  sc.reset(start);
  sc.skip_ws();
  if (sc.peek() == 'x') {
    sc.match('x');
    auto idx = sc.unsigned_int();
    if (!idx) {
      b.error(sc.line(), sc.col(), "expected basis index after x");
      return std::nullopt;
    }
    return BracketTerm{static_cast<int>(*idx), GaussLit{Rational(1), Rational(0)}};
  }
  b.error(sc.line(), sc.col(), "expected a term (coefficient*x<k> or x<k>)");
  return std::nullopt;
}

void parse_bracket_line(Scanner& sc, DocBuilder& b) {
  auto i = sc.unsigned_int();
  if (!i) {
    b.error(sc.line(), sc.col(), "expected first bracket index");
    return;
  }
  auto j = sc.unsigned_int();
  if (!j) {
    b.error(sc.line(), sc.col(), "expected second bracket index");
    return;
  }
  if (!sc.match('=')) {
    b.error(sc.line(), sc.col(), "expected '='");
    return;
  }
  BracketDecl decl;
  decl.i = static_cast<int>(*i);
  decl.j = static_cast<int>(*j);

  bool negate = false;
  sc.skip_ws();
  if (sc.peek() == '-' || sc.peek() == '+') {
    // unary sign on a bare first term like "-x2"; a signed coefficient is
    // handled by the gauss literal itself
    size_t m = sc.mark();
    char c = sc.peek();
    auto probe = sc.gauss();
    sc.reset(m);
    if (!probe) {
      negate = c == '-';
      sc.match(c);
    }
  }
  while (true) {
    auto term = parse_term(sc, b);
    if (!term) return;
    if (negate) {
      term->coeff.re = -term->coeff.re;
      term->coeff.im = -term->coeff.im;
    }
    decl.rhs.push_back(*term);
    if (sc.eof()) break;
    if (sc.match('+')) {
      negate = false;
    } else if (sc.match('-')) {
      negate = true;
    } else {
      b.error(sc.line(), sc.col(), "expected '+', '-', or end of line");
      return;
    }
  }
  b.doc.brackets.push_back(std::move(decl));
}

void parse_dsl_line(const std::string& line, int line_no, DocBuilder& b) {
  Scanner sc(line, line_no);
  if (sc.eof()) return;
  if (sc.peek() == '#') return;  // comment line
  auto kw = sc.ident();
  if (!kw) {
    b.error(line_no, sc.col(), "expected a directive (name, dim, field, bracket)");
    return;
  }
  if (*kw == "name") {
    auto n = sc.ident();
    if (!n) {
      b.error(line_no, sc.col(), "expected an identifier after name");
      return;
    }
    if (b.saw_name) b.error(line_no, 1, "duplicate name directive");
    b.doc.name = *n;
    b.saw_name = true;
  } else if (*kw == "dim") {
    auto d = sc.unsigned_int();
    if (!d) {
      b.error(line_no, sc.col(), "expected a dimension after dim");
      return;
    }
    if (b.saw_dim) b.error(line_no, 1, "duplicate dim directive");
    b.doc.dim = static_cast<int>(*d);
    b.saw_dim = true;
  } else if (*kw == "field") {
    auto f = sc.ident();
    if (!f || (*f != "rational" && *f != "gaussian")) {
      b.error(line_no, sc.col(), "expected 'rational' or 'gaussian'");
      return;
    }
    if (b.saw_field) b.error(line_no, 1, "duplicate field directive");
    b.doc.field = (*f == "gaussian") ? FieldTag::Gaussian : FieldTag::Rational;
    b.saw_field = true;
  } else if (*kw == "bracket") {
    parse_bracket_line(sc, b);
    return;  // bracket lines consume to EOL themselves
  } else {
    b.error(line_no, 1, "unknown directive '" + *kw + "'");
    return;
  }
  if (!sc.eof()) b.error(line_no, sc.col(), "trailing input after directive");
}

void check_consistency(DocBuilder& b) {
  AlgebraDocument& doc = b.doc;
  if (!b.saw_dim) {
    b.error(1, 1, "missing dim directive");
    return;
  }
  if (doc.dim < 1 || doc.dim > 12) {
    b.error(1, 1, "dimension must be between 1 and 12");
    return;
  }
  std::map<std::pair<int, int>, std::vector<GaussLit>> dense;
  for (const BracketDecl& d : doc.brackets) {
    if (d.i < 1 || d.i > doc.dim || d.j < 1 || d.j > doc.dim) {
      b.error(1, 1,
              "bracket (" + std::to_string(d.i) + "," + std::to_string(d.j) +
                  ") references an index outside 1.." + std::to_string(doc.dim));
      continue;
    }
    if (d.i == d.j) {
      bool all_zero = std::all_of(d.rhs.begin(), d.rhs.end(), [](const BracketTerm& t) {
        return t.coeff.re.is_zero() && t.coeff.im.is_zero();
      });
      if (!all_zero)
        b.error(1, 1, "bracket of x" + std::to_string(d.i) + " with itself must vanish");
      continue;
    }
    for (const BracketTerm& t : d.rhs) {
      if (t.basis < 1 || t.basis > doc.dim)
        b.error(1, 1, "bracket value references basis x" + std::to_string(t.basis) +
                          " outside 1.." + std::to_string(doc.dim));
      if (doc.field == FieldTag::Rational && !t.coeff.im.is_zero())
        b.error(1, 1, "gaussian literal under a rational field tag");
    }
    auto key = std::make_pair(d.i, d.j);
    if (dense.count(key)) {
      b.error(1, 1,
              "duplicate bracket declaration (" + std::to_string(d.i) + "," +
                  std::to_string(d.j) + ")");
      continue;
    }
    std::vector<GaussLit> v(doc.dim, GaussLit{Rational(0), Rational(0)});
    for (const BracketTerm& t : d.rhs) {
      if (t.basis < 1 || t.basis > doc.dim) continue;
      v[t.basis - 1].re += t.coeff.re;
      v[t.basis - 1].im += t.coeff.im;
    }
    dense.emplace(key, std::move(v));
  }
  for (const auto& [key, v] : dense) {
    auto mirror = dense.find(std::make_pair(key.second, key.first));
    if (mirror == dense.end() || key.first > key.second) continue;
    for (int k = 0; k < doc.dim; ++k) {
      if (v[k].re == -mirror->second[k].re && v[k].im == -mirror->second[k].im) continue;
      b.error(1, 1,
              "brackets (" + std::to_string(key.first) + "," + std::to_string(key.second) +
                  ") and its mirror are not exact negations");
      break;
    }
  }
}

ParseResult parse_dsl(const std::string& text) {
  DocBuilder b;
  std::string line;
  int line_no = 0;
  size_t pos = 0;
  while (pos <= text.size()) {
    size_t nl = text.find('\n', pos);
    if (nl == std::string::npos) {
      line = text.substr(pos);
      pos = text.size() + 1;
    } else {
      line = text.substr(pos, nl - pos);
      pos = nl + 1;
    }
    if (!line.empty() && line.back() == '\r') line.pop_back();
    ++line_no;
    parse_dsl_line(line, line_no, b);
    if (nl == std::string::npos) break;
  }
  check_consistency(b);
  ParseResult out;
  out.diagnostics = std::move(b.diags);
  if (out.diagnostics.empty()) out.doc = std::move(b.doc);
  return out;
}

std::pair<int, int> byte_to_line_col(const std::string& text, size_t byte) {
  int line = 1, col = 1;
  for (size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

ParseResult parse_json_doc(const std::string& text) {
  DocBuilder b;
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    auto [line, col] = byte_to_line_col(text, e.byte > 0 ? e.byte - 1 : 0);
    b.error(line, col, "invalid JSON: " + std::string(e.what()));
    ParseResult out;
    out.diagnostics = std::move(b.diags);
    return out;
  }
  if (!j.is_object()) {
    b.error(1, 1, "document must be a JSON object");
  } else {
    if (j.contains("name")) {
      if (j["name"].is_string())
        b.doc.name = j["name"].get<std::string>();
      else
        b.error(1, 1, "name must be a string");
    }
    if (!j.contains("dim") || !j["dim"].is_number_integer()) {
      b.error(1, 1, "dim must be an integer");
    } else {
      b.doc.dim = j["dim"].get<int>();
      b.saw_dim = true;
    }
    if (j.contains("field")) {
      std::string f = j["field"].is_string() ? j["field"].get<std::string>() : "";
      if (f == "rational")
        b.doc.field = FieldTag::Rational;
      else if (f == "gaussian")
        b.doc.field = FieldTag::Gaussian;
      else
        b.error(1, 1, "field must be 'rational' or 'gaussian'");
    }
    if (j.contains("brackets")) {
      if (!j["brackets"].is_array()) {
        b.error(1, 1, "brackets must be an array");
      } else {
        for (const auto& jb : j["brackets"]) {
          BracketDecl d;
          if (!jb.is_object() || !jb.contains("lhs") || !jb["lhs"].is_array() ||
              jb["lhs"].size() != 2 || !jb["lhs"][0].is_number_integer() ||
              !jb["lhs"][1].is_number_integer()) {
            b.error(1, 1, "bracket lhs must be a pair of integers");
            continue;
          }
          d.i = jb["lhs"][0].get<int>();
          d.j = jb["lhs"][1].get<int>();
          if (!jb.contains("rhs") || !jb["rhs"].is_array()) {
            b.error(1, 1, "bracket rhs must be an array");
            continue;
          }
          bool bad = false;
          for (const auto& jt : jb["rhs"]) {
            if (!jt.is_object() || !jt.contains("basis") || !jt["basis"].is_number_integer() ||
                !jt.contains("coeff") || !jt["coeff"].is_string()) {
              b.error(1, 1, "bracket term must be {basis: int, coeff: string}");
              bad = true;
              break;
            }
            auto g = parse_gauss_literal(jt["coeff"].get<std::string>());
            if (!g) {
              b.error(1, 1, "invalid scalar literal '" + jt["coeff"].get<std::string>() + "'");
              bad = true;
              break;
            }
            d.rhs.push_back(BracketTerm{jt["basis"].get<int>(), *g});
          }
          if (!bad) b.doc.brackets.push_back(std::move(d));
        }
      }
    }
  }
  check_consistency(b);
  ParseResult out;
  out.diagnostics = std::move(b.diags);
  if (out.diagnostics.empty()) out.doc = std::move(b.doc);
  return out;
}

}  // namespace

std::optional<GaussLit> parse_gauss_literal(const std::string& text) {
  Scanner sc(text, 1);
  auto g = sc.gauss();
  if (!g || !sc.eof()) return std::nullopt;
  return g;
}

bool AlgebraDocument::operator==(const AlgebraDocument& o) const {
  if (name != o.name || dim != o.dim || field != o.field ||
      brackets.size() != o.brackets.size())
    return false;
  for (size_t b = 0; b < brackets.size(); ++b) {
    if (brackets[b].i != o.brackets[b].i || brackets[b].j != o.brackets[b].j ||
        brackets[b].rhs.size() != o.brackets[b].rhs.size())
      return false;
    for (size_t t = 0; t < brackets[b].rhs.size(); ++t) {
      if (brackets[b].rhs[t].basis != o.brackets[b].rhs[t].basis ||
          !(brackets[b].rhs[t].coeff == o.brackets[b].rhs[t].coeff))
        return false;
    }
  }
  return true;
}

ParseResult parse_document(const std::string& text, DocFormat format) {
  try {
    return format == DocFormat::Dsl ? parse_dsl(text) : parse_json_doc(text);
  } catch (const std::exception& e) {
    // parsing is total: anything unexpected becomes a diagnostic
    ParseResult out;
    out.diagnostics.push_back({1, 1, std::string("internal parse failure: ") + e.what()});
    return out;
  }
}

nlohmann::ordered_json document_to_json(const AlgebraDocument& doc) {
  nlohmann::ordered_json j;
  j["name"] = doc.name;
  j["dim"] = doc.dim;
  j["field"] = doc.field == FieldTag::Gaussian ? "gaussian" : "rational";
  nlohmann::ordered_json brackets = nlohmann::ordered_json::array();
  for (const BracketDecl& d : doc.brackets) {
    nlohmann::ordered_json jb;
    jb["lhs"] = {d.i, d.j};
    nlohmann::ordered_json rhs = nlohmann::ordered_json::array();
    for (const BracketTerm& t : d.rhs) {
      nlohmann::ordered_json jt;
      jt["basis"] = t.basis;
      jt["coeff"] = format_gauss_literal(t.coeff);
      rhs.push_back(std::move(jt));
    }
    jb["rhs"] = std::move(rhs);
    brackets.push_back(std::move(jb));
  }
  j["brackets"] = std::move(brackets);
  return j;
}

std::string serialize_document(const AlgebraDocument& doc, DocFormat format) {
  if (format == DocFormat::Json) {
    return document_to_json(doc).dump(2) + "\n";
  }
  std::ostringstream out;
  out << "name " << doc.name << "\n";
  out << "dim " << doc.dim << "\n";
  out << "field " << (doc.field == FieldTag::Gaussian ? "gaussian" : "rational") << "\n";
  for (const BracketDecl& d : doc.brackets) {
    out << "bracket " << d.i << " " << d.j << " =";
    bool first = true;
    for (const BracketTerm& t : d.rhs) {
      GaussLit c = t.coeff;
      std::string sep = " + ";
      if (c.im.is_zero() && c.re.sign() < 0) {
        sep = " - ";
        c.re = -c.re;
      } else if (c.re.is_zero() && c.im.sign() < 0) {
        sep = " - ";
        c.im = -c.im;
      }
      if (first) {
        sep = (sep == " - ") ? " -" : " ";
        first = false;
      }
      out << sep;
      bool is_one = c.re.is_one() && c.im.is_zero();
      if (!is_one) out << format_gauss_literal(c) << "*";
      out << "x" << t.basis;
    }
    if (d.rhs.empty()) out << " 0*x1";
    out << "\n";
  }
  return out.str();
}

LieAlgebra document_to_algebra(const AlgebraDocument& doc, int tower_depth) {
  TowerContext ctx(tower_depth);
  FieldElement i_unit = FieldElement::zero(ctx);
  if (doc.field == FieldTag::Gaussian) {
    auto [gctx, iu] = adjoin_sqrt(ctx, FieldElement(Rational(-1), ctx));
    ctx = gctx;
    i_unit = iu;
  }
  LieAlgebra L(doc.dim, ctx);
  for (const BracketDecl& d : doc.brackets) {
    if (d.i == d.j) continue;
    std::vector<FieldElement> rhs(doc.dim, FieldElement::zero(ctx));
    for (const BracketTerm& t : d.rhs) {
      FieldElement c(t.coeff.re, ctx);
      if (!t.coeff.im.is_zero()) c += FieldElement(t.coeff.im, ctx) * i_unit;
      rhs[t.basis - 1] += c;
    }
    L.set_bracket(d.i - 1, d.j - 1, rhs);
  }
  return L;
}

AlgebraDocument algebra_to_document(const LieAlgebra& L, const std::string& name) {
  AlgebraDocument doc;
  doc.name = name;
  doc.dim = L.dim();
  doc.field = FieldTag::Rational;
  for (int i = 0; i < L.dim(); ++i)
    for (int j = i + 1; j < L.dim(); ++j) {
      auto rhs = L.bracket_basis(i, j);
      BracketDecl d;
      d.i = i + 1;
      d.j = j + 1;
      for (int k = 0; k < L.dim(); ++k) {
        if (rhs[k].is_zero()) continue;
        if (!rhs[k].in_gaussian_field())
          raise(ErrorCode::UnsupportedFieldExtension,
                "structure constants outside the gaussian field cannot be serialized");
        auto [re, im] = rhs[k].gaussian_parts();
        if (!im.is_zero()) doc.field = FieldTag::Gaussian;
        d.rhs.push_back(BracketTerm{k + 1, GaussLit{re, im}});
      }
      if (!d.rhs.empty()) doc.brackets.push_back(std::move(d));
    }
  return doc;
}

MatrixParseResult parse_matrix_document(const std::string& text) {
  MatrixParseResult out;
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    auto [line, col] = byte_to_line_col(text, e.byte > 0 ? e.byte - 1 : 0);
    out.diagnostics.push_back({line, col, "invalid JSON: " + std::string(e.what())});
    return out;
  }
  if (!j.is_object() || !j.contains("rows") || !j["rows"].is_array()) {
    out.diagnostics.push_back({1, 1, "matrix document must be {\"rows\": [[...], ...]}"});
    return out;
  }
  std::vector<std::vector<GaussLit>> rows;
  size_t width = 0;
  for (const auto& jr : j["rows"]) {
    if (!jr.is_array()) {
      out.diagnostics.push_back({1, 1, "matrix rows must be arrays"});
      return out;
    }
    std::vector<GaussLit> row;
    for (const auto& je : jr) {
      if (!je.is_string()) {
        out.diagnostics.push_back({1, 1, "matrix entries must be scalar literal strings"});
        return out;
      }
      auto g = parse_gauss_literal(je.get<std::string>());
      if (!g) {
        out.diagnostics.push_back(
            {1, 1, "invalid scalar literal '" + je.get<std::string>() + "'"});
        return out;
      }
      row.push_back(*g);
    }
    if (rows.empty())
      width = row.size();
    else if (row.size() != width) {
      out.diagnostics.push_back({1, 1, "matrix rows have inconsistent lengths"});
      return out;
    }
    rows.push_back(std::move(row));
  }
  out.rows = std::move(rows);
  return out;
}

MatrixK matrix_from_literals(const std::vector<std::vector<GaussLit>>& rows,
                             const TowerContext& ctx_in) {
  TowerContext ctx = ctx_in;
  bool needs_i = false;
  for (const auto& row : rows)
    for (const auto& g : row)
      if (!g.im.is_zero()) needs_i = true;
  FieldElement i_unit = FieldElement::zero(ctx);
  if (needs_i) {
    auto [gctx, iu] = adjoin_sqrt(ctx, FieldElement(Rational(-1), ctx));
    ctx = gctx;
    i_unit = iu;
  }
  int r = static_cast<int>(rows.size());
  int c = r == 0 ? 0 : static_cast<int>(rows[0].size());
  MatrixK m(r, c, ctx);
  for (int i = 0; i < r; ++i)
    for (int jj = 0; jj < c; ++jj) {
      FieldElement v(rows[i][jj].re, ctx);
      if (!rows[i][jj].im.is_zero()) v += FieldElement(rows[i][jj].im, ctx) * i_unit;
      m.at(i, jj) = v;
    }
  return m;
}

}  // namespace liespec
