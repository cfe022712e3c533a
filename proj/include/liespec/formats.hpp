#ifndef LIESPEC_FORMATS_HPP
#define LIESPEC_FORMATS_HPP

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

#include "liespec/lie.hpp"

namespace liespec {

struct GaussLit {
  Rational re;
  Rational im;

  bool operator==(const GaussLit& o) const { return re == o.re && im == o.im; }
};

/// Strict rendering in the scalar literal grammar:
///   rat | rat ("+"|"-") rat "i" | [+-]? rat? "i"
std::string format_gauss_literal(const GaussLit& g);

/// Whole-string parse of a gauss literal.
std::optional<GaussLit> parse_gauss_literal(const std::string& text);

enum class FieldTag { Rational, Gaussian };
enum class DocFormat { Dsl, Json };

struct BracketTerm {
  int basis = 0;  // 1-based
  GaussLit coeff;
};

struct BracketDecl {
  int i = 0, j = 0;  // 1-based
  std::vector<BracketTerm> rhs;
};

struct AlgebraDocument {
  std::string name = "algebra";
  int dim = 0;
  FieldTag field = FieldTag::Rational;
  std::vector<BracketDecl> brackets;

  bool operator==(const AlgebraDocument& o) const;
};

struct Diagnostic {
  int line = 0;  // 1-based
  int col = 0;   // 1-based
  std::string message;
};

struct ParseResult {
  std::optional<AlgebraDocument> doc;
  std::vector<Diagnostic> diagnostics;

  bool ok() const { return doc.has_value() && diagnostics.empty(); }
};

/// Total: any input yields either a document or diagnostics, never a
/// crash. Consistency rules (index ranges, duplicate or contradictory
/// brackets, gaussian literals under a rational field tag) are enforced
/// here as well.
ParseResult parse_document(const std::string& text, DocFormat format);

std::string serialize_document(const AlgebraDocument& doc, DocFormat format);
nlohmann::ordered_json document_to_json(const AlgebraDocument& doc);

/// Builds the exact algebra; the tower starts at Q or Q(i) per the tag.
LieAlgebra document_to_algebra(const AlgebraDocument& doc, int tower_depth = 4);

/// Inverse of document_to_algebra for algebras whose structure constants
/// are rational or gaussian.
AlgebraDocument algebra_to_document(const LieAlgebra& L, const std::string& name);

struct MatrixParseResult {
  std::optional<std::vector<std::vector<GaussLit>>> rows;
  std::vector<Diagnostic> diagnostics;
};

/// Matrix file: {"rows": [[gauss, ...], ...]}.
MatrixParseResult parse_matrix_document(const std::string& text);

/// Matrix over the algebra's tower (extended by i when entries need it).
MatrixK matrix_from_literals(const std::vector<std::vector<GaussLit>>& rows,
                             const TowerContext& ctx);

}  // namespace liespec

#endif
