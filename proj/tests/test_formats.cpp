#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "liespec/catalog.hpp"
#include "liespec/formats.hpp"

using namespace liespec;

TEST_CASE("gauss literal parsing") {
  auto p = [](const char* s) { return parse_gauss_literal(s); };
  CHECK(p("2")->re == Rational(2));
  CHECK(p("2")->im == Rational(0));
  CHECK(p("-1/3")->re == Rational(-1, 3));
  CHECK(p("3/5+4/5i")->re == Rational(3, 5));
  CHECK(p("3/5+4/5i")->im == Rational(4, 5));
  CHECK(p("-i")->im == Rational(-1));
  CHECK(p("i")->im == Rational(1));
  CHECK(p("2i")->im == Rational(2));
  CHECK(p("-2-1i")->im == Rational(-1));
  CHECK(p("-2+i")->im == Rational(1));  // forgiving unit imaginary part
  CHECK(!p(""));
  CHECK(!p("x"));
  CHECK(!p("1/"));
  CHECK(!p("1//2"));
  CHECK(!p("1+"));
  CHECK(!p("1+2"));
  CHECK(!p("2 i"));
  CHECK(!p("1+2i3"));
}

TEST_CASE("gauss literal formatting round trips") {
  std::mt19937_64 rng(4);
  std::uniform_int_distribution<long> d(-9, 9);
  std::uniform_int_distribution<long> den(1, 5);
  for (int iter = 0; iter < 300; ++iter) {
    GaussLit g{Rational(d(rng), den(rng)), Rational(d(rng), den(rng))};
    auto back = parse_gauss_literal(format_gauss_literal(g));
    REQUIRE(back.has_value());
    CHECK(*back == g);
  }
}

TEST_CASE("heisenberg DSL parses") {
  ParseResult r = parse_document("dim 3\nbracket 1 2 = 1*x3\n", DocFormat::Dsl);
  REQUIRE(r.ok());
  CHECK(r.doc->dim == 3);
  REQUIRE(r.doc->brackets.size() == 1);
  CHECK(r.doc->brackets[0].i == 1);
  CHECK(r.doc->brackets[0].j == 2);
  CHECK(r.doc->brackets[0].rhs[0].basis == 3);
  CHECK(r.doc->brackets[0].rhs[0].coeff == GaussLit{Rational(1), Rational(0)});

  LieAlgebra L = document_to_algebra(*r.doc);
  CHECK(validate(L).empty());
  CHECK(L.bracket_basis(0, 1)[2].is_one());
}

TEST_CASE("bare and signed terms") {
  ParseResult r = parse_document(
      "dim 3\nbracket 1 3 = x2\nbracket 2 3 = -x1 - 2*x2 + 1/2*x3\n", DocFormat::Dsl);
  REQUIRE(r.ok());
  const auto& rhs = r.doc->brackets[1].rhs;
  REQUIRE(rhs.size() == 3);
  CHECK(rhs[0].coeff.re == Rational(-1));
  CHECK(rhs[1].coeff.re == Rational(-2));
  CHECK(rhs[2].coeff.re == Rational(1, 2));
}

TEST_CASE("whitespace insensitivity within lines") {
  ParseResult a = parse_document("dim 3\nbracket 1 2=1*x3\n", DocFormat::Dsl);
  ParseResult b = parse_document("  dim   3\n bracket  1   2 =  1 * x3 \n", DocFormat::Dsl);
  REQUIRE(a.ok());
  REQUIRE(b.ok());
  CHECK(*a.doc == *b.doc);
}

TEST_CASE("gaussian literal under rational field tag is rejected") {
  ParseResult r =
      parse_document("dim 3\nfield rational\nbracket 1 2 = 2i*x3\n", DocFormat::Dsl);
  CHECK(!r.ok());
  REQUIRE(!r.diagnostics.empty());
  CHECK(r.diagnostics[0].message.find("rational field tag") != std::string::npos);
}

TEST_CASE("diagnostics carry positions") {
  SUBCASE("unknown directive") {
    ParseResult r = parse_document("dim 3\nbogus 1\n", DocFormat::Dsl);
    REQUIRE(!r.diagnostics.empty());
    CHECK(r.diagnostics[0].line == 2);
  }
  SUBCASE("bad term") {
    ParseResult r = parse_document("dim 3\nbracket 1 2 = 7\n", DocFormat::Dsl);
    REQUIRE(!r.diagnostics.empty());
    CHECK(r.diagnostics[0].line == 2);
    CHECK(r.diagnostics[0].col > 10);
  }
  SUBCASE("missing dim") {
    ParseResult r = parse_document("bracket 1 2 = x3\n", DocFormat::Dsl);
    CHECK(!r.ok());
  }
  SUBCASE("trailing garbage") {
    ParseResult r = parse_document("dim 3 extra\n", DocFormat::Dsl);
    CHECK(!r.ok());
  }
}

TEST_CASE("consistency rules") {
  SUBCASE("index out of range") {
    CHECK(!parse_document("dim 2\nbracket 1 3 = x1\n", DocFormat::Dsl).ok());
    CHECK(!parse_document("dim 2\nbracket 1 2 = x5\n", DocFormat::Dsl).ok());
  }
  SUBCASE("duplicate declaration") {
    CHECK(!parse_document("dim 3\nbracket 1 2 = x3\nbracket 1 2 = x3\n", DocFormat::Dsl)
               .ok());
  }
  SUBCASE("mirror pair must negate") {
    CHECK(parse_document("dim 3\nbracket 1 2 = x3\nbracket 2 1 = -1*x3\n", DocFormat::Dsl)
              .ok());
    CHECK(!parse_document("dim 3\nbracket 1 2 = x3\nbracket 2 1 = x3\n", DocFormat::Dsl)
               .ok());
  }
  SUBCASE("self bracket must vanish") {
    CHECK(!parse_document("dim 3\nbracket 2 2 = x1\n", DocFormat::Dsl).ok());
  }
  SUBCASE("dimension bounds") {
    CHECK(!parse_document("dim 0\n", DocFormat::Dsl).ok());
    CHECK(!parse_document("dim 13\n", DocFormat::Dsl).ok());
  }
}

TEST_CASE("json document parsing") {
  const char* text = R"({
    "name": "su2", "dim": 3, "field": "gaussian",
    "brackets": [
      {"lhs": [1,2], "rhs": [{"basis": 3, "coeff": "2i"}]},
      {"lhs": [2,3], "rhs": [{"basis": 1, "coeff": "2i"}]},
      {"lhs": [3,1], "rhs": [{"basis": 2, "coeff": "2i"}]}
    ]})";
  ParseResult r = parse_document(text, DocFormat::Json);
  REQUIRE(r.ok());
  CHECK(r.doc->field == FieldTag::Gaussian);
  LieAlgebra L = document_to_algebra(*r.doc);
  CHECK(validate(L).empty());

  SUBCASE("invalid json carries a position") {
    ParseResult bad = parse_document("{\"dim\": 3,,}", DocFormat::Json);
    CHECK(!bad.ok());
    CHECK(bad.diagnostics[0].line >= 1);
  }
  SUBCASE("bad scalar literal") {
    ParseResult bad = parse_document(
        R"({"dim": 2, "brackets": [{"lhs": [1,2], "rhs": [{"basis": 1, "coeff": "zz"}]}]})",
        DocFormat::Json);
    CHECK(!bad.ok());
  }
}

TEST_CASE("round trip through both formats for catalog entries") {
  auto gaussian_a = [] {
    TowerContext q;
    auto [ctx, i] = adjoin_sqrt(q, FieldElement(Rational(-1)));
    return FieldElement(Rational(2), ctx) + i;
  }();
  std::vector<std::pair<std::string, LieAlgebra>> entries = {
      {"su2", catalog_get("su2", {})},
      {"sl2", catalog_get("sl2", {})},
      {"heisenberg3", catalog_get("heisenberg3", {})},
      {"abelian4", catalog_get("abelian", {{"n", FieldElement(Rational(4))}})},
      {"L_11", catalog_get("L_ab", {{"a", FieldElement(Rational(1))}, {"b", FieldElement(Rational(1))}})},
      {"A_12", catalog_get("A_ab", {{"a", FieldElement(Rational(1))}, {"b", FieldElement(Rational(2))}})},
      {"A_2i2", catalog_get("A_ab", {{"a", gaussian_a}, {"b", FieldElement(Rational(2))}})},
  };
  for (const auto& [name, L] : entries) {
    AlgebraDocument doc = algebra_to_document(L, name);
    for (DocFormat fmt : {DocFormat::Dsl, DocFormat::Json}) {
      std::string text = serialize_document(doc, fmt);
      ParseResult r = parse_document(text, fmt);
      REQUIRE_MESSAGE(r.ok(), name);
      CHECK(*r.doc == doc);
      // and the algebra itself survives
      LieAlgebra back = document_to_algebra(*r.doc);
      REQUIRE(back.dim() == L.dim());
      for (int i = 0; i < L.dim(); ++i)
        for (int j = i + 1; j < L.dim(); ++j) {
          auto lhs = back.bracket_basis(i, j);
          auto rhs = L.bracket_basis(i, j);
          for (int k = 0; k < L.dim(); ++k) {
            bool equal = lhs[k] == rhs[k].lifted_to(back.context());
            CHECK(equal);
          }
        }
    }
  }
}

TEST_CASE("round trip on randomized valid documents") {
  std::mt19937_64 rng(314);
  std::uniform_int_distribution<long> num(-9, 9);
  std::uniform_int_distribution<long> den(1, 4);
  for (int iter = 0; iter < 60; ++iter) {
    AlgebraDocument doc;
    doc.name = "rnd" + std::to_string(iter);
    doc.dim = 2 + static_cast<int>(rng() % 5);
    doc.field = (rng() % 2 == 0) ? FieldTag::Rational : FieldTag::Gaussian;
    for (int i = 1; i <= doc.dim; ++i)
      for (int j = i + 1; j <= doc.dim; ++j) {
        if (rng() % 2 == 0) continue;
        BracketDecl d;
        d.i = i;
        d.j = j;
        int terms = 1 + static_cast<int>(rng() % 3);
        for (int t = 0; t < terms; ++t) {
          Rational re(num(rng), den(rng));
          Rational im = doc.field == FieldTag::Gaussian && rng() % 2 == 0
                            ? Rational(num(rng), den(rng))
                            : Rational(0);
          if (re.is_zero() && im.is_zero()) re = Rational(1);
          d.rhs.push_back(
              BracketTerm{1 + static_cast<int>(rng() % doc.dim), GaussLit{re, im}});
        }
        doc.brackets.push_back(std::move(d));
      }
    for (DocFormat fmt : {DocFormat::Dsl, DocFormat::Json}) {
      ParseResult r = parse_document(serialize_document(doc, fmt), fmt);
      REQUIRE(r.ok());
      CHECK(*r.doc == doc);
    }
  }
}

TEST_CASE("matrix documents") {
  auto r = parse_matrix_document(R"({"rows": [["1", "0"], ["3/5+4/5i", "-i"]]})");
  REQUIRE(r.rows.has_value());
  TowerContext q;
  MatrixK m = matrix_from_literals(*r.rows, q);
  CHECK(m.rows() == 2);
  CHECK(m.at(0, 0).is_one());
  CHECK(!m.at(1, 0).is_rational());
  CHECK(!parse_matrix_document("{}").rows.has_value());
  CHECK(!parse_matrix_document(R"({"rows": [["1"], ["2", "3"]]})").rows.has_value());
  CHECK(!parse_matrix_document(R"({"rows": [["?"]]})").rows.has_value());
}

TEST_CASE("fuzzed documents never crash the parser") {
  std::mt19937_64 rng(99);
  const std::string base_dsl =
      "name fuzz\ndim 4\nfield gaussian\n"
      "bracket 1 2 = 2i*x3 + 1/2*x4\nbracket 3 4 = -x1\nbracket 2 4 = x2 - x3\n";
  const std::string base_json =
      R"({"name":"fuzz","dim":3,"field":"rational","brackets":[{"lhs":[1,2],"rhs":[{"basis":3,"coeff":"-5/7"}]}]})";
  const std::string charset = "abxzi0123456789+-*/=.,#\"{}[] \t\n";
  int parsed_ok = 0;
  for (int iter = 0; iter < 10000; ++iter) {
    std::string text = (iter % 2 == 0) ? base_dsl : base_json;
    int edits = 1 + static_cast<int>(rng() % 6);
    for (int e = 0; e < edits; ++e) {
      if (text.empty()) break;
      size_t pos = rng() % text.size();
      switch (rng() % 3) {
        case 0: text[pos] = charset[rng() % charset.size()]; break;
        case 1: text.insert(pos, 1, charset[rng() % charset.size()]); break;
        case 2: text.erase(pos, 1 + rng() % 3); break;
      }
    }
    ParseResult r = parse_document(text, (iter % 2 == 0) ? DocFormat::Dsl : DocFormat::Json);
    // total parsing: either a document or at least one diagnostic
    if (r.doc.has_value()) {
      ++parsed_ok;
      CHECK(r.diagnostics.empty());
    } else {
      CHECK(!r.diagnostics.empty());
    }
  }
  CHECK(parsed_ok > 0);  // some mutations stay valid
}
