#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "liespec/catalog.hpp"
#include "liespec/report.hpp"
#include "liespec/spectral.hpp"

using namespace liespec;

namespace {

MultiPoly expand_factorization(const LinearFactorization& f, int nvars) {
  MultiPoly acc = f.residual;
  for (const LinearFactor& lf : f.factors) {
    MultiPoly lin(nvars, f.ctx);
    Monomial z0{std::vector<int>(nvars, 0)};
    z0.exps[0] = 1;
    lin.add_term(z0, lf.coeffs[0].lifted_to(f.ctx));
    for (size_t i = 1; i < lf.coeffs.size(); ++i) {
      if (lf.coeffs[i].is_zero()) continue;
      Monomial zi{std::vector<int>(nvars, 0)};
      zi.exps[i] = 1;
      lin.add_term(zi, lf.coeffs[i].lifted_to(f.ctx));
    }
    for (int rep = 0; rep < lf.multiplicity; ++rep) acc = acc * lin;
  }
  return acc;
}

LieAlgebra get(const std::string& name, std::map<std::string, FieldElement> params = {}) {
  return catalog_get(name, params);
}

FieldElement param(long v) { return FieldElement(Rational(v)); }

}  // namespace

TEST_CASE("characteristic polynomials of the named algebras") {
  TowerContext q;
  SUBCASE("su2") {
    CharPoly cp = char_poly(get("su2"));
    CHECK(cp.Q.str() == "z0^3 - 4*z0*z1^2 - 4*z0*z2^2 - 4*z0*z3^2");
    CHECK(cp.z0_multiplicity == 1);
    CHECK(cp.Q.is_homogeneous());
  }
  SUBCASE("sl2") {
    CharPoly cp = char_poly(get("sl2"));
    CHECK(cp.Q.str() == "z0^3 - 4*z0*z1^2 - 4*z0*z2*z3");
  }
  SUBCASE("heisenberg is z0^3") {
    CharPoly cp = char_poly(get("heisenberg3"));
    CHECK(cp.z0_multiplicity == 3);
    CHECK(cp.reduced.is_one());
    CHECK(cp.Q.str() == "z0^3");
  }
  SUBCASE("specializing su2 to z2=z3=0") {
    CharPoly cp = char_poly(get("su2"));
    MultiPoly s = specialize(cp.Q, {{2, FieldElement::zero(cp.Q.context())},
                                    {3, FieldElement::zero(cp.Q.context())}});
    CHECK(s.str() == "z0^3 - 4*z0*z1^2");
  }
  SUBCASE("A_{1,2} expands the four factors") {
    CharPoly cp = char_poly(get("A_ab", {{"a", param(1)}, {"b", param(2)}}));
    CHECK(cp.Q.str() == "z0^4 - 5*z0^3*z4 + 9*z0^2*z4^2 - 5*z0*z4^3");
  }
}

TEST_CASE("univariate characteristic polynomial and eigenvalues") {
  LieAlgebra L = get("L_ab", {{"a", param(1)}, {"b", param(1)}});
  auto ts = adjoint(L);
  TowerContext ctx = L.context();
  SUBCASE("T_1 and T_2 are nilpotent") {
    for (int i : {0, 1}) {
      auto spec = eigen_multiset(ts[i], ctx);
      for (const auto& v : spec) CHECK(v.is_zero());
    }
  }
  SUBCASE("T_3 has the golden-ratio pair") {
    auto spec = eigen_multiset(ts[2], ctx);
    REQUIRE(spec.size() == 3);
    // roots of t^2 + t - 1 = 0 (char poly of the 2x2 block) plus 0
    FieldElement sum = FieldElement::zero(ctx);
    FieldElement nonzero_prod = FieldElement::one(ctx);
    int zeros = 0;
    for (const auto& v : spec) {
      sum += v;
      if (v.is_zero())
        ++zeros;
      else
        nonzero_prod *= v;
    }
    CHECK(zeros == 1);
    CHECK(sum == FieldElement(Rational(-1), ctx));
    CHECK(nonzero_prod == FieldElement(Rational(-1), ctx));
  }
}

TEST_CASE("linear factorization") {
  SUBCASE("abelian: z0^n") {
    LieAlgebra L = get("abelian", {{"n", param(4)}});
    auto f = linear_factorize(char_poly(L), adjoint(L));
    REQUIRE(f.factors.size() == 1);
    CHECK(f.factors[0].multiplicity == 4);
    CHECK(f.residual.is_one());
  }
  SUBCASE("sl2 keeps a quadratic residual") {
    LieAlgebra L = get("sl2");
    auto f = linear_factorize(char_poly(L), adjoint(L));
    REQUIRE(f.factors.size() == 1);
    CHECK(f.factors[0].multiplicity == 1);
    for (size_t i = 1; i < f.factors[0].coeffs.size(); ++i)
      CHECK(f.factors[0].coeffs[i].is_zero());
    CHECK(f.residual.total_degree() == 2);
    CHECK_THROWS_AS(spectral_matrix(f), Error);
    CHECK_THROWS_AS(k_count(f), Error);
  }
  SUBCASE("product of factors and residual reconstructs Q") {
    for (const char* name : {"su2", "sl2", "heisenberg3"}) {
      LieAlgebra L = get(name);
      CharPoly cp = char_poly(L);
      auto f = linear_factorize(cp, adjoint(L));
      CHECK(expand_factorization(f, cp.Q.nvars()) == cp.Q);
    }
    LieAlgebra L = get("A_ab", {{"a", param(1)}, {"b", param(2)}});
    CharPoly cp = char_poly(L);
    auto f = linear_factorize(cp, adjoint(L));
    CHECK(expand_factorization(f, cp.Q.nvars()) == cp.Q);
  }
}

TEST_CASE("spectral matrix of L_{1,1} (exact canonical row)") {
  LieAlgebra L = get("L_ab", {{"a", param(1)}, {"b", param(1)}});
  CharPoly cp = char_poly(L);
  auto f = linear_factorize(cp, adjoint(L));
  REQUIRE(f.residual.is_one());
  SpectralMatrix sm = spectral_matrix(f);
  const TowerContext& ctx = sm.lambda.context();
  // rows 1,2 vanish
  for (int j = 0; j < 3; ++j) {
    CHECK(sm.lambda.at(0, j).is_zero());
    CHECK(sm.lambda.at(1, j).is_zero());
  }
  // row 3 = (0, (-1+sqrt5)/2, (-1-sqrt5)/2) in canonical column order
  auto r5 = try_sqrt(FieldElement(Rational(5), ctx));
  REQUIRE(r5.has_value());
  FieldElement half(Rational(1, 2), ctx);
  FieldElement phi_plus = (*r5 - FieldElement::one(ctx)) * half;
  FieldElement phi_minus = (-*r5 - FieldElement::one(ctx)) * half;
  CHECK(sm.lambda.at(2, 0).is_zero());
  CHECK(sm.lambda.at(2, 1) == phi_plus);
  CHECK(sm.lambda.at(2, 2) == phi_minus);

  CHECK(k_count(f) == 3);
  CHECK(spectral_rank(sm) == 1);
  auto nil = nilradical_basis(L, sm);
  REQUIRE(nil.size() == 2);
  CHECK(nil[0][2].is_zero());
  CHECK(nil[1][2].is_zero());
}

TEST_CASE("k count collapses at the double-root parameter") {
  // b^2 + 4a = 0 at (a,b) = (-1,2)
  LieAlgebra L = get("L_ab", {{"a", param(-1)}, {"b", param(2)}});
  auto f = linear_factorize(char_poly(L), adjoint(L));
  REQUIRE(f.residual.is_one());
  CHECK(k_count(f) == 2);
  bool found_double = false;
  for (const auto& lf : f.factors) found_double = found_double || lf.multiplicity == 2;
  CHECK(found_double);
}

TEST_CASE("A_{1,2} spectral data") {
  LieAlgebra L = get("A_ab", {{"a", param(1)}, {"b", param(2)}});
  CharPoly cp = char_poly(L);
  auto f = linear_factorize(cp, adjoint(L));
  SpectralMatrix sm = spectral_matrix(f);
  CHECK(k_count(f) == 4);
  CHECK(spectral_rank(sm) == 1);
  auto nil = nilradical_basis(L, sm);
  REQUIRE(nil.size() == 3);
  // nilradical = span{x1,x2,x3}
  for (const auto& v : nil) CHECK(v[3].is_zero());
  // rows 1..3 of lambda vanish; row 4 is sigma(T_4) as a multiset
  for (int j = 0; j < 4; ++j)
    for (int i = 0; i < 3; ++i) CHECK(sm.lambda.at(i, j).is_zero());
  REQUIRE(f.spectra.size() == 4);
  std::vector<FieldElement> row4;
  for (int j = 0; j < 4; ++j) row4.push_back(sm.lambda.at(3, j));
  std::sort(row4.begin(), row4.end(),
            [](const FieldElement& a, const FieldElement& b) { return canonical_less(a, b); });
  std::vector<FieldElement> spec4 = f.spectra[3];
  for (auto& v : spec4) v = v.lifted_to(sm.lambda.context());
  CHECK(row4 == spec4);
}

TEST_CASE("rows of the spectral matrix match the generator spectra") {
  for (auto params : std::vector<std::map<std::string, FieldElement>>{
           {{"a", param(1)}, {"b", param(1)}}, {{"a", param(2)}, {"b", param(3)}}}) {
    LieAlgebra L = get("L_ab", params);
    auto f = linear_factorize(char_poly(L), adjoint(L));
    SpectralMatrix sm = spectral_matrix(f);
    REQUIRE(f.spectra.size() == 3);
    for (int i = 0; i < 3; ++i) {
      std::vector<FieldElement> row;
      for (int j = 0; j < 3; ++j) row.push_back(sm.lambda.at(i, j));
      std::sort(row.begin(), row.end(), [](const FieldElement& a, const FieldElement& b) {
        return canonical_less(a, b);
      });
      std::vector<FieldElement> spec = f.spectra[i];
      for (auto& v : spec) v = v.lifted_to(sm.lambda.context());
      std::sort(spec.begin(), spec.end(), [](const FieldElement& a, const FieldElement& b) {
        return canonical_less(a, b);
      });
      CHECK(row == spec);
    }
  }
}

TEST_CASE("specializing A_{1,2} at z4 = 1") {
  LieAlgebra L = get("A_ab", {{"a", param(1)}, {"b", param(2)}});
  CharPoly cp = char_poly(L);
  MultiPoly s = specialize(cp.Q, {{4, FieldElement::one(cp.Q.context())}});
  // z0(z0-1)(z0-(2+i))(z0-(2-i)) with every z4 power collapsed
  TowerContext q;
  auto [ctx, iu] = adjoin_sqrt(q, FieldElement(Rational(-1)));
  MultiPoly z0 = MultiPoly::variable(5, 0, ctx);
  MultiPoly one = MultiPoly::constant(5, FieldElement::one(ctx));
  FieldElement two(Rational(2), ctx);
  MultiPoly expect =
      z0 * (z0 - one) * (z0 - one.scaled(two + iu)) * (z0 - one.scaled(two - iu));
  CHECK(s == expect);
}

TEST_CASE("rank bounds against the nilradical's derived structure") {
  for (auto entry : std::vector<std::pair<std::string, LieAlgebra>>{
           {"L_11", get("L_ab", {{"a", param(1)}, {"b", param(1)}})},
           {"A_12", get("A_ab", {{"a", param(1)}, {"b", param(2)}})},
           {"heisenberg3", get("heisenberg3", {})},
           {"abelian4", get("abelian", {{"n", param(4)}})}}) {
    const LieAlgebra& L = entry.second;
    int n = L.dim();
    auto f = linear_factorize(char_poly(L), adjoint(L));
    SpectralMatrix sm = spectral_matrix(f);
    int r = spectral_rank(sm);
    CHECK(2 * r <= n);
    auto nil = nilradical_basis(L, sm);
    // dim [nil, nil] by spanning the brackets of the nilradical basis
    const TowerContext& ctx = sm.lambda.context();
    LieAlgebra Lc = L.with_context(ctx);
    std::vector<std::vector<FieldElement>> span;
    for (size_t a = 0; a < nil.size(); ++a)
      for (size_t b = a + 1; b < nil.size(); ++b) {
        auto br = Lc.bracket(nil[a], nil[b]);
        bool nz = false;
        for (const auto& c : br) nz = nz || !c.is_zero();
        if (nz) span.push_back(br);
      }
    int derived_dim = row_reduce_rows(ctx, span).rank;
    CHECK(r <= static_cast<int>(nil.size()) - derived_dim);
    // k(L) >= max over generators of the distinct eigenvalue count
    int k = k_count(f);
    size_t max_distinct = 1;
    for (int i = 0; i < n; ++i) {
      std::vector<FieldElement> distinct;
      for (int j = 0; j < n; ++j) {
        FieldElement v = sm.lambda.at(i, j);
        if (std::find(distinct.begin(), distinct.end(), v) == distinct.end())
          distinct.push_back(v);
      }
      max_distinct = std::max(max_distinct, distinct.size());
    }
    CHECK(static_cast<size_t>(k) >= max_distinct);
  }
}

TEST_CASE("invariant report examples") {
  SUBCASE("heisenberg") {
    InvariantReport r = invariant_report(get("heisenberg3", {}));
    CHECK(r.nilpotent);
    CHECK(r.solvable);
    CHECK(*r.rank_lambda == 0);
    CHECK(*r.k == 1);
    CHECK(*r.poincare == std::vector<long long>{1});
  }
  SUBCASE("A_{1,2}") {
    InvariantReport r = invariant_report(get("A_ab", {{"a", param(1)}, {"b", param(2)}}));
    CHECK(r.solvable);
    CHECK(!r.nilpotent);
    CHECK(*r.rank_lambda == 1);
    CHECK(*r.k == 4);
    CHECK(*r.poincare == std::vector<long long>{1, 3, 2});
  }
  SUBCASE("sl2 has no spectral data") {
    InvariantReport r = invariant_report(get("sl2", {}));
    CHECK(!r.solvable);
    CHECK(r.factorization.residual.total_degree() == 2);
    CHECK(!r.lambda.has_value());
    CHECK(!r.poincare.has_value());
  }
  SUBCASE("jacobi violations are rejected") {
    TowerContext q;
    LieAlgebra L(3, q);
    L.set_bracket(0, 1, {FieldElement::zero(q), FieldElement::zero(q), FieldElement::one(q)});
    L.set_bracket(0, 2, {FieldElement::one(q), FieldElement::zero(q), FieldElement::zero(q)});
    CHECK_THROWS_AS(invariant_report(L), Error);
  }
}

TEST_CASE("extension spectrum ratios") {
  TowerContext q;
  auto fe = [&](long v) { return FieldElement(Rational(v), q); };
  SUBCASE("identity") {
    std::vector<FieldElement> s{fe(0), fe(2), fe(4)};
    auto t = extension_spectrum_ratio(s, s);
    REQUIRE(t.has_value());
    CHECK(*t == FieldElement::one(q));
  }
  SUBCASE("uniform scaling") {
    std::vector<FieldElement> a{fe(0), fe(2), fe(4)};
    std::vector<FieldElement> b{fe(0), fe(1), fe(2)};
    auto t = extension_spectrum_ratio(a, b);
    REQUIRE(t.has_value());
    CHECK(*t == fe(2));
  }
  SUBCASE("A_{1,2} vs A_{1,3} has no scalar match") {
    LieAlgebra A = get("A_ab", {{"a", param(1)}, {"b", param(2)}});
    LieAlgebra B = get("A_ab", {{"a", param(1)}, {"b", param(3)}});
    auto fa = linear_factorize(char_poly(A), adjoint(A));
    auto fb = linear_factorize(char_poly(B), adjoint(B));
    CHECK(!extension_spectrum_ratio(fa.spectra[3], fb.spectra[3]).has_value());
  }
  SUBCASE("zero-count mismatch") {
    std::vector<FieldElement> a{fe(0), fe(0), fe(1)};
    std::vector<FieldElement> b{fe(0), fe(1), fe(2)};
    CHECK(!extension_spectrum_ratio(a, b).has_value());
  }
}

TEST_CASE("sl2 closed forms") {
  CHECK(sl2_closed_form(0).str() == "z0");
  CHECK(sl2_closed_form(1).str() == "z0^2 - z1^2 - z2*z3");
  CHECK(sl2_closed_form(2).str() == "z0^3 - 4*z0*z1^2 - 4*z0*z2*z3");
  for (int m = 0; m <= 4; ++m) {
    CharPoly cp = char_poly_pencil(sl2_irrep(m));
    CHECK(cp.Q == sl2_closed_form(m));
  }
  // m=1 has no z0 factor
  CHECK(char_poly_pencil(sl2_irrep(1)).z0_multiplicity == 0);
}

TEST_CASE("semidirect products reproduce the block formula") {
  TowerContext q;
  SUBCASE("1-dim on abelian^2 by diag(1,2)") {
    LieAlgebra line(1, q);
    LieAlgebra plane(2, q);
    MatrixK t(2, 2, q);
    t.at(0, 0) = FieldElement::one(q);
    t.at(1, 1) = FieldElement(Rational(2), q);
    LieAlgebra L = semidirect_sum(line, plane, {t});
    CharPoly cp = char_poly(L);
    MultiPoly z0 = MultiPoly::variable(4, 0, q), z1 = MultiPoly::variable(4, 1, q);
    MultiPoly expect = z0 * (z0 + z1) * (z0 + z1.scaled(FieldElement(Rational(2), q)));
    CHECK(cp.Q == expect);
  }
  SUBCASE("su2 + su2 is the product in disjoint variables") {
    LieAlgebra L = direct_sum(catalog_get("su2", {}), catalog_get("su2", {}));
    CharPoly cp = char_poly(L);
    CharPoly inner = char_poly(catalog_get("su2", {}));
    // embed the two copies into 7 variables
    const TowerContext& ctx = cp.Q.context();
    MultiPoly lhs(7, ctx), rhs(7, ctx);
    auto embed = [&](const MultiPoly& p, int offset) {
      MultiPoly out(7, ctx);
      for (const auto& [m, c] : p.terms()) {
        Monomial em{std::vector<int>(7, 0)};
        em.exps[0] = m.exps[0];
        for (int v = 1; v < 4; ++v) em.exps[v + offset] = m.exps[v];
        out.add_term(em, c.lifted_to(ctx));
      }
      return out;
    };
    CHECK(cp.Q == embed(inner.Q, 0) * embed(inner.Q, 3));
  }
}
