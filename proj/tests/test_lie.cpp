#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "liespec/lie.hpp"

using namespace liespec;

namespace {

FieldElement fe(long v, const TowerContext& ctx) { return FieldElement(Rational(v), ctx); }

// su(2): [s1,s2]=2i s3, [s2,s3]=2i s1, [s3,s1]=2i s2
LieAlgebra make_su2() {
  TowerContext q;
  auto [ctx, i] = adjoin_sqrt(q, FieldElement(Rational(-1)));
  FieldElement two_i = fe(2, ctx) * i;
  LieAlgebra L(3, {"s1", "s2", "s3"}, ctx);
  L.set_bracket(0, 1, {FieldElement::zero(ctx), FieldElement::zero(ctx), two_i});
  L.set_bracket(1, 2, {two_i, FieldElement::zero(ctx), FieldElement::zero(ctx)});
  L.set_bracket(2, 0, {FieldElement::zero(ctx), two_i, FieldElement::zero(ctx)});
  return L;
}

// sl(2): [H,X]=2X, [H,Y]=-2Y, [X,Y]=H
LieAlgebra make_sl2() {
  TowerContext q;
  LieAlgebra L(3, {"H", "X", "Y"}, q);
  L.set_bracket(0, 1, {fe(0, q), fe(2, q), fe(0, q)});
  L.set_bracket(0, 2, {fe(0, q), fe(0, q), fe(-2, q)});
  L.set_bracket(1, 2, {fe(1, q), fe(0, q), fe(0, q)});
  return L;
}

LieAlgebra make_heisenberg() {
  TowerContext q;
  LieAlgebra L(3, q);
  L.set_bracket(0, 1, {fe(0, q), fe(0, q), fe(1, q)});
  return L;
}

// L_{a,b}: [x1,x3]=x2, [x2,x3]=a x1 + b x2
LieAlgebra make_lab(const Rational& a, const Rational& b) {
  TowerContext q;
  LieAlgebra L(3, q);
  L.set_bracket(0, 2, {FieldElement::zero(q), FieldElement::one(q), FieldElement::zero(q)});
  L.set_bracket(1, 2, {FieldElement(a, q), FieldElement(b, q), FieldElement::zero(q)});
  return L;
}

// A_{a,b}: [x1,x4]=a x1, [x2,x4]=b x2 - x3, [x3,x4]=x2 + b x3
LieAlgebra make_aab(const FieldElement& a, const FieldElement& b, const TowerContext& ctx) {
  LieAlgebra L(4, ctx);
  FieldElement z = FieldElement::zero(ctx), one = FieldElement::one(ctx);
  L.set_bracket(0, 3, {a, z, z, z});
  L.set_bracket(1, 3, {z, b, -one, z});
  L.set_bracket(2, 3, {z, one, b, z});
  return L;
}

}  // namespace

TEST_CASE("su(2) validates and has the expected adjoint matrices") {
  LieAlgebra L = make_su2();
  CHECK(validate(L).empty());
  auto ts = adjoint(L);
  const TowerContext& ctx = L.context();
  auto i = *try_sqrt(FieldElement(Rational(-1), ctx));
  FieldElement two_i = fe(2, ctx) * i;
  // T_1 = [[0,0,0],[0,0,-2i],[0,2i,0]]
  CHECK(ts[0].at(1, 2) == -two_i);
  CHECK(ts[0].at(2, 1) == two_i);
  CHECK(ts[0].at(0, 0).is_zero());
  // T_2 = [[0,0,2i],[0,0,0],[-2i,0,0]]
  CHECK(ts[1].at(0, 2) == two_i);
  CHECK(ts[1].at(2, 0) == -two_i);
  // T_3 = [[0,-2i,0],[2i,0,0],[0,0,0]]
  CHECK(ts[2].at(0, 1) == -two_i);
  CHECK(ts[2].at(1, 0) == two_i);
}

TEST_CASE("sl(2) adjoint")
{
  LieAlgebra L = make_sl2();
  CHECK(validate(L).empty());
  auto ts = adjoint(L);
  const TowerContext& q = L.context();
  CHECK(ts[0].at(0, 0).is_zero());
  CHECK(ts[0].at(1, 1) == fe(2, q));
  CHECK(ts[0].at(2, 2) == fe(-2, q));
  // T_X = [[0,0,1],[-2,0,0],[0,0,0]]
  CHECK(ts[1].at(0, 2) == fe(1, q));
  CHECK(ts[1].at(1, 0) == fe(-2, q));
}

TEST_CASE("heisenberg validates; abelian adjoint is zero") {
  LieAlgebra h = make_heisenberg();
  CHECK(validate(h).empty());
  TowerContext q;
  LieAlgebra ab(4, q);
  for (const MatrixK& t : adjoint(ab)) CHECK(t.is_zero());
}

TEST_CASE("jacobi violation is reported with its triple") {
  TowerContext q;
  LieAlgebra L(3, q);
  L.set_bracket(0, 1, {fe(0, q), fe(0, q), fe(1, q)});  // [x1,x2]=x3
  L.set_bracket(0, 2, {fe(1, q), fe(0, q), fe(0, q)});  // [x1,x3]=x1
  auto viol = validate(L);
  REQUIRE(viol.size() == 1);
  CHECK(viol[0].i == 0);
  CHECK(viol[0].j == 1);
  CHECK(viol[0].k == 2);
  // residual is x3
  CHECK(viol[0].residual[2] == fe(1, q));
  CHECK(viol[0].residual[0].is_zero());
}

TEST_CASE("series classification") {
  SUBCASE("heisenberg: lower central 3,1,0") {
    auto s = series(make_heisenberg(), SeriesKind::LowerCentral);
    CHECK(s.dims == std::vector<int>{3, 1, 0});
    CHECK(s.reaches_zero);
    CHECK(is_nilpotent(make_heisenberg()));
    CHECK(is_solvable(make_heisenberg()));
  }
  SUBCASE("sl2: derived stabilizes at 3") {
    auto s = series(make_sl2(), SeriesKind::Derived);
    CHECK(s.dims == std::vector<int>{3, 3});
    CHECK(!s.reaches_zero);
    CHECK(!is_solvable(make_sl2()));
  }
  SUBCASE("A_{1,2}: derived 4,3,0 -> solvable, not nilpotent") {
    TowerContext q;
    LieAlgebra L = make_aab(fe(1, q), fe(2, q), q);
    CHECK(validate(L).empty());
    auto s = series(L, SeriesKind::Derived);
    CHECK(s.dims == std::vector<int>{4, 3, 0});
    CHECK(is_solvable(L));
    CHECK(!is_nilpotent(L));
  }
  SUBCASE("derived series terms are nested") {
    TowerContext q;
    LieAlgebra L = make_aab(fe(1, q), fe(2, q), q);
    auto s = series(L, SeriesKind::Derived);
    for (size_t t = 1; t < s.bases.size(); ++t) {
      RowReduction prev = row_reduce_rows(q, s.bases[t - 1]);
      for (const auto& v : s.bases[t]) CHECK(in_row_span(prev, v, q));
    }
  }
}

TEST_CASE("direct and semidirect sums") {
  TowerContext q;
  SUBCASE("1-dim acting on abelian C^2 by diag(1,2)") {
    LieAlgebra line(1, q);
    LieAlgebra plane(2, q);
    MatrixK t(2, 2, q);
    t.at(0, 0) = fe(1, q);
    t.at(1, 1) = fe(2, q);
    LieAlgebra L = semidirect_sum(line, plane, {t});
    CHECK(L.dim() == 3);
    CHECK(validate(L).empty());
    CHECK(is_solvable(L));
    CHECK(!is_nilpotent(L));
  }
  SUBCASE("any matrix is a derivation of an abelian ideal") {
    LieAlgebra line(1, q);
    LieAlgebra plane(2, q);
    MatrixK t(2, 2, q);
    t.at(0, 1) = fe(1, q);
    CHECK_NOTHROW(semidirect_sum(line, plane, {t}));
  }
  SUBCASE("non-derivation is rejected") {
    LieAlgebra line(1, q);
    LieAlgebra h = make_heisenberg();
    MatrixK t(3, 3, q);
    t.at(0, 0) = fe(1, q);  // scales x1 but not x3: breaks Leibniz on [x1,x2]=x3
    CHECK_THROWS_AS(semidirect_sum(line, h, {t}), Error);
  }
  SUBCASE("non-homomorphism is rejected") {
    LieAlgebra plane(2, q);  // abelian, so [tau1,tau2] must vanish
    LieAlgebra ideal(2, q);
    MatrixK t1(2, 2, q), t2(2, 2, q);
    t1.at(0, 1) = fe(1, q);
    t2.at(1, 0) = fe(1, q);  // do not commute
    CHECK_THROWS_AS(semidirect_sum(plane, ideal, {t1, t2}), Error);
  }
  SUBCASE("su2 + su2 direct sum validates") {
    LieAlgebra L = direct_sum(make_su2(), make_su2());
    CHECK(L.dim() == 6);
    CHECK(validate(L).empty());
    CHECK(!is_solvable(L));
  }
}

TEST_CASE("change of basis") {
  TowerContext q;
  SUBCASE("identity fixes constants") {
    LieAlgebra h = make_heisenberg();
    LieAlgebra h2 = change_basis(h, MatrixK::identity(3, q));
    CHECK(h2.bracket_basis(0, 1) == h.bracket_basis(0, 1));
  }
  SUBCASE("swapping x1,x2 negates [x1,x2]") {
    LieAlgebra h = make_heisenberg();
    MatrixK b(3, 3, q);
    b.at(0, 1) = fe(1, q);
    b.at(1, 0) = fe(1, q);
    b.at(2, 2) = fe(1, q);
    LieAlgebra h2 = change_basis(h, b);
    CHECK(h2.bracket_basis(0, 1)[2] == fe(-1, q));
  }
  SUBCASE("sl2 rescaling gives an isomorphic copy") {
    LieAlgebra L = make_sl2();
    MatrixK b(3, 3, q);
    b.at(0, 0) = fe(1, q);
    b.at(1, 1) = fe(2, q);
    b.at(2, 2) = FieldElement(Rational(1, 2), q);
    LieAlgebra L2 = change_basis(L, b);
    CHECK(L2.bracket_basis(0, 1) == std::vector<FieldElement>{fe(0, q), fe(2, q), fe(0, q)});
    CHECK(L2.bracket_basis(0, 2) == std::vector<FieldElement>{fe(0, q), fe(0, q), fe(-2, q)});
    CHECK(L2.bracket_basis(1, 2) == std::vector<FieldElement>{fe(1, q), fe(0, q), fe(0, q)});
  }
  SUBCASE("singular matrix is rejected") {
    CHECK_THROWS_AS(change_basis(make_heisenberg(), MatrixK(3, 3, q)), Error);
  }
  SUBCASE("composition matches x^ = Bx convention") {
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<long> d(-3, 3);
    LieAlgebra L = make_sl2();
    int done = 0;
    while (done < 10) {
      MatrixK b1(3, 3, q), b2(3, 3, q);
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
          b1.at(i, j) = fe(d(rng), q);
          b2.at(i, j) = fe(d(rng), q);
        }
      if (det(b1).is_zero() || det(b2).is_zero()) continue;
      LieAlgebra lhs = change_basis(change_basis(L, b1), b2);
      LieAlgebra rhs = change_basis(L, b2 * b1);
      for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j)
          CHECK(lhs.bracket_basis(i, j) == rhs.bracket_basis(i, j));
      ++done;
    }
  }
}

TEST_CASE("automorphism and unitarity checks") {
  SUBCASE("diag(1, alpha, conj alpha) is a unitary automorphism of sl2") {
    LieAlgebra L = make_sl2();
    TowerContext q0;
    auto [ctx, i] = adjoin_sqrt(q0, FieldElement(Rational(-1)));
    LieAlgebra Lg = L.with_context(ctx);
    FieldElement alpha = FieldElement(Rational(3, 5), ctx) + FieldElement(Rational(4, 5), ctx) * i;
    MatrixK b(3, 3, ctx);
    b.at(0, 0) = FieldElement::one(ctx);
    b.at(1, 1) = alpha;
    b.at(2, 2) = alpha.conjugate();
    CHECK(is_automorphism(Lg, b));
    CHECK(is_unitary(b));
  }
  SUBCASE("H-X swap is not an automorphism") {
    LieAlgebra L = make_sl2();
    TowerContext q;
    MatrixK b(3, 3, q);
    b.at(0, 1) = fe(1, q);
    b.at(1, 0) = fe(1, q);
    b.at(2, 2) = fe(1, q);
    CHECK(!is_automorphism(L, b));
    CHECK(is_unitary(b));
  }
  SUBCASE("L_{1,1} family matrix with s=t=1, u=v=0") {
    LieAlgebra L = make_lab(Rational(1), Rational(1));
    TowerContext q;
    MatrixK b(3, 3, q);
    b.at(0, 0) = fe(1, q);
    b.at(0, 1) = fe(1, q);
    b.at(1, 0) = fe(1, q);
    b.at(1, 1) = fe(2, q);
    b.at(2, 2) = fe(1, q);
    CHECK(is_automorphism(L, b));
  }
}

TEST_CASE("trace vector") {
  TowerContext q;
  SUBCASE("nilpotent algebras have zero trace vector") {
    for (const FieldElement& tr : trace_vector(make_heisenberg())) CHECK(tr.is_zero());
  }
  SUBCASE("L_{1,1} has trace vector (0,0,-b)") {
    auto tv = trace_vector(make_lab(Rational(1), Rational(1)));
    CHECK(tv[0].is_zero());
    CHECK(tv[1].is_zero());
    CHECK(tv[2] == fe(-1, q));
  }
  SUBCASE("A_{a,b} has trace vector (0,0,0,-(a+2b))") {
    LieAlgebra L = make_aab(fe(3, q), fe(5, q), q);
    auto tv = trace_vector(L);
    CHECK(tv[0].is_zero());
    CHECK(tv[1].is_zero());
    CHECK(tv[2].is_zero());
    CHECK(tv[3] == fe(-13, q));
  }
  SUBCASE("automorphisms fix the trace vector") {
    LieAlgebra L = make_lab(Rational(1), Rational(1));
    MatrixK b(3, 3, q);
    b.at(0, 0) = fe(1, q);
    b.at(0, 1) = fe(1, q);
    b.at(1, 0) = fe(1, q);
    b.at(1, 1) = fe(2, q);
    b.at(2, 2) = fe(1, q);
    REQUIRE(is_automorphism(L, b));
    auto tv = trace_vector(L);
    // B * tv == tv
    for (int i = 0; i < 3; ++i) {
      FieldElement acc = FieldElement::zero(q);
      for (int j = 0; j < 3; ++j) acc += b.at(i, j) * tv[j];
      CHECK(acc == tv[i]);
    }
  }
}
