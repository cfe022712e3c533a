#include "liespec/catalog.hpp"

#include <algorithm>

namespace liespec {

namespace {

FieldElement require_param(const std::map<std::string, FieldElement>& params,
                           const std::string& name) {
  auto it = params.find(name);
  if (it == params.end())
    raise(ErrorCode::ParameterConstraintViolated, "missing parameter " + name);
  return it->second;
}

void reject_unknown(const std::map<std::string, FieldElement>& params,
                    std::initializer_list<const char*> allowed) {
  for (const auto& [k, v] : params) {
    if (std::find_if(allowed.begin(), allowed.end(),
                     [&](const char* a) { return k == a; }) == allowed.end())
      raise(ErrorCode::ParameterConstraintViolated, "unknown parameter " + k);
  }
}

TowerContext deepest(std::initializer_list<FieldElement> vals) {
  TowerContext ctx;
  for (const FieldElement& v : vals)
    if (v.context().depth() > ctx.depth()) ctx = v.context();
  return ctx;
}

LieAlgebra make_su2() {
  TowerContext q;
  auto [ctx, i] = adjoin_sqrt(q, FieldElement(Rational(-1)));
  FieldElement two_i = FieldElement(Rational(2), ctx) * i;
  FieldElement z = FieldElement::zero(ctx);
  LieAlgebra L(3, {"s1", "s2", "s3"}, ctx);
  L.set_bracket(0, 1, {z, z, two_i});
  L.set_bracket(1, 2, {two_i, z, z});
  L.set_bracket(2, 0, {z, two_i, z});
  return L;
}

LieAlgebra make_sl2() {
  TowerContext q;
  FieldElement z = FieldElement::zero(q), one = FieldElement::one(q);
  FieldElement two(Rational(2), q);
  LieAlgebra L(3, {"H", "X", "Y"}, q);
  L.set_bracket(0, 1, {z, two, z});
  L.set_bracket(0, 2, {z, z, -two});
  L.set_bracket(1, 2, {one, z, z});
  return L;
}

LieAlgebra make_heisenberg() {
  TowerContext q;
  FieldElement z = FieldElement::zero(q), one = FieldElement::one(q);
  LieAlgebra L(3, q);
  L.set_bracket(0, 1, {z, z, one});
  return L;
}

LieAlgebra make_abelian(const FieldElement& n_param) {
  if (!n_param.is_rational() || !n_param.rational_value().is_integer())
    raise(ErrorCode::ParameterConstraintViolated, "abelian needs an integer n");
  long n = n_param.rational_value().numerator().get_si();
  if (n < 1 || n > 12)
    raise(ErrorCode::ParameterConstraintViolated, "abelian dimension must be in 1..12");
  TowerContext q;
  return LieAlgebra(static_cast<int>(n), q);
}

// [x1,x3] = x2, [x2,x3] = a x1 + b x2, b != 0. This orientation makes
// the nonzero ad-x3 eigenvalues (-b +- sqrt(b^2+4a))/2.
LieAlgebra make_lab(const FieldElement& a, const FieldElement& b) {
  if (b.is_zero())
    raise(ErrorCode::ParameterConstraintViolated, "L_ab needs b != 0");
  TowerContext ctx = deepest({a, b});
  FieldElement z = FieldElement::zero(ctx), one = FieldElement::one(ctx);
  LieAlgebra L(3, ctx);
  L.set_bracket(0, 2, {z, one, z});
  L.set_bracket(1, 2, {a.lifted_to(ctx), b.lifted_to(ctx), z});
  return L;
}

// [x1,x4] = a x1, [x2,x4] = b x2 - x3, [x3,x4] = x2 + b x3, a != 0
LieAlgebra make_aab(const FieldElement& a, const FieldElement& b) {
  if (a.is_zero())
    raise(ErrorCode::ParameterConstraintViolated, "A_ab needs a != 0");
  TowerContext ctx = deepest({a, b});
  FieldElement z = FieldElement::zero(ctx), one = FieldElement::one(ctx);
  LieAlgebra L(4, ctx);
  L.set_bracket(0, 3, {a.lifted_to(ctx), z, z, z});
  L.set_bracket(1, 3, {z, b.lifted_to(ctx), -one, z});
  L.set_bracket(2, 3, {z, one, b.lifted_to(ctx), z});
  return L;
}

}  // namespace

const std::vector<CatalogEntry>& catalog_entries() {
  static const std::vector<CatalogEntry> entries = {
      {"su2", {}, "3-dimensional simple algebra spanned by the Pauli matrices", {}},
      {"sl2", {}, "3-dimensional simple algebra with [H,X]=2X, [H,Y]=-2Y, [X,Y]=H", {}},
      {"heisenberg3", {}, "3-dimensional Heisenberg algebra, [x1,x2]=x3", {}},
      {"abelian", {}, "abelian algebra of dimension n", {{"n", "integer, 1..12"}}},
      {"L_ab",
       {},
       "solvable with [x1,x3]=x2, [x2,x3]=a*x1+b*x2",
       {{"a", "any"}, {"b", "b != 0"}}},
      {"A_ab",
       {"L46"},
       "1-dimensional extension of abelian^3: [x1,x4]=a*x1, [x2,x4]=b*x2-x3, [x3,x4]=x2+b*x3",
       {{"a", "a != 0"}, {"b", "any"}}},
  };
  return entries;
}

LieAlgebra catalog_get(const std::string& name,
                       const std::map<std::string, FieldElement>& params) {
  std::string canon = name;
  for (const CatalogEntry& e : catalog_entries()) {
    if (e.name == name ||
        std::find(e.aliases.begin(), e.aliases.end(), name) != e.aliases.end()) {
      canon = e.name;
      break;
    }
  }
  if (canon == "su2") {
    reject_unknown(params, {});
    return make_su2();
  }
  if (canon == "sl2") {
    reject_unknown(params, {});
    return make_sl2();
  }
  if (canon == "heisenberg3") {
    reject_unknown(params, {});
    return make_heisenberg();
  }
  if (canon == "abelian") {
    reject_unknown(params, {"n"});
    return make_abelian(require_param(params, "n"));
  }
  if (canon == "L_ab") {
    reject_unknown(params, {"a", "b"});
    return make_lab(require_param(params, "a"), require_param(params, "b"));
  }
  if (canon == "A_ab") {
    reject_unknown(params, {"a", "b"});
    return make_aab(require_param(params, "a"), require_param(params, "b"));
  }
  raise(ErrorCode::UnknownEntry, "no catalog entry named " + name);
}

std::vector<MatrixK> sl2_irrep(int m) {
  if (m < 0) raise(ErrorCode::InvalidArgument, "representation weight must be >= 0");
  TowerContext q;
  int dim = m + 1;
  MatrixK H(dim, dim, q), X(dim, dim, q), Y(dim, dim, q);
  for (int j = 0; j <= m; ++j) {
    H.at(j, j) = FieldElement(Rational(m - 2 * j), q);
    if (j + 1 <= m) Y.at(j + 1, j) = FieldElement::one(q);
    if (j >= 1) X.at(j - 1, j) = FieldElement(Rational(static_cast<long>(j) * (m - j + 1)), q);
  }
  return {H, X, Y};
}

}  // namespace liespec
