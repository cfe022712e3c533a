#ifndef LIESPEC_MPOLY_HPP
#define LIESPEC_MPOLY_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "liespec/matrix.hpp"

namespace liespec {

/// Exponent vector over the variables z0..zn (length = ambient count).
struct Monomial {
  std::vector<int> exps;

  int total_degree() const;
  bool divides(const Monomial& other) const;
  Monomial operator*(const Monomial& other) const;
  Monomial operator/(const Monomial& other) const;  // caller checks divides
  friend bool operator==(const Monomial& a, const Monomial& b) { return a.exps == b.exps; }
};

/// Graded-lex with z0 > z1 > ... > zn, *descending*, so map iteration
/// starts at the leading term and serialization order is canonical.
struct GrlexDesc {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

/// Sparse multivariate polynomial over the tower field. Zero
/// coefficients are never stored.
class MultiPoly {
public:
  using TermMap = std::map<Monomial, FieldElement, GrlexDesc>;

  explicit MultiPoly(int nvars, TowerContext ctx = TowerContext());
  static MultiPoly constant(int nvars, const FieldElement& c);
  static MultiPoly variable(int nvars, int index, const TowerContext& ctx);

  int nvars() const { return nvars_; }
  const TowerContext& context() const { return ctx_; }
  const TermMap& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }
  bool is_one() const;
  int total_degree() const;  // -1 for the zero polynomial
  bool is_homogeneous() const;
  FieldElement coeff(const Monomial& m) const;

  void add_term(const Monomial& m, const FieldElement& c);

  MultiPoly operator-() const;
  friend MultiPoly operator+(const MultiPoly& a, const MultiPoly& b);
  friend MultiPoly operator-(const MultiPoly& a, const MultiPoly& b);
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
  MultiPoly scaled(const FieldElement& c) const;
  friend bool operator==(const MultiPoly& a, const MultiPoly& b);
  friend bool operator!=(const MultiPoly& a, const MultiPoly& b) { return !(a == b); }

  /// Smallest exponent of the given variable over all terms (0 if zero poly).
  int min_exponent(int var) const;
  /// Exact division by var^k (every term must have exponent >= k).
  MultiPoly divided_by_power(int var, int k) const;

  std::string str() const;

private:
  int nvars_;
  TowerContext ctx_;
  TermMap terms_;
};

/// Exact polynomial division: r with r*q == p, or nothing. Leading-term
/// elimination under the graded-lex order.
std::optional<MultiPoly> exact_div(const MultiPoly& p, const MultiPoly& q);

/// Change of variables z_j <- sum_i b_ij z_i on z1..zn; z0 is fixed.
/// B is n x n over the scalar field, p has ambient n+1.
MultiPoly substitute_linear(const MultiPoly& p, const MatrixK& B);

/// Partial evaluation at assignment var -> value; other variables stay
/// symbolic. Ambient count is unchanged.
MultiPoly specialize(const MultiPoly& p, const std::map<int, FieldElement>& assignment);

/// Replaces one variable by an arbitrary polynomial of the same ambient.
MultiPoly substitute_variable(const MultiPoly& p, int var, const MultiPoly& replacement);

/// Square matrix of polynomials (a linear pencil, usually).
struct PolyMatrix {
  int dim = 0;
  std::vector<MultiPoly> entries;  // row-major, dim*dim

  const MultiPoly& at(int i, int j) const { return entries[i * dim + j]; }
  MultiPoly& at(int i, int j) { return entries[i * dim + j]; }
};

PolyMatrix make_poly_matrix(int dim, int nvars, const TowerContext& ctx);

/// Exact determinant by column-subset dynamic programming (memoized
/// Laplace expansion). Dispatches to the OpenMP kernel when worker
/// threads are enabled; both paths are bit-identical.
MultiPoly det(const PolyMatrix& m);
MultiPoly det_serial(const PolyMatrix& m);
MultiPoly det_parallel(const PolyMatrix& m);

}  // namespace liespec

#endif
