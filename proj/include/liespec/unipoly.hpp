#ifndef LIESPEC_UNIPOLY_HPP
#define LIESPEC_UNIPOLY_HPP

#include <utility>
#include <vector>

#include "liespec/tower.hpp"

namespace liespec {

/// Dense univariate polynomial over the tower field; coefficient index is
/// the degree. Normalized: no trailing zero coefficients.
class UniPoly {
public:
  explicit UniPoly(TowerContext ctx = TowerContext()) : ctx_(std::move(ctx)) {}
  UniPoly(TowerContext ctx, std::vector<FieldElement> coeffs);

  static UniPoly monomial(const TowerContext& ctx, int degree,
                          const FieldElement& coeff);
  static UniPoly from_roots(const TowerContext& ctx,
                            const std::vector<FieldElement>& roots);

  const TowerContext& context() const { return ctx_; }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }  // -1 for zero
  bool is_zero() const { return coeffs_.empty(); }
  bool is_one() const;
  bool is_monic() const;
  const std::vector<FieldElement>& coeffs() const { return coeffs_; }
  FieldElement coeff(int degree) const;

  FieldElement eval(const FieldElement& x) const;

  UniPoly operator-() const;
  friend UniPoly operator+(const UniPoly& a, const UniPoly& b);
  friend UniPoly operator-(const UniPoly& a, const UniPoly& b);
  friend UniPoly operator*(const UniPoly& a, const UniPoly& b);
  friend bool operator==(const UniPoly& a, const UniPoly& b);
  friend bool operator!=(const UniPoly& a, const UniPoly& b) { return !(a == b); }

  /// Quotient and remainder; divisor must be nonzero.
  std::pair<UniPoly, UniPoly> divmod(const UniPoly& divisor) const;

  std::string str(const std::string& var = "t") const;

private:
  void normalize();

  TowerContext ctx_;
  std::vector<FieldElement> coeffs_;
};

/// Factorization over the polynomial's base field (Q, or Q(i) when the
/// coefficients are gaussian). Factors have degree <= 2; anything
/// irreducible of degree >= 3 is left in `residual` (1 if none).
struct UniFactorization {
  std::vector<std::pair<UniPoly, int>> factors;
  UniPoly residual;
};

/// Complete linear/quadratic factorization of a monic polynomial of
/// degree <= 12 over its base field. Quadratic-factor search is applied
/// while the unfactored part has degree <= 4.
UniFactorization factor_univariate(const UniPoly& p);

/// All roots of a monic polynomial inside the quadratic tower, extending
/// the context as needed. Throws UnsupportedFieldExtension when an
/// irreducible factor of degree >= 3 remains.
struct RootExtraction {
  TowerContext ctx;
  std::vector<FieldElement> roots;  // with multiplicity, canonical order
};
RootExtraction extract_roots(const UniPoly& p, const TowerContext& ctx);

}  // namespace liespec

#endif
