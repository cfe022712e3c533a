#ifndef LIESPEC_LIE_HPP
#define LIESPEC_LIE_HPP

#include <string>
#include <vector>

#include "liespec/matrix.hpp"

namespace liespec {

/// Finite-dimensional Lie algebra given by structure constants on a
/// fixed basis. Only brackets [x_i, x_j] with i < j are stored;
/// antisymmetry holds by construction. Indices are 0-based internally.
class LieAlgebra {
public:
  LieAlgebra(int dim, std::vector<std::string> labels, TowerContext ctx);
  LieAlgebra(int dim, TowerContext ctx);

  int dim() const { return n_; }
  const TowerContext& context() const { return ctx_; }
  const std::vector<std::string>& labels() const { return labels_; }

  /// Sets [x_i, x_j] = rhs (coefficient vector of length dim), i != j.
  /// A declaration with i > j is stored as the negated (j, i) bracket.
  void set_bracket(int i, int j, const std::vector<FieldElement>& rhs);

  /// Coordinates of [x_i, x_j] for any i, j.
  std::vector<FieldElement> bracket_basis(int i, int j) const;

  /// Bilinear extension to coordinate vectors.
  std::vector<FieldElement> bracket(const std::vector<FieldElement>& u,
                                    const std::vector<FieldElement>& v) const;

  /// Same algebra with all scalars lifted into a deeper compatible tower.
  LieAlgebra with_context(const TowerContext& ctx) const;

private:
  int pair_index(int i, int j) const { return i * n_ + j; }

  int n_;
  std::vector<std::string> labels_;
  TowerContext ctx_;
  std::vector<std::vector<FieldElement>> table_;  // (i,j) with i<j
};

struct JacobiViolation {
  int i, j, k;                         // offending triple, 0-based
  std::vector<FieldElement> residual;  // nonzero Jacobi sum coordinates
};

/// Empty result means the structure constants define a Lie algebra.
std::vector<JacobiViolation> validate(const LieAlgebra& L);

/// Adjoint matrices T_i with rows indexed by k and columns by j:
/// column j of T_i holds the coordinates of [x_i, x_j].
std::vector<MatrixK> adjoint(const LieAlgebra& L);

/// ad v for an arbitrary coordinate vector v.
MatrixK ad_vector(const LieAlgebra& L, const std::vector<FieldElement>& v);

enum class SeriesKind { Derived, LowerCentral };

struct SeriesResult {
  std::vector<int> dims;  // n, then each term until 0 or stabilization
  std::vector<std::vector<std::vector<FieldElement>>> bases;  // RREF per term
  bool reaches_zero = false;
};

SeriesResult series(const LieAlgebra& L, SeriesKind kind);
bool is_solvable(const LieAlgebra& L);
bool is_nilpotent(const LieAlgebra& L);

LieAlgebra direct_sum(const LieAlgebra& a, const LieAlgebra& b);

/// Semidirect sum with tau giving the action of each basis vector of `a`
/// on `b`. Each tau[i] must be a derivation of `b` and tau must respect
/// the brackets of `a`; both conditions are checked.
LieAlgebra semidirect_sum(const LieAlgebra& a, const LieAlgebra& b,
                          const std::vector<MatrixK>& tau);

/// Structure constants in the basis x^_i = sum_j B[i][j] x_j.
LieAlgebra change_basis(const LieAlgebra& L, const MatrixK& B);

/// Does phi(x_i) = sum_j B[i][j] x_j preserve every bracket (and is it
/// invertible)?
bool is_automorphism(const LieAlgebra& L, const MatrixK& B);

/// conj-transpose(B) * B == I under tower conjugation.
bool is_unitary(const MatrixK& B);

/// (tr T_1, ..., tr T_n) as a column.
std::vector<FieldElement> trace_vector(const LieAlgebra& L);

}  // namespace liespec

#endif
