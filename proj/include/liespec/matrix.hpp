#ifndef LIESPEC_MATRIX_HPP
#define LIESPEC_MATRIX_HPP

#include <optional>
#include <vector>

#include "liespec/tower.hpp"

namespace liespec {

/// Dense matrix over the exact tower field.
class MatrixK {
public:
  MatrixK() : rows_(0), cols_(0) {}
  MatrixK(int rows, int cols, TowerContext ctx);
  static MatrixK identity(int n, const TowerContext& ctx);
  static MatrixK from_rows(const TowerContext& ctx,
                           const std::vector<std::vector<FieldElement>>& rows);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  const TowerContext& context() const { return ctx_; }

  const FieldElement& at(int i, int j) const { return entries_[i * cols_ + j]; }
  FieldElement& at(int i, int j) { return entries_[i * cols_ + j]; }

  std::vector<FieldElement> row(int i) const;
  std::vector<FieldElement> col(int j) const;

  MatrixK transpose() const;
  MatrixK conj_transpose() const;
  bool is_zero() const;

  MatrixK operator-() const;
  friend MatrixK operator+(const MatrixK& a, const MatrixK& b);
  friend MatrixK operator-(const MatrixK& a, const MatrixK& b);
  friend MatrixK operator*(const MatrixK& a, const MatrixK& b);
  MatrixK scaled(const FieldElement& c) const;
  friend bool operator==(const MatrixK& a, const MatrixK& b);
  friend bool operator!=(const MatrixK& a, const MatrixK& b) { return !(a == b); }

  /// this^p for p >= 0 (square matrices).
  MatrixK pow(int p) const;

private:
  int rows_, cols_;
  TowerContext ctx_;
  std::vector<FieldElement> entries_;
};

struct RowReduction {
  std::vector<std::vector<FieldElement>> rref;  // nonzero rows, canonical RREF
  std::vector<int> pivots;
  int rank = 0;
};

/// Deterministic reduced row echelon form (first-nonzero pivot choice).
RowReduction row_reduce(const MatrixK& m);
RowReduction row_reduce_rows(const TowerContext& ctx,
                             const std::vector<std::vector<FieldElement>>& rows);

int rank(const MatrixK& m);
FieldElement det(const MatrixK& m);
std::optional<MatrixK> inverse(const MatrixK& m);

/// Canonical basis of the right kernel {v : m v = 0}.
std::vector<std::vector<FieldElement>> kernel_basis(const MatrixK& m);

/// Membership of v in the row span of a canonical RREF.
bool in_row_span(const RowReduction& rr, const std::vector<FieldElement>& v,
                 const TowerContext& ctx);

}  // namespace liespec

#endif
