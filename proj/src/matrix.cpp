#include "liespec/matrix.hpp"

#include <algorithm>

namespace liespec {

MatrixK::MatrixK(int rows, int cols, TowerContext ctx)
    : rows_(rows), cols_(cols), ctx_(std::move(ctx)),
      entries_(static_cast<size_t>(rows) * cols, FieldElement::zero(ctx_)) {}

MatrixK MatrixK::identity(int n, const TowerContext& ctx) {
  MatrixK m(n, n, ctx);
  for (int i = 0; i < n; ++i) m.at(i, i) = FieldElement::one(ctx);
  return m;
}

MatrixK MatrixK::from_rows(const TowerContext& ctx,
                           const std::vector<std::vector<FieldElement>>& rows) {
  int r = static_cast<int>(rows.size());
  int c = r == 0 ? 0 : static_cast<int>(rows[0].size());
  MatrixK m(r, c, ctx);
  for (int i = 0; i < r; ++i) {
    if (static_cast<int>(rows[i].size()) != c)
      raise(ErrorCode::DimensionMismatch, "ragged rows");
    for (int j = 0; j < c; ++j) m.at(i, j) = rows[i][j];
  }
  return m;
}

std::vector<FieldElement> MatrixK::row(int i) const {
  std::vector<FieldElement> out;
  out.reserve(cols_);
  for (int j = 0; j < cols_; ++j) out.push_back(at(i, j));
  return out;
}

std::vector<FieldElement> MatrixK::col(int j) const {
  std::vector<FieldElement> out;
  out.reserve(rows_);
  for (int i = 0; i < rows_; ++i) out.push_back(at(i, j));
  return out;
}

MatrixK MatrixK::transpose() const {
  MatrixK m(cols_, rows_, ctx_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) m.at(j, i) = at(i, j);
  return m;
}

MatrixK MatrixK::conj_transpose() const {
  MatrixK m(cols_, rows_, ctx_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) m.at(j, i) = at(i, j).conjugate();
  return m;
}

bool MatrixK::is_zero() const {
  return std::all_of(entries_.begin(), entries_.end(),
                     [](const FieldElement& e) { return e.is_zero(); });
}

MatrixK MatrixK::operator-() const {
  MatrixK m = *this;
  for (auto& e : m.entries_) e = -e;
  return m;
}

MatrixK operator+(const MatrixK& a, const MatrixK& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
    raise(ErrorCode::DimensionMismatch, "matrix addition shape mismatch");
  MatrixK m = a;
  for (size_t i = 0; i < m.entries_.size(); ++i) m.entries_[i] += b.entries_[i];
  return m;
}

MatrixK operator-(const MatrixK& a, const MatrixK& b) { return a + (-b); }

MatrixK operator*(const MatrixK& a, const MatrixK& b) {
  if (a.cols_ != b.rows_)
    raise(ErrorCode::DimensionMismatch, "matrix product shape mismatch");
  const TowerContext& ctx = (a.ctx_.depth() >= b.ctx_.depth()) ? a.ctx_ : b.ctx_;
  MatrixK m(a.rows_, b.cols_, ctx);
  for (int i = 0; i < a.rows_; ++i)
    for (int k = 0; k < a.cols_; ++k) {
      const FieldElement& aik = a.at(i, k);
      if (aik.is_zero()) continue;
      for (int j = 0; j < b.cols_; ++j) {
        if (b.at(k, j).is_zero()) continue;
        m.at(i, j) += aik * b.at(k, j);
      }
    }
  return m;
}

MatrixK MatrixK::scaled(const FieldElement& c) const {
  MatrixK m = *this;
  for (auto& e : m.entries_) e *= c;
  return m;
}

bool operator==(const MatrixK& a, const MatrixK& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
  for (size_t i = 0; i < a.entries_.size(); ++i)
    if (a.entries_[i] != b.entries_[i]) return false;
  return true;
}

MatrixK MatrixK::pow(int p) const {
  if (rows_ != cols_) raise(ErrorCode::DimensionMismatch, "power of non-square matrix");
  MatrixK acc = identity(rows_, ctx_);
  for (int k = 0; k < p; ++k) acc = acc * (*this);
  return acc;
}

RowReduction row_reduce_rows(const TowerContext& ctx,
                             const std::vector<std::vector<FieldElement>>& rows_in) {
  std::vector<std::vector<FieldElement>> rows = rows_in;
  size_t cols = rows.empty() ? 0 : rows[0].size();
  RowReduction out;
  size_t pivot_row = 0;
  for (size_t col = 0; col < cols && pivot_row < rows.size(); ++col) {
    size_t sel = pivot_row;
    while (sel < rows.size() && rows[sel][col].is_zero()) ++sel;
    if (sel == rows.size()) continue;
    std::swap(rows[pivot_row], rows[sel]);
    FieldElement inv = rows[pivot_row][col].inverse();
    for (size_t j = col; j < cols; ++j) rows[pivot_row][j] *= inv;
    for (size_t r = 0; r < rows.size(); ++r) {
      if (r == pivot_row || rows[r][col].is_zero()) continue;
      FieldElement f = rows[r][col];
      for (size_t j = col; j < cols; ++j) rows[r][j] -= f * rows[pivot_row][j];
    }
    out.pivots.push_back(static_cast<int>(col));
    ++pivot_row;
  }
  out.rank = static_cast<int>(pivot_row);
  for (size_t r = 0; r < pivot_row; ++r) out.rref.push_back(rows[r]);
  (void)ctx;
  return out;
}

RowReduction row_reduce(const MatrixK& m) {
  std::vector<std::vector<FieldElement>> rows;
  rows.reserve(m.rows());
  for (int i = 0; i < m.rows(); ++i) rows.push_back(m.row(i));
  return row_reduce_rows(m.context(), rows);
}

int rank(const MatrixK& m) { return row_reduce(m).rank; }

FieldElement det(const MatrixK& m) {
  if (m.rows() != m.cols())
    raise(ErrorCode::DimensionMismatch, "determinant of non-square matrix");
  int n = m.rows();
  const TowerContext& ctx = m.context();
  std::vector<std::vector<FieldElement>> a;
  for (int i = 0; i < n; ++i) a.push_back(m.row(i));
  FieldElement result = FieldElement::one(ctx);
  for (int col = 0; col < n; ++col) {
    int sel = col;
    while (sel < n && a[sel][col].is_zero()) ++sel;
    if (sel == n) return FieldElement::zero(ctx);
    if (sel != col) {
      std::swap(a[sel], a[col]);
      result = -result;
    }
    result *= a[col][col];
    FieldElement inv = a[col][col].inverse();
    for (int r = col + 1; r < n; ++r) {
      if (a[r][col].is_zero()) continue;
      FieldElement f = a[r][col] * inv;
      for (int j = col; j < n; ++j) a[r][j] -= f * a[col][j];
    }
  }
  return result;
}

std::optional<MatrixK> inverse(const MatrixK& m) {
  if (m.rows() != m.cols())
    raise(ErrorCode::DimensionMismatch, "inverse of non-square matrix");
  int n = m.rows();
  const TowerContext& ctx = m.context();
  std::vector<std::vector<FieldElement>> a;
  for (int i = 0; i < n; ++i) {
    auto row = m.row(i);
    auto id = MatrixK::identity(n, ctx).row(i);
    row.insert(row.end(), id.begin(), id.end());
    a.push_back(std::move(row));
  }
  RowReduction rr = row_reduce_rows(ctx, a);
  if (rr.rank < n) return std::nullopt;
  for (int i = 0; i < n; ++i)
    if (rr.pivots[i] != i) return std::nullopt;
  MatrixK inv(n, n, ctx);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) inv.at(i, j) = rr.rref[i][n + j];
  return inv;
}

std::vector<std::vector<FieldElement>> kernel_basis(const MatrixK& m) {
  RowReduction rr = row_reduce(m);
  const TowerContext& ctx = m.context();
  int n = m.cols();
  std::vector<bool> is_pivot(n, false);
  for (int p : rr.pivots) is_pivot[p] = true;
  std::vector<std::vector<FieldElement>> basis;
  for (int free = 0; free < n; ++free) {
    if (is_pivot[free]) continue;
    std::vector<FieldElement> v(n, FieldElement::zero(ctx));
    v[free] = FieldElement::one(ctx);
    for (size_t r = 0; r < rr.rref.size(); ++r) v[rr.pivots[r]] = -rr.rref[r][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

bool in_row_span(const RowReduction& rr, const std::vector<FieldElement>& v,
                 const TowerContext& ctx) {
  std::vector<FieldElement> w = v;
  for (size_t r = 0; r < rr.rref.size(); ++r) {
    int p = rr.pivots[r];
    if (w[p].is_zero()) continue;
    FieldElement f = w[p];
    for (size_t j = 0; j < w.size(); ++j) w[j] -= f * rr.rref[r][j];
  }
  (void)ctx;
  return std::all_of(w.begin(), w.end(),
                     [](const FieldElement& e) { return e.is_zero(); });
}

}  // namespace liespec
