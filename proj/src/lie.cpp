#include "liespec/lie.hpp"

#include <algorithm>

namespace liespec {

namespace {

std::vector<FieldElement> zero_vec(int n, const TowerContext& ctx) {
  return std::vector<FieldElement>(n, FieldElement::zero(ctx));
}

std::vector<FieldElement> add_vec(const std::vector<FieldElement>& a,
                                  const std::vector<FieldElement>& b) {
  std::vector<FieldElement> out = a;
  for (size_t i = 0; i < out.size(); ++i) out[i] += b[i];
  return out;
}

bool vec_zero(const std::vector<FieldElement>& a) {
  return std::all_of(a.begin(), a.end(),
                     [](const FieldElement& e) { return e.is_zero(); });
}

}  // namespace

LieAlgebra::LieAlgebra(int dim, std::vector<std::string> labels, TowerContext ctx)
    : n_(dim), labels_(std::move(labels)), ctx_(std::move(ctx)) {
  if (n_ < 1) raise(ErrorCode::InvalidArgument, "algebra dimension must be >= 1");
  if (labels_.empty())
    for (int i = 1; i <= n_; ++i) labels_.push_back("x" + std::to_string(i));
  if (static_cast<int>(labels_.size()) != n_)
    raise(ErrorCode::DimensionMismatch, "label count does not match dimension");
  table_.assign(static_cast<size_t>(n_) * n_, {});
}

LieAlgebra::LieAlgebra(int dim, TowerContext ctx)
    : LieAlgebra(dim, {}, std::move(ctx)) {}

void LieAlgebra::set_bracket(int i, int j, const std::vector<FieldElement>& rhs) {
  if (i < 0 || j < 0 || i >= n_ || j >= n_)
    raise(ErrorCode::InvalidArgument, "bracket index out of range");
  if (i == j) raise(ErrorCode::InvalidArgument, "bracket of a basis vector with itself");
  if (static_cast<int>(rhs.size()) != n_)
    raise(ErrorCode::DimensionMismatch, "bracket value has wrong length");
  if (i < j) {
    table_[pair_index(i, j)] = rhs;
  } else {
    std::vector<FieldElement> neg;
    neg.reserve(rhs.size());
    for (const auto& c : rhs) neg.push_back(-c);
    table_[pair_index(j, i)] = neg;
  }
}

std::vector<FieldElement> LieAlgebra::bracket_basis(int i, int j) const {
  if (i == j) return zero_vec(n_, ctx_);
  bool flip = i > j;
  const auto& stored = table_[pair_index(std::min(i, j), std::max(i, j))];
  if (stored.empty()) return zero_vec(n_, ctx_);
  if (!flip) return stored;
  std::vector<FieldElement> neg;
  neg.reserve(stored.size());
  for (const auto& c : stored) neg.push_back(-c);
  return neg;
}

std::vector<FieldElement> LieAlgebra::bracket(const std::vector<FieldElement>& u,
                                              const std::vector<FieldElement>& v) const {
  std::vector<FieldElement> out = zero_vec(n_, ctx_);
  for (int i = 0; i < n_; ++i) {
    if (u[i].is_zero()) continue;
    for (int j = 0; j < n_; ++j) {
      if (v[j].is_zero() || i == j) continue;
      FieldElement c = u[i] * v[j];
      auto b = bracket_basis(i, j);
      for (int k = 0; k < n_; ++k)
        if (!b[k].is_zero()) out[k] += c * b[k];
    }
  }
  return out;
}

LieAlgebra LieAlgebra::with_context(const TowerContext& ctx) const {
  LieAlgebra out(n_, labels_, ctx);
  for (int i = 0; i < n_; ++i)
    for (int j = i + 1; j < n_; ++j) {
      auto b = bracket_basis(i, j);
      if (vec_zero(b)) continue;
      for (auto& c : b) c = c.lifted_to(ctx);
      out.set_bracket(i, j, b);
    }
  return out;
}

std::vector<JacobiViolation> validate(const LieAlgebra& L) {
  std::vector<JacobiViolation> out;
  int n = L.dim();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k) {
        // [x_i,[x_j,x_k]] + [x_j,[x_k,x_i]] + [x_k,[x_i,x_j]]
        std::vector<FieldElement> ei = zero_vec(n, L.context());
        std::vector<FieldElement> ej = zero_vec(n, L.context());
        std::vector<FieldElement> ek = zero_vec(n, L.context());
        ei[i] = FieldElement::one(L.context());
        ej[j] = FieldElement::one(L.context());
        ek[k] = FieldElement::one(L.context());
        auto sum = add_vec(add_vec(L.bracket(ei, L.bracket_basis(j, k)),
                                   L.bracket(ej, L.bracket_basis(k, i))),
                           L.bracket(ek, L.bracket_basis(i, j)));
        if (!vec_zero(sum)) out.push_back({i, j, k, sum});
      }
  return out;
}

std::vector<MatrixK> adjoint(const LieAlgebra& L) {
  int n = L.dim();
  std::vector<MatrixK> ts;
  ts.reserve(n);
  for (int i = 0; i < n; ++i) {
    MatrixK t(n, n, L.context());
    for (int j = 0; j < n; ++j) {
      auto col = L.bracket_basis(i, j);
      for (int k = 0; k < n; ++k) t.at(k, j) = col[k];
    }
    ts.push_back(std::move(t));
  }
  return ts;
}

MatrixK ad_vector(const LieAlgebra& L, const std::vector<FieldElement>& v) {
  int n = L.dim();
  MatrixK t(n, n, L.context());
  for (int j = 0; j < n; ++j) {
    std::vector<FieldElement> ej = zero_vec(n, L.context());
    ej[j] = FieldElement::one(L.context());
    auto col = L.bracket(v, ej);
    for (int k = 0; k < n; ++k) t.at(k, j) = col[k];
  }
  return t;
}

SeriesResult series(const LieAlgebra& L, SeriesKind kind) {
  int n = L.dim();
  const TowerContext& ctx = L.context();
  SeriesResult out;

  std::vector<std::vector<FieldElement>> full;
  for (int i = 0; i < n; ++i) {
    auto v = zero_vec(n, ctx);
    v[i] = FieldElement::one(ctx);
    full.push_back(v);
  }
  std::vector<std::vector<FieldElement>> current = full;
  out.dims.push_back(n);
  out.bases.push_back(current);

  while (true) {
    const auto& left = (kind == SeriesKind::Derived) ? current : full;
    std::vector<std::vector<FieldElement>> span;
    for (const auto& u : left)
      for (const auto& v : current) {
        auto b = L.bracket(u, v);
        if (!vec_zero(b)) span.push_back(std::move(b));
      }
    RowReduction rr = row_reduce_rows(ctx, span);
    int d = rr.rank;
    out.dims.push_back(d);
    out.bases.push_back(rr.rref);
    if (d == 0) {
      out.reaches_zero = true;
      break;
    }
    if (d == out.dims[out.dims.size() - 2]) break;  // stabilized above zero
    current = rr.rref;
  }
  return out;
}

bool is_solvable(const LieAlgebra& L) {
  return series(L, SeriesKind::Derived).reaches_zero;
}

bool is_nilpotent(const LieAlgebra& L) {
  return series(L, SeriesKind::LowerCentral).reaches_zero;
}

LieAlgebra direct_sum(const LieAlgebra& a, const LieAlgebra& b) {
  std::vector<MatrixK> tau(a.dim(), MatrixK(b.dim(), b.dim(), b.context()));
  return semidirect_sum(a, b, tau);
}

LieAlgebra semidirect_sum(const LieAlgebra& a, const LieAlgebra& b,
                          const std::vector<MatrixK>& tau) {
  int k = a.dim(), m = b.dim();
  if (static_cast<int>(tau.size()) != k)
    raise(ErrorCode::DimensionMismatch, "tau needs one matrix per basis vector of the subalgebra");
  for (const MatrixK& t : tau)
    if (t.rows() != m || t.cols() != m)
      raise(ErrorCode::DimensionMismatch, "tau matrices must act on the ideal");
  if (!a.context().compatible_with(b.context()))
    raise(ErrorCode::IncompatibleTower, "summands live in incompatible towers");
  const TowerContext& ctx =
      (a.context().depth() >= b.context().depth()) ? a.context() : b.context();

  // each tau_i must be a derivation of b
  for (int i = 0; i < k; ++i) {
    for (int p = 0; p < m; ++p)
      for (int q = p + 1; q < m; ++q) {
        auto lhs = zero_vec(m, ctx);
        auto br = b.bracket_basis(p, q);
        for (int r = 0; r < m; ++r) {
          if (br[r].is_zero()) continue;
          for (int s = 0; s < m; ++s) lhs[s] += br[r] * tau[i].at(s, r);
        }
        auto tp = tau[i].col(p);
        auto tq = tau[i].col(q);
        std::vector<FieldElement> ep = zero_vec(m, ctx), eq = zero_vec(m, ctx);
        ep[p] = FieldElement::one(ctx);
        eq[q] = FieldElement::one(ctx);
        auto rhs = add_vec(b.bracket(tp, eq), b.bracket(ep, tq));
        for (int s = 0; s < m; ++s)
          if (lhs[s] != rhs[s])
            raise(ErrorCode::NotADerivation,
                  "tau(" + std::to_string(i + 1) + ") is not a derivation of the ideal");
      }
  }
  // tau must respect the brackets of a
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j) {
      auto c = a.bracket_basis(i, j);
      MatrixK lhs(m, m, ctx);
      for (int r = 0; r < k; ++r) {
        if (c[r].is_zero()) continue;
        lhs = lhs + tau[r].scaled(c[r]);
      }
      MatrixK rhs = tau[i] * tau[j] - tau[j] * tau[i];
      if (lhs != rhs)
        raise(ErrorCode::NotAHomomorphism,
              "tau does not respect the bracket of generators " + std::to_string(i + 1) +
                  " and " + std::to_string(j + 1));
    }

  int n = k + m;
  std::vector<std::string> labels = a.labels();
  for (const auto& l : b.labels()) labels.push_back(l);
  LieAlgebra out(n, labels, ctx);
  // subalgebra brackets
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j) {
      auto c = a.bracket_basis(i, j);
      std::vector<FieldElement> rhs = zero_vec(n, ctx);
      for (int r = 0; r < k; ++r) rhs[r] = c[r];
      if (!vec_zero(rhs)) out.set_bracket(i, j, rhs);
    }
  // action brackets [x_i, y_b] = tau_i(y_b)
  for (int i = 0; i < k; ++i)
    for (int bcol = 0; bcol < m; ++bcol) {
      std::vector<FieldElement> rhs = zero_vec(n, ctx);
      bool nz = false;
      for (int r = 0; r < m; ++r) {
        rhs[k + r] = tau[i].at(r, bcol);
        nz = nz || !rhs[k + r].is_zero();
      }
      if (nz) out.set_bracket(i, k + bcol, rhs);
    }
  // ideal brackets
  for (int p = 0; p < m; ++p)
    for (int q = p + 1; q < m; ++q) {
      auto c = b.bracket_basis(p, q);
      std::vector<FieldElement> rhs = zero_vec(n, ctx);
      bool nz = false;
      for (int r = 0; r < m; ++r) {
        rhs[k + r] = c[r];
        nz = nz || !c[r].is_zero();
      }
      if (nz) out.set_bracket(k + p, k + q, rhs);
    }
  return out;
}

LieAlgebra change_basis(const LieAlgebra& L, const MatrixK& B) {
  int n = L.dim();
  if (B.rows() != n || B.cols() != n)
    raise(ErrorCode::DimensionMismatch, "basis-change matrix must be n x n");
  const TowerContext& ctx =
      (L.context().depth() >= B.context().depth()) ? L.context() : B.context();
  auto bt_inv = inverse(B.transpose());
  if (!bt_inv) raise(ErrorCode::SingularMatrix, "basis-change matrix is singular");
  LieAlgebra out(n, L.labels(), ctx);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      // [x^_i, x^_j] in old coordinates, then back through (B^t)^{-1}
      auto old_coords = L.bracket(B.row(i), B.row(j));
      std::vector<FieldElement> w = zero_vec(n, ctx);
      for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) {
          if (old_coords[c].is_zero()) continue;
          w[r] += bt_inv->at(r, c) * old_coords[c];
        }
      if (!vec_zero(w)) out.set_bracket(i, j, w);
    }
  return out;
}

bool is_automorphism(const LieAlgebra& L, const MatrixK& B) {
  int n = L.dim();
  if (B.rows() != n || B.cols() != n) return false;
  if (det(B).is_zero()) return false;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      auto lhs = L.bracket(B.row(i), B.row(j));
      auto c = L.bracket_basis(i, j);
      auto rhs = zero_vec(n, L.context());
      for (int k = 0; k < n; ++k) {
        if (c[k].is_zero()) continue;
        for (int r = 0; r < n; ++r) rhs[r] += c[k] * B.at(k, r);
      }
      for (int r = 0; r < n; ++r)
        if (lhs[r] != rhs[r]) return false;
    }
  return true;
}

bool is_unitary(const MatrixK& B) {
  if (B.rows() != B.cols()) return false;
  return B.conj_transpose() * B == MatrixK::identity(B.rows(), B.context());
}

std::vector<FieldElement> trace_vector(const LieAlgebra& L) {
  std::vector<FieldElement> out;
  auto ts = adjoint(L);
  for (const MatrixK& t : ts) {
    FieldElement tr = FieldElement::zero(L.context());
    for (int i = 0; i < t.rows(); ++i) tr += t.at(i, i);
    out.push_back(tr);
  }
  return out;
}

}  // namespace liespec
