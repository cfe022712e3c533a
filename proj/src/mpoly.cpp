#include "liespec/mpoly.hpp"

#include <algorithm>
#include <cstdint>
#include <sstream>

#include "liespec/parallel.hpp"

namespace liespec {

int Monomial::total_degree() const {
  int d = 0;
  for (int e : exps) d += e;
  return d;
}

bool Monomial::divides(const Monomial& other) const {
  for (size_t i = 0; i < exps.size(); ++i)
    if (exps[i] > other.exps[i]) return false;
  return true;
}

Monomial Monomial::operator*(const Monomial& other) const {
  Monomial m = *this;
  for (size_t i = 0; i < exps.size(); ++i) m.exps[i] += other.exps[i];
  return m;
}

Monomial Monomial::operator/(const Monomial& other) const {
  Monomial m = *this;
  for (size_t i = 0; i < exps.size(); ++i) m.exps[i] -= other.exps[i];
  return m;
}

bool GrlexDesc::operator()(const Monomial& a, const Monomial& b) const {
  int da = a.total_degree(), db = b.total_degree();
  if (da != db) return da > db;
  for (size_t i = 0; i < a.exps.size(); ++i)
    if (a.exps[i] != b.exps[i]) return a.exps[i] > b.exps[i];
  return false;
}

MultiPoly::MultiPoly(int nvars, TowerContext ctx)
    : nvars_(nvars), ctx_(std::move(ctx)) {}

MultiPoly MultiPoly::constant(int nvars, const FieldElement& c) {
  MultiPoly p(nvars, c.context());
  p.add_term(Monomial{std::vector<int>(nvars, 0)}, c);
  return p;
}

MultiPoly MultiPoly::variable(int nvars, int index, const TowerContext& ctx) {
  if (index < 0 || index >= nvars)
    raise(ErrorCode::DimensionMismatch, "variable index out of range");
  MultiPoly p(nvars, ctx);
  Monomial m{std::vector<int>(nvars, 0)};
  m.exps[index] = 1;
  p.add_term(m, FieldElement::one(ctx));
  return p;
}

bool MultiPoly::is_one() const {
  return terms_.size() == 1 && terms_.begin()->first.total_degree() == 0 &&
         terms_.begin()->second.is_one();
}

int MultiPoly::total_degree() const {
  if (terms_.empty()) return -1;
  return terms_.begin()->first.total_degree();  // leading term has max degree
}

bool MultiPoly::is_homogeneous() const {
  if (terms_.empty()) return true;
  int d = terms_.begin()->first.total_degree();
  for (const auto& [m, c] : terms_)
    if (m.total_degree() != d) return false;
  return true;
}

FieldElement MultiPoly::coeff(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? FieldElement::zero(ctx_) : it->second;
}

void MultiPoly::add_term(const Monomial& m, const FieldElement& c) {
  if (static_cast<int>(m.exps.size()) != nvars_)
    raise(ErrorCode::DimensionMismatch, "monomial arity mismatch");
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
  if (c.context().depth() > ctx_.depth()) ctx_ = c.context();
}

MultiPoly MultiPoly::operator-() const {
  MultiPoly p(nvars_, ctx_);
  for (const auto& [m, c] : terms_) p.terms_.emplace(m, -c);
  return p;
}

MultiPoly operator+(const MultiPoly& a, const MultiPoly& b) {
  if (a.nvars_ != b.nvars_) raise(ErrorCode::DimensionMismatch, "ambient mismatch");
  MultiPoly p = a;
  if (b.ctx_.depth() > p.ctx_.depth()) p.ctx_ = b.ctx_;
  for (const auto& [m, c] : b.terms_) p.add_term(m, c);
  return p;
}

MultiPoly operator-(const MultiPoly& a, const MultiPoly& b) { return a + (-b); }

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
  if (a.nvars_ != b.nvars_) raise(ErrorCode::DimensionMismatch, "ambient mismatch");
  const TowerContext& ctx = (a.ctx_.depth() >= b.ctx_.depth()) ? a.ctx_ : b.ctx_;
  MultiPoly p(a.nvars_, ctx);
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) p.add_term(ma * mb, ca * cb);
  return p;
}

MultiPoly MultiPoly::scaled(const FieldElement& c) const {
  MultiPoly p(nvars_, ctx_);
  if (c.is_zero()) return p;
  for (const auto& [m, coeff] : terms_) p.add_term(m, coeff * c);
  return p;
}

bool operator==(const MultiPoly& a, const MultiPoly& b) {
  if (a.nvars_ != b.nvars_ || a.terms_.size() != b.terms_.size()) return false;
  auto ita = a.terms_.begin();
  auto itb = b.terms_.begin();
  for (; ita != a.terms_.end(); ++ita, ++itb) {
    if (!(ita->first == itb->first) || ita->second != itb->second) return false;
  }
  return true;
}

int MultiPoly::min_exponent(int var) const {
  if (terms_.empty()) return 0;
  int mn = -1;
  for (const auto& [m, c] : terms_) {
    if (mn < 0 || m.exps[var] < mn) mn = m.exps[var];
    if (mn == 0) break;
  }
  return mn;
}

MultiPoly MultiPoly::divided_by_power(int var, int k) const {
  MultiPoly p(nvars_, ctx_);
  for (const auto& [m, c] : terms_) {
    if (m.exps[var] < k)
      raise(ErrorCode::InternalInconsistency, "monomial division is not exact");
    Monomial q = m;
    q.exps[var] -= k;
    p.terms_.emplace(q, c);
  }
  return p;
}

std::optional<MultiPoly> exact_div(const MultiPoly& p, const MultiPoly& q) {
  if (q.is_zero()) raise(ErrorCode::DivisionByZero, "polynomial division by zero");
  if (p.nvars() != q.nvars()) raise(ErrorCode::DimensionMismatch, "ambient mismatch");
  const TowerContext& ctx = (p.context().depth() >= q.context().depth())
                                ? p.context()
                                : q.context();
  MultiPoly rem = p;
  MultiPoly quot(p.nvars(), ctx);
  const Monomial& qlead = q.terms().begin()->first;
  FieldElement qlead_inv = q.terms().begin()->second.inverse();
  while (!rem.is_zero()) {
    const auto& [rm, rc] = *rem.terms().begin();
    if (!qlead.divides(rm)) return std::nullopt;
    Monomial tm = rm / qlead;
    FieldElement tc = rc * qlead_inv;
    MultiPoly t(p.nvars(), ctx);
    t.add_term(tm, tc);
    quot = quot + t;
    rem = rem - t * q;
  }
  return quot;
}

MultiPoly substitute_linear(const MultiPoly& p, const MatrixK& B) {
  int n = p.nvars() - 1;
  if (B.rows() != n || B.cols() != n)
    raise(ErrorCode::DimensionMismatch, "change-of-variables matrix must be n x n");
  const TowerContext& ctx =
      (p.context().depth() >= B.context().depth()) ? p.context() : B.context();
  // z_j is replaced by the j-th coordinate of z'B, i.e. sum_i b_ij z_i
  std::vector<MultiPoly> forms;
  forms.reserve(n);
  for (int j = 0; j < n; ++j) {
    MultiPoly f(p.nvars(), ctx);
    Monomial m{std::vector<int>(p.nvars(), 0)};
    for (int i = 0; i < n; ++i) {
      if (B.at(i, j).is_zero()) continue;
      Monomial mi = m;
      mi.exps[i + 1] = 1;
      f.add_term(mi, B.at(i, j));
    }
    forms.push_back(std::move(f));
  }
  // memoized powers per variable
  std::vector<std::vector<MultiPoly>> powers(n);
  auto form_power = [&](int j, int e) -> const MultiPoly& {
    auto& cache = powers[j];
    if (cache.empty()) cache.push_back(MultiPoly::constant(p.nvars(), FieldElement::one(ctx)));
    while (static_cast<int>(cache.size()) <= e) cache.push_back(cache.back() * forms[j]);
    return cache[e];
  };
  MultiPoly out(p.nvars(), ctx);
  for (const auto& [m, c] : p.terms()) {
    MultiPoly term(p.nvars(), ctx);
    Monomial z0only{std::vector<int>(p.nvars(), 0)};
    z0only.exps[0] = m.exps[0];
    term.add_term(z0only, c);
    for (int j = 0; j < n; ++j)
      if (m.exps[j + 1] > 0) term = term * form_power(j, m.exps[j + 1]);
    out = out + term;
  }
  return out;
}

MultiPoly specialize(const MultiPoly& p, const std::map<int, FieldElement>& assignment) {
  for (const auto& [v, val] : assignment)
    if (v < 0 || v >= p.nvars())
      raise(ErrorCode::DimensionMismatch, "specialized variable out of range");
  MultiPoly out(p.nvars(), p.context());
  for (const auto& [m, c] : p.terms()) {
    FieldElement coeff = c;
    Monomial q = m;
    for (const auto& [v, val] : assignment) {
      for (int e = 0; e < m.exps[v]; ++e) coeff *= val;
      q.exps[v] = 0;
    }
    out.add_term(q, coeff);
  }
  return out;
}

MultiPoly substitute_variable(const MultiPoly& p, int var, const MultiPoly& replacement) {
  if (var < 0 || var >= p.nvars())
    raise(ErrorCode::DimensionMismatch, "substituted variable out of range");
  const TowerContext& ctx = (p.context().depth() >= replacement.context().depth())
                                ? p.context()
                                : replacement.context();
  std::vector<MultiPoly> powers{MultiPoly::constant(p.nvars(), FieldElement::one(ctx))};
  auto power = [&](int e) -> const MultiPoly& {
    while (static_cast<int>(powers.size()) <= e) powers.push_back(powers.back() * replacement);
    return powers[e];
  };
  MultiPoly out(p.nvars(), ctx);
  for (const auto& [m, c] : p.terms()) {
    Monomial q = m;
    int e = m.exps[var];
    q.exps[var] = 0;
    MultiPoly term(p.nvars(), ctx);
    term.add_term(q, c);
    if (e > 0) term = term * power(e);
    out = out + term;
  }
  return out;
}

std::string MultiPoly::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    std::string mono;
    for (int v = 0; v < nvars_; ++v) {
      if (m.exps[v] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += "z" + std::to_string(v);
      if (m.exps[v] > 1) mono += "^" + std::to_string(m.exps[v]);
    }
    if (c.is_rational()) {
      const Rational& r = c.rational_value();
      std::string mag = r.abs().str();
      std::string body;
      if (mono.empty())
        body = mag;
      else if (mag == "1")
        body = mono;
      else
        body = mag + "*" + mono;
      if (first) {
        out << (r.sign() < 0 ? "-" : "") << body;
        first = false;
      } else {
        out << (r.sign() < 0 ? " - " : " + ") << body;
      }
    } else {
      std::string body = "(" + c.str() + ")";
      if (!mono.empty()) body += "*" + mono;
      if (first) {
        out << body;
        first = false;
      } else {
        out << " + " << body;
      }
    }
  }
  return out.str();
}

PolyMatrix make_poly_matrix(int dim, int nvars, const TowerContext& ctx) {
  PolyMatrix m;
  m.dim = dim;
  m.entries.assign(static_cast<size_t>(dim) * dim, MultiPoly(nvars, ctx));
  return m;
}

// ---------------------------------------------------------------------------
// Determinant kernels: D[S] is the minor on rows 0..|S|-1 and column set S,
// expanded along its last row from the previous layer. Layer by layer over
// subset popcount; items within a layer are independent, which is what the
// OpenMP kernel exploits. Term order is fixed, so results are identical.

namespace {

constexpr int kMaxDetDim = 12;

struct DetPlan {
  int k = 0;
  int nvars = 0;
  TowerContext ctx;
  std::vector<std::vector<uint32_t>> layers;  // layers[m] = subsets of size m
};

DetPlan plan_det(const PolyMatrix& m) {
  if (m.dim > kMaxDetDim)
    raise(ErrorCode::DimensionLimitExceeded,
          "determinant limited to dimension " + std::to_string(kMaxDetDim));
  DetPlan plan;
  plan.k = m.dim;
  plan.nvars = m.entries.empty() ? 1 : m.entries[0].nvars();
  plan.ctx = m.entries.empty() ? TowerContext() : m.entries[0].context();
  plan.layers.assign(plan.k + 1, {});
  for (uint32_t s = 0; s < (uint32_t{1} << plan.k); ++s)
    plan.layers[__builtin_popcount(s)].push_back(s);
  return plan;
}

MultiPoly det_minor(const PolyMatrix& m, const DetPlan& plan,
                    const std::vector<MultiPoly>& prev_layer_by_mask, uint32_t s,
                    int row) {
  MultiPoly acc(plan.nvars, plan.ctx);
  int pos = 0;
  for (int j = 0; j < plan.k; ++j) {
    if (!(s & (uint32_t{1} << j))) continue;
    const MultiPoly& entry = m.at(row, j);
    if (!entry.is_zero()) {
      const MultiPoly& minor = prev_layer_by_mask[s & ~(uint32_t{1} << j)];
      MultiPoly contrib = entry * minor;
      if ((row + pos) % 2 == 0)
        acc = acc + contrib;
      else
        acc = acc - contrib;
    }
    ++pos;
  }
  return acc;
}

MultiPoly det_impl(const PolyMatrix& m, bool use_omp) {
  DetPlan plan = plan_det(m);
  if (plan.k == 0) return MultiPoly::constant(plan.nvars, FieldElement::one(plan.ctx));
  std::vector<MultiPoly> table(size_t{1} << plan.k, MultiPoly(plan.nvars, plan.ctx));
  table[0] = MultiPoly::constant(plan.nvars, FieldElement::one(plan.ctx));
  for (int level = 1; level <= plan.k; ++level) {
    const auto& layer = plan.layers[level];
    int row = level - 1;
    if (use_omp && layer.size() >= 16) {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(parallel::max_threads())
#endif
      for (long idx = 0; idx < static_cast<long>(layer.size()); ++idx) {
        uint32_t s = layer[idx];
        table[s] = det_minor(m, plan, table, s, row);
      }
    } else {
      for (uint32_t s : layer) table[s] = det_minor(m, plan, table, s, row);
    }
  }
  return table[(uint32_t{1} << plan.k) - 1];
}

}  // namespace

MultiPoly det_serial(const PolyMatrix& m) { return det_impl(m, false); }

MultiPoly det_parallel(const PolyMatrix& m) { return det_impl(m, true); }

MultiPoly det(const PolyMatrix& m) {
  return parallel::enabled() ? det_parallel(m) : det_serial(m);
}

}  // namespace liespec
