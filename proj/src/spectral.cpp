#include "liespec/spectral.hpp"

#include <algorithm>

namespace liespec {

namespace {

CharPoly split_z0(MultiPoly q, bool require_z0) {
  CharPoly cp;
  int n = q.total_degree();
  if (!q.is_homogeneous())
    raise(ErrorCode::InternalInconsistency, "characteristic polynomial is not homogeneous");
  Monomial lead{std::vector<int>(q.nvars(), 0)};
  lead.exps[0] = n;
  if (!q.coeff(lead).is_one())
    raise(ErrorCode::InternalInconsistency, "characteristic polynomial is not monic in z0");
  int k = q.min_exponent(0);
  if (require_z0 && k < 1)
    raise(ErrorCode::InternalInconsistency, "adjoint characteristic polynomial lost its z0 factor");
  cp.z0_multiplicity = k;
  cp.reduced = q.divided_by_power(0, k);
  cp.Q = std::move(q);
  return cp;
}

MultiPoly pencil_poly(const std::vector<MatrixK>& mats, const TowerContext& ctx) {
  int m = static_cast<int>(mats.size());
  if (m == 0) raise(ErrorCode::InvalidArgument, "empty pencil");
  int k = mats[0].rows();
  for (const MatrixK& t : mats)
    if (t.rows() != k || t.cols() != k)
      raise(ErrorCode::DimensionMismatch, "pencil matrices must be square of equal size");
  int nvars = m + 1;
  PolyMatrix pm = make_poly_matrix(k, nvars, ctx);
  for (int r = 0; r < k; ++r)
    for (int c = 0; c < k; ++c) {
      MultiPoly entry(nvars, ctx);
      if (r == c) {
        Monomial z0{std::vector<int>(nvars, 0)};
        z0.exps[0] = 1;
        entry.add_term(z0, FieldElement::one(ctx));
      }
      for (int i = 0; i < m; ++i) {
        if (mats[i].at(r, c).is_zero()) continue;
        Monomial zi{std::vector<int>(nvars, 0)};
        zi.exps[i + 1] = 1;
        entry.add_term(zi, mats[i].at(r, c));
      }
      pm.at(r, c) = std::move(entry);
    }
  return det(pm);
}

}  // namespace

CharPoly char_poly(const LieAlgebra& L) {
  auto ts = adjoint(L);
  MultiPoly q = pencil_poly(ts, L.context());
  return split_z0(std::move(q), /*require_z0=*/true);
}

CharPoly char_poly_pencil(const std::vector<MatrixK>& mats) {
  TowerContext ctx = mats.empty() ? TowerContext() : mats[0].context();
  for (const MatrixK& t : mats)
    if (t.context().depth() > ctx.depth()) ctx = t.context();
  MultiPoly q = pencil_poly(mats, ctx);
  return split_z0(std::move(q), /*require_z0=*/false);
}

UniPoly char_poly_univariate(const MatrixK& T) {
  if (T.rows() != T.cols())
    raise(ErrorCode::DimensionMismatch, "characteristic polynomial of non-square matrix");
  int n = T.rows();
  const TowerContext& ctx = T.context();
  PolyMatrix pm = make_poly_matrix(n, 1, ctx);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) {
      MultiPoly entry(1, ctx);
      if (r == c) entry.add_term(Monomial{{1}}, FieldElement::one(ctx));
      if (!T.at(r, c).is_zero()) entry.add_term(Monomial{{0}}, -T.at(r, c));
      pm.at(r, c) = std::move(entry);
    }
  MultiPoly d = det(pm);
  std::vector<FieldElement> coeffs(n + 1, FieldElement::zero(ctx));
  for (const auto& [m, c] : d.terms()) coeffs[m.exps[0]] = c;
  return UniPoly(ctx, std::move(coeffs));
}

std::vector<FieldElement> eigen_multiset(const MatrixK& T, TowerContext& ctx) {
  UniPoly p = char_poly_univariate(T);
  RootExtraction ex = extract_roots(p, ctx);
  ctx = ex.ctx;
  return ex.roots;
}

namespace {

bool factor_coeffs_less(const std::vector<FieldElement>& a,
                        const std::vector<FieldElement>& b) {
  for (size_t i = 1; i < a.size(); ++i) {
    if (a[i] == b[i]) continue;
    return canonical_less(a[i], b[i]);
  }
  return false;
}

/// One full candidate vector dividing `residual`, or none; candidates are
/// scanned in canonical order so the result is deterministic.
std::optional<std::vector<FieldElement>> dfs_find_factor(
    const MultiPoly& residual, const std::vector<std::vector<FieldElement>>& cands,
    const TowerContext& ctx) {
  int n = static_cast<int>(cands.size());
  int nvars = residual.nvars();
  // prefix restrictions R_m = residual with z_{m+1}..z_n set to 0
  std::vector<MultiPoly> restricted(n + 1, MultiPoly(nvars, ctx));
  restricted[n] = residual;
  for (int m = n - 1; m >= 0; --m)
    restricted[m] = specialize(restricted[m + 1], {{m + 1, FieldElement::zero(ctx)}});

  std::vector<FieldElement> lambda(n, FieldElement::zero(ctx));
  // linear form -sum_{i<=m} lambda_i z_i built incrementally per depth
  std::vector<MultiPoly> neg_form(n + 1, MultiPoly(nvars, ctx));

  std::function<bool(int)> walk = [&](int depth) -> bool {
    if (depth == n) return true;
    for (const FieldElement& cand : cands[depth]) {
      MultiPoly form = neg_form[depth];
      if (!cand.is_zero()) {
        MultiPoly zi(nvars, ctx);
        Monomial m{std::vector<int>(nvars, 0)};
        m.exps[depth + 1] = 1;
        zi.add_term(m, -cand);
        form = form + zi;
      }
      // prune: z0 + sum_{i<=depth+1} l_i z_i must divide the restriction
      if (!substitute_variable(restricted[depth + 1], 0, form).is_zero()) continue;
      lambda[depth] = cand;
      neg_form[depth + 1] = form;
      if (walk(depth + 1)) return true;
    }
    return false;
  };
  if (walk(0)) return lambda;
  return std::nullopt;
}

}  // namespace

LinearFactorization linear_factorize(const CharPoly& cp,
                                     const std::vector<MatrixK>& pencil) {
  int n = static_cast<int>(pencil.size());
  LinearFactorization out;
  out.ctx = cp.Q.context();
  if (cp.z0_multiplicity > 0) {
    LinearFactor z0{std::vector<FieldElement>(n + 1, FieldElement::zero(out.ctx)),
                    cp.z0_multiplicity};
    z0.coeffs[0] = FieldElement::one(out.ctx);
    out.factors.push_back(std::move(z0));
  }
  out.residual = cp.reduced;
  if (out.residual.is_one()) return out;

  // eigenvalue multisets per generator, extending the tower as needed
  for (const MatrixK& t : pencil) out.spectra.push_back(eigen_multiset(t, out.ctx));

  std::vector<std::vector<FieldElement>> cands;
  for (auto& spec : out.spectra) {
    std::vector<FieldElement> distinct;
    for (auto& v : spec) {
      FieldElement lifted = v.lifted_to(out.ctx);
      if (std::find(distinct.begin(), distinct.end(), lifted) == distinct.end())
        distinct.push_back(lifted);
    }
    std::sort(distinct.begin(), distinct.end(),
              [](const FieldElement& a, const FieldElement& b) { return canonical_less(a, b); });
    cands.push_back(std::move(distinct));
  }

  while (!out.residual.is_one() && out.residual.total_degree() > 0) {
    auto lambda = dfs_find_factor(out.residual, cands, out.ctx);
    if (!lambda) break;
    MultiPoly factor(out.residual.nvars(), out.ctx);
    Monomial z0{std::vector<int>(out.residual.nvars(), 0)};
    z0.exps[0] = 1;
    factor.add_term(z0, FieldElement::one(out.ctx));
    for (int i = 0; i < n; ++i) {
      if ((*lambda)[i].is_zero()) continue;
      Monomial zi{std::vector<int>(out.residual.nvars(), 0)};
      zi.exps[i + 1] = 1;
      factor.add_term(zi, (*lambda)[i]);
    }
    int mult = 0;
    while (auto q = exact_div(out.residual, factor)) {
      out.residual = *q;
      ++mult;
    }
    if (mult == 0)
      raise(ErrorCode::InternalInconsistency, "search returned a non-dividing factor");
    LinearFactor lf;
    lf.coeffs.push_back(FieldElement::one(out.ctx));
    for (int i = 0; i < n; ++i) lf.coeffs.push_back((*lambda)[i]);
    lf.multiplicity = mult;
    out.factors.push_back(std::move(lf));
  }

  if (out.residual.total_degree() == 0 && !out.residual.is_one())
    raise(ErrorCode::InternalInconsistency, "non-unit constant residual");

  std::sort(out.factors.begin(), out.factors.end(),
            [](const LinearFactor& a, const LinearFactor& b) {
              return factor_coeffs_less(a.coeffs, b.coeffs);
            });
  return out;
}

SpectralMatrix spectral_matrix(const LinearFactorization& f) {
  if (!f.residual.is_one())
    raise(ErrorCode::NotFullyFactorable,
          "characteristic polynomial has a nonlinear residual: " + f.residual.str());
  int n = 0;
  for (const auto& lf : f.factors) n += lf.multiplicity;
  for (const auto& lf : f.factors)
    if (static_cast<int>(lf.coeffs.size()) != n + 1)
      raise(ErrorCode::InvalidArgument,
            "spectral matrix needs an adjoint-shaped pencil (degree = generator count)");
  SpectralMatrix sm{MatrixK(n, n, f.ctx)};
  int col = 0;
  for (const auto& lf : f.factors)
    for (int rep = 0; rep < lf.multiplicity; ++rep, ++col)
      for (int i = 0; i < n; ++i) sm.lambda.at(i, col) = lf.coeffs[i + 1].lifted_to(f.ctx);
  return sm;
}

int spectral_rank(const SpectralMatrix& sm) { return rank(sm.lambda); }

std::vector<std::vector<FieldElement>> nilradical_basis(const LieAlgebra& L,
                                                        const SpectralMatrix& sm) {
  int n = L.dim();
  auto basis = kernel_basis(sm.lambda.transpose());
  if (static_cast<int>(basis.size()) != n - spectral_rank(sm))
    raise(ErrorCode::InternalInconsistency, "nilradical dimension mismatch");
  for (const auto& v : basis) {
    std::vector<FieldElement> vl;
    vl.reserve(v.size());
    for (const auto& c : v) vl.push_back(c);
    MatrixK ad = ad_vector(L.with_context(sm.lambda.context()), vl);
    if (!ad.pow(n).is_zero())
      raise(ErrorCode::InternalInconsistency, "nilradical candidate is not ad-nilpotent");
  }
  return basis;
}

int k_count(const LinearFactorization& f) {
  if (!f.residual.is_one())
    raise(ErrorCode::NotFullyFactorable, "distinct-factor count needs a full factorization");
  return static_cast<int>(f.factors.size());
}

std::optional<FieldElement> extension_spectrum_ratio(
    const std::vector<FieldElement>& spec_a, const std::vector<FieldElement>& spec_b) {
  if (spec_a.size() != spec_b.size())
    raise(ErrorCode::InvalidArgument, "spectra must have equal sizes");
  auto sorted_canonical = [](std::vector<FieldElement> v) {
    std::sort(v.begin(), v.end(),
              [](const FieldElement& a, const FieldElement& b) { return canonical_less(a, b); });
    return v;
  };
  size_t zeros_a = std::count_if(spec_a.begin(), spec_a.end(),
                                 [](const FieldElement& e) { return e.is_zero(); });
  size_t zeros_b = std::count_if(spec_b.begin(), spec_b.end(),
                                 [](const FieldElement& e) { return e.is_zero(); });
  if (zeros_a != zeros_b) return std::nullopt;
  if (zeros_a == spec_a.size()) {
    TowerContext ctx = spec_a.empty() ? TowerContext() : spec_a[0].context();
    return FieldElement::one(ctx);
  }
  std::vector<FieldElement> sa = sorted_canonical(spec_a);
  std::vector<FieldElement> candidates;
  for (const FieldElement& a : spec_a) {
    if (a.is_zero()) continue;
    for (const FieldElement& b : spec_b) {
      if (b.is_zero()) continue;
      FieldElement t = a / b;
      if (std::find(candidates.begin(), candidates.end(), t) == candidates.end())
        candidates.push_back(t);
    }
  }
  std::sort(candidates.begin(), candidates.end(),
            [](const FieldElement& a, const FieldElement& b) { return canonical_less(a, b); });
  for (const FieldElement& t : candidates) {
    std::vector<FieldElement> scaled;
    scaled.reserve(spec_b.size());
    for (const FieldElement& b : spec_b) scaled.push_back(t * b);
    if (sorted_canonical(scaled) == sa) return t;
  }
  return std::nullopt;
}

MultiPoly sl2_closed_form(int m) {
  if (m < 0) raise(ErrorCode::InvalidArgument, "representation weight must be >= 0");
  TowerContext q;
  const int nvars = 4;
  MultiPoly z0 = MultiPoly::variable(nvars, 0, q);
  MultiPoly z1 = MultiPoly::variable(nvars, 1, q);
  MultiPoly z2 = MultiPoly::variable(nvars, 2, q);
  MultiPoly z3 = MultiPoly::variable(nvars, 3, q);
  MultiPoly form = z1 * z1 + z2 * z3;
  MultiPoly acc = MultiPoly::constant(nvars, FieldElement::one(q));
  int last = (m % 2 == 1) ? (m - 1) / 2 : m / 2 - 1;
  for (int j = 0; j <= last; ++j) {
    long w = m - 2 * j;
    acc = acc * (z0 * z0 - form.scaled(FieldElement(Rational(w * w), q)));
  }
  if (m % 2 == 0) acc = acc * z0;
  return acc;
}

}  // namespace liespec
