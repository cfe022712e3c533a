#include "liespec/report.hpp"

#include <algorithm>

namespace liespec {

InvariantReport invariant_report(const LieAlgebra& L) {
  auto violations = validate(L);
  if (!violations.empty())
    raise(ErrorCode::InvalidArgument,
          "structure constants violate the Jacobi identity at triple (" +
              std::to_string(violations[0].i + 1) + "," + std::to_string(violations[0].j + 1) +
              "," + std::to_string(violations[0].k + 1) + ")");

  InvariantReport r;
  r.dim = L.dim();
  r.labels = L.labels();
  r.cp = char_poly(L);
  auto pencil = adjoint(L);
  r.factorization = linear_factorize(r.cp, pencil);
  r.trace_vec = trace_vector(L);

  bool solvable_structural = is_solvable(L);
  bool solvable_spectral = r.factorization.residual.is_one();
  if (solvable_structural != solvable_spectral)
    raise(ErrorCode::InternalInconsistency,
          "derived series and factorization disagree on solvability");
  r.solvable = solvable_structural;

  bool nilpotent_structural = is_nilpotent(L);
  bool nilpotent_spectral = r.cp.reduced.is_one();  // Q == z0^n
  if (nilpotent_structural != nilpotent_spectral)
    raise(ErrorCode::InternalInconsistency,
          "lower central series and Q = z0^n criterion disagree");
  r.nilpotent = nilpotent_structural;

  if (!r.factorization.spectra.empty()) {
    r.spectra = r.factorization.spectra;
    for (auto& spec : r.spectra)
      for (auto& v : spec) v = v.lifted_to(r.factorization.ctx);
  } else {
    // factorization finished without eigen extraction: Q = z0^n, so every
    // generator has spectrum {0,...,0}
    r.spectra.assign(r.dim,
                     std::vector<FieldElement>(r.dim, FieldElement::zero(L.context())));
  }

  if (r.solvable) {
    SpectralMatrix sm = spectral_matrix(r.factorization);
    r.rank_lambda = spectral_rank(sm);
    r.nilradical = nilradical_basis(L, sm);
    r.k = k_count(r.factorization);
    r.lambda = std::move(sm);
    auto lattice = intersection_lattice(build_arrangement(r.factorization));
    r.poincare = poincare_polynomial(lattice);

    if (r.nilpotent && (*r.rank_lambda != 0 || *r.k != 1 || *r.poincare != std::vector<long long>{1}))
      raise(ErrorCode::InternalInconsistency, "nilpotent invariants are inconsistent");
    long long b1 = r.poincare->size() > 1 ? (*r.poincare)[1] : 0;
    if (b1 != *r.k - 1)
      raise(ErrorCode::InternalInconsistency, "b1 != k - 1 on a solvable algebra");
  }
  return r;
}

namespace {

nlohmann::ordered_json scalars_to_json(const std::vector<FieldElement>& v) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const FieldElement& e : v) arr.push_back(e.str());
  return arr;
}

}  // namespace

nlohmann::ordered_json report_to_json(const InvariantReport& r) {
  nlohmann::ordered_json j;
  j["dim"] = r.dim;
  j["solvable"] = r.solvable;
  j["nilpotent"] = r.nilpotent;
  j["z0_multiplicity"] = r.cp.z0_multiplicity;
  j["charpoly"] = r.cp.Q.str();
  nlohmann::ordered_json factors = nlohmann::ordered_json::array();
  for (const LinearFactor& f : r.factorization.factors) {
    nlohmann::ordered_json jf;
    jf["coeffs"] = scalars_to_json(f.coeffs);
    jf["mult"] = f.multiplicity;
    factors.push_back(std::move(jf));
  }
  j["factors"] = std::move(factors);
  j["residual"] = r.factorization.residual.str();
  if (r.rank_lambda) j["rank_lambda"] = *r.rank_lambda;
  if (r.k) j["k"] = *r.k;
  if (r.nilradical) {
    nlohmann::ordered_json nil = nlohmann::ordered_json::array();
    for (const auto& v : *r.nilradical) nil.push_back(scalars_to_json(v));
    j["nilradical"] = std::move(nil);
  }
  nlohmann::ordered_json spectra = nlohmann::ordered_json::array();
  for (size_t i = 0; i < r.spectra.size(); ++i) {
    nlohmann::ordered_json js;
    js["generator"] = i < r.labels.size() ? r.labels[i] : "x" + std::to_string(i + 1);
    js["spectrum_multiset"] = scalars_to_json(r.spectra[i]);
    std::vector<FieldElement> distinct;
    for (const FieldElement& v : r.spectra[i])
      if (std::find(distinct.begin(), distinct.end(), v) == distinct.end())
        distinct.push_back(v);
    js["spectrum_distinct"] = scalars_to_json(distinct);
    spectra.push_back(std::move(js));
  }
  j["spectra"] = std::move(spectra);
  if (r.poincare) j["poincare"] = *r.poincare;
  j["trace_vector"] = scalars_to_json(r.trace_vec);
  return j;
}

nlohmann::ordered_json poly_to_json(const MultiPoly& p) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& [m, c] : p.terms()) {
    nlohmann::ordered_json jt;
    jt["monomial"] = m.exps;
    jt["coeff"] = c.str();
    arr.push_back(std::move(jt));
  }
  return arr;
}

std::optional<std::vector<FieldElement>> one_dim_extension_spectrum(const InvariantReport& r) {
  if (!r.solvable || !r.nilradical || !r.lambda) return std::nullopt;
  if (static_cast<int>(r.nilradical->size()) != r.dim - 1) return std::nullopt;
  const TowerContext& ctx = r.lambda->lambda.context();
  RowReduction nil = row_reduce_rows(ctx, *r.nilradical);
  for (int i = 0; i < r.dim; ++i) {
    std::vector<FieldElement> ei(r.dim, FieldElement::zero(ctx));
    ei[i] = FieldElement::one(ctx);
    if (in_row_span(nil, ei, ctx)) continue;
    return r.lambda->lambda.row(i);
  }
  return std::nullopt;
}

}  // namespace liespec
