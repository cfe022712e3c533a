#include "liespec/arrangement.hpp"

#include <algorithm>
#include <map>

#include "liespec/parallel.hpp"

namespace liespec {

std::vector<Hyperplane> build_arrangement(const LinearFactorization& f) {
  if (!f.residual.is_one())
    raise(ErrorCode::NotFullyFactorable,
          "eigen-variety of a non-solvable algebra is not a hyperplane arrangement");
  std::vector<Hyperplane> out;
  for (const LinearFactor& lf : f.factors) {
    bool is_z0 = std::all_of(lf.coeffs.begin() + 1, lf.coeffs.end(),
                             [](const FieldElement& c) { return c.is_zero(); });
    if (is_z0) continue;
    out.push_back(Hyperplane{lf.coeffs});
  }
  return out;
}

namespace {

constexpr int kMaxHyperplanes = 20;

struct Expansion {
  uint32_t hset;
  int codim;
  std::vector<std::vector<FieldElement>> span;
};

void check_input(const std::vector<Hyperplane>& hs) {
  if (static_cast<int>(hs.size()) > kMaxHyperplanes)
    raise(ErrorCode::ArrangementTooLarge,
          "at most " + std::to_string(kMaxHyperplanes) + " hyperplanes supported");
  for (const auto& h : hs) {
    if (h.normal.empty() || !h.normal[0].is_one())
      raise(ErrorCode::InvalidArgument, "hyperplane normal must lead with coefficient 1");
  }
  for (size_t i = 0; i < hs.size(); ++i)
    for (size_t j = i + 1; j < hs.size(); ++j)
      if (hs[i].normal == hs[j].normal)
        raise(ErrorCode::InvalidArgument, "coincident hyperplane normals");
}

Expansion expand_flat(const std::vector<Hyperplane>& hs, const TowerContext& ctx,
                      const Flat& flat, int add) {
  std::vector<std::vector<FieldElement>> rows = flat.span;
  rows.push_back(hs[add].normal);
  RowReduction rr = row_reduce_rows(ctx, rows);
  Expansion out;
  out.codim = rr.rank;
  out.span = rr.rref;
  out.hset = 0;
  for (size_t j = 0; j < hs.size(); ++j)
    if (in_row_span(rr, hs[j].normal, ctx)) out.hset |= uint32_t{1} << j;
  return out;
}

IntersectionLattice lattice_impl(const std::vector<Hyperplane>& hs, bool use_omp) {
  check_input(hs);
  TowerContext ctx;
  for (const auto& h : hs)
    for (const auto& c : h.normal)
      if (c.context().depth() > ctx.depth()) ctx = c.context();

  std::map<uint32_t, Flat> flats;
  Flat ambient;
  flats.emplace(0u, ambient);
  std::vector<Flat> frontier{ambient};

  while (!frontier.empty()) {
    // candidate expansions of this level; independent, so parallelizable
    std::vector<std::pair<const Flat*, int>> work;
    for (const Flat& f : frontier)
      for (size_t j = 0; j < hs.size(); ++j)
        if (!(f.hset & (uint32_t{1} << j))) work.emplace_back(&f, static_cast<int>(j));

    std::vector<Expansion> results(work.size());
    if (use_omp && work.size() >= 8) {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(parallel::max_threads())
#endif
      for (long idx = 0; idx < static_cast<long>(work.size()); ++idx)
        results[idx] = expand_flat(hs, ctx, *work[idx].first, work[idx].second);
    } else {
      for (size_t idx = 0; idx < work.size(); ++idx)
        results[idx] = expand_flat(hs, ctx, *work[idx].first, work[idx].second);
    }

    std::vector<Flat> next;
    for (const Expansion& e : results) {
      if (flats.count(e.hset)) continue;
      Flat f;
      f.hset = e.hset;
      f.codim = e.codim;
      f.span = e.span;
      flats.emplace(e.hset, f);
      next.push_back(std::move(f));
    }
    frontier = std::move(next);
  }

  IntersectionLattice lattice;
  for (auto& [hset, f] : flats) lattice.flats.push_back(std::move(f));
  std::sort(lattice.flats.begin(), lattice.flats.end(), [](const Flat& a, const Flat& b) {
    if (a.codim != b.codim) return a.codim < b.codim;
    return a.hset < b.hset;
  });

  // Mobius recursion over the refinement order (hset containment)
  for (size_t x = 0; x < lattice.flats.size(); ++x) {
    Flat& fx = lattice.flats[x];
    if (fx.hset == 0) {
      fx.mobius = 1;
      continue;
    }
    long long acc = 0;
    for (size_t y = 0; y < x; ++y) {
      const Flat& fy = lattice.flats[y];
      if (fy.hset != fx.hset && (fy.hset & fx.hset) == fy.hset) acc += fy.mobius;
    }
    fx.mobius = -acc;
  }
  return lattice;
}

}  // namespace

IntersectionLattice intersection_lattice_serial(const std::vector<Hyperplane>& hs) {
  return lattice_impl(hs, false);
}

IntersectionLattice intersection_lattice_parallel(const std::vector<Hyperplane>& hs) {
  return lattice_impl(hs, true);
}

IntersectionLattice intersection_lattice(const std::vector<Hyperplane>& hs) {
  return parallel::enabled() ? intersection_lattice_parallel(hs)
                             : intersection_lattice_serial(hs);
}

std::vector<long long> poincare_polynomial(const IntersectionLattice& lattice) {
  std::vector<long long> coeffs;
  for (const Flat& f : lattice.flats) {
    if (static_cast<int>(coeffs.size()) <= f.codim) coeffs.resize(f.codim + 1, 0);
    coeffs[f.codim] += f.mobius < 0 ? -f.mobius : f.mobius;
  }
  while (!coeffs.empty() && coeffs.back() == 0) coeffs.pop_back();
  if (coeffs.empty()) coeffs.push_back(1);
  return coeffs;
}

}  // namespace liespec
