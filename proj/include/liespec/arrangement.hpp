#ifndef LIESPEC_ARRANGEMENT_HPP
#define LIESPEC_ARRANGEMENT_HPP

#include <cstdint>
#include <vector>

#include "liespec/spectral.hpp"

namespace liespec {

/// Hyperplane {z : <z, v> = 0} with v = (1, l1..ln), one per distinct
/// non-z0 linear factor of the reduced characteristic polynomial.
struct Hyperplane {
  std::vector<FieldElement> normal;
};

/// Multiplicities are discarded: the complement only sees distinct
/// hyperplanes. Requires a fully factored input.
std::vector<Hyperplane> build_arrangement(const LinearFactorization& f);

struct Flat {
  uint32_t hset = 0;  // hyperplanes containing the flat
  int codim = 0;      // rank of their normal span
  std::vector<std::vector<FieldElement>> span;  // canonical RREF of the normals
  long long mobius = 0;
};

struct IntersectionLattice {
  std::vector<Flat> flats;  // sorted by codim, then hset
};

/// All intersections of subsets, deduplicated, with Mobius values from
/// the recursion mu(ambient)=1, mu(X) = -sum_{Y strictly below X} mu(Y).
/// At most 20 hyperplanes.
IntersectionLattice intersection_lattice(const std::vector<Hyperplane>& hs);
IntersectionLattice intersection_lattice_serial(const std::vector<Hyperplane>& hs);
IntersectionLattice intersection_lattice_parallel(const std::vector<Hyperplane>& hs);

/// P(t) = sum over flats of |mu(X)| t^codim(X), as a coefficient list.
std::vector<long long> poincare_polynomial(const IntersectionLattice& lattice);
inline std::vector<long long> betti_numbers(const IntersectionLattice& lattice) {
  return poincare_polynomial(lattice);
}

}  // namespace liespec

#endif
