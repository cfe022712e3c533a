#ifndef LIESPEC_SPECTRAL_HPP
#define LIESPEC_SPECTRAL_HPP

#include <optional>
#include <vector>

#include "liespec/lie.hpp"
#include "liespec/mpoly.hpp"
#include "liespec/unipoly.hpp"

namespace liespec {

/// Characteristic polynomial det(z0 I + z1 T_1 + ... + zn T_n) of a
/// pencil, with its z0 factor split off.
struct CharPoly {
  MultiPoly Q;              // homogeneous, monic in z0
  int z0_multiplicity = 0;  // >= 1 for adjoint pencils
  MultiPoly reduced;        // Q / z0^z0_multiplicity

  CharPoly() : Q(1), reduced(1) {}
};

CharPoly char_poly(const LieAlgebra& L);

/// Same for an arbitrary list of equal-size square matrices; the z0
/// multiplicity may be 0 here.
CharPoly char_poly_pencil(const std::vector<MatrixK>& mats);

/// det(t I - T), the univariate characteristic polynomial.
UniPoly char_poly_univariate(const MatrixK& T);

/// Eigenvalues of T inside the quadratic tower (context may grow).
/// Canonically sorted, with multiplicity.
std::vector<FieldElement> eigen_multiset(const MatrixK& T, TowerContext& ctx);

struct LinearFactor {
  std::vector<FieldElement> coeffs;  // (1, l1..ln)
  int multiplicity = 0;
};

struct LinearFactorization {
  std::vector<LinearFactor> factors;  // z0 factor first, rest canonically ordered
  MultiPoly residual;                 // 1 when fully factored
  std::vector<std::vector<FieldElement>> spectra;  // sigma(T_j) when computed
  TowerContext ctx;                   // possibly extended by eigenvalue roots

  LinearFactorization() : residual(1) {}
};

/// Deflation of Q into linear factors: strip z0^k, then depth-first
/// search over candidate coefficient vectors drawn from the eigenvalue
/// multisets of the pencil generators, with prefix-specialization
/// pruning. Non-solvable pencils leave a nontrivial residual.
LinearFactorization linear_factorize(const CharPoly& cp,
                                     const std::vector<MatrixK>& pencil);

struct SpectralMatrix {
  MatrixK lambda;  // column j = coefficient vector of the j-th factor
};

/// Requires a fully factored polynomial (residual 1).
SpectralMatrix spectral_matrix(const LinearFactorization& f);

int spectral_rank(const SpectralMatrix& sm);

/// Kernel of lambda^T: coordinates c with all ad-eigenvalues zero. Every
/// returned vector is certified nilpotent via (ad v)^n = 0 and the
/// dimension is checked against n - rank(lambda).
std::vector<std::vector<FieldElement>> nilradical_basis(const LieAlgebra& L,
                                                        const SpectralMatrix& sm);

/// Number of distinct linear factors, the z0 factor included.
int k_count(const LinearFactorization& f);

/// Scalar t != 0 with specA == t * specB as multisets, if any.
std::optional<FieldElement> extension_spectrum_ratio(
    const std::vector<FieldElement>& spec_a, const std::vector<FieldElement>& spec_b);

/// Closed-form characteristic polynomial of the (m+1)-dimensional
/// irreducible sl(2) representation, in the variables z0..z3.
MultiPoly sl2_closed_form(int m);

}  // namespace liespec

#endif
