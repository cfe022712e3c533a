#ifndef LIESPEC_REPORT_HPP
#define LIESPEC_REPORT_HPP

#include <json.hpp>
#include <optional>

#include "liespec/arrangement.hpp"
#include "liespec/spectral.hpp"

namespace liespec {

/// Everything the engine can say about one algebra. Solvability and
/// nilpotency are computed both structurally (series) and spectrally
/// (factorization shape); disagreement is an internal error.
struct InvariantReport {
  int dim = 0;
  std::vector<std::string> labels;
  bool solvable = false;
  bool nilpotent = false;
  CharPoly cp;
  LinearFactorization factorization;
  std::vector<FieldElement> trace_vec;
  std::vector<std::vector<FieldElement>> spectra;  // multisets, one per generator
  std::optional<SpectralMatrix> lambda;            // solvable only
  std::optional<int> rank_lambda;
  std::optional<int> k;
  std::optional<std::vector<std::vector<FieldElement>>> nilradical;
  std::optional<std::vector<long long>> poincare;
};

InvariantReport invariant_report(const LieAlgebra& L);

nlohmann::ordered_json report_to_json(const InvariantReport& r);

/// Term-list rendering: [{"monomial": [e0..en], "coeff": "<scalar>"}, ...]
/// in graded-lex descending order.
nlohmann::ordered_json poly_to_json(const MultiPoly& p);

/// Spectrum of the extension direction for a solvable algebra with
/// nilradical of codimension one: the lambda row of the first basis
/// vector outside the nilradical. Nothing otherwise.
std::optional<std::vector<FieldElement>> one_dim_extension_spectrum(const InvariantReport& r);

}  // namespace liespec

#endif
