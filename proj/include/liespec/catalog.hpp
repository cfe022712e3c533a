#ifndef LIESPEC_CATALOG_HPP
#define LIESPEC_CATALOG_HPP

#include <map>
#include <string>
#include <vector>

#include "liespec/lie.hpp"

namespace liespec {

struct ParamSpec {
  std::string name;
  std::string constraint;  // human-readable, e.g. "b != 0"
};

struct CatalogEntry {
  std::string name;
  std::vector<std::string> aliases;
  std::string description;
  std::vector<ParamSpec> params;
};

const std::vector<CatalogEntry>& catalog_entries();

/// Builds a named preset algebra. Parameter values are exact scalars;
/// "abelian" takes an integer-valued "n".
LieAlgebra catalog_get(const std::string& name,
                       const std::map<std::string, FieldElement>& params);

/// Highest-weight irreducible sl(2) action on an (m+1)-dimensional space,
/// returned as the matrices of (H, X, Y). Structure constants stay
/// rational in this normalization.
std::vector<MatrixK> sl2_irrep(int m);

}  // namespace liespec

#endif
