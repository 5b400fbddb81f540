#pragma once

// Modules over F built from the ideals [[oB]]: closed-form dimensions, the
// preorder governing containments, shift isomorphisms between orbits with a
// common stabilizer, quotients, characters, simplicity, and the catalog of
// simple modules for dim E = 2.

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fconv/algebra.hpp"
#include "fconv/exact_matrix.hpp"
#include "fconv/ideal.hpp"

namespace fconv {

// A left F-module. action[g] is the row-convention matrix of basis label g;
// for a submodule of F the basis is the given elements, for a quotient it
// holds coset representatives.
struct ModulePresentation {
  std::size_t dim = 0;
  std::vector<Matrix> action;
  std::vector<AlgebraElement> basis;
};

// Trace of every basis label's action.
using Character = std::vector<Rational>;

std::map<Subspace, std::size_t> orbit_counts(const ESet& x);

// sum_C |X_C orbits| |E| |U_ABC| |A meet B meet C| / (|A| |B| |C|).
std::size_t dim_closed_form(const Subspace& a, const Subspace& b, const std::map<Subspace, std::size_t>& counts);

struct PreorderVerdict {
  Subspace a, b_small, b_big;
  bool holds = false;
  bool containment_checked = false;
};

// b_small precedes b_big at A iff A + b_big lies in A + b_small and
// A meet b_small lies in A meet b_big; then [[o b_small]] lies in [[o b_big]].
PreorderVerdict preorder_leq(const Subspace& a, const Subspace& b_small, const Subspace& b_big);

// Each element of B_{o,b_small} must be a 0/1 sum of elements of B_{o,b_big},
// and every E x b_small orbit a union of E x b_big orbits. Throws
// precondition-violation when the preorder does not hold.
CheckReport verify_containment(const ConvolutionAlgebra& alg, std::size_t orbit, const Subspace& b_small,
                               const Subspace& b_big);

struct ShiftIsomorphism {
  AlgebraElement multiplier;       // [O_gamma]^0
  std::vector<std::size_t> image;  // element i of B_oB goes to element image[i] of B_o'B
  bool bijective = false;
  bool intertwines = false;
};

ShiftIsomorphism shift_isomorphism(const ConvolutionAlgebra& alg, std::size_t orbit, std::size_t orbit2,
                                   const Subspace& b);

ModulePresentation submodule(const ConvolutionAlgebra& alg, std::vector<AlgebraElement> basis);
ModulePresentation ideal_module(const ConvolutionAlgebra& alg, const IdealBasis& ib);

// M / N for N given by spanning elements of F. Throws invalid-input when N
// is not inside M or is not stable under the action.
ModulePresentation quotient_module(const ConvolutionAlgebra& alg, const ModulePresentation& m,
                                   const std::vector<AlgebraElement>& n);

Character character(const ModulePresentation& m);

// Dimension of the span of the action matrices.
std::size_t action_algebra_dimension(const ModulePresentation& m);
bool is_simple(const ModulePresentation& m);

// An invertible T with action_m(g) T = T action_n(g) for all g, if any is found.
std::optional<Matrix> find_intertwiner(const ModulePresentation& m, const ModulePresentation& n,
                                       std::uint64_t seed = 1);

bool has_natural_action(const ModulePresentation& m);

// --- dim E = 2 ---

struct CatalogPresentation {
  std::string text;
  std::string a;                    // subspace name: 0, L1, L2, L3, E
  std::string numerator;            // B of the numerator
  std::vector<std::string> denominators;
  std::optional<ModulePresentation> module;  // absent when X_A is empty
  bool simple = false;
  bool natural_action = false;
  std::string error;  // why construction failed, e.g. a denominator outside the numerator
};

struct CatalogEntry {
  std::string dim_formula;
  std::size_t formula_dim = 0;
  std::vector<CatalogPresentation> presentations;
  std::vector<std::pair<std::size_t, std::size_t>> equalities;  // claimed identical subspaces
  std::size_t dim = 0;
  bool dims_match = true;
  bool isomorphisms_hold = true;
  bool equalities_hold = true;
  bool simple = true;  // every nonzero presentation is simple
};

struct DistinguishedModule {
  std::string name;
  std::optional<std::size_t> dim;  // absent when X_A is empty
  bool positive = false;
};

struct Catalog {
  std::vector<CatalogEntry> entries;
  std::vector<DistinguishedModule> distinguished;
  std::size_t sum_of_squares = 0;
  std::size_t algebra_dim = 0;
  bool pairwise_nonisomorphic = true;
  bool complete = false;

  bool all_pass() const;
};

// The subspaces 0, L1 = <10>, L2 = <01>, L3 = <11>, E of (Z/2)^2 by name.
Subspace dim2_subspace(const std::string& name);

// Throws invalid-input unless dim E = 2.
Catalog dim2_catalog(const ConvolutionAlgebra& alg);

}  // namespace fconv
