#pragma once

// Expansions of KL (or p-canonical) elements in mixed bases b_v delta_x,
// v in a reflection subgroup, x a minimal right coset representative.
//
//   mixed_expand       standard parabolic subgroup, over Z[v, v^-1]
//   hyperbolic_expand  any reflection subgroup, after v := 1
//   pcanonical_expand  good subgroup, p-canonical target, after v := 1
//
// Each call recombines its terms and throws if the result differs from the
// target.

#include <optional>
#include <string>
#include <vector>

#include "coxkl/hecke.hpp"
#include "coxkl/pcanonical.hpp"
#include "coxkl/subgroups.hpp"

namespace coxkl {

struct MixedTerm {
  Element v;  // subgroup element, ambient
  Element x;  // coset representative
  LaurentPoly coeff;
};

struct MixedExpansion {
  Element target;
  std::string subgroup;  // description of the subgroup
  bool at_one = false;   // coefficients are integers (v specialized to 1)
  std::vector<MixedTerm> terms;  // sorted by x, then v (ShortLex)
  bool residual_zero = false;

  LaurentPoly coeff(Element v, Element x) const;
};

struct PositivityReport {
  bool positive = true;
  bool residual_zero = false;
  std::optional<std::int64_t> min_negative;  // most negative coefficient seen
  std::vector<MixedTerm> negative_terms;
};

MixedExpansion mixed_expand(Element w, const std::vector<Gen>& parabolic, const KLBasis& kl);

MixedExpansion hyperbolic_expand(Element w, const ReflectionSubgroup& sub, const KLBasis& kl);
// `sub_basis`, when given, replaces the subgroup's intrinsic KL basis; it must
// live on sub.intrinsic().
MixedExpansion pcanonical_expand(Element w, const ReflectionSubgroup& sub, const PCanonicalBasis& pbasis,
                                 const PCanonicalBasis* sub_basis = nullptr);

// sum coeff * b_v delta_x, in H (mixed) or Z[W] (at v = 1)
HeckeElement recombine(const MixedExpansion& e, const KLBasis& kl);
GroupAlgebraElement recombine(const MixedExpansion& e, const ReflectionSubgroup& sub,
                              const PCanonicalBasis* sub_basis = nullptr);

PositivityReport verify_positivity(const MixedExpansion& e);

}  // namespace coxkl
