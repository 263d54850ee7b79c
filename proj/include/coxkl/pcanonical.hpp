#pragma once

// p-canonical basis data, read from text:
//
//   pcanonical p=2 system=C2
//   sts : sts=1 ; st=v ; ts=v ; s=v^2+1 ; t=v^2 ; e=v^3+v
//
// Each record is checked for bar invariance and for nonnegativity of its
// expansion in the KL basis.

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "coxkl/hecke.hpp"

namespace coxkl {

using KLExpansion = std::vector<std::pair<Element, LaurentPoly>>;  // ShortLex descending

// Writes h = sum c_y b_y by peeling off the longest term; exact.
KLExpansion kl_expansion(const HeckeElement& h, const KLBasis& kl);

struct PCanonicalOptions {
  bool strict_positivity = false;   // negative KL coefficient: error instead of warning
  bool lenient_duality = false;     // failed bar invariance: warning instead of error
};

struct PCanonicalBasis {
  int p = 0;
  std::string system_name;
  std::map<Element, HeckeElement, ShortLexLess> elements;
  std::map<Element, KLExpansion, ShortLexLess> expansions;
  std::vector<std::string> warnings;

  const HeckeElement& at(Element x) const;
  bool contains(Element x) const { return elements.count(x) != 0; }
};

PCanonicalBasis load_pcanonical(std::string_view text, const KLBasis& kl, const PCanonicalOptions& options = {});
PCanonicalBasis load_pcanonical_file(const std::string& path, const KLBasis& kl,
                                     const PCanonicalOptions& options = {});

// Characteristic 2 data for C2 shipped with the library.
std::string_view bundled_c2_p2();

std::string format_pcanonical(const PCanonicalBasis& basis);

}  // namespace coxkl
