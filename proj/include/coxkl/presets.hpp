#pragma once

// Named systems and the plain-text system format:
//
//   rank 2
//   1 4
//   4 1
//   realization
//   root s: 1 -1
//   root t: 0 2
//   coroot s: 1 -1
//   coroot t: 0 1
//
// Matrix entries may be "inf". Lines starting with '#' are comments.

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "coxkl/coxeter.hpp"

namespace coxkl {

using CartanMatrix = std::vector<std::vector<std::int64_t>>;  // a_ij = <alpha_i^vee, alpha_j>

// Positive roots and coroots of a finite root system, in simple (co)root
// coordinates. roots[k] and coroots[k] belong to the same reflection.
struct FiniteRootData {
  CartanMatrix cartan;
  std::vector<std::vector<std::int64_t>> roots;
  std::vector<std::vector<std::int64_t>> coroots;
  std::size_t highest_coroot = 0;  // index of the coroot of largest height
};

FiniteRootData finite_root_data(const CartanMatrix& cartan);

CoxeterMatrix coxeter_matrix_from_cartan(const CartanMatrix& cartan);

std::shared_ptr<const CoxeterSystem> system_from_cartan(const CartanMatrix& cartan, std::string name);
// Affine Weyl group of a finite root system; the affine generator comes last.
std::shared_ptr<const CoxeterSystem> affine_system(const CartanMatrix& finite_cartan, std::string name);

// A1 A2 ... An, B2, C2, G2, A1~ A2~ C2~ G2~
std::shared_ptr<const CoxeterSystem> preset_system(std::string_view name);
std::vector<std::string> preset_names();

std::shared_ptr<const CoxeterSystem> parse_system(std::string_view text, std::string name);
// Preset name or path to a system file.
std::shared_ptr<const CoxeterSystem> load_system(const std::string& source);

}  // namespace coxkl
