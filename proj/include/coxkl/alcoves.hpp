#pragma once

// Alcove geometry of an affine Weyl group. Points are written in
// fundamental-weight coordinates c_i = <lambda, alpha_i^vee>, so every
// pairing with a coroot is an integer combination of the c_i.
//
// The affine generator acts as the reflection in <lambda, phi^vee> = 1, phi^vee
// the highest coroot; A0 = {0 < <lambda, alpha^vee> < 1 for all alpha > 0}.

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "coxkl/coxeter.hpp"
#include "coxkl/presets.hpp"
#include "coxkl/subgroups.hpp"

namespace coxkl {

using Rational = boost::multiprecision::cpp_rational;
using Point = std::vector<Rational>;

// x -> linear * x + shift
struct AffineMap {
  std::vector<std::vector<Rational>> linear;
  Point shift;

  Point operator()(const Point& x) const;
  AffineMap after(const AffineMap& inner) const;  // this o inner
  friend bool operator==(const AffineMap&, const AffineMap&) = default;
};

// k[a] with k < <lambda, alpha_a^vee> < k + 1 on the alcove, one entry per
// positive root of the finite system.
struct Alcove {
  std::vector<std::int64_t> k;
  friend auto operator<=>(const Alcove&, const Alcove&) = default;
};

class AffineArrangement {
 public:
  // System must come from an affine preset (or affine_system).
  explicit AffineArrangement(std::shared_ptr<const CoxeterSystem> system);

  const CoxeterSystem& system() const { return *system_; }
  const std::shared_ptr<const CoxeterSystem>& system_ptr() const { return system_; }
  int rank() const { return n_; }  // rank of the finite root system
  const FiniteRootData& roots() const { return data_; }
  std::size_t positive_roots() const { return data_.roots.size(); }

  // <p, alpha_a^vee>
  Rational pair(const Point& p, std::size_t a) const;
  Point root_vector(std::size_t a) const;  // alpha_a in weight coordinates
  // reflection in {<lambda, alpha_a^vee> = level}
  AffineMap reflection(std::size_t a, const Rational& level) const;
  AffineMap generator_map(Gen g) const;
  AffineMap map_of(Element x) const;

  std::vector<Point> base_vertices() const;  // 0 and omega_i / n_i
  Point base_sample() const;                 // barycentre of A0
  Alcove alcove_of_point(const Point& interior) const;
  Alcove base_alcove() const;
  Alcove alcove_of(Element x) const;
  std::vector<Point> vertices_of(Element x) const;

  // element w with w = g as maps; g must lie in the group
  Element element_of(const AffineMap& g) const;

 private:
  std::shared_ptr<const CoxeterSystem> system_;
  int n_ = 0;
  FiniteRootData data_;
  std::size_t highest_ = 0;
  std::vector<AffineMap> gens_;  // indexed by generator of the system
};

std::int64_t separation(const Alcove& a, const Alcove& b);

struct ScaledSubgroup {
  Rational scale;                // l
  int levels = 1;                // W_levels: hyperplanes l^levels R around base
  Point base;
  std::vector<Element> generators;  // reflections in the walls of base + l^levels A0
  std::vector<Element> copies;      // x with x(A0) inside base + l^levels A0
  std::optional<ReflectionSubgroup> subgroup;  // closure on the generators
};

// Rejects non-integral or nonpositive l (for infinite W, l R inside R forces
// l to be an integer) and base points off the coweight lattice.
ScaledSubgroup scaled_subgroup(const AffineArrangement& arr, const Rational& scale, int levels = 1,
                               const Point& base = {}, bool build_subgroup = true);

struct SeparationReport {
  int max_length = 0;
  std::size_t checked = 0;
  std::vector<Element> mismatches;  // delta(A0, xA0) != l(x)
  bool injective = true;
};
SeparationReport check_separation(const AffineArrangement& arr, int max_length);

struct RenderOptions {
  std::vector<std::int64_t> scales;            // each one drawn as its own layer
  std::array<double, 4> bbox{-2, -2, 4, 4};    // xmin ymin xmax ymax
  std::vector<Element> highlight;
  Point base;
};
std::string render_arrangement(const AffineArrangement& arr, const RenderOptions& options);
void render_arrangement(const AffineArrangement& arr, const RenderOptions& options, const std::string& path);

}  // namespace coxkl
