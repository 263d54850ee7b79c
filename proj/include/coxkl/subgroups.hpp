#pragma once

// Reflection subgroups of a Coxeter system, explored up to an ambient length
// bound: closure, canonical (Dyer) generators, minimal coset representatives
// and reduction-mod-p "good" subgroups.

#include <memory>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "coxkl/coxeter.hpp"

namespace coxkl {

enum class SubgroupKind { StandardParabolic, Parabolic, Good, General };

std::string kind_name(SubgroupKind kind, int prime = 0);

// Length bound for enumerations: the requested one, or the longest length for
// finite systems. Infinite systems without a bound are rejected.
int resolve_bound(const CoxeterSystem& system, std::optional<int> requested);

class ReflectionSubgroup {
 public:
  const CoxeterSystem& parent() const { return *parent_; }
  const std::shared_ptr<const CoxeterSystem>& parent_ptr() const { return parent_; }
  int bound() const { return bound_; }
  SubgroupKind kind() const { return kind_; }
  int prime() const { return prime_; }
  const std::string& description() const { return description_; }

  const std::vector<Reflection>& canonical_generators() const { return canonical_; }
  const std::vector<Reflection>& reflections() const { return reflections_; }
  const std::vector<Element>& elements() const { return elements_; }  // ShortLex
  bool contains(Element x) const { return members_.count(x) != 0; }
  bool is_trivial() const { return canonical_.empty(); }
  // true when the closure stopped because it was complete, not at the bound
  bool closed() const { return closed_; }

  // Coxeter system on the canonical generators (nullptr for the trivial group).
  const std::shared_ptr<const CoxeterSystem>& intrinsic() const { return intrinsic_; }
  Element to_intrinsic(Element x) const;
  Element from_intrinsic(Element y) const;
  int intrinsic_length(Element x) const;

 private:
  friend ReflectionSubgroup make_subgroup(std::shared_ptr<const CoxeterSystem>, const std::vector<Element>&, int,
                                          std::string);
  friend ReflectionSubgroup good_subgroup_mod_p(std::shared_ptr<const CoxeterSystem>, int,
                                                const std::vector<std::vector<std::int64_t>>&, std::optional<int>);

  std::shared_ptr<const CoxeterSystem> parent_;
  int bound_ = 0;
  SubgroupKind kind_ = SubgroupKind::General;
  int prime_ = 0;
  std::string description_;
  std::vector<Reflection> canonical_;
  std::vector<Reflection> reflections_;
  std::vector<Element> elements_;
  std::set<Element> members_;
  bool closed_ = false;
  std::shared_ptr<const CoxeterSystem> intrinsic_;
};

ReflectionSubgroup make_subgroup(std::shared_ptr<const CoxeterSystem> system, const std::vector<Element>& reflections,
                                 int bound, std::string description);
ReflectionSubgroup generate_subgroup(std::shared_ptr<const CoxeterSystem> system,
                                     const std::vector<Element>& reflections, std::optional<int> bound = {});
ReflectionSubgroup standard_parabolic(std::shared_ptr<const CoxeterSystem> system, const std::vector<Gen>& gens,
                                      std::optional<int> bound = {});
// Reflections whose roots, reduced mod p, lie in the F_p-span of `span`
// (lattice coordinates; empty = zero subspace).
ReflectionSubgroup good_subgroup_mod_p(std::shared_ptr<const CoxeterSystem> system, int p,
                                       const std::vector<std::vector<std::int64_t>>& span,
                                       std::optional<int> bound = {});
// "parabolic:s,t", "reflections:sts,t", "goodmodp:p=2;V=0", "goodmodp:p=3;V=[1,0],[0,1]"
ReflectionSubgroup parse_subgroup(std::shared_ptr<const CoxeterSystem> system, const std::string& spec,
                                  std::optional<int> bound = {});

bool is_prime(std::int64_t p);

class CosetTable {
 public:
  // Right: representatives of W_r \ W (x^{-1} maps canonical roots to
  // positive roots). Left: representatives of W / W_r.
  CosetTable(const ReflectionSubgroup& sub, Side side, std::optional<int> bound = {});

  Side side() const { return side_; }
  int bound() const { return bound_; }
  const ReflectionSubgroup& subgroup() const { return sub_; }
  const std::vector<Element>& representatives() const { return reps_; }
  bool is_representative(Element x) const;
  // Right: x = u z. Left: x = z u. Returns (u, z).
  std::pair<Element, Element> decompose(Element x) const;

 private:
  ReflectionSubgroup sub_;
  Side side_;
  int bound_;
  std::vector<Element> reps_;
};

}  // namespace coxkl
