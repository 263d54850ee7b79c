#pragma once

// Hecke algebra over Z[v, v^-1] in the standard basis {delta_x}, with
// delta_s^2 = 1 + (v^-1 - v) delta_s, and the Kazhdan-Lusztig basis
// b_x = delta_x + sum_{y<x} h_{y,x} delta_y, h_{y,x} in vZ[v].

#include <map>
#include <memory>
#include <shared_mutex>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "coxkl/coxeter.hpp"
#include "coxkl/laurent.hpp"

namespace coxkl {

class HeckeElement {
 public:
  using Terms = std::map<Element, LaurentPoly>;  // table order; see sorted()

  HeckeElement() = default;
  explicit HeckeElement(const CoxeterSystem* system) : system_(system) {}

  static HeckeElement delta(Element x);
  static HeckeElement unit(const CoxeterSystem& system) { return delta(system.identity()); }

  const CoxeterSystem* system() const { return system_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  LaurentPoly coeff(Element x) const;
  void add_term(Element x, const LaurentPoly& c);

  // Terms in ShortLex order of the basis element.
  std::vector<std::pair<Element, LaurentPoly>> sorted() const;
  // "sts=1 ; st=v ; e=v^3+v", ShortLex descending.
  std::string to_string() const;

  HeckeElement& operator+=(const HeckeElement& o);
  HeckeElement& operator-=(const HeckeElement& o);
  friend HeckeElement operator+(HeckeElement a, const HeckeElement& b) { return a += b; }
  friend HeckeElement operator-(HeckeElement a, const HeckeElement& b) { return a -= b; }
  friend HeckeElement operator*(const LaurentPoly& c, const HeckeElement& h);
  friend bool operator==(const HeckeElement& a, const HeckeElement& b) { return a.terms_ == b.terms_; }

 private:
  void adopt(const CoxeterSystem* s);
  const CoxeterSystem* system_ = nullptr;
  Terms terms_;
};

// Element of Z[W].
class GroupAlgebraElement {
 public:
  using Terms = std::map<Element, std::int64_t>;

  void add_term(Element x, std::int64_t c);
  const Terms& terms() const { return terms_; }
  std::int64_t coeff(Element x) const;
  bool is_zero() const { return terms_.empty(); }
  std::vector<std::pair<Element, std::int64_t>> sorted() const;
  std::string to_string() const;

  GroupAlgebraElement& operator+=(const GroupAlgebraElement& o);
  GroupAlgebraElement& operator-=(const GroupAlgebraElement& o);
  friend GroupAlgebraElement operator+(GroupAlgebraElement a, const GroupAlgebraElement& b) { return a += b; }
  friend GroupAlgebraElement operator-(GroupAlgebraElement a, const GroupAlgebraElement& b) { return a -= b; }
  friend GroupAlgebraElement operator*(const GroupAlgebraElement& a, const GroupAlgebraElement& b);
  friend bool operator==(const GroupAlgebraElement&, const GroupAlgebraElement&) = default;

 private:
  Terms terms_;
};

HeckeElement left_mult_generator(Gen s, const HeckeElement& h);   // delta_s * h
HeckeElement right_mult_generator(const HeckeElement& h, Gen s);  // h * delta_s
HeckeElement mult(const HeckeElement& a, const HeckeElement& b);

HeckeElement bar(const HeckeElement& h);
// delta_x^{-1} = bar(delta_{x^{-1}})
HeckeElement delta_inverse(Element x);
// tau(sum c_x delta_x) = sum bar(c_x) delta_x^{-1}
HeckeElement tau(const HeckeElement& h);
// Same map built as the semilinear anti-automorphism with tau(b_s) = b_s.
HeckeElement tau_alt(const HeckeElement& h);
// coefficient of delta_id in tau(h) h'
LaurentPoly form(const HeckeElement& h, const HeckeElement& hp);

GroupAlgebraElement specialize_v1(const HeckeElement& h);

// Memoized KL basis of one system. Lookups are safe from several threads.
class KLBasis {
 public:
  explicit KLBasis(std::shared_ptr<const CoxeterSystem> system);

  const CoxeterSystem& system() const { return *system_; }
  const std::shared_ptr<const CoxeterSystem>& system_ptr() const { return system_; }

  const HeckeElement& b(Element x) const;
  // h_{y,x}
  LaurentPoly h(Element y, Element x) const { return b(x).coeff(y); }
  std::int64_t mu(Element y, Element x) const { return h(y, x).coeff(1); }

  // Fills the cache for all elements of length <= max_length, level by level;
  // threads <= 0 reads COXKL_THREADS (default 1).
  void compute_up_to(int max_length, int threads = 0) const;
  std::size_t cached() const;

 private:
  const HeckeElement* find(Element x) const;
  const HeckeElement& store(Element x, HeckeElement h) const;
  HeckeElement compute(Element x) const;

  std::shared_ptr<const CoxeterSystem> system_;
  mutable std::shared_mutex mutex_;
  mutable std::unordered_map<std::uint32_t, HeckeElement> cache_;
};

int thread_count_from_env();

// e_v = sum_x v^{N - l(x)} delta_x in the Hecke algebra of S_n (type A_{n-1}).
HeckeElement ev_element(const CoxeterSystem& system);
bool verify_ev_square(int n);

}  // namespace coxkl
