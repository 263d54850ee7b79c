#pragma once

// Crystallographic Coxeter systems with an exact integral realization.
//
// Elements are interned in a per-system table and handled through the
// lightweight value type Element (system pointer + table index). Two elements
// are equal iff their action on the root span, written in the basis of simple
// roots, is equal; that action is built from the Cartan numbers
// <alpha_s^vee, alpha_t> and is faithful for every generalized Cartan matrix.

#include <compare>
#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "coxkl/error.hpp"

namespace coxkl {

using Gen = int;

// Coxeter matrix entry used for m_st = infinity.
inline constexpr int kInfinity = 0;

enum class Side { Left, Right };

class CoxeterMatrix {
 public:
  // Row-major rank x rank entries; kInfinity (0) encodes infinity.
  CoxeterMatrix(int rank, std::vector<int> entries);

  int rank() const { return rank_; }
  int operator()(Gen s, Gen t) const { return entries_[s * rank_ + t]; }
  friend bool operator==(const CoxeterMatrix&, const CoxeterMatrix&) = default;

 private:
  int rank_;
  std::vector<int> entries_;
};

struct Realization {
  int lattice_rank = 0;
  std::vector<std::vector<std::int64_t>> roots;    // alpha_s, lattice coordinates
  std::vector<std::vector<std::int64_t>> coroots;  // alpha_s^vee, dual coordinates
};

// Small dense integer matrix; column j is the image of the j-th basis vector.
class IntMatrix {
 public:
  IntMatrix() = default;
  explicit IntMatrix(int n) : n_(n), a_(static_cast<std::size_t>(n) * n, 0) {}
  static IntMatrix identity(int n);

  int dim() const { return n_; }
  std::int64_t& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * n_ + j]; }
  std::int64_t operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) * n_ + j]; }
  const std::vector<std::int64_t>& data() const { return a_; }

  IntMatrix operator*(const IntMatrix& o) const;  // overflow-checked
  std::vector<std::int64_t> apply(std::span<const std::int64_t> v) const;
  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

 private:
  int n_ = 0;
  std::vector<std::int64_t> a_;
};

struct IntMatrixHash {
  std::size_t operator()(const IntMatrix& m) const noexcept;
};

class CoxeterSystem;

class Element {
 public:
  Element() = default;
  Element(const CoxeterSystem* system, std::uint32_t id) : system_(system), id_(id) {}

  const CoxeterSystem& system() const { return *system_; }
  const CoxeterSystem* system_ptr() const { return system_; }
  std::uint32_t id() const { return id_; }
  bool valid() const { return system_ != nullptr; }

  int length() const;
  const std::vector<Gen>& word() const;  // ShortLex-least reduced word
  std::string to_string() const;         // generator letters, "e" for the identity
  bool is_identity() const { return id_ == 0; }

  friend bool operator==(const Element& a, const Element& b) {
    return a.system_ == b.system_ && a.id_ == b.id_;
  }
  // Table order; use ShortLexLess for presentation order.
  friend auto operator<=>(const Element& a, const Element& b) {
    if (auto c = std::compare_three_way{}(a.system_, b.system_); c != 0) return c;
    return a.id_ <=> b.id_;
  }

 private:
  const CoxeterSystem* system_ = nullptr;
  std::uint32_t id_ = 0;
};

// Order by (length, lexicographic reduced word).
struct ShortLexLess {
  bool operator()(const Element& a, const Element& b) const;
};

struct Root {
  std::vector<std::int64_t> coordinates;  // realization lattice
  std::vector<std::int64_t> simple;       // expansion in the simple roots
  bool positive = true;

  friend bool operator==(const Root&, const Root&) = default;
};

struct Reflection {
  Element element;
  Root root;  // positive
};

// Geometry of an affine Weyl group acting on the span of a finite root
// system: finite simple reflections plus the reflection in the hyperplane
// <lambda, highest coroot> = 1.
struct AffineStructure {
  std::vector<std::vector<std::int64_t>> finite_cartan;  // <alpha_i^vee, alpha_j>
  std::vector<Gen> finite_generators;                    // generator for finite node i
  Gen affine_generator = 0;
};

class CoxeterSystem {
 public:
  struct Options {
    std::string name;
    std::optional<Realization> realization;
    std::optional<AffineStructure> affine;
  };

  static std::shared_ptr<const CoxeterSystem> create(CoxeterMatrix matrix, Options options = {});

  CoxeterSystem(const CoxeterSystem&) = delete;
  CoxeterSystem& operator=(const CoxeterSystem&) = delete;
  ~CoxeterSystem();

  const std::string& name() const { return name_; }
  int rank() const { return matrix_.rank(); }
  const CoxeterMatrix& matrix() const { return matrix_; }
  const Realization& realization() const { return realization_; }
  const std::optional<AffineStructure>& affine() const { return affine_; }
  std::int64_t cartan(Gen s, Gen t) const { return cartan_[s * rank() + t]; }
  bool is_finite() const { return finite_; }

  char letter(Gen s) const;
  std::optional<Gen> generator_of_letter(char c) const;

  Element identity() const { return Element(this, 0); }
  Element generator(Gen s) const;
  // Parses a generator string ("sts", "e" for identity) and multiplies it out.
  Element parse_word(std::string_view word) const;
  Element from_word(std::span<const Gen> word) const;

  Element multiply(Element x, Element y) const;
  Element inverse(Element x) const;
  Element left_multiply(Gen s, Element x) const;
  Element right_multiply(Element x, Gen s) const;

  int length(Element x) const;
  const std::vector<Gen>& word(Element x) const;
  const IntMatrix& action(Element x) const;

  bool is_left_descent(Gen s, Element x) const;
  bool is_right_descent(Element x, Gen s) const;
  std::vector<Gen> descents(Element x, Side side) const;
  std::optional<Gen> first_left_descent(Element x) const;

  bool bruhat_leq(Element x, Element y) const;

  Root simple_root(Gen s) const;
  Root act_on_root(Element x, const Root& root) const;
  // Builds a Root from lattice coordinates; throws if it is not an integral
  // combination of simple roots of constant sign.
  Root root_from_lattice(std::span<const std::int64_t> coordinates) const;
  Root root_from_simple(std::vector<std::int64_t> simple) const;

  // Positive root of x when x is a reflection.
  std::optional<Root> reflection_root(Element x) const;
  bool is_reflection(Element x) const { return reflection_root(x).has_value(); }
  std::vector<Reflection> reflections_up_to(int max_length) const;

  // All elements of length <= max_length in ShortLex order.
  std::vector<Element> elements_up_to(int max_length) const;
  std::vector<Element> elements_of_length(int length) const;
  // Length of the longest element for finite systems.
  std::optional<int> longest_length() const;
  std::optional<std::size_t> order() const;
  // For finite systems the longest length; otherwise `requested`.
  int effective_bound(std::optional<int> requested, int fallback) const;

  std::size_t table_size() const;

 private:
  struct Record;

  CoxeterSystem(CoxeterMatrix matrix, Options options);
  void validate_realization();
  void verify_braid_relations() const;
  const Record& record(std::uint32_t id) const;
  Element intern(IntMatrix action, IntMatrix inverse) const;
  bool ensure_level(int length) const;  // false if the group has no elements of that length
  std::vector<std::int64_t> to_lattice(std::span<const std::int64_t> simple) const;

  std::string name_;
  CoxeterMatrix matrix_;
  Realization realization_;
  std::optional<AffineStructure> affine_;
  std::vector<std::int64_t> cartan_;
  std::vector<IntMatrix> generator_matrices_;
  bool finite_ = false;

  mutable std::shared_mutex mutex_;
  mutable std::vector<std::unique_ptr<Record>> records_;
  mutable std::unordered_map<IntMatrix, std::uint32_t, IntMatrixHash> index_;
  mutable std::mutex levels_mutex_;
  mutable std::vector<std::vector<std::uint32_t>> levels_;
  mutable std::optional<int> longest_;
};

std::string word_to_string(const CoxeterSystem& system, std::span<const Gen> word);

}  // namespace coxkl

template <>
struct std::hash<coxkl::Element> {
  std::size_t operator()(const coxkl::Element& e) const noexcept {
    return std::hash<const void*>{}(e.system_ptr()) ^ (static_cast<std::size_t>(e.id()) * 0x9e3779b97f4a7c15ULL);
  }
};
