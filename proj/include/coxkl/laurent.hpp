#pragma once

// Sparse Laurent polynomials in v with exact integer coefficients.
//
// The Hecke algebra uses BasicLaurentPoly<int64_t> (overflow-checked); the
// quantum binomials in modchar need BasicLaurentPoly<BigInt>.

#include <cstdint>
#include <initializer_list>
#include <map>
#include <string>
#include <string_view>
#include <type_traits>
#include <utility>

#include <boost/multiprecision/cpp_int.hpp>

#include "coxkl/checked.hpp"
#include "coxkl/error.hpp"

namespace coxkl {

using BigInt = boost::multiprecision::cpp_int;

namespace detail {

inline std::int64_t coeff_add(std::int64_t a, std::int64_t b) { return checked_add(a, b); }
inline std::int64_t coeff_sub(std::int64_t a, std::int64_t b) { return checked_sub(a, b); }
inline std::int64_t coeff_mul(std::int64_t a, std::int64_t b) { return checked_mul(a, b); }
inline BigInt coeff_add(const BigInt& a, const BigInt& b) { return a + b; }
inline BigInt coeff_sub(const BigInt& a, const BigInt& b) { return a - b; }
inline BigInt coeff_mul(const BigInt& a, const BigInt& b) { return a * b; }

inline std::string coeff_str(std::int64_t c) { return std::to_string(c); }
inline std::string coeff_str(const BigInt& c) { return c.str(); }

std::int64_t parse_int64(std::string_view s);

// Shared term-level parser: calls emit(coefficient_text, exponent) per term.
template <class Emit>
void parse_laurent_terms(std::string_view text, Emit&& emit);

}  // namespace detail

template <class Coeff>
class BasicLaurentPoly {
 public:
  using Terms = std::map<int, Coeff>;

  BasicLaurentPoly() = default;
  BasicLaurentPoly(Coeff c) { add_term(0, std::move(c)); }  // NOLINT: implicit constant
  BasicLaurentPoly(std::initializer_list<std::pair<const int, Coeff>> terms) {
    for (const auto& [e, c] : terms) add_term(e, c);
  }

  static BasicLaurentPoly monomial(Coeff c, int exponent) {
    BasicLaurentPoly p;
    p.add_term(exponent, std::move(c));
    return p;
  }
  static BasicLaurentPoly v() { return monomial(Coeff(1), 1); }
  static BasicLaurentPoly v_inv() { return monomial(Coeff(1), -1); }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  Coeff coeff(int exponent) const {
    auto it = terms_.find(exponent);
    return it == terms_.end() ? Coeff(0) : it->second;
  }
  int min_degree() const { return terms_.empty() ? 0 : terms_.begin()->first; }
  int max_degree() const { return terms_.empty() ? 0 : terms_.rbegin()->first; }

  void add_term(int exponent, const Coeff& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(exponent, c);
    if (!inserted) {
      it->second = detail::coeff_add(it->second, c);
      if (it->second == 0) terms_.erase(it);
    }
  }

  BasicLaurentPoly& operator+=(const BasicLaurentPoly& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  BasicLaurentPoly& operator-=(const BasicLaurentPoly& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, detail::coeff_sub(Coeff(0), c));
    return *this;
  }
  BasicLaurentPoly& operator*=(const BasicLaurentPoly& o) { return *this = *this * o; }

  friend BasicLaurentPoly operator+(BasicLaurentPoly a, const BasicLaurentPoly& b) { return a += b; }
  friend BasicLaurentPoly operator-(BasicLaurentPoly a, const BasicLaurentPoly& b) { return a -= b; }
  friend BasicLaurentPoly operator-(const BasicLaurentPoly& a) { return BasicLaurentPoly() - a; }
  friend BasicLaurentPoly operator*(const BasicLaurentPoly& a, const BasicLaurentPoly& b) {
    BasicLaurentPoly r;
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) r.add_term(ea + eb, detail::coeff_mul(ca, cb));
    return r;
  }
  friend bool operator==(const BasicLaurentPoly&, const BasicLaurentPoly&) = default;

  // p(v) -> p(v^{-1})
  BasicLaurentPoly bar() const {
    BasicLaurentPoly r;
    for (const auto& [e, c] : terms_) r.terms_.emplace(-e, c);
    return r;
  }
  // p(v) -> v^k p(v)
  BasicLaurentPoly shifted(int k) const {
    BasicLaurentPoly r;
    for (const auto& [e, c] : terms_) r.terms_.emplace(e + k, c);
    return r;
  }
  // p(v) -> p(v^k), k > 0
  BasicLaurentPoly dilated(int k) const {
    BasicLaurentPoly r;
    for (const auto& [e, c] : terms_) r.terms_.emplace(e * k, c);
    return r;
  }
  Coeff eval_at_one() const {
    Coeff s(0);
    for (const auto& [e, c] : terms_) s = detail::coeff_add(s, c);
    return s;
  }
  bool is_bar_invariant() const { return bar() == *this; }
  bool has_nonnegative_coefficients() const {
    for (const auto& [e, c] : terms_)
      if (c < 0) return false;
    return true;
  }
  Coeff min_coefficient() const {
    Coeff m(0);
    bool first = true;
    for (const auto& [e, c] : terms_) {
      if (first || c < m) m = c;
      first = false;
    }
    return m;
  }

  // Text form, highest power first: "v^3+v", "1-2*v^-1", "0".
  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      const auto& [e, c] = *it;
      std::string term;
      if (e == 0) {
        term = detail::coeff_str(c);
      } else {
        std::string mono = e == 1 ? "v" : "v^" + std::to_string(e);
        if (c == 1)
          term = mono;
        else if (c == -1)
          term = "-" + mono;
        else
          term = detail::coeff_str(c) + "*" + mono;
      }
      if (!out.empty() && term.front() != '-') out += '+';
      out += term;
    }
    return out;
  }

  // Accepts sums of terms of the form c, v, v^k, c*v^k, cv^k; whitespace ignored.
  static BasicLaurentPoly parse(std::string_view text) {
    BasicLaurentPoly p;
    detail::parse_laurent_terms(text, [&](const std::string& coeff, int exponent) {
      if constexpr (std::is_same_v<Coeff, std::int64_t>)
        p.add_term(exponent, detail::parse_int64(coeff));
      else
        p.add_term(exponent, Coeff(coeff));
    });
    return p;
  }

 private:
  Terms terms_;
};

using LaurentPoly = BasicLaurentPoly<std::int64_t>;
using BigLaurentPoly = BasicLaurentPoly<BigInt>;

// [n]_v = v^{n-1} + v^{n-3} + ... + v^{1-n}; [0]_v = 0.
template <class Coeff = std::int64_t>
BasicLaurentPoly<Coeff> quantum_integer(int n) {
  BasicLaurentPoly<Coeff> r;
  for (int k = 0; k < n; ++k) r.add_term(n - 1 - 2 * k, Coeff(1));
  return r;
}

template <class Coeff = std::int64_t>
BasicLaurentPoly<Coeff> quantum_factorial(int n) {
  BasicLaurentPoly<Coeff> r(Coeff(1));
  for (int k = 2; k <= n; ++k) r *= quantum_integer<Coeff>(k);
  return r;
}

namespace detail {

template <class Emit>
void parse_laurent_terms(std::string_view text, Emit&& emit) {
  std::string s;
  for (char ch : text)
    if (ch != ' ' && ch != '\t') s += ch;
  if (s.empty()) throw ParseError("empty polynomial");
  std::size_t i = 0;
  auto fail = [&](const std::string& why) {
    throw ParseError("bad polynomial '" + std::string(text) + "': " + why);
  };
  auto read_digits = [&]() {
    std::size_t start = i;
    while (i < s.size() && s[i] >= '0' && s[i] <= '9') ++i;
    return s.substr(start, i - start);
  };
  bool first = true;
  while (i < s.size()) {
    bool negative = false;
    if (s[i] == '+' || s[i] == '-') {
      negative = s[i] == '-';
      ++i;
    } else if (!first) {
      fail("expected '+' or '-'");
    }
    first = false;
    std::string digits = read_digits();
    if (i < s.size() && s[i] == '*') {
      if (digits.empty()) fail("'*' without coefficient");
      ++i;
      if (i >= s.size() || s[i] != 'v') fail("expected 'v' after '*'");
    }
    int exponent = 0;
    if (i < s.size() && s[i] == 'v') {
      ++i;
      exponent = 1;
      if (i < s.size() && s[i] == '^') {
        ++i;
        bool eneg = false;
        if (i < s.size() && (s[i] == '-' || s[i] == '+')) {
          eneg = s[i] == '-';
          ++i;
        }
        std::string e = read_digits();
        if (e.empty()) fail("missing exponent");
        if (e.size() > 9) fail("exponent out of range");
        exponent = std::stoi(e) * (eneg ? -1 : 1);
      }
    } else if (digits.empty()) {
      fail("expected a term");
    }
    if (digits.empty()) digits = "1";
    emit((negative ? "-" : "") + digits, exponent);
  }
}

}  // namespace detail

}  // namespace coxkl
