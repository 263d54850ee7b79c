#pragma once

// SL2 characters in characteristic p, Pascal's triangle mod p and the
// Gaussian binomials at roots of unity.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "coxkl/laurent.hpp"

namespace coxkl {

// weight -> multiplicity, no zeros stored
class CharPoly {
 public:
  using Terms = std::map<std::int64_t, std::int64_t>;

  CharPoly() = default;
  explicit CharPoly(Terms t);

  const Terms& terms() const { return terms_; }
  std::int64_t mult(std::int64_t weight) const;
  std::int64_t dimension() const;
  bool is_symmetric() const;
  // each multiplicity <= that of o
  bool dominated_by(const CharPoly& o) const;
  CharPoly dilated(std::int64_t k) const;  // e^m -> e^{km}
  // "e^-3 + e^3", multiplicities as "2*e^0"
  std::string to_string() const;

  friend CharPoly operator*(const CharPoly& a, const CharPoly& b);
  friend bool operator==(const CharPoly&, const CharPoly&) = default;

 private:
  Terms terms_;
};

CharPoly nabla_char(std::int64_t n);
// least significant digit first; 0 -> {}
std::vector<std::int64_t> p_adic_digits(std::int64_t m, std::int64_t p);
CharPoly simple_char(std::int64_t m, std::int64_t p);
std::int64_t steinberg_dim(std::int64_t m, std::int64_t p);
// C(n, i) mod p by Lucas
std::int64_t binom_mod_p(std::int64_t n, std::int64_t i, std::int64_t p);
bool weight_nonzero(std::int64_t m, std::int64_t i, std::int64_t p);

// rows 0..rows-1 of Pascal's triangle mod p, by the additive recursion
std::vector<std::vector<std::int64_t>> pascal_mod_p(int rows, std::int64_t p);

// Balanced Gaussian binomials [n, i] for 0 <= n < rows, via
// [n,i] = v^i [n-1,i] + v^{i-n} [n-1,i-1].
std::vector<std::vector<BigLaurentPoly>> gaussian_triangle(int rows);
BigLaurentPoly gaussian_binom(int n, int i);

// Element of Z[x]/Phi_n, coefficients of 1, x, ..., x^{deg-1}.
struct CycloValue {
  int n = 1;
  std::vector<BigInt> coeffs;

  bool is_zero() const;
  bool is_integer() const;  // only the constant coefficient may be nonzero
  std::string to_string() const;
  friend bool operator==(const CycloValue&, const CycloValue&) = default;
  friend CycloValue operator*(const BigInt& c, const CycloValue& z);
};

std::vector<BigInt> cyclotomic_polynomial(int n);  // monic, low degree first

// v -> x, v^-1 -> x^{n-1}
template <class Coeff>
CycloValue eval_cyclotomic(const BasicLaurentPoly<Coeff>& poly, int n);

// [n, i] at a primitive p-th root of unity for 0 <= n < rows, computed
// directly in Z[x]/(x^p - 1) and reduced at the end.
std::vector<std::vector<CycloValue>> quantum_triangle_at_root(int rows, int p);

// [n,i] at zeta_p == C(n div p, i div p) * [n mod p, i mod p] at zeta_p
bool q_lucas_holds(int n, int i, int p);
// all (n, i) with n <= max_n where it fails, in row order
std::vector<std::pair<int, int>> q_lucas_failures(int max_n, int p);

enum class ImageFormat { Pgm, Svg };
ImageFormat parse_image_format(const std::string& text);

// Triangle of levels 0..max_level; level 0 is background. Cell (n, i) sits
// at column rows-1-n+2i of row n.
std::string render_triangle(const std::vector<std::vector<std::int64_t>>& levels, std::int64_t max_level,
                            ImageFormat format);
void pascal_image(int rows, std::int64_t p, ImageFormat format, const std::string& path);
void quantum_triangle_image(int rows, int p, ImageFormat format, const std::string& path);

}  // namespace coxkl
