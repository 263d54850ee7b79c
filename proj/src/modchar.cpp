#include "coxkl/modchar.hpp"

#include <fstream>
#include <sstream>

#include "coxkl/checked.hpp"
#include "coxkl/error.hpp"

namespace coxkl {

namespace {

void require_prime(std::int64_t p) {
  bool prime = p >= 2;
  for (std::int64_t d = 2; prime && d * d <= p; ++d)
    if (p % d == 0) prime = false;
  if (!prime) throw ValidationError(std::to_string(p) + " is not prime");
}

std::int64_t pow_mod(std::int64_t b, std::int64_t e, std::int64_t p) {
  std::int64_t r = 1;
  b %= p;
  while (e > 0) {
    if (e & 1) r = static_cast<std::int64_t>(static_cast<__int128>(r) * b % p);
    b = static_cast<std::int64_t>(static_cast<__int128>(b) * b % p);
    e >>= 1;
  }
  return r;
}

// C(a, b) mod p for 0 <= a < p
std::int64_t small_binom_mod(std::int64_t a, std::int64_t b, std::int64_t p) {
  if (b < 0 || b > a) return 0;
  std::int64_t num = 1, den = 1;
  for (std::int64_t j = 0; j < b; ++j) {
    num = static_cast<std::int64_t>(static_cast<__int128>(num) * (a - j) % p);
    den = static_cast<std::int64_t>(static_cast<__int128>(den) * (j + 1) % p);
  }
  return static_cast<std::int64_t>(static_cast<__int128>(num) * pow_mod(den, p - 2, p) % p);
}

// Reduce a polynomial (low degree first) modulo the monic `mod`.
std::vector<BigInt> reduce(std::vector<BigInt> a, const std::vector<BigInt>& mod) {
  const std::size_t d = mod.size() - 1;
  for (std::size_t k = a.size(); k-- > d;) {
    if (a[k] == 0) continue;
    BigInt c = a[k];
    for (std::size_t j = 0; j <= d; ++j) a[k - d + j] -= c * mod[j];
  }
  a.resize(d);
  return a;
}


// exact division by a monic polynomial
std::vector<BigInt> poly_div_exact(std::vector<BigInt> a, const std::vector<BigInt>& b) {
  const std::size_t db = b.size() - 1;
  std::vector<BigInt> q(a.size() - db);
  for (std::size_t k = a.size(); k-- > db;) {
    BigInt c = a[k];
    q[k - db] = c;
    for (std::size_t j = 0; j <= db; ++j) a[k - db + j] -= c * b[j];
  }
  for (const auto& x : a)
    if (x != 0) throw ComputationError("cyclotomic division left a remainder");
  return q;
}

// image of a row in Z[x]/(x^n - 1)
using Circle = std::vector<BigInt>;

Circle rotate(const Circle& c, int k) {
  const int n = static_cast<int>(c.size());
  Circle r(n);
  for (int j = 0; j < n; ++j) r[((j + k) % n + n) % n] = c[j];
  return r;
}

CycloValue from_circle(const Circle& c, int n, const std::vector<BigInt>& phi) {
  CycloValue z;
  z.n = n;
  z.coeffs = reduce(c, phi);
  return z;
}

void write_file(const std::string& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << bytes;
  if (!out) throw IoError("failed writing '" + path + "'");
}

}  // namespace

CharPoly::CharPoly(Terms t) {
  for (const auto& [w, m] : t) {
    if (m < 0) throw ValidationError("negative multiplicity in a character");
    if (m != 0) terms_[w] = m;
  }
}

std::int64_t CharPoly::mult(std::int64_t weight) const {
  auto it = terms_.find(weight);
  return it == terms_.end() ? 0 : it->second;
}

std::int64_t CharPoly::dimension() const {
  std::int64_t d = 0;
  for (const auto& [w, m] : terms_) d = checked_add(d, m);
  return d;
}

bool CharPoly::is_symmetric() const {
  for (const auto& [w, m] : terms_)
    if (mult(-w) != m) return false;
  return true;
}

bool CharPoly::dominated_by(const CharPoly& o) const {
  for (const auto& [w, m] : terms_)
    if (m > o.mult(w)) return false;
  return true;
}

CharPoly CharPoly::dilated(std::int64_t k) const {
  Terms t;
  for (const auto& [w, m] : terms_) t[checked_mul(w, k)] = m;
  return CharPoly(std::move(t));
}

std::string CharPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::string s;
  for (const auto& [w, m] : terms_) {
    if (!s.empty()) s += " + ";
    if (m != 1) s += std::to_string(m) + "*";
    s += "e^" + std::to_string(w);
  }
  return s;
}

CharPoly operator*(const CharPoly& a, const CharPoly& b) {
  CharPoly::Terms t;
  for (const auto& [wa, ma] : a.terms_)
    for (const auto& [wb, mb] : b.terms_) {
      auto& slot = t[checked_add(wa, wb)];
      slot = checked_add(slot, checked_mul(ma, mb));
    }
  return CharPoly(std::move(t));
}

CharPoly nabla_char(std::int64_t n) {
  if (n < 0) throw ValidationError("highest weight must be nonnegative");
  CharPoly::Terms t;
  for (std::int64_t w = -n; w <= n; w += 2) t[w] = 1;
  return CharPoly(std::move(t));
}

std::vector<std::int64_t> p_adic_digits(std::int64_t m, std::int64_t p) {
  require_prime(p);
  if (m < 0) throw ValidationError("p-adic digits of a negative number");
  std::vector<std::int64_t> d;
  for (; m > 0; m /= p) d.push_back(m % p);
  return d;
}

CharPoly simple_char(std::int64_t m, std::int64_t p) {
  CharPoly ch(CharPoly::Terms{{0, 1}});
  std::int64_t scale = 1;
  auto digits = p_adic_digits(m, p);
  for (std::size_t i = 0; i < digits.size(); ++i) {
    ch = ch * nabla_char(digits[i]).dilated(scale);
    if (i + 1 < digits.size()) scale = checked_mul(scale, p);
  }
  return ch;
}

std::int64_t steinberg_dim(std::int64_t m, std::int64_t p) {
  std::int64_t d = 1;
  for (auto digit : p_adic_digits(m, p)) d = checked_mul(d, digit + 1);
  return d;
}

std::int64_t binom_mod_p(std::int64_t n, std::int64_t i, std::int64_t p) {
  require_prime(p);
  if (i < 0 || i > n) throw ValidationError("binomial C(" + std::to_string(n) + "," + std::to_string(i) + ") needs 0 <= i <= n");
  std::int64_t r = 1;
  while (n > 0 || i > 0) {
    r = static_cast<std::int64_t>(static_cast<__int128>(r) * small_binom_mod(n % p, i % p, p) % p);
    if (r == 0) return 0;
    n /= p;
    i /= p;
  }
  return r;
}

bool weight_nonzero(std::int64_t m, std::int64_t i, std::int64_t p) { return binom_mod_p(m, i, p) != 0; }

std::vector<std::vector<std::int64_t>> pascal_mod_p(int rows, std::int64_t p) {
  require_prime(p);
  if (rows < 1) throw ValidationError("need at least one row");
  std::vector<std::vector<std::int64_t>> t(rows);
  for (int n = 0; n < rows; ++n) {
    t[n].assign(n + 1, 1);
    for (int i = 1; i < n; ++i) t[n][i] = (t[n - 1][i - 1] + t[n - 1][i]) % p;
  }
  return t;
}

std::vector<std::vector<BigLaurentPoly>> gaussian_triangle(int rows) {
  if (rows < 0) throw ValidationError("negative row count");
  std::vector<std::vector<BigLaurentPoly>> t(rows);
  for (int n = 0; n < rows; ++n) {
    t[n].assign(n + 1, BigLaurentPoly(BigInt(1)));
    for (int i = 1; i < n; ++i) t[n][i] = t[n - 1][i].shifted(i) + t[n - 1][i - 1].shifted(i - n);
  }
  return t;
}

BigLaurentPoly gaussian_binom(int n, int i) {
  if (n < 0 || i < 0 || i > n) throw ValidationError("Gaussian binomial needs 0 <= i <= n");
  // one row at a time
  std::vector<BigLaurentPoly> row{BigLaurentPoly(BigInt(1))};
  for (int m = 1; m <= n; ++m) {
    std::vector<BigLaurentPoly> next(m + 1, BigLaurentPoly(BigInt(1)));
    for (int k = 1; k < m; ++k) next[k] = row[k].shifted(k) + row[k - 1].shifted(k - m);
    row = std::move(next);
  }
  return row[i];
}

bool CycloValue::is_zero() const {
  for (const auto& c : coeffs)
    if (c != 0) return false;
  return true;
}

bool CycloValue::is_integer() const {
  for (std::size_t k = 1; k < coeffs.size(); ++k)
    if (coeffs[k] != 0) return false;
  return true;
}

std::string CycloValue::to_string() const {
  if (is_integer()) return coeffs.empty() ? "0" : coeffs[0].str();
  BigLaurentPoly p;
  for (std::size_t k = 0; k < coeffs.size(); ++k) p.add_term(static_cast<int>(k), coeffs[k]);
  std::string s = p.to_string();
  for (auto& ch : s)
    if (ch == 'v') ch = 'x';
  return s + " mod Phi_" + std::to_string(n);
}

CycloValue operator*(const BigInt& c, const CycloValue& z) {
  CycloValue r = z;
  for (auto& x : r.coeffs) x *= c;
  return r;
}

std::vector<BigInt> cyclotomic_polynomial(int n) {
  if (n < 1) throw ValidationError("cyclotomic order must be positive");
  // x^n - 1 divided by Phi_d for proper divisors d
  std::vector<BigInt> p(n + 1);
  p[0] = -1;
  p[n] = 1;
  for (int d = 1; d < n; ++d)
    if (n % d == 0) p = poly_div_exact(p, cyclotomic_polynomial(d));
  return p;
}

template <class Coeff>
CycloValue eval_cyclotomic(const BasicLaurentPoly<Coeff>& poly, int n) {
  auto phi = cyclotomic_polynomial(n);
  Circle c(n);
  for (const auto& [e, k] : poly.terms()) c[((e % n) + n) % n] += BigInt(k);
  return from_circle(c, n, phi);
}

template CycloValue eval_cyclotomic(const BasicLaurentPoly<std::int64_t>&, int);
template CycloValue eval_cyclotomic(const BasicLaurentPoly<BigInt>&, int);

std::vector<std::vector<CycloValue>> quantum_triangle_at_root(int rows, int p) {
  if (rows < 1) throw ValidationError("need at least one row");
  if (p < 1) throw ValidationError("root of unity order must be positive");
  auto phi = cyclotomic_polynomial(p);
  Circle one(p);
  one[0] = 1;
  std::vector<Circle> row{one};
  std::vector<std::vector<CycloValue>> out;
  out.push_back({from_circle(one, p, phi)});
  for (int n = 1; n < rows; ++n) {
    std::vector<Circle> next(n + 1, one);
    for (int i = 1; i < n; ++i) {
      next[i] = rotate(row[i], i);
      Circle b = rotate(row[i - 1], i - n);
      for (int j = 0; j < p; ++j) next[i][j] += b[j];
    }
    row = std::move(next);
    std::vector<CycloValue> vals;
    for (const auto& c : row) vals.push_back(from_circle(c, p, phi));
    out.push_back(std::move(vals));
  }
  return out;
}

namespace {

BigInt exact_binom(int n, int k) {
  if (k < 0 || k > n) return 0;
  BigInt c = 1;
  for (int j = 0; j < k; ++j) c = c * (n - j) / (j + 1);
  return c;
}

bool q_lucas_at(const std::vector<std::vector<CycloValue>>& tri, int n, int i, int p) {
  const int n0 = n % p, i0 = i % p;
  if (i0 > n0) return tri[n][i].is_zero();
  return tri[n][i] == exact_binom(n / p, i / p) * tri[n0][i0];
}

}  // namespace

bool q_lucas_holds(int n, int i, int p) {
  require_prime(p);
  if (n < 0 || i < 0 || i > n) throw ValidationError("q-Lucas needs 0 <= i <= n");
  // the triangle is only used at (n, i) and (n mod p, i mod p)
  std::vector<std::vector<CycloValue>> tri(n + 1);
  tri[n].resize(n + 1);
  tri[n][i] = eval_cyclotomic(gaussian_binom(n, i), p);
  const int n0 = n % p, i0 = i % p;
  if (i0 <= n0) {
    tri[n0].resize(n0 + 1);
    tri[n0][i0] = eval_cyclotomic(gaussian_binom(n0, i0), p);
  }
  return q_lucas_at(tri, n, i, p);
}

std::vector<std::pair<int, int>> q_lucas_failures(int max_n, int p) {
  require_prime(p);
  auto polys = gaussian_triangle(max_n + 1);
  std::vector<std::vector<CycloValue>> tri(max_n + 1);
  for (int n = 0; n <= max_n; ++n)
    for (const auto& g : polys[n]) tri[n].push_back(eval_cyclotomic(g, p));
  std::vector<std::pair<int, int>> bad;
  for (int n = 0; n <= max_n; ++n)
    for (int i = 0; i <= n; ++i)
      if (!q_lucas_at(tri, n, i, p)) bad.emplace_back(n, i);
  return bad;
}

ImageFormat parse_image_format(const std::string& text) {
  if (text == "pgm") return ImageFormat::Pgm;
  if (text == "svg") return ImageFormat::Svg;
  throw ValidationError("unknown image format '" + text + "' (pgm or svg)");
}

std::string render_triangle(const std::vector<std::vector<std::int64_t>>& levels, std::int64_t max_level,
                            ImageFormat format) {
  const int rows = static_cast<int>(levels.size());
  if (rows < 1) throw ValidationError("need at least one row");
  if (max_level < 1 || max_level > 65535) throw ValidationError("level count out of range for an image");
  const int width = 2 * rows - 1;
  std::ostringstream out;
  if (format == ImageFormat::Pgm) {
    out << "P5\n" << width << " " << rows << "\n" << max_level << "\n";
    const bool wide = max_level > 255;
    std::vector<std::int64_t> line(width);
    for (int n = 0; n < rows; ++n) {
      std::fill(line.begin(), line.end(), 0);
      for (int i = 0; i <= n; ++i) line[rows - 1 - n + 2 * i] = levels[n][i];
      for (auto v : line) {
        if (wide) out.put(static_cast<char>((v >> 8) & 0xff));
        out.put(static_cast<char>(v & 0xff));
      }
    }
    return out.str();
  }
  // cells are 2 units wide, so neighbours in a row touch
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << 4 * rows << "\" height=\"" << 2 * rows
      << "\" viewBox=\"0 0 " << 2 * rows << " " << rows << "\" shape-rendering=\"crispEdges\">\n";
  out << "<rect width=\"" << 2 * rows << "\" height=\"" << rows << "\" fill=\"white\"/>\n";
  for (int n = 0; n < rows; ++n)
    for (int i = 0; i <= n; ++i) {
      std::int64_t r = levels[n][i];
      if (r == 0) continue;
      std::int64_t hue = 360 * r / max_level % 360;
      out << "<rect x=\"" << rows - 1 - n + 2 * i << "\" y=\"" << n << "\" width=\"2\" height=\"1\" fill=\"hsl(" << hue
          << ",80%,45%)\"/>\n";
    }
  out << "</svg>\n";
  return out.str();
}

void pascal_image(int rows, std::int64_t p, ImageFormat format, const std::string& path) {
  write_file(path, render_triangle(pascal_mod_p(rows, p), std::max<std::int64_t>(p - 1, 1), format));
}

void quantum_triangle_image(int rows, int p, ImageFormat format, const std::string& path) {
  require_prime(p);
  auto vals = quantum_triangle_at_root(rows, p);
  std::vector<std::vector<std::int64_t>> levels(vals.size());
  for (std::size_t n = 0; n < vals.size(); ++n)
    for (const auto& z : vals[n]) levels[n].push_back(z.is_zero() ? 0 : 1);
  write_file(path, render_triangle(levels, 1, format));
}

}  // namespace coxkl
