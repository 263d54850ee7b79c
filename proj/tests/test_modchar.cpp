#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "coxkl/modchar.hpp"
#include "oracles.hpp"

using namespace coxkl;

namespace {

constexpr double kNumericTol = 1e-9;  // complex-double oracle vs exact integer

// Evaluated triangle at a primitive cube root of unity, rows 0..20, as
// displayed in the source figure (blank cells are 0).
const char* const kCubeRootTriangle[] = {
    "1",
    "1 1",
    "1 -1 1",
    "1 0 0 1",
    "1 1 0 1 1",
    "1 -1 1 1 -1 1",
    "1 0 0 2 0 0 1",
    "1 1 0 2 2 0 1 1",
    "1 -1 1 2 -2 2 1 -1 1",
    "1 0 0 3 0 0 3 0 0 1",
    "1 1 0 3 3 0 3 3 0 1 1",
    "1 -1 1 3 -3 3 3 -3 3 1 -1 1",
    "1 0 0 4 0 0 6 0 0 4 0 0 1",
    "1 1 0 4 4 0 6 6 0 4 4 0 1 1",
    "1 -1 1 4 -4 4 6 -6 6 4 -4 4 1 -1 1",
    "1 0 0 5 0 0 10 0 0 10 0 0 5 0 0 1",
    "1 1 0 5 5 0 10 10 0 10 10 0 5 5 0 1 1",
    "1 -1 1 5 -5 5 10 -10 10 10 -10 10 5 -5 5 1 -1 1",
    "1 0 0 6 0 0 15 0 0 20 0 0 15 0 0 6 0 0 1",
    "1 1 0 6 6 0 15 15 0 20 20 0 15 15 0 6 6 0 1 1",
    "1 -1 1 6 -6 6 15 -15 15 20 -20 20 15 -15 15 6 -6 6 1 -1 1",
};

std::vector<long long> parse_row(const char* s) {
  std::istringstream in(s);
  std::vector<long long> out;
  long long x;
  while (in >> x) out.push_back(x);
  return out;
}

// [n]!/([i]![n-i]!) by exact long division from the top degree.
BigLaurentPoly ratio_binom(int n, int i) {
  auto num = quantum_factorial<BigInt>(n);
  auto den = quantum_factorial<BigInt>(i) * quantum_factorial<BigInt>(n - i);
  BigLaurentPoly q, rem = num;
  while (!rem.is_zero()) {
    int e = rem.max_degree() - den.max_degree();
    REQUIRE(e >= num.min_degree() - den.min_degree());  // otherwise not exact
    BigInt lead = rem.coeff(rem.max_degree()), d = den.coeff(den.max_degree());
    REQUIRE(lead % d == 0);
    BigLaurentPoly t = BigLaurentPoly::monomial(lead / d, e);
    q += t;
    rem -= t * den;
  }
  return q;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_SUITE("modchar") {
  TEST_CASE("nabla and simple characters") {
    CHECK(nabla_char(0) == CharPoly(CharPoly::Terms{{0, 1}}));
    CHECK(nabla_char(2) == CharPoly(CharPoly::Terms{{-2, 1}, {0, 1}, {2, 1}}));
    CHECK(nabla_char(5).terms().size() == 6);
    CHECK(p_adic_digits(3, 3) == std::vector<std::int64_t>{0, 1});
    CHECK(p_adic_digits(6, 3) == std::vector<std::int64_t>{0, 2});
    CHECK(p_adic_digits(0, 3).empty());
    CHECK_THROWS_AS(p_adic_digits(3, 4), ValidationError);
    // the seven-line table for p = 3
    const char* table[] = {"e^0",
                           "e^-1 + e^1",
                           "e^-2 + e^0 + e^2",
                           "e^-3 + e^3",
                           "e^-4 + e^-2 + e^2 + e^4",
                           "e^-5 + e^-3 + e^-1 + e^1 + e^3 + e^5",
                           "e^-6 + e^0 + e^6"};
    for (int m = 0; m <= 6; ++m) CHECK(simple_char(m, 3).to_string() == table[m]);
    CHECK(steinberg_dim(3, 3) == 2);
    CHECK(steinberg_dim(6, 3) == 3);
    for (std::int64_t p : {2, 3, 5, 7}) CHECK(steinberg_dim(p - 1, p) == p);
  }

  TEST_CASE("character properties") {
    for (std::int64_t p : {2, 3, 5, 7})
      for (std::int64_t m = 0; m <= 200; ++m) {
        CharPoly L = simple_char(m, p);
        CHECK(L.dimension() == steinberg_dim(m, p));
        CHECK(L.is_symmetric());
        CHECK(L.dominated_by(nabla_char(m)));
        // simple iff every weight survives, i.e. m + 1 = a p^k with 1 <= a <= p
        bool all_digits_top = m < p;
        for (std::int64_t q = p; q <= m + 1; q *= p)
          if ((m + 1) % q == 0 && (m + 1) / q <= p) all_digits_top = true;
        CHECK((L == nabla_char(m)) == all_digits_top);
        if (m < p) CHECK(L == nabla_char(m));
        for (std::int64_t i = 0; i <= m; ++i) CHECK((L.mult(m - 2 * i) != 0) == weight_nonzero(m, i, p));
      }
  }

  TEST_CASE("binomials mod p") {
    CHECK(binom_mod_p(3, 1, 3) == 0);
    CHECK(binom_mod_p(4, 2, 3) == 0);
    CHECK(binom_mod_p(4, 1, 3) == 1);
    CHECK(binom_mod_p(17, 0, 5) == 1);
    CHECK_THROWS_AS(binom_mod_p(3, 4, 3), ValidationError);
    for (int p : {2, 3, 5, 7}) {
      auto t = oracle::pascal_mod(301, p);
      for (int n = 0; n <= 300; ++n)
        for (int i = 0; i <= n; ++i) REQUIRE(binom_mod_p(n, i, p) == t[n][i]);
    }
  }

  TEST_CASE("Pascal triangle mod 3") {
    auto t = pascal_mod_p(6, 3);
    std::vector<std::vector<std::int64_t>> shown = {
        {1}, {1, 1}, {1, 2, 1}, {1, 0, 0, 1}, {1, 1, 0, 1, 1}, {1, 2, 1, 1, 2, 1}};
    CHECK(t == shown);
    for (int k = 1; k <= 5; ++k) {
      int n = 1;
      for (int j = 0; j < k; ++j) n *= 3;
      auto rows = pascal_mod_p(n + 1, 3);
      for (int i = 1; i < n; ++i) CHECK(rows[n][i] == 0);
    }
  }

  TEST_CASE("images") {
    auto dir = std::filesystem::temp_directory_path() / "coxkl_modchar_test";
    std::filesystem::create_directories(dir);
    auto pgm = (dir / "t.pgm").string();
    pascal_image(6, 3, ImageFormat::Pgm, pgm);
    std::string bytes = slurp(pgm);
    std::string header = "P5\n11 6\n2\n";
    REQUIRE(bytes.size() == header.size() + 66);
    CHECK(bytes.substr(0, header.size()) == header);
    // row 5: 1 2 1 1 2 1 at columns 0,2,...,10
    std::string row5 = bytes.substr(header.size() + 55, 11);
    CHECK(row5 == std::string("\1\0\2\0\1\0\1\0\2\0\1", 11));
    // row 0: single cell in the middle
    CHECK(bytes.substr(header.size(), 11) == std::string("\0\0\0\0\0\1\0\0\0\0\0", 11));

    pascal_image(1, 5, ImageFormat::Pgm, pgm);
    CHECK(slurp(pgm) == std::string("P5\n1 1\n4\n\1", 10));

    auto svg = (dir / "t.svg").string();
    pascal_image(6, 3, ImageFormat::Svg, svg);
    std::string s = slurp(svg);
    CHECK(s.rfind("<svg", 0) == 0);
    // 21 cells minus 3 zeros
    std::size_t cells = 0;
    for (std::size_t at = s.find("hsl("); at != std::string::npos; at = s.find("hsl(", at + 1)) ++cells;
    CHECK(cells == 18);

    auto q = (dir / "q.pgm").string();
    quantum_triangle_image(21, 3, ImageFormat::Pgm, q);
    std::string qb = slurp(q);
    std::string qh = "P5\n41 21\n1\n";
    REQUIRE(qb.size() == qh.size() + 41 * 21);
    for (int n = 0; n <= 20; ++n) {
      auto row = parse_row(kCubeRootTriangle[n]);
      for (int i = 0; i <= n; ++i) CHECK(qb[qh.size() + 41 * n + 20 - n + 2 * i] == (row[i] != 0 ? 1 : 0));
    }
    CHECK_THROWS_AS(pascal_image(3, 3, ImageFormat::Pgm, (dir / "missing" / "x.pgm").string()), IoError);
    CHECK_THROWS_AS(parse_image_format("png"), ValidationError);
    std::filesystem::remove_all(dir);
  }

  TEST_CASE("Gaussian binomials") {
    auto v2 = [](int n) { return quantum_integer<BigInt>(n).dilated(2); };
    CHECK(gaussian_binom(4, 2) == quantum_integer<BigInt>(3) * v2(2));
    CHECK(gaussian_binom(5, 2) == quantum_integer<BigInt>(5) * v2(2));
    CHECK(gaussian_binom(7, 0) == BigLaurentPoly(BigInt(1)));
    auto tri = gaussian_triangle(101);
    for (int n = 0; n <= 100; ++n) {
      BigInt c = 1;
      for (int i = 0; i <= n; ++i) {
        CHECK(tri[n][i].eval_at_one() == c);
        CHECK(tri[n][i].bar() == tri[n][i]);
        CHECK(tri[n][i].has_nonnegative_coefficients());
        c = c * (n - i) / (i + 1);
      }
    }
    CHECK(tri[12][5] == gaussian_binom(12, 5));
    for (auto [n, i] : {std::pair{4, 2}, {6, 3}, {9, 4}, {12, 5}, {15, 7}, {10, 0}})
      CHECK(ratio_binom(n, i) == tri[n][i]);
  }

  TEST_CASE("cyclotomic evaluation") {
    CHECK(cyclotomic_polynomial(1) == std::vector<BigInt>{-1, 1});
    CHECK(cyclotomic_polynomial(3) == std::vector<BigInt>{1, 1, 1});
    CHECK(cyclotomic_polynomial(4) == std::vector<BigInt>{1, 0, 1});
    CHECK(cyclotomic_polynomial(6) == std::vector<BigInt>{1, -1, 1});
    CHECK(cyclotomic_polynomial(12) == std::vector<BigInt>{1, 0, -1, 0, 1});
    auto z = [](int n, int i) { return eval_cyclotomic(gaussian_binom(n, i), 3); };
    CHECK(z(6, 3).to_string() == "2");
    CHECK(z(8, 4).to_string() == "-2");
    CHECK(z(2, 1).to_string() == "-1");
    CHECK(eval_cyclotomic(LaurentPoly::v(), 3).to_string() == "x mod Phi_3");

    auto direct = quantum_triangle_at_root(21, 3);
    for (int n = 0; n <= 20; ++n) {
      auto row = parse_row(kCubeRootTriangle[n]);
      REQUIRE(row.size() == static_cast<std::size_t>(n + 1));
      for (int i = 0; i <= n; ++i) {
        CHECK(direct[n][i].is_integer());
        CHECK(direct[n][i].to_string() == std::to_string(row[i]));
        CHECK(z(n, i) == direct[n][i]);
      }
    }
    // floating-point oracle for other orders
    for (int p : {2, 3, 5, 7}) {
      auto exact = quantum_triangle_at_root(30, p);
      auto num = oracle::quantum_triangle_numeric(30, p);
      const double pi = std::acos(-1.0);
      for (int n = 0; n < 30; ++n)
        for (int i = 0; i <= n; ++i) {
          std::complex<double> val = 0;
          for (std::size_t k = 0; k < exact[n][i].coeffs.size(); ++k)
            val += exact[n][i].coeffs[k].convert_to<double>() * std::polar(1.0, 2 * pi * k / p);
          CHECK(std::abs(val - num[n][i]) < kNumericTol * (1 + std::abs(num[n][i])));
        }
    }
  }

  TEST_CASE("q-Lucas") {
    for (int p : {3, 5}) CHECK(q_lucas_failures(40, p).empty());
    CHECK(q_lucas_holds(8, 4, 3));
    // at v = -1 the balanced binomial does not factor this way
    CHECK_FALSE(q_lucas_holds(2, 1, 2));
    auto bad = q_lucas_failures(40, 2);
    REQUIRE_FALSE(bad.empty());
    CHECK(bad.front() == std::pair{2, 1});
    auto rows = quantum_triangle_at_root(4, 3);
    CHECK(rows[3][1].is_zero());
    CHECK(rows[3][2].is_zero());
    for (int i = 0; i <= 2; ++i) CHECK_FALSE(rows[2][i].is_zero());
  }
}
