#include <doctest.h>

#include <algorithm>
#include <set>

#include "coxkl/alcoves.hpp"
#include "coxkl/error.hpp"
#include "coxkl/presets.hpp"

using namespace coxkl;

namespace {

std::string repeat(const std::string& w, int k) {
  std::string out;
  for (int i = 0; i < k; ++i) out += w;
  return out;
}

// sorted off-diagonal Coxeter matrix entries
std::multiset<int> off_diagonal(const CoxeterSystem& sys) {
  std::multiset<int> out;
  for (Gen s = 0; s < sys.rank(); ++s)
    for (Gen t = s + 1; t < sys.rank(); ++t) out.insert(sys.matrix()(s, t));
  return out;
}

}  // namespace

TEST_SUITE("alcoves") {
  TEST_CASE("separation equals length") {
    for (auto [name, len] : {std::pair{"A1~", 10}, {"C2~", 6}, {"A2~", 5}, {"G2~", 5}}) {
      AffineArrangement arr(preset_system(name));
      auto r = check_separation(arr, len);
      INFO(name);
      CHECK(r.mismatches.empty());
      CHECK(r.injective);
      CHECK(r.checked == arr.system().elements_up_to(len).size());
    }
  }

  TEST_CASE("A1~ alcoves along the line") {
    auto sys = preset_system("A1~");
    AffineArrangement arr(sys);
    CHECK(arr.base_alcove().k == std::vector<std::int64_t>{0});
    for (int k = 1; k <= 5; ++k) {
      CHECK(arr.alcove_of(sys->parse_word(repeat("ts", k))).k == std::vector<std::int64_t>{2 * k});
      CHECK(arr.alcove_of(sys->parse_word(repeat("st", k))).k == std::vector<std::int64_t>{-2 * k});
    }
  }

  TEST_CASE("finite part of C2~ fixes the origin") {
    auto sys = preset_system("C2~");
    AffineArrangement arr(sys);
    const auto& aff = *sys->affine();
    std::set<Alcove> seen;
    for (Element x : sys->elements_up_to(4)) {
      bool finite = true;
      for (Gen g : x.word()) finite = finite && g != aff.affine_generator;
      if (!finite) continue;
      Alcove a = arr.alcove_of(x);
      for (auto k : a.k) CHECK((k == 0 || k == -1));
      CHECK(arr.map_of(x)(Point(2, Rational(0))) == Point(2, Rational(0)));
      seen.insert(a);
    }
    CHECK(seen.size() == 8);
  }

  TEST_CASE("element_of inverts map_of") {
    for (const char* name : {"A1~", "C2~", "G2~"}) {
      auto sys = preset_system(name);
      AffineArrangement arr(sys);
      for (Element x : sys->elements_up_to(5)) CHECK(arr.element_of(arr.map_of(x)) == x);
    }
    AffineArrangement arr(preset_system("A1~"));
    AffineMap half = arr.reflection(0, Rational(1, 2));
    CHECK_THROWS_AS(arr.element_of(half), ValidationError);
  }

  TEST_CASE("scaled subgroups") {
    AffineArrangement a1(preset_system("A1~"));
    AffineArrangement c2(preset_system("C2~"));
    CHECK(scaled_subgroup(a1, 1).copies.size() == 1);
    CHECK(scaled_subgroup(a1, 2).copies.size() == 2);
    CHECK(scaled_subgroup(a1, 3).copies.size() == 3);
    CHECK(scaled_subgroup(a1, 3, 2).copies.size() == 9);
    CHECK(scaled_subgroup(c2, 1).copies.size() == 1);
    CHECK(scaled_subgroup(c2, 2).copies.size() == 4);
    CHECK(scaled_subgroup(c2, 3).copies.size() == 9);
    CHECK(scaled_subgroup(c2, 2, 1, {Rational(1), Rational(-1)}).copies.size() == 4);

    // ell = 1 gives the whole group back on the same generators
    auto one = scaled_subgroup(c2, 1);
    std::set<Element> gens(one.generators.begin(), one.generators.end());
    CHECK(gens.size() == 3);
    for (Element g : gens) CHECK(g.length() == 1);
  }

  TEST_CASE("scaled subgroup has the parent's type") {
    for (auto [name, scale] : {std::pair{"A1~", 3}, {"C2~", 2}, {"C2~", 3}, {"A2~", 2}}) {
      auto sys = preset_system(name);
      AffineArrangement arr(sys);
      auto s = scaled_subgroup(arr, scale);
      INFO(name, " l=", scale);
      REQUIRE(s.subgroup);
      CHECK(s.subgroup->canonical_generators().size() == static_cast<std::size_t>(sys->rank()));
      std::set<Element> canon;
      for (const auto& r : s.subgroup->canonical_generators()) canon.insert(r.element);
      CHECK(canon == std::set<Element>(s.generators.begin(), s.generators.end()));
      CHECK(off_diagonal(*s.subgroup->intrinsic()) == off_diagonal(*sys));
      // distinct copies lie in distinct cosets
      std::set<Element> seen;
      for (Element x : s.copies)
        for (Element h : s.subgroup->elements()) CHECK(seen.insert(sys->multiply(h, x)).second);
    }
  }

  TEST_CASE("scaled subgroup rejections") {
    AffineArrangement c2(preset_system("C2~"));
    CHECK_THROWS_AS(scaled_subgroup(c2, Rational(3, 2)), ValidationError);
    CHECK_THROWS_AS(scaled_subgroup(c2, 0), ValidationError);
    CHECK_THROWS_AS(scaled_subgroup(c2, -2), ValidationError);
    CHECK_THROWS_AS(scaled_subgroup(c2, 2, 1, {Rational(1, 2), Rational(0)}), ValidationError);
    CHECK_THROWS_AS(scaled_subgroup(c2, 2, 1, {Rational(0)}), ValidationError);
    CHECK_THROWS_AS(AffineArrangement(preset_system("C2")), ValidationError);
  }

  TEST_CASE("rendering") {
    AffineArrangement a1(preset_system("A1~"));
    RenderOptions o;
    o.scales = {3, 9};
    o.bbox = {-10, -1, 10, 1};
    std::string svg = render_arrangement(a1, o);
    CHECK(svg.rfind("<svg", 0) == 0);
    CHECK(svg.find("</svg>") != std::string::npos);
    CHECK(svg.find("#d62728") != std::string::npos);
    CHECK(svg.find("#1f77b4") != std::string::npos);

    AffineArrangement c2(preset_system("C2~"));
    RenderOptions oc;
    oc.scales = {3};
    oc.highlight = scaled_subgroup(c2, 3).copies;
    std::string s2 = render_arrangement(c2, oc);
    CHECK(std::count(s2.begin(), s2.end(), '\n') > 20);
    CHECK(s2.find("<polygon") != std::string::npos);

    AffineArrangement a3(affine_system({{2, -1, 0}, {-1, 2, -1}, {0, -1, 2}}, "A3~"));
    CHECK_THROWS_AS(render_arrangement(a3, RenderOptions{}), ValidationError);
    RenderOptions bad;
    bad.scales = {0};
    CHECK_THROWS_AS(render_arrangement(c2, bad), ValidationError);
  }
}
