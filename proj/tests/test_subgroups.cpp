#include <doctest.h>

#include <set>

#include "coxkl/presets.hpp"
#include "coxkl/subgroups.hpp"

using namespace coxkl;

namespace {

std::vector<std::string> words(const std::vector<Element>& xs) {
  std::vector<std::string> out;
  for (Element x : xs) out.push_back(x.to_string());
  return out;
}

// Brute force: x is a minimal right coset rep iff it is shortest in Hx.
bool shortest_in_coset(const ReflectionSubgroup& sub, Element x) {
  const CoxeterSystem& sys = sub.parent();
  for (Element h : sub.elements())
    if (sys.multiply(h, x).length() < x.length()) return false;
  return true;
}

}  // namespace

TEST_SUITE("subgroups") {
  TEST_CASE("bounds") {
    auto c2 = preset_system("C2");
    CHECK(resolve_bound(*c2, std::nullopt) == 4);
    CHECK(resolve_bound(*c2, 2) == 2);
    CHECK_THROWS_AS(resolve_bound(*preset_system("A1~"), std::nullopt), ValidationError);
    CHECK_THROWS_AS(resolve_bound(*c2, -1), ValidationError);
  }

  TEST_CASE("C2 reflection subgroups") {
    auto c2 = preset_system("C2");
    auto sub = parse_subgroup(c2, "reflections:t,sts");
    CHECK(sub.elements().size() == 4);
    CHECK(sub.closed());
    CHECK(words(sub.elements()) == std::vector<std::string>{"e", "t", "sts", "stst"});
    REQUIRE(sub.canonical_generators().size() == 2);
    CHECK(sub.canonical_generators()[0].element.to_string() == "t");
    CHECK(sub.canonical_generators()[1].element.to_string() == "sts");
    CHECK(sub.kind() == SubgroupKind::General);  // two commuting long roots
    CHECK(sub.intrinsic()->matrix()(0, 1) == 2);
    CHECK(sub.intrinsic_length(c2->parse_word("stst")) == 2);

    auto par = parse_subgroup(c2, "parabolic:t");
    CHECK(par.kind() == SubgroupKind::StandardParabolic);
    CHECK(words(CosetTable(par, Side::Right).representatives()) == std::vector<std::string>{"e", "s", "st", "sts"});
    auto other = parse_subgroup(c2, "reflections:sts");
    CHECK(words(CosetTable(other, Side::Right).representatives()) == std::vector<std::string>{"e", "s", "t", "ts"});
    CHECK(words(CosetTable(sub, Side::Right).representatives()) == std::vector<std::string>{"e", "s"});

    CHECK_THROWS_AS(parse_subgroup(c2, "reflections:st"), ValidationError);
    CHECK_THROWS_AS(parse_subgroup(c2, "bogus:s"), ParseError);
    CHECK_THROWS_AS(parse_subgroup(c2, "parabolic:x"), ValidationError);
  }

  TEST_CASE("decompositions") {
    auto c2 = preset_system("C2");
    auto par = parse_subgroup(c2, "parabolic:t");
    CosetTable right(par, Side::Right);
    auto [u, z] = right.decompose(c2->parse_word("ts"));
    CHECK(u.to_string() == "t");
    CHECK(z.to_string() == "s");
    auto sub = parse_subgroup(c2, "reflections:t,sts");
    auto [u2, z2] = CosetTable(sub, Side::Right).decompose(c2->parse_word("st"));
    CHECK(u2.to_string() == "sts");
    CHECK(z2.to_string() == "s");
    CosetTable left(par, Side::Left);
    auto [u3, z3] = left.decompose(c2->parse_word("st"));
    CHECK(u3.to_string() == "t");
    CHECK(z3.to_string() == "s");
  }

  TEST_CASE("good subgroups mod p") {
    auto c2 = preset_system("C2");
    auto g2 = parse_subgroup(c2, "goodmodp:p=2;V=0");
    CHECK(g2.kind() == SubgroupKind::Good);
    CHECK(words(g2.elements()) == std::vector<std::string>{"e", "t", "sts", "stst"});
    auto g3 = parse_subgroup(c2, "goodmodp:p=3;V=0");
    CHECK(g3.is_trivial());
    CHECK(g3.elements().size() == 1);
    CHECK(parse_subgroup(c2, "goodmodp:p=3;V=[1,0],[0,1]").elements().size() == 8);
    CHECK_THROWS_AS(parse_subgroup(c2, "goodmodp:p=4;V=0"), ValidationError);
    CHECK_THROWS_AS(parse_subgroup(c2, "goodmodp:p=2;V=[1]"), ValidationError);
    CHECK_THROWS_AS(parse_subgroup(c2, "goodmodp:V=0"), ParseError);
    CHECK_THROWS_AS(g3.to_intrinsic(c2->identity()), ComputationError);
    CHECK(g3.intrinsic_length(c2->identity()) == 0);
    // affine presets use simple-root coordinates, so no root vanishes mod 2
    CHECK(parse_subgroup(preset_system("C2~"), "goodmodp:p=2;V=0", 6).is_trivial());
  }

  TEST_CASE("canonical generators and intrinsic lengths") {
    for (auto [name, spec, L] : {std::tuple{"C2~", "reflections:t,sts,u", 8}, {"C2", "goodmodp:p=2;V=0", 4},
                                 {"A3", "reflections:s,tut", 6}, {"G2", "reflections:s,tstst", 6},
                                 {"A1~", "reflections:s,tst", 9}}) {
      CAPTURE(name);
      CAPTURE(spec);
      auto sys = preset_system(name);
      auto sub = parse_subgroup(sys, spec, L);
      // canonical generators: each only sends itself negative among T_sub
      for (const auto& t : sub.canonical_generators())
        for (const auto& r : sub.reflections())
          if (r.element != t.element) CHECK(sys->act_on_root(t.element, r.root).positive);
      // intrinsic round trip
      for (Element x : sub.elements()) {
        Element y = sub.to_intrinsic(x);
        CHECK(sub.from_intrinsic(y) == x);
        CHECK(y.length() == sub.intrinsic_length(x));
      }
      // intrinsic length = number of subgroup reflections made negative by x^-1
      if (sub.closed()) {
        for (Element x : sub.elements()) {
          int n = 0;
          for (const auto& r : sub.reflections())
            if (!sys->act_on_root(sys->inverse(x), r.root).positive) ++n;
          CHECK(n == sub.intrinsic_length(x));
        }
      }
    }
  }

  TEST_CASE("coset representatives agree with brute force") {
    for (auto [name, spec] : {std::pair{"C2", "reflections:sts"}, {"G2", "reflections:s,tstst"}, {"A3", "parabolic:s,u"},
                              {"A3", "reflections:tut"}, {"B2", "goodmodp:p=2;V=0"}}) {
      CAPTURE(name);
      CAPTURE(spec);
      auto sys = preset_system(name);
      auto sub = parse_subgroup(sys, spec);
      REQUIRE(sub.closed());
      CosetTable right(sub, Side::Right);
      for (Element x : sys->elements_up_to(*sys->longest_length())) {
        CHECK(right.is_representative(x) == shortest_in_coset(sub, x));
        auto [u, z] = right.decompose(x);
        CHECK(sub.contains(u));
        CHECK(right.is_representative(z));
        CHECK(sys->multiply(u, z) == x);
        if (sub.kind() == SubgroupKind::StandardParabolic) CHECK(u.length() + z.length() == x.length());
      }
      CHECK(right.representatives().size() * sub.elements().size() == *sys->order());
      CosetTable left(sub, Side::Left);
      CHECK(left.representatives().size() == right.representatives().size());
      for (Element x : sys->elements_up_to(*sys->longest_length())) {
        auto [u, z] = left.decompose(x);
        CHECK(sys->multiply(z, u) == x);
        CHECK(left.is_representative(z));
      }
    }
  }

  TEST_CASE("affine cosets below the bound") {
    auto sys = preset_system("C2~");
    auto sub = parse_subgroup(sys, "parabolic:s,t", 8);
    CosetTable right(sub, Side::Right, 8);
    std::set<Element> reps(right.representatives().begin(), right.representatives().end());
    for (Element x : sys->elements_up_to(8)) {
      auto [u, z] = right.decompose(x);
      CHECK(reps.count(z) == 1);
      CHECK(u.length() + z.length() == x.length());
    }
    Element far = sys->elements_of_length(9).front();
    CHECK_THROWS_AS(right.decompose(far), ComputationError);
  }
}
