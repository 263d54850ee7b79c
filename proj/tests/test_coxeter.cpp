#include <doctest.h>

#include <set>
#include <thread>

#include "coxkl/coxeter.hpp"
#include "coxkl/presets.hpp"
#include "oracles.hpp"

using namespace coxkl;

namespace {

// Every element up to length L carries the ShortLex word the oracle finds.
void check_against_oracle(const CoxeterSystem& sys, const oracle::MatrixGroup& og, int L) {
  auto words = og.shortlex_words(L);
  std::size_t count = 0;
  for (const auto& [m, w] : words) {
    Element x = w.empty() ? sys.identity() : sys.parse_word(w);
    CHECK(x.to_string() == (w.empty() ? "e" : w));
    CHECK(x.length() == static_cast<int>(w.size()));
    ++count;
  }
  CHECK(sys.elements_up_to(L).size() == count);
}

}  // namespace

TEST_SUITE("coxeter") {
  TEST_CASE("construction and orders") {
    auto c2 = preset_system("C2");
    CHECK(c2->is_finite());
    CHECK(c2->order() == 8u);
    CHECK(c2->longest_length() == 4);
    auto a1 = preset_system("A1");
    CHECK(a1->order() == 2u);
    auto a1t = preset_system("A1~");
    CHECK_FALSE(a1t->is_finite());
    CHECK(a1t->matrix()(0, 1) == kInfinity);
    CHECK(a1t->elements_up_to(10).size() == 21);
    CHECK(preset_system("G2")->order() == 12u);
    CHECK(preset_system("A3")->order() == 24u);
    CHECK(preset_system("B2")->order() == 8u);
    CHECK_FALSE(preset_system("C2~")->is_finite());
    CHECK_FALSE(preset_system("A2~")->is_finite());
    CHECK_FALSE(preset_system("G2~")->is_finite());
  }

  TEST_CASE("C2 realization from epsilon coordinates") {
    CoxeterSystem::Options opt;
    opt.realization = Realization{2, {{1, -1}, {0, 2}}, {{1, -1}, {0, 1}}};
    auto sys = CoxeterSystem::create(CoxeterMatrix(2, {1, 4, 4, 1}), opt);
    CHECK(sys->order() == 8u);
    CHECK(sys->cartan(0, 1) == -2);
    CHECK(sys->cartan(1, 0) == -1);
  }

  TEST_CASE("invalid matrices and realizations") {
    CHECK_THROWS_AS(CoxeterMatrix(2, {1, 3, 4, 1}), ValidationError);
    CHECK_THROWS_AS(CoxeterMatrix(2, {1, 5, 5, 1}), ValidationError);
    CHECK_THROWS_AS(CoxeterMatrix(2, {2, 3, 3, 1}), ValidationError);
    CHECK_THROWS_AS(CoxeterMatrix(2, {1, 1, 1, 1}), ValidationError);
    CHECK_THROWS_AS(CoxeterMatrix(0, {}), ValidationError);
    CoxeterSystem::Options opt;
    opt.realization = Realization{2, {{1, -1}, {0, 2}}, {{1, -1}, {0, 1}}};
    CHECK_THROWS_AS(CoxeterSystem::create(CoxeterMatrix(2, {1, 3, 3, 1}), opt), ValidationError);
    opt.realization = Realization{2, {{1, 0}, {0, 1}}, {{1, 0}, {0, 2}}};
    CHECK_THROWS_AS(CoxeterSystem::create(CoxeterMatrix(2, {1, 2, 2, 1}), opt), ValidationError);
    opt.realization = Realization{1, {{1}, {1}}, {{2}, {2}}};
    CHECK_THROWS_AS(CoxeterSystem::create(CoxeterMatrix(2, {1, 0, 0, 1}), opt), ValidationError);
  }

  TEST_CASE("text format") {
    auto sys = parse_system(
        "# C2\nrank 2\n1 4\n4 1\nrealization\nroot s: 1 -1\nroot t: 0 2\ncoroot s: 1 -1\ncoroot t: 0 1\n", "C2");
    CHECK(sys->order() == 8u);
    CHECK(sys->simple_root(1).coordinates == std::vector<std::int64_t>{0, 2});
    auto inf = parse_system("rank 2\n1 inf\ninf 1\n", "x");
    CHECK_FALSE(inf->is_finite());
    CHECK(inf->cartan(0, 1) == -2);
    CHECK_THROWS_AS(parse_system("rank 2\n1 4\n", "x"), ParseError);
    CHECK_THROWS_AS(parse_system("rank 2\n1 5\n5 1\n", "x"), ValidationError);
    CHECK_THROWS_AS(parse_system("rank 1\n1\nrealization\nroot s: 1\ncoroot s: 1\n", "x"), ValidationError);
    CHECK_THROWS_AS(load_system("no-such-system"), ValidationError);
  }

  TEST_CASE("multiplication") {
    auto c2 = preset_system("C2");
    Element s = c2->parse_word("s"), t = c2->parse_word("t");
    CHECK(c2->multiply(s, s).is_identity());
    Element sts = c2->multiply(c2->multiply(s, t), s);
    CHECK(sts.length() == 3);
    CHECK(sts.to_string() == "sts");
    Element st = c2->parse_word("st");
    Element w0 = c2->multiply(st, st);
    CHECK(w0.to_string() == "stst");
    CHECK(w0.length() == 4);
    CHECK(c2->parse_word("tsts") == w0);
    CHECK(c2->inverse(st) == c2->parse_word("ts"));
    CHECK_THROWS_WITH_AS(c2->parse_word("xyz"), "unknown generator 'x'", ValidationError);
    auto other = preset_system("C2");
    CHECK_THROWS_AS(c2->multiply(s, other->parse_word("s")), ValidationError);
  }

  TEST_CASE("lengths") {
    auto a1t = preset_system("A1~");
    CHECK(a1t->identity().length() == 0);
    Element x = a1t->identity();
    for (int k = 0; k < 5; ++k) x = a1t->multiply(x, a1t->parse_word("st"));
    CHECK(x.length() == 10);
    CHECK(x.to_string() == "stststst" "st");
  }

  TEST_CASE("ShortLex words match brute force") {
    check_against_oracle(*preset_system("C2"), oracle::c2(), 4);
    check_against_oracle(*preset_system("A1~"), oracle::affine_a1(), 12);
    check_against_oracle(*preset_system("C2~"), oracle::affine_c2(), 7);
    check_against_oracle(*preset_system("A3"), oracle::symmetric(4), 6);
  }

  TEST_CASE("Bruhat order") {
    auto c2 = preset_system("C2");
    auto P = [&](const char* w) { return c2->parse_word(w); };
    CHECK(c2->bruhat_leq(P("st"), P("sts")));
    CHECK(c2->bruhat_leq(P("ts"), P("sts")));
    CHECK_FALSE(c2->bruhat_leq(P("stst"), P("sts")));
    for (Element x : c2->elements_up_to(4)) {
      CHECK(c2->bruhat_leq(c2->identity(), x));
      CHECK(c2->bruhat_leq(x, x));
    }
  }

  TEST_CASE("Bruhat order agrees with the subword oracle") {
    struct Case {
      std::shared_ptr<const CoxeterSystem> sys;
      oracle::MatrixGroup og;
      int L;
    };
    for (auto& c : {Case{preset_system("C2"), oracle::c2(), 4}, Case{preset_system("A1~"), oracle::affine_a1(), 8},
                    Case{preset_system("C2~"), oracle::affine_c2(), 4}}) {
      auto elems = c.sys->elements_up_to(c.L);
      for (Element x : elems)
        for (Element y : elems) {
          std::string wx = x.is_identity() ? "" : x.to_string();
          std::string wy = y.is_identity() ? "" : y.to_string();
          CHECK(c.sys->bruhat_leq(x, y) == c.og.bruhat_leq(wx, wy));
        }
    }
  }

  TEST_CASE("roots") {
    auto c2 = preset_system("C2");
    Root a = c2->simple_root(0), b = c2->simple_root(1);
    Element s = c2->parse_word("s");
    Root sa = c2->act_on_root(s, a);
    CHECK_FALSE(sa.positive);
    CHECK(sa.coordinates == std::vector<std::int64_t>{-1, 1});
    Root sb = c2->act_on_root(s, b);
    CHECK(sb.coordinates == std::vector<std::int64_t>{2, 0});
    CHECK(sb.simple == std::vector<std::int64_t>{2, 1});
    CHECK(sb.positive);
    CHECK(c2->act_on_root(c2->identity(), b) == b);
    CHECK(c2->root_from_lattice(std::vector<std::int64_t>{2, 0}) == sb);
    CHECK_THROWS_AS(c2->root_from_lattice(std::vector<std::int64_t>{1, 0}), ValidationError);
    CHECK_THROWS_AS(c2->root_from_lattice(std::vector<std::int64_t>{1, 1, 1}), ValidationError);
  }

  TEST_CASE("simple reflections permute the other positive roots") {
    for (const char* name : {"C2", "G2", "A3", "B2"}) {
      auto sys = preset_system(name);
      auto refl = sys->reflections_up_to(*sys->longest_length());
      std::set<std::vector<std::int64_t>> pos;
      for (const auto& r : refl) pos.insert(r.root.simple);
      for (Gen s = 0; s < sys->rank(); ++s) {
        Root as = sys->simple_root(s);
        std::set<std::vector<std::int64_t>> image;
        for (const auto& r : refl) {
          if (r.root.simple == as.simple) continue;
          Root img = sys->act_on_root(sys->generator(s), r.root);
          CHECK(img.positive);
          image.insert(img.simple);
        }
        auto expect = pos;
        expect.erase(as.simple);
        CHECK(image == expect);
      }
    }
  }

  TEST_CASE("reflections") {
    auto c2 = preset_system("C2");
    auto r = c2->reflections_up_to(4);
    REQUIRE(r.size() == 4);
    std::vector<std::string> names;
    for (const auto& x : r) names.push_back(x.element.to_string());
    CHECK(names == std::vector<std::string>{"s", "t", "sts", "tst"});
    CHECK(r[2].root.coordinates == std::vector<std::int64_t>{2, 0});
    CHECK(r[3].root.coordinates == std::vector<std::int64_t>{1, 1});
    CHECK(preset_system("A1")->reflections_up_to(1).size() == 1);
    auto a1t = preset_system("A1~");
    // odd-length palindromes: two of each odd length
    CHECK(a1t->reflections_up_to(7).size() == 8);
    CHECK(a1t->reflections_up_to(5).size() == 6);
    // roots are distinct
    for (const char* name : {"C2~", "A2~", "G2"}) {
      auto sys = preset_system(name);
      std::set<std::vector<std::int64_t>> roots;
      auto refl = sys->reflections_up_to(7);
      for (const auto& x : refl) {
        CHECK(x.root.positive);
        roots.insert(x.root.simple);
      }
      CHECK(roots.size() == refl.size());
    }
  }

  TEST_CASE("reflection test matches brute force conjugates") {
    for (const char* name : {"C2", "A1~", "C2~", "A3"}) {
      auto sys = preset_system(name);
      const int L = 7;
      std::set<Element> conj;
      for (Element w : sys->elements_up_to(L))
        for (Gen s = 0; s < sys->rank(); ++s) {
          Element r = sys->multiply(sys->multiply(w, sys->generator(s)), sys->inverse(w));
          if (r.length() <= L) conj.insert(r);
        }
      std::set<Element> found;
      for (const auto& r : sys->reflections_up_to(L)) found.insert(r.element);
      CHECK(found == conj);
    }
  }

  TEST_CASE("descents") {
    auto c2 = preset_system("C2");
    CHECK(c2->descents(c2->identity(), Side::Left).empty());
    Element w0 = c2->parse_word("stst");
    CHECK(c2->descents(w0, Side::Left) == std::vector<Gen>{0, 1});
    CHECK(c2->descents(w0, Side::Right) == std::vector<Gen>{0, 1});
    Element sts = c2->parse_word("sts");
    CHECK(c2->descents(sts, Side::Left) == std::vector<Gen>{0});
    CHECK(c2->descents(sts, Side::Right) == std::vector<Gen>{0});
  }

  TEST_CASE("braid relations") {
    for (const char* name : {"C2", "G2", "A2", "A1~", "C2~", "G2~", "A2~"}) {
      auto sys = preset_system(name);
      for (Gen s = 0; s < sys->rank(); ++s)
        for (Gen t = s + 1; t < sys->rank(); ++t) {
          int m = sys->matrix()(s, t);
          int limit = m == kInfinity ? 10 : m;
          Element p = sys->identity();
          for (int k = 1; k <= 2 * limit; ++k) {
            p = sys->right_multiply(p, k % 2 ? s : t);
            bool id = p.is_identity();
            CHECK(id == (m != kInfinity && k == 2 * m));
          }
        }
    }
  }

  TEST_CASE("length changes by one") {
    for (const char* name : {"C2", "G2", "A1~", "C2~", "A2~", "G2~"}) {
      auto sys = preset_system(name);
      for (Element x : sys->elements_up_to(8))
        for (Gen s = 0; s < sys->rank(); ++s) {
          int d = sys->right_multiply(x, s).length() - x.length();
          CHECK((d == 1 || d == -1));
          CHECK((d < 0) == sys->is_right_descent(x, s));
          int e = sys->left_multiply(s, x).length() - x.length();
          CHECK((e < 0) == sys->is_left_descent(s, x));
        }
    }
  }

  TEST_CASE("concurrent use gives the same table") {
    auto serial = preset_system("C2~");
    auto parallel = preset_system("C2~");
    std::vector<std::string> words;
    for (Element x : serial->elements_up_to(9)) words.push_back(x.to_string());
    std::vector<std::thread> pool;
    for (int t = 0; t < 4; ++t)
      pool.emplace_back([&, t] {
        for (std::size_t i = t; i < words.size(); i += 4) {
          Element x = parallel->parse_word(words[i]);
          parallel->bruhat_leq(parallel->identity(), x);
          parallel->reflection_root(x);
        }
      });
    for (auto& th : pool) th.join();
    for (const auto& w : words) CHECK(parallel->parse_word(w).to_string() == w);
    CHECK(parallel->elements_up_to(9).size() == words.size());
  }
}
