#include <doctest.h>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <unistd.h>

#include "coxkl/cli.hpp"

namespace fs = std::filesystem;
using coxkl::cli::run;
using json = nlohmann::json;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result call(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("coxkl-cli-" + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string operator/(const std::string& name) const { return (path / name).string(); }
};

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("kl table") {
    auto r = call({"kl", "--system", "C2", "--element", "sts"});
    CHECK(r.code == 0);
    CHECK(r.out ==
          "b_sts in C2 (coefficient h_{y,sts} of delta_y):\n"
          "  sts  1\n  ts   v\n  st   v\n  t    v^2\n  s    v^2\n  e    v^3\n");
  }

  TEST_CASE("exit codes") {
    auto bad = call({"kl", "--system", "C2", "--element", "xyz"});
    CHECK(bad.code == 1);
    CHECK(bad.err.find("unknown generator 'x'") != std::string::npos);
    CHECK(call({}).code == 1);
    CHECK(call({"frobnicate"}).code == 1);
    CHECK(call({"kl", "--element", "s"}).code == 1);  // --system missing
    CHECK(call({"kl", "--system", "Z9", "--element", "s"}).code == 1);
    CHECK(call({"hyp-expand", "--system", "A1~", "--subgroup", "reflections:sts", "--element", "s", "--maxlen",
                "-1"})
              .code == 1);
    CHECK(call({"cosets", "--system", "A1~", "--subgroup", "parabolic:s"}).code == 1);  // no bound
    CHECK(call({"pcan-load", "--system", "C2", "--file", "/nonexistent/data"}).code == 3);
    CHECK(call({"alcoves", "scale", "--type", "C2~", "--ell", "3/2"}).code == 1);
    CHECK(call({"alcoves", "render", "--type", "C2", "--out", "/dev/null"}).code == 1);
    CHECK(call({"modchar", "simple-char", "--m", "4", "--p", "4"}).code == 1);
    CHECK(call({"--help"}).code == 0);
  }

  TEST_CASE("decompose beyond the explored region is a computation error") {
    auto r = call({"cosets", "--system", "A1~", "--subgroup", "reflections:sts", "--maxlen", "3", "--decompose",
                   "stststst"});
    CHECK(r.code == 2);
  }

  TEST_CASE("hyperbolic JSON and verify round trip") {
    TempDir tmp;
    auto r = call({"hyp-expand", "--system", "C2", "--subgroup", "reflections:sts", "--element", "sts", "--json"});
    REQUIRE(r.code == 0);
    json j = json::parse(r.out);
    CHECK(j["target"] == "sts");
    CHECK(j["subgroup"] == "reflections:sts");
    CHECK(j["positive"] == true);
    CHECK(j["residual_zero"] == true);
    std::set<std::pair<std::string, std::string>> terms;
    for (const auto& t : j["terms"]) {
      CHECK(t["coeff"] == 1);
      terms.insert({t["v"].get<std::string>(), t["x"].get<std::string>()});
    }
    CHECK(terms == std::set<std::pair<std::string, std::string>>{{"sts", "e"}, {"sts", "s"}, {"e", "t"}, {"e", "ts"}});

    std::ofstream(tmp / "h.json") << r.out;
    CHECK(call({"verify", "--file", tmp / "h.json"}).code == 0);

    // tampering is caught
    j["terms"][0]["coeff"] = 2;
    std::ofstream(tmp / "bad.json") << j.dump();
    CHECK(call({"verify", "--file", tmp / "bad.json"}).code == 2);
    j["terms"][0]["coeff"] = 1;
    j["terms"][0]["x"] = "st";  // not a minimal representative
    std::ofstream(tmp / "bad2.json") << j.dump();
    CHECK(call({"verify", "--file", tmp / "bad2.json"}).code == 2);
    std::ofstream(tmp / "junk.json") << "{";
    CHECK(call({"verify", "--file", tmp / "junk.json"}).code == 1);
  }

  TEST_CASE("every expansion kind verifies") {
    TempDir tmp;
    std::vector<std::vector<std::string>> cmds = {
        {"mixed-expand", "--system", "C2", "--parabolic", "t", "--element", "st"},
        {"mixed-expand", "--system", "A1~", "--parabolic", "s", "--element", "tstst"},
        {"hyp-expand", "--system", "C2", "--subgroup", "reflections:t,sts", "--element", "sts"},
        {"hyp-expand", "--system", "A1~", "--subgroup", "reflections:sts", "--element", "ststs", "--maxlen", "6"},
        {"pcan-expand", "--system", "C2", "--subgroup", "goodmodp:p=2;V=0", "--element", "sts"},
        {"pcan-expand", "--system", "C2", "--subgroup", "goodmodp:p=2;V=0", "--element", "stst"},
    };
    int k = 0;
    for (auto cmd : cmds) {
      std::string path = tmp / ("e" + std::to_string(k++) + ".json");
      cmd.insert(cmd.end(), {"--json", "--out", path});
      INFO(cmd[0], " ", cmd[6]);
      REQUIRE(call(cmd).code == 0);
      auto v = call({"verify", "--file", path});
      CHECK(v.code == 0);
      CHECK(v.out.find("recombines") != std::string::npos);
    }
    // the negative control still recombines; its flag says not positive
    json j = json::parse(slurp(tmp / "e2.json"));
    CHECK(j["positive"] == false);
  }

  TEST_CASE("mixed expansion text") {
    auto r = call({"mixed-expand", "--system", "C2", "--parabolic", "t", "--element", "st"});
    CHECK(r.code == 0);
    CHECK(r.out == "st over parabolic:t:\n  (t, e)  v\n  (e, s)  v\n  (e, st)  1\npositive: yes\nresidual zero: yes\n");
  }

  TEST_CASE("modchar commands") {
    auto r = call({"modchar", "simple-char", "--m", "3", "--p", "3"});
    CHECK(r.out == "L_3 (p=3, dim 2): e^-3 + e^3\n");
    auto j = json::parse(call({"modchar", "simple-char", "--m", "5", "--p", "3", "--json"}).out);
    CHECK(j["character"] == json{{"-5", 1}, {"-3", 1}, {"-1", 1}, {"1", 1}, {"3", 1}, {"5", 1}});
    CHECK(j["digits"] == json{2, 1});
    auto q = call({"modchar", "qbinom", "--n", "6", "--i", "3", "--eval-root", "3"});
    CHECK(q.out.find("root of unity: 2\n") != std::string::npos);
    auto pas = call({"modchar", "pascal", "--rows", "4", "--p", "3"});
    CHECK(pas.out == "1\n1 1\n1 2 1\n1 0 0 1\n");
  }

  TEST_CASE("outputs are byte-deterministic") {
    TempDir tmp;
    auto twice = [&](std::vector<std::string> cmd, const std::string& name) {
      std::vector<std::string> a = cmd, b = cmd;
      a.insert(a.end(), {"--out", tmp / (name + "1")});
      b.insert(b.end(), {"--out", tmp / (name + "2")});
      REQUIRE(call(a).code == 0);
      REQUIRE(call(b).code == 0);
      std::string x = slurp(tmp / (name + "1"));
      CHECK(!x.empty());
      CHECK(x == slurp(tmp / (name + "2")));
    };
    twice({"modchar", "pascal", "--rows", "81", "--p", "3", "--format", "pgm"}, "p.pgm");
    twice({"modchar", "pascal", "--rows", "27", "--p", "3", "--format", "svg"}, "p.svg");
    twice({"modchar", "qtriangle", "--rows", "30", "--p", "5", "--format", "svg"}, "q.svg");
    twice({"alcoves", "render", "--type", "C2~", "--scales", "3", "--bbox", "-2,-2,5,6", "--highlight"}, "a.svg");
    twice({"alcoves", "check", "--type", "A1~", "--maxlen", "10"}, "c.json");
    twice({"kl", "--system", "C2~", "--all", "--maxlen", "5", "--json"}, "k.json");

    // thread count does not change the output
    REQUIRE(call({"kl", "--system", "C2~", "--all", "--maxlen", "5", "--json", "--threads", "4", "--out",
                  tmp / "k.json3"})
                .code == 0);
    CHECK(slurp(tmp / "k.json1") == slurp(tmp / "k.json3"));
  }

  TEST_CASE("alcove commands") {
    auto c = json::parse(call({"alcoves", "check", "--type", "C2~", "--maxlen", "6"}).out);
    CHECK(c["delta_equals_length"] == true);
    CHECK(c["injective"] == true);
    auto s = json::parse(call({"alcoves", "scale", "--type", "C2~", "--ell", "3", "--json"}).out);
    CHECK(s["copy_count"] == 9);
    CHECK(s["generators"].size() == 3);
  }

  TEST_CASE("group, form, cosets, good-subgroup") {
    auto g = json::parse(call({"group", "--system", "C2", "--element", "stst", "--json"}).out);
    CHECK(g["order"] == 8);
    CHECK(g["reflections"].size() == 4);
    CHECK(g["element"]["left_descents"] == "st");
    CHECK(g["element"]["right_descents"] == "st");
    auto a = json::parse(call({"group", "--system", "A1~", "--maxlen", "7", "--json"}).out);
    CHECK(a["order"].is_null());
    CHECK(a["reflections"].size() == 8);

    CHECK(call({"form", "--system", "C2", "--left", "b:s", "--right", "b:s"}).out == "(b:s, b:s) = v^2+1\n");
    CHECK(call({"form", "--system", "C2", "--dual-check"}).code == 0);
    CHECK(call({"form", "--system", "C2", "--left", "q:s", "--right", "b:s"}).code == 1);

    auto cs = json::parse(call({"cosets", "--system", "C2", "--subgroup", "reflections:t,sts", "--json"}).out);
    CHECK(cs["representatives"] == json{"e", "s"});
    CHECK(cs["kind"] == "general");
    auto good = json::parse(call({"good-subgroup", "--system", "C2", "--p", "2", "--json"}).out);
    std::set<std::string> gens;
    for (const auto& r : good["canonical_generators"]) gens.insert(r["element"].get<std::string>());
    CHECK(gens == std::set<std::string>{"t", "sts"});
    auto three = json::parse(call({"good-subgroup", "--system", "C2", "--p", "3", "--json"}).out);
    CHECK(three["canonical_generators"].empty());
  }

  TEST_CASE("pcan-load and selftest") {
    auto r = call({"pcan-load", "--system", "C2"});
    CHECK(r.code == 0);
    CHECK(r.out.find("2b_sts = (1) b_sts + (1) b_s\n") != std::string::npos);
    CHECK(call({"pcan-load", "--system", "G2"}).code == 1);
    auto st = call({"selftest"});
    CHECK(st.code == 0);
    CHECK(st.out.find("FAIL") == std::string::npos);
  }
}
