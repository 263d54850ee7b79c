#include "coxkl/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "coxkl/alcoves.hpp"
#include "coxkl/error.hpp"
#include "coxkl/hecke.hpp"
#include "coxkl/modchar.hpp"
#include "coxkl/pcanonical.hpp"
#include "coxkl/positivity.hpp"
#include "coxkl/presets.hpp"
#include "coxkl/subgroups.hpp"

namespace coxkl::cli {

namespace {

using json = nlohmann::ordered_json;
using SystemPtr = std::shared_ptr<const CoxeterSystem>;

struct Options {
  std::string system = "C2";
  std::string element;
  std::string subgroup;
  std::string parabolic;
  std::string side = "right";
  std::string decompose;
  std::string pcan;
  std::string sub_pcan;
  std::string out;
  std::string file;
  std::string left, right;
  std::string format = "pgm";
  std::string vectors = "0";
  std::string scales = "3";
  std::string bbox = "-2,-2,4,4";
  std::string base;
  std::optional<int> maxlen;
  int threads = 0;
  int p = 3;
  int levels = 1;
  std::int64_t m = 0, n = 0, i = 0, rows = 27;
  std::optional<int> eval_root;
  std::string ell = "3";
  bool json_out = false;
  bool all = false;
  bool strict = false;
  bool lenient_duality = false;
  bool highlight = false;
  bool dual_check = false;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("failed reading '" + path + "'");
  return buf.str();
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << text;
  if (!out) throw IoError("failed writing '" + path + "'");
}

// JSON to --out if given, else to the stream
void emit_json(const json& j, const Options& o, std::ostream& out) {
  std::string text = j.dump(2) + "\n";
  if (o.out.empty())
    out << text;
  else
    write_text(o.out, text);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) parts.push_back(cur);
  return parts;
}

std::int64_t to_int(const std::string& s, const std::string& what) {
  try {
    return detail::parse_int64(s);
  } catch (const std::exception&) {
    throw ParseError("bad integer '" + s + "' in " + what);
  }
}

Rational to_rational(const std::string& s, const std::string& what) {
  auto slash = s.find('/');
  if (slash == std::string::npos) return Rational(to_int(s, what));
  std::int64_t den = to_int(s.substr(slash + 1), what);
  if (den == 0) throw ValidationError("zero denominator in " + what);
  return Rational(to_int(s.substr(0, slash), what), den);
}

std::vector<Gen> parse_gens(const CoxeterSystem& sys, const std::string& text) {
  std::vector<Gen> gens;
  for (char c : text) {
    if (c == ',' || c == ' ') continue;
    auto g = sys.generator_of_letter(c);
    if (!g) throw ValidationError(std::string("unknown generator '") + c + "'");
    gens.push_back(*g);
  }
  return gens;
}

std::string letters(const CoxeterSystem& sys, const std::vector<Gen>& gens) {
  std::string s;
  for (Gen g : gens) s += sys.letter(g);
  return s;
}

json vector_json(const std::vector<std::int64_t>& v) { return json(v); }

void require(bool ok, const std::string& msg) {
  if (!ok) throw ValidationError(msg);
}

// ---- group ----

int cmd_group(const Options& o, std::ostream& out) {
  SystemPtr sys = load_system(o.system);
  int L = resolve_bound(*sys, o.maxlen);
  std::optional<Element> x;
  if (!o.element.empty()) x = sys->parse_word(o.element);

  json j;
  j["system"] = sys->name();
  j["rank"] = sys->rank();
  json mat = json::array();
  for (Gen s = 0; s < sys->rank(); ++s) {
    json row = json::array();
    for (Gen t = 0; t < sys->rank(); ++t) row.push_back(sys->matrix()(s, t));
    mat.push_back(row);
  }
  j["coxeter_matrix"] = mat;
  std::string gens;
  for (Gen s = 0; s < sys->rank(); ++s) gens += sys->letter(s);
  j["generators"] = gens;
  if (auto n = sys->order())
    j["order"] = *n;
  else
    j["order"] = nullptr;
  j["max_length"] = L;
  json counts = json::array();
  for (int l = 0; l <= L; ++l) counts.push_back(sys->elements_of_length(l).size());
  j["elements_per_length"] = counts;
  json refl = json::array();
  for (const auto& r : sys->reflections_up_to(L))
    refl.push_back({{"element", r.element.to_string()}, {"root", vector_json(r.root.simple)}});
  j["reflections"] = refl;
  if (x) {
    j["element"] = {{"word", x->to_string()},
                    {"length", x->length()},
                    {"inverse", sys->inverse(*x).to_string()},
                    {"left_descents", letters(*sys, sys->descents(*x, Side::Left))},
                    {"right_descents", letters(*sys, sys->descents(*x, Side::Right))}};
  }
  if (o.json_out) {
    emit_json(j, o, out);
    return kExitOk;
  }
  out << "system " << sys->name() << ", rank " << sys->rank() << ", generators " << gens << "\n";
  out << "order " << (sys->order() ? std::to_string(*sys->order()) : std::string("infinite")) << "\n";
  out << "elements by length (<= " << L << "):";
  for (const auto& c : counts) out << " " << c.get<std::size_t>();
  out << "\nreflections (length <= " << L << "):\n";
  for (const auto& r : refl) out << "  " << r["element"].get<std::string>() << "  root " << r["root"].dump() << "\n";
  if (x) {
    const auto& e = j["element"];
    out << "element " << e["word"].get<std::string>() << ": length " << e["length"].get<int>() << ", inverse "
        << e["inverse"].get<std::string>() << ", left descents {" << e["left_descents"].get<std::string>()
        << "}, right descents {" << e["right_descents"].get<std::string>() << "}\n";
  }
  return kExitOk;
}

// ---- kl ----

json hecke_json(const HeckeElement& h) {
  json terms = json::array();
  auto sorted = h.sorted();
  for (auto it = sorted.rbegin(); it != sorted.rend(); ++it)
    terms.push_back({{"y", it->first.to_string()}, {"h", it->second.to_string()}});
  return terms;
}

void print_hecke_table(const HeckeElement& h, std::ostream& out) {
  auto sorted = h.sorted();
  std::size_t w = 1;
  for (const auto& [y, c] : sorted) w = std::max(w, y.to_string().size());
  for (auto it = sorted.rbegin(); it != sorted.rend(); ++it) {
    std::string y = it->first.to_string();
    out << "  " << y << std::string(w - y.size() + 2, ' ') << it->second.to_string() << "\n";
  }
}

int cmd_kl(const Options& o, std::ostream& out) {
  SystemPtr sys = load_system(o.system);
  KLBasis kl(sys);
  if (o.all) {
    int L = resolve_bound(*sys, o.maxlen);
    kl.compute_up_to(L, o.threads);
    json j;
    j["system"] = sys->name();
    j["max_length"] = L;
    json elems = json::array();
    for (Element x : sys->elements_up_to(L)) elems.push_back({{"x", x.to_string()}, {"terms", hecke_json(kl.b(x))}});
    j["count"] = elems.size();
    if (o.json_out) {
      j["basis"] = elems;
      emit_json(j, o, out);
    } else {
      out << "computed " << elems.size() << " KL basis elements of " << sys->name() << " up to length " << L << "\n";
    }
    return kExitOk;
  }
  require(!o.element.empty(), "kl needs --element (or --all)");
  Element x = sys->parse_word(o.element);
  const HeckeElement& b = kl.b(x);
  if (o.json_out) {
    emit_json({{"system", sys->name()}, {"element", x.to_string()}, {"terms", hecke_json(b)}}, o, out);
    return kExitOk;
  }
  out << "b_" << x.to_string() << " in " << sys->name() << " (coefficient h_{y," << x.to_string() << "} of delta_y):\n";
  print_hecke_table(b, out);
  return kExitOk;
}

// ---- p-canonical data ----

PCanonicalBasis load_pbasis(const std::string& source, const KLBasis& kl, const Options& o) {
  PCanonicalOptions po;
  po.strict_positivity = o.strict;
  po.lenient_duality = o.lenient_duality;
  if (source.empty() || source == "bundled") {
    if (kl.system().name() != "C2")
      throw ValidationError("bundled p-canonical data is for C2 only; pass --pcan <file> for " + kl.system().name());
    return load_pcanonical(bundled_c2_p2(), kl, po);
  }
  return load_pcanonical_file(source, kl, po);
}

int cmd_pcan_load(const Options& o, std::ostream& out, std::ostream& err) {
  SystemPtr sys = load_system(o.system);
  KLBasis kl(sys);
  PCanonicalBasis basis = load_pbasis(o.file, kl, o);
  for (const auto& w : basis.warnings) err << "warning: " << w << "\n";
  if (o.json_out) {
    json j;
    j["system"] = basis.system_name;
    j["p"] = basis.p;
    json elems = json::array();
    for (const auto& [x, h] : basis.elements) {
      json exp = json::array();
      for (const auto& [y, c] : basis.expansions.at(x)) exp.push_back({{"y", y.to_string()}, {"coeff", c.to_string()}});
      elems.push_back({{"x", x.to_string()}, {"terms", hecke_json(h)}, {"kl_expansion", exp}});
    }
    j["elements"] = elems;
    j["warnings"] = basis.warnings;
    emit_json(j, o, out);
    return kExitOk;
  }
  out << "p=" << basis.p << " data for " << basis.system_name << ": " << basis.elements.size() << " elements\n";
  for (const auto& [x, h] : basis.elements) {
    out << basis.p << "b_" << x.to_string() << " = ";
    bool first = true;
    for (const auto& [y, c] : basis.expansions.at(x)) {
      out << (first ? "" : " + ") << "(" << c.to_string() << ") b_" << y.to_string();
      first = false;
    }
    out << "\n";
  }
  return kExitOk;
}

// ---- form ----

// "b:sts", "d:st", "dinv:s"
HeckeElement basis_element(const CoxeterSystem& sys, const KLBasis& kl, const std::string& spec) {
  auto colon = spec.find(':');
  if (colon == std::string::npos) throw ParseError("basis element '" + spec + "' must look like b:<word>, d:<word> or dinv:<word>");
  std::string kind = spec.substr(0, colon);
  Element x = sys.parse_word(spec.substr(colon + 1));
  if (kind == "b") return kl.b(x);
  if (kind == "d") return HeckeElement::delta(x);
  if (kind == "dinv") return delta_inverse(x);
  throw ParseError("unknown basis '" + kind + "' (b, d or dinv)");
}

int cmd_form(const Options& o, std::ostream& out) {
  SystemPtr sys = load_system(o.system);
  KLBasis kl(sys);
  if (o.dual_check) {
    int L = resolve_bound(*sys, o.maxlen);
    auto elems = sys->elements_up_to(L);
    std::size_t bad = 0;
    for (Element x : elems)
      for (Element y : elems) {
        LaurentPoly f = form(delta_inverse(sys->inverse(x)), HeckeElement::delta(y));
        if (f != LaurentPoly(x == y ? 1 : 0)) ++bad;
      }
    json j{{"system", sys->name()}, {"max_length", L}, {"pairs", elems.size() * elems.size()}, {"mismatches", bad},
           {"dual", bad == 0}};
    if (o.json_out)
      emit_json(j, o, out);
    else
      out << "(d_{x^-1}^-1, d_y) = [x = y] over " << elems.size() << " elements: " << (bad == 0 ? "holds" : "FAILS") << " ("
          << bad << " mismatches)\n";
    if (bad) throw ComputationError("duality check failed");
    return kExitOk;
  }
  require(!o.left.empty() && !o.right.empty(), "form needs --left and --right (or --dual-check)");
  LaurentPoly f = form(basis_element(*sys, kl, o.left), basis_element(*sys, kl, o.right));
  if (o.json_out)
    emit_json({{"system", sys->name()}, {"left", o.left}, {"right", o.right}, {"value", f.to_string()}}, o, out);
  else
    out << "(" << o.left << ", " << o.right << ") = " << f.to_string() << "\n";
  return kExitOk;
}

// ---- expansions ----

json coeff_json(const MixedExpansion& e, const LaurentPoly& c) {
  if (e.at_one) return c.eval_at_one();
  return c.to_string();
}

json expansion_json(const MixedExpansion& e, const std::string& kind, const std::string& system, int bound) {
  PositivityReport r = verify_positivity(e);
  json j;
  j["target"] = e.target.to_string();
  j["subgroup"] = e.subgroup;
  json terms = json::array();
  for (const auto& t : e.terms)
    terms.push_back({{"v", t.v.to_string()}, {"x", t.x.to_string()}, {"coeff", coeff_json(e, t.coeff)}});
  j["terms"] = terms;
  j["positive"] = r.positive;
  j["residual_zero"] = r.residual_zero;
  j["kind"] = kind;
  j["system"] = system;
  j["bound"] = bound;
  j["at_one"] = e.at_one;
  return j;
}

int report_expansion(const MixedExpansion& e, json j, const Options& o, std::ostream& out) {
  if (o.json_out) {
    emit_json(j, o, out);
    return kExitOk;
  }
  out << e.target.to_string() << " over " << e.subgroup << (e.at_one ? " (v = 1)" : "") << ":\n";
  for (const auto& t : e.terms)
    out << "  (" << t.v.to_string() << ", " << t.x.to_string() << ")  " << t.coeff.to_string() << "\n";
  PositivityReport r = verify_positivity(e);
  out << "positive: " << (r.positive ? "yes" : "no");
  if (r.min_negative) out << " (min coefficient " << *r.min_negative << ")";
  out << "\nresidual zero: " << (r.residual_zero ? "yes" : "no") << "\n";
  if (!o.out.empty()) write_text(o.out, j.dump(2) + "\n");
  return kExitOk;
}

int expansion_bound(const CoxeterSystem& sys, const Options& o, Element w) {
  if (o.maxlen) return *o.maxlen;
  if (auto top = sys.longest_length()) return *top;
  return w.length();
}

int cmd_mixed(const Options& o, std::ostream& out) {
  SystemPtr sys = load_system(o.system);
  require(!o.element.empty(), "mixed-expand needs --element");
  Element w = sys->parse_word(o.element);
  KLBasis kl(sys);
  MixedExpansion e = mixed_expand(w, parse_gens(*sys, o.parabolic), kl);
  return report_expansion(e, expansion_json(e, "mixed", o.system, w.length()), o, out);
}

int cmd_hyp(const Options& o, std::ostream& out) {
  SystemPtr sys = load_system(o.system);
  require(!o.element.empty() && !o.subgroup.empty(), "hyp-expand needs --subgroup and --element");
  Element w = sys->parse_word(o.element);
  int bound = expansion_bound(*sys, o, w);
  ReflectionSubgroup sub = parse_subgroup(sys, o.subgroup, bound);
  KLBasis kl(sys);
  MixedExpansion e = hyperbolic_expand(w, sub, kl);
  return report_expansion(e, expansion_json(e, "hyperbolic", o.system, bound), o, out);
}

std::optional<PCanonicalBasis> load_sub_pbasis(const std::string& source, const ReflectionSubgroup& sub,
                                               const Options& o, std::optional<KLBasis>& sub_kl) {
  if (source.empty()) return std::nullopt;
  if (sub.is_trivial()) throw ValidationError("the trivial subgroup takes no p-canonical data");
  sub_kl.emplace(sub.intrinsic());
  PCanonicalOptions po;
  po.strict_positivity = o.strict;
  po.lenient_duality = o.lenient_duality;
  return load_pcanonical_file(source, *sub_kl, po);
}

int cmd_pcan_expand(const Options& o, std::ostream& out, std::ostream& err) {
  SystemPtr sys = load_system(o.system);
  require(!o.element.empty() && !o.subgroup.empty(), "pcan-expand needs --subgroup and --element");
  Element w = sys->parse_word(o.element);
  int bound = expansion_bound(*sys, o, w);
  ReflectionSubgroup sub = parse_subgroup(sys, o.subgroup, bound);
  KLBasis kl(sys);
  PCanonicalBasis pb = load_pbasis(o.pcan, kl, o);
  for (const auto& msg : pb.warnings) err << "warning: " << msg << "\n";
  std::optional<KLBasis> sub_kl;
  auto sub_pb = load_sub_pbasis(o.sub_pcan, sub, o, sub_kl);
  MixedExpansion e = pcanonical_expand(w, sub, pb, sub_pb ? &*sub_pb : nullptr);
  json j = expansion_json(e, "pcanonical", o.system, bound);
  j["pcanonical"] = o.pcan.empty() ? "bundled" : o.pcan;
  if (!o.sub_pcan.empty()) j["subgroup_pcanonical"] = o.sub_pcan;
  return report_expansion(e, j, o, out);
}

// Re-reads an expansion written with --json and checks it independently:
// memberships, coset representatives, recombination, positivity flag.
int cmd_verify(const Options& o, std::ostream& out) {
  require(!o.file.empty(), "verify needs --file");
  json j;
  try {
    j = json::parse(read_file(o.file));
  } catch (const json::parse_error& e) {
    throw ParseError("'" + o.file + "' is not JSON: " + e.what());
  }
  try {
    SystemPtr sys = load_system(j.at("system").get<std::string>());
    std::string kind = j.at("kind").get<std::string>();
    int bound = j.at("bound").get<int>();
    ReflectionSubgroup sub = parse_subgroup(sys, j.at("subgroup").get<std::string>(), bound);
    MixedExpansion e;
    e.target = sys->parse_word(j.at("target").get<std::string>());
    e.subgroup = sub.description();
    e.at_one = j.at("at_one").get<bool>();
    CosetTable table(sub, Side::Right, std::max(bound, e.target.length()));
    for (const auto& t : j.at("terms")) {
      MixedTerm term{sys->parse_word(t.at("v").get<std::string>()), sys->parse_word(t.at("x").get<std::string>()), {}};
      const auto& c = t.at("coeff");
      term.coeff = c.is_string() ? LaurentPoly::parse(c.get<std::string>()) : LaurentPoly(c.get<std::int64_t>());
      if (!sub.contains(term.v)) throw ComputationError(term.v.to_string() + " is not in " + sub.description());
      if (!table.is_representative(term.x))
        throw ComputationError(term.x.to_string() + " is not a minimal coset representative");
      e.terms.push_back(term);
    }
    KLBasis kl(sys);
    bool ok = false;
    if (kind == "mixed") {
      require(!e.at_one, "mixed expansions live over Z[v, v^-1]");
      ok = recombine(e, kl) == kl.b(e.target);
    } else if (kind == "hyperbolic") {
      ok = recombine(e, sub) == specialize_v1(kl.b(e.target));
    } else if (kind == "pcanonical") {
      Options po = o;
      PCanonicalBasis pb = load_pbasis(j.value("pcanonical", std::string("bundled")), kl, po);
      std::optional<KLBasis> sub_kl;
      auto sub_pb = load_sub_pbasis(j.value("subgroup_pcanonical", std::string()), sub, po, sub_kl);
      ok = recombine(e, sub, sub_pb ? &*sub_pb : nullptr) == specialize_v1(pb.at(e.target));
    } else {
      throw ValidationError("unknown expansion kind '" + kind + "'");
    }
    e.residual_zero = ok;
    PositivityReport r = verify_positivity(e);
    bool flag_ok = j.at("positive").get<bool>() == r.positive && j.at("residual_zero").get<bool>() == ok;
    out << o.file << ": " << kind << " expansion of " << e.target.to_string() << " over " << e.subgroup << ": "
        << (ok ? "recombines" : "DOES NOT recombine") << ", positive " << (r.positive ? "yes" : "no")
        << (flag_ok ? "" : ", flags disagree with the file") << "\n";
    if (!ok || !flag_ok) throw ComputationError("verification of '" + o.file + "' failed");
  } catch (const json::exception& e) {
    throw ParseError("'" + o.file + "' is not an expansion file: " + e.what());
  }
  return kExitOk;
}

// ---- subgroups ----

json subgroup_json(const ReflectionSubgroup& sub) {
  json j;
  j["subgroup"] = sub.description();
  j["kind"] = kind_name(sub.kind(), sub.prime());
  j["bound"] = sub.bound();
  j["closed"] = sub.closed();
  json gens = json::array();
  for (const auto& r : sub.canonical_generators())
    gens.push_back({{"element", r.element.to_string()}, {"root", vector_json(r.root.simple)}});
  j["canonical_generators"] = gens;
  json mat = json::array();
  if (const auto& in = sub.intrinsic())
    for (Gen s = 0; s < in->rank(); ++s) {
      json row = json::array();
      for (Gen t = 0; t < in->rank(); ++t) row.push_back(in->matrix()(s, t));
      mat.push_back(row);
    }
  j["coxeter_matrix"] = mat;
  json elems = json::array();
  for (Element x : sub.elements()) elems.push_back(x.to_string());
  j["elements"] = elems;
  return j;
}

void print_subgroup(const ReflectionSubgroup& sub, std::ostream& out) {
  out << sub.description() << " [" << kind_name(sub.kind(), sub.prime()) << "], " << sub.elements().size()
      << " elements of length <= " << sub.bound() << (sub.closed() ? " (closed)" : " (truncated)") << "\n";
  out << "canonical generators:";
  if (sub.canonical_generators().empty()) out << " none";
  for (const auto& r : sub.canonical_generators()) out << " " << r.element.to_string();
  out << "\n";
  if (const auto& in = sub.intrinsic()) {
    out << "coxeter matrix:";
    for (Gen s = 0; s < in->rank(); ++s) {
      out << (s ? " |" : "");
      for (Gen t = 0; t < in->rank(); ++t) out << " " << (in->matrix()(s, t) == kInfinity ? std::string("inf") : std::to_string(in->matrix()(s, t)));
    }
    out << "\n";
  }
}

int cmd_cosets(const Options& o, std::ostream& out) {
  SystemPtr sys = load_system(o.system);
  require(!o.subgroup.empty(), "cosets needs --subgroup");
  int bound = resolve_bound(*sys, o.maxlen);
  ReflectionSubgroup sub = parse_subgroup(sys, o.subgroup, bound);
  Side side;
  if (o.side == "right")
    side = Side::Right;
  else if (o.side == "left")
    side = Side::Left;
  else
    throw ValidationError("--side is left or right, not '" + o.side + "'");
  CosetTable table(sub, side, bound);
  json j = subgroup_json(sub);
  j["side"] = o.side;
  json reps = json::array();
  for (Element z : table.representatives()) reps.push_back(z.to_string());
  j["representatives"] = reps;
  if (!o.decompose.empty()) {
    Element x = sys->parse_word(o.decompose);
    auto [u, z] = table.decompose(x);
    j["decomposition"] = {{"x", x.to_string()}, {"u", u.to_string()}, {"z", z.to_string()}};
  }
  if (o.json_out) {
    emit_json(j, o, out);
    return kExitOk;
  }
  print_subgroup(sub, out);
  out << o.side << " coset representatives (length <= " << bound << "):";
  for (const auto& r : reps) out << " " << r.get<std::string>();
  out << "\n";
  if (j.contains("decomposition")) {
    const auto& d = j["decomposition"];
    out << d["x"].get<std::string>() << " = "
        << (side == Side::Right ? d["u"].get<std::string>() + " * " + d["z"].get<std::string>()
                                : d["z"].get<std::string>() + " * " + d["u"].get<std::string>())
        << "\n";
  }
  return kExitOk;
}

int cmd_good(const Options& o, std::ostream& out) {
  SystemPtr sys = load_system(o.system);
  std::string spec = "goodmodp:p=" + std::to_string(o.p) + ";V=" + o.vectors;
  ReflectionSubgroup sub = parse_subgroup(sys, spec, o.maxlen);
  if (o.json_out)
    emit_json(subgroup_json(sub), o, out);
  else
    print_subgroup(sub, out);
  return kExitOk;
}

// ---- modchar ----

json char_json(const CharPoly& c) {
  json j = json::object();
  for (const auto& [w, m] : c.terms()) j[std::to_string(w)] = m;
  return j;
}

int cmd_simple_char(const Options& o, std::ostream& out) {
  require(o.m >= 0, "--m must be nonnegative");
  require(is_prime(o.p), "--p must be prime");
  CharPoly c = simple_char(o.m, o.p);
  if (o.json_out) {
    emit_json({{"m", o.m},
               {"p", o.p},
               {"digits", p_adic_digits(o.m, o.p)},
               {"dimension", c.dimension()},
               {"character", char_json(c)}},
              o, out);
    return kExitOk;
  }
  out << "L_" << o.m << " (p=" << o.p << ", dim " << c.dimension() << "): " << c.to_string() << "\n";
  return kExitOk;
}

int cmd_pascal(const Options& o, std::ostream& out) {
  require(o.rows >= 1 && o.rows <= 20000, "--rows must be in 1..20000");
  require(is_prime(o.p), "--p must be prime");
  ImageFormat f = parse_image_format(o.format);
  if (o.out.empty()) {
    for (const auto& row : pascal_mod_p(static_cast<int>(o.rows), o.p)) {
      for (std::size_t k = 0; k < row.size(); ++k) out << (k ? " " : "") << row[k];
      out << "\n";
    }
    return kExitOk;
  }
  pascal_image(static_cast<int>(o.rows), o.p, f, o.out);
  out << "wrote " << o.out << "\n";
  return kExitOk;
}

int cmd_qtriangle(const Options& o, std::ostream& out) {
  require(o.rows >= 1 && o.rows <= 2000, "--rows must be in 1..2000");
  require(o.p >= 2, "--p must be at least 2");
  if (o.out.empty()) {
    for (const auto& row : quantum_triangle_at_root(static_cast<int>(o.rows), o.p)) {
      for (std::size_t k = 0; k < row.size(); ++k) out << (k ? " " : "") << row[k].to_string();
      out << "\n";
    }
    return kExitOk;
  }
  quantum_triangle_image(static_cast<int>(o.rows), o.p, parse_image_format(o.format), o.out);
  out << "wrote " << o.out << "\n";
  return kExitOk;
}

int cmd_qbinom(const Options& o, std::ostream& out) {
  require(o.n >= 0 && o.n <= 5000, "--n must be in 0..5000");
  require(o.i >= 0 && o.i <= o.n, "--i must be in 0..n");
  BigLaurentPoly g = gaussian_binom(static_cast<int>(o.n), static_cast<int>(o.i));
  json j{{"n", o.n}, {"i", o.i}, {"poly", g.to_string()}, {"at_one", g.eval_at_one().str()}};
  if (o.eval_root) {
    require(*o.eval_root >= 1, "--eval-root must be positive");
    j["root_order"] = *o.eval_root;
    j["value"] = eval_cyclotomic(g, *o.eval_root).to_string();
  }
  if (o.json_out) {
    emit_json(j, o, out);
    return kExitOk;
  }
  out << "[" << o.n << "," << o.i << "] = " << j["poly"].get<std::string>() << "\n";
  if (o.eval_root)
    out << "at a primitive " << *o.eval_root << "-th root of unity: " << j["value"].get<std::string>() << "\n";
  return kExitOk;
}

// ---- alcoves ----

Point parse_point(const std::string& text, int n) {
  if (text.empty()) return {};
  Point p;
  for (const auto& c : split(text, ',')) p.push_back(to_rational(c, "--base"));
  if (static_cast<int>(p.size()) != n) throw ValidationError("--base needs " + std::to_string(n) + " coordinates");
  return p;
}

int cmd_alcove_render(const Options& o, std::ostream& out) {
  require(!o.out.empty(), "alcoves render needs --out");
  AffineArrangement arr(load_system(o.system));
  RenderOptions r;
  for (const auto& s : split(o.scales, ','))
    if (!s.empty()) r.scales.push_back(to_int(s, "--scales"));
  auto box = split(o.bbox, ',');
  if (box.size() != 4) throw ValidationError("--bbox is xmin,ymin,xmax,ymax");
  for (int k = 0; k < 4; ++k) {
    try {
      std::size_t used = 0;
      r.bbox[k] = std::stod(box[k], &used);
      if (used != box[k].size()) throw std::invalid_argument(box[k]);
    } catch (const std::exception&) {
      throw ParseError("bad --bbox coordinate '" + box[k] + "'");
    }
  }
  r.base = parse_point(o.base, arr.rank());
  if (o.highlight && !r.scales.empty())
    r.highlight = scaled_subgroup(arr, Rational(r.scales.front()), 1, r.base, false).copies;
  render_arrangement(arr, r, o.out);
  out << "wrote " << o.out << "\n";
  return kExitOk;
}

int cmd_alcove_check(const Options& o, std::ostream& out) {
  AffineArrangement arr(load_system(o.system));
  require(o.maxlen.has_value(), "alcoves check needs --maxlen");
  SeparationReport r = check_separation(arr, *o.maxlen);
  json mism = json::array();
  for (Element x : r.mismatches) mism.push_back(x.to_string());
  json j{{"system", arr.system().name()}, {"max_length", r.max_length}, {"checked", r.checked},
         {"delta_equals_length", r.mismatches.empty()}, {"mismatches", mism}, {"injective", r.injective}};
  emit_json(j, o, out);
  if (!r.mismatches.empty() || !r.injective) return kExitCompute;
  return kExitOk;
}

int cmd_alcove_scale(const Options& o, std::ostream& out) {
  AffineArrangement arr(load_system(o.system));
  Rational ell = to_rational(o.ell, "--ell");
  ScaledSubgroup s = scaled_subgroup(arr, ell, o.levels, parse_point(o.base, arr.rank()));
  json gens = json::array(), copies = json::array();
  for (Element g : s.generators) gens.push_back(g.to_string());
  for (Element x : s.copies) copies.push_back(x.to_string());
  json base = json::array();
  for (const auto& c : s.base) base.push_back(c.str());
  json j{{"system", arr.system().name()}, {"ell", s.scale.str()}, {"levels", s.levels}, {"base", base},
         {"generators", gens}, {"copy_count", copies.size()}, {"copies", copies}};
  if (s.subgroup) j["subgroup"] = subgroup_json(*s.subgroup)["canonical_generators"];
  if (o.json_out) {
    emit_json(j, o, out);
    return kExitOk;
  }
  out << arr.system().name() << ", l=" << s.scale.str() << ", levels " << s.levels << ": " << copies.size()
      << " alcoves in the scaled fundamental alcove\ngenerators:";
  for (const auto& g : gens) out << " " << g.get<std::string>();
  out << "\ncopies:";
  for (const auto& c : copies) out << " " << c.get<std::string>();
  out << "\n";
  return kExitOk;
}

// ---- selftest ----

struct Check {
  std::string name;
  bool pass;
};

std::vector<Check> golden_checks() {
  std::vector<Check> out;
  auto add = [&](std::string name, auto&& fn) {
    bool ok = false;
    try {
      ok = fn();
    } catch (const std::exception&) {
      ok = false;
    }
    out.push_back({std::move(name), ok});
  };
  auto c2 = preset_system("C2");
  KLBasis kl(c2);
  auto w = [&](const char* s) { return c2->parse_word(s); };

  add("b_s = d_s + v", [&] { return kl.b(w("s")).to_string() == "s=1 ; e=v"; });
  add("b_st in C2", [&] { return kl.b(w("st")).to_string() == "st=1 ; t=v ; s=v ; e=v^2"; });
  add("b_sts in C2", [&] { return kl.b(w("sts")).to_string() == "sts=1 ; ts=v ; st=v ; t=v^2 ; s=v^2 ; e=v^3"; });
  add("mixed st over <t>", [&] {
    MixedExpansion e = mixed_expand(w("st"), {1}, kl);
    return e.terms.size() == 3 && e.coeff(w("t"), w("e")) == LaurentPoly::parse("v") &&
           e.coeff(w("e"), w("s")) == LaurentPoly::parse("v") && e.coeff(w("e"), w("st")) == LaurentPoly(1);
  });
  add("hyperbolic sts over <sts>", [&] {
    MixedExpansion e = hyperbolic_expand(w("sts"), parse_subgroup(c2, "reflections:sts"), kl);
    bool ok = e.terms.size() == 4;
    for (const auto& t : e.terms) ok = ok && t.coeff == LaurentPoly(1);
    return ok;
  });
  add("hyperbolic sts over <t,sts> has -1", [&] {
    MixedExpansion e = hyperbolic_expand(w("sts"), parse_subgroup(c2, "reflections:t,sts"), kl);
    auto r = verify_positivity(e);
    return !r.positive && r.min_negative == -1;
  });
  add("good subgroup mod 2 is <t,sts>", [&] {
    auto sub = good_subgroup_mod_p(c2, 2, {});
    std::set<Element> g;
    for (const auto& r : sub.canonical_generators()) g.insert(r.element);
    return g == std::set<Element>{w("t"), w("sts")} && good_subgroup_mod_p(c2, 3, {}).is_trivial();
  });
  add("2b_sts expansion over <t,sts>", [&] {
    PCanonicalBasis pb = load_pcanonical(bundled_c2_p2(), kl);
    MixedExpansion e = pcanonical_expand(w("sts"), good_subgroup_mod_p(c2, 2, {}), pb);
    bool ok = e.terms.size() == 4;
    for (const char* v : {"t", "sts"})
      for (const char* x : {"s", "e"}) ok = ok && e.coeff(w(v), w(x)) == LaurentPoly(1);
    GroupAlgebraElement at1 = specialize_v1(pb.at(w("sts")));
    const std::map<std::string, std::int64_t> want{{"e", 2}, {"s", 2}, {"t", 1}, {"st", 1}, {"ts", 1}, {"sts", 1}};
    for (Element x : c2->elements_up_to(4)) {
      auto it = want.find(x.to_string());
      ok = ok && at1.coeff(x) == (it == want.end() ? 0 : it->second);
    }
    return ok;
  });
  add("simple characters mod 3, m <= 6", [&] {
    const char* table[] = {"e^0",         "e^-1 + e^1",        "e^-2 + e^0 + e^2", "e^-3 + e^3",
                           "e^-4 + e^-2 + e^2 + e^4", "e^-5 + e^-3 + e^-1 + e^1 + e^3 + e^5",
                           "e^-6 + e^0 + e^6"};
    for (int m = 0; m <= 6; ++m)
      if (simple_char(m, 3).to_string() != table[m]) return false;
    return true;
  });
  add("Pascal mod 3, 6 rows", [&] {
    std::vector<std::vector<std::int64_t>> want = {{1},          {1, 1},          {1, 2, 1},
                                                   {1, 0, 0, 1}, {1, 1, 0, 1, 1}, {1, 2, 1, 1, 2, 1}};
    return pascal_mod_p(6, 3) == want;
  });
  add("quantum [6,3], [8,4], [2,1] at p=3", [&] {
    return eval_cyclotomic(gaussian_binom(6, 3), 3).to_string() == "2" &&
           eval_cyclotomic(gaussian_binom(8, 4), 3).to_string() == "-2" &&
           eval_cyclotomic(gaussian_binom(2, 1), 3).to_string() == "-1";
  });
  add("e_v^2 = [n]! e_v, n = 2..4", [&] { return verify_ev_square(2) && verify_ev_square(3) && verify_ev_square(4); });
  add("alcove separation A1~ (10), C2~ (6)", [&] {
    auto a = check_separation(AffineArrangement(preset_system("A1~")), 10);
    auto c = check_separation(AffineArrangement(preset_system("C2~")), 6);
    return a.mismatches.empty() && a.injective && c.mismatches.empty() && c.injective;
  });
  add("scaled copies 3, 9, 9", [&] {
    AffineArrangement a(preset_system("A1~")), c(preset_system("C2~"));
    return scaled_subgroup(a, 3, 1, {}, false).copies.size() == 3 &&
           scaled_subgroup(a, 3, 2, {}, false).copies.size() == 9 &&
           scaled_subgroup(c, 3, 1, {}, false).copies.size() == 9;
  });
  return out;
}

int cmd_selftest(const Options& o, std::ostream& out) {
  auto checks = golden_checks();
  std::size_t passed = 0;
  json rows = json::array();
  for (const auto& c : checks) {
    passed += c.pass;
    rows.push_back({{"check", c.name}, {"pass", c.pass}});
  }
  if (o.json_out) {
    emit_json({{"checks", rows}, {"passed", passed}, {"total", checks.size()}}, o, out);
  } else {
    for (const auto& c : checks) out << (c.pass ? "PASS  " : "FAIL  ") << c.name << "\n";
    out << passed << "/" << checks.size() << " passed\n";
  }
  return passed == checks.size() ? kExitOk : kExitCompute;
}

// ---- wiring ----

void add_system(CLI::App* app, Options& o) {
  app->add_option("--system,--type", o.system, "preset name (" + [] {
    std::string s;
    for (const auto& n : preset_names()) s += (s.empty() ? "" : " ") + n;
    return s;
  }() + ") or system file")->required();
}

void add_json(CLI::App* app, Options& o) {
  app->add_flag("--json", o.json_out, "JSON output");
  app->add_option("--out", o.out, "write the JSON here instead of stdout");
}

void add_maxlen(CLI::App* app, Options& o) {
  app->add_option("--maxlen,--bound", o.maxlen, "length bound (required for infinite groups)")->check(CLI::NonNegativeNumber);
}

void add_pcan_flags(CLI::App* app, Options& o) {
  app->add_flag("--strict", o.strict, "negative KL coefficients are errors");
  app->add_flag("--lenient-duality", o.lenient_duality, "self-duality failures are warnings");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Coxeter groups, Kazhdan-Lusztig bases, mixed expansions, SL2 characters and alcoves", "coxkl"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "help for every subcommand");

  auto* group = app.add_subcommand("group", "order, elements per length, reflections, descents");
  add_system(group, o);
  add_maxlen(group, o);
  group->add_option("--element", o.element, "element word for length/descents");
  add_json(group, o);

  auto* kl = app.add_subcommand("kl", "Kazhdan-Lusztig basis element b_x");
  add_system(kl, o);
  kl->add_option("--element", o.element, "word, e.g. sts");
  kl->add_flag("--all", o.all, "compute every b_x up to --maxlen");
  add_maxlen(kl, o);
  kl->add_option("--threads", o.threads, "worker threads (default COXKL_THREADS or 1)");
  add_json(kl, o);

  auto* pload = app.add_subcommand("pcan-load", "load and validate p-canonical data");
  add_system(pload, o);
  pload->add_option("--file", o.file, "data file (default: the bundled C2 p=2 data)");
  add_pcan_flags(pload, o);
  add_json(pload, o);

  auto* fm = app.add_subcommand("form", "the pairing (h, h') = coefficient of d_e in tau(h) h'");
  add_system(fm, o);
  fm->add_option("--left", o.left, "b:<word>, d:<word> or dinv:<word>");
  fm->add_option("--right", o.right, "same syntax as --left");
  fm->add_flag("--dual-check", o.dual_check, "check (d_{x^-1}^-1, d_y) = [x = y] on all pairs");
  add_maxlen(fm, o);
  add_json(fm, o);

  auto* mixed = app.add_subcommand("mixed-expand", "b_w in the basis b_v d_x of a standard parabolic");
  add_system(mixed, o);
  mixed->add_option("--parabolic", o.parabolic, "generator letters, e.g. t or s,t")->required();
  mixed->add_option("--element", o.element, "target word")->required();
  add_json(mixed, o);

  auto* hyp = app.add_subcommand("hyp-expand", "b_w(1) in the basis b_v(1) x of a reflection subgroup");
  add_system(hyp, o);
  hyp->add_option("--subgroup", o.subgroup, "parabolic:..., reflections:..., goodmodp:p=..;V=..")->required();
  hyp->add_option("--element", o.element, "target word")->required();
  add_maxlen(hyp, o);
  add_json(hyp, o);

  auto* pexp = app.add_subcommand("pcan-expand", "p-canonical b_w(1) over a good subgroup");
  add_system(pexp, o);
  pexp->add_option("--subgroup", o.subgroup, "a goodmodp: subgroup")->required();
  pexp->add_option("--element", o.element, "target word")->required();
  pexp->add_option("--pcan", o.pcan, "p-canonical data for the group (default: bundled C2 p=2)");
  pexp->add_option("--subgroup-pcan", o.sub_pcan, "p-canonical data for the subgroup (default: its KL basis)");
  add_pcan_flags(pexp, o);
  add_maxlen(pexp, o);
  add_json(pexp, o);

  auto* ver = app.add_subcommand("verify", "re-check an expansion JSON file");
  ver->add_option("--file", o.file, "file written by an *-expand --json")->required();

  auto* cos = app.add_subcommand("cosets", "subgroup closure, canonical generators, coset representatives");
  add_system(cos, o);
  cos->add_option("--subgroup", o.subgroup, "subgroup spec")->required();
  cos->add_option("--side", o.side, "right (W_r \\ W) or left (W / W_r)");
  cos->add_option("--decompose", o.decompose, "write this element as u z");
  add_maxlen(cos, o);
  add_json(cos, o);

  auto* good = app.add_subcommand("good-subgroup", "reflections whose roots vanish mod p modulo V");
  add_system(good, o);
  good->add_option("--p", o.p, "prime")->required();
  good->add_option("--V", o.vectors, "0, or vectors like [1,0],[0,1]");
  add_maxlen(good, o);
  add_json(good, o);

  auto* mc = app.add_subcommand("modchar", "SL2 characters and Pascal triangles");
  mc->require_subcommand(1);
  auto* sc = mc->add_subcommand("simple-char", "character of L_m in characteristic p");
  sc->add_option("--m", o.m, "highest weight")->required();
  sc->add_option("--p", o.p, "prime")->required();
  add_json(sc, o);
  auto* pas = mc->add_subcommand("pascal", "Pascal's triangle mod p");
  pas->add_option("--rows", o.rows, "number of rows")->required();
  pas->add_option("--p", o.p, "prime")->required();
  pas->add_option("--format", o.format, "pgm or svg");
  pas->add_option("--out", o.out, "image path (text rows on stdout if absent)");
  auto* qt = mc->add_subcommand("qtriangle", "Gaussian binomials at a primitive p-th root of unity");
  qt->add_option("--rows", o.rows, "number of rows")->required();
  qt->add_option("--p", o.p, "root order")->required();
  qt->add_option("--format", o.format, "pgm or svg");
  qt->add_option("--out", o.out, "image path (values on stdout if absent)");
  auto* qb = mc->add_subcommand("qbinom", "Gaussian binomial [n, i]");
  qb->add_option("--n", o.n, "n")->required();
  qb->add_option("--i", o.i, "i")->required();
  qb->add_option("--eval-root", o.eval_root, "evaluate at a primitive root of unity of this order");
  add_json(qb, o);

  auto* al = app.add_subcommand("alcoves", "affine alcove geometry");
  al->require_subcommand(1);
  auto* ren = al->add_subcommand("render", "SVG of the arrangement with scaled layers");
  add_system(ren, o);
  ren->add_option("--scales", o.scales, "comma separated integers, e.g. 3,9");
  ren->add_option("--bbox", o.bbox, "xmin,ymin,xmax,ymax in plane units");
  ren->add_option("--base", o.base, "base point, fundamental weight coordinates");
  ren->add_flag("--highlight", o.highlight, "shade the alcoves inside the first scaled alcove");
  ren->add_option("--out", o.out, "SVG path")->required();
  auto* chk = al->add_subcommand("check", "JSON report: separation equals length, injectivity");
  add_system(chk, o);
  add_maxlen(chk, o);
  chk->add_option("--out", o.out, "write the JSON here");
  auto* scl = al->add_subcommand("scale", "scaled subgroup generators and fundamental-domain copies");
  add_system(scl, o);
  scl->add_option("--ell", o.ell, "scale factor l");
  scl->add_option("--levels", o.levels, "apply the scaling this many times")->check(CLI::NonNegativeNumber);
  scl->add_option("--base", o.base, "base point, fundamental weight coordinates");
  add_json(scl, o);

  auto* st = app.add_subcommand("selftest", "golden values from the worked examples");
  add_json(st, o);

  std::vector<const char*> argv{"coxkl"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (group->parsed()) return cmd_group(o, out);
    if (kl->parsed()) return cmd_kl(o, out);
    if (pload->parsed()) return cmd_pcan_load(o, out, err);
    if (fm->parsed()) return cmd_form(o, out);
    if (mixed->parsed()) return cmd_mixed(o, out);
    if (hyp->parsed()) return cmd_hyp(o, out);
    if (pexp->parsed()) return cmd_pcan_expand(o, out, err);
    if (ver->parsed()) return cmd_verify(o, out);
    if (cos->parsed()) return cmd_cosets(o, out);
    if (good->parsed()) return cmd_good(o, out);
    if (sc->parsed()) return cmd_simple_char(o, out);
    if (pas->parsed()) return cmd_pascal(o, out);
    if (qt->parsed()) return cmd_qtriangle(o, out);
    if (qb->parsed()) return cmd_qbinom(o, out);
    if (ren->parsed()) return cmd_alcove_render(o, out);
    if (chk->parsed()) return cmd_alcove_check(o, out);
    if (scl->parsed()) return cmd_alcove_scale(o, out);
    if (st->parsed()) return cmd_selftest(o, out);
  } catch (const ValidationError& e) {
    err << "coxkl: error: " << e.what() << "\n";
    return kExitInput;
  } catch (const ComputationError& e) {
    err << "coxkl: computation error: " << e.what() << "\n";
    return kExitCompute;
  } catch (const IoError& e) {
    err << "coxkl: i/o error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::bad_alloc&) {
    err << "coxkl: computation error: out of memory\n";
    return kExitCompute;
  }
  err << "coxkl: no subcommand\n";
  return kExitInput;
}

int run(int argc, const char* const* argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace coxkl::cli
