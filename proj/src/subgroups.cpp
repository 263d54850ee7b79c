#include "coxkl/subgroups.hpp"

#include <algorithm>
#include <sstream>

namespace coxkl {

namespace {

std::int64_t mod(std::int64_t a, std::int64_t p) {
  std::int64_t r = a % p;
  return r < 0 ? r + p : r;
}

std::int64_t inv_mod(std::int64_t a, std::int64_t p) {
  // p prime, a != 0 mod p
  std::int64_t r = 1, b = mod(a, p), e = p - 2;
  while (e > 0) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return r;
}

std::size_t rank_mod_p(std::vector<std::vector<std::int64_t>> rows, std::int64_t p) {
  if (rows.empty()) return 0;
  const std::size_t n = rows[0].size();
  for (auto& r : rows)
    for (auto& x : r) x = mod(x, p);
  std::size_t rank = 0;
  for (std::size_t col = 0; col < n && rank < rows.size(); ++col) {
    std::size_t piv = rank;
    while (piv < rows.size() && rows[piv][col] == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[piv], rows[rank]);
    std::int64_t inv = inv_mod(rows[rank][col], p);
    for (auto& x : rows[rank]) x = x * inv % p;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == rank || rows[i][col] == 0) continue;
      std::int64_t f = rows[i][col];
      for (std::size_t j = 0; j < n; ++j) rows[i][j] = mod(rows[i][j] - f * rows[rank][j], p);
    }
    ++rank;
  }
  return rank;
}

int dihedral_order(const CoxeterSystem& sys, Element a, Element b) {
  Element ab = sys.multiply(a, b);
  Element p = ab;
  for (int k = 1; k <= 6; ++k) {
    if (p.is_identity()) return k;
    p = sys.multiply(p, ab);
  }
  return kInfinity;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else if (c != ' ' && c != '\t') {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

std::vector<std::vector<std::int64_t>> parse_vectors(const std::string& text) {
  // "0" or "[1,0],[0,1]"
  std::vector<std::vector<std::int64_t>> out;
  if (text == "0" || text.empty()) return out;
  std::size_t i = 0;
  while (i < text.size()) {
    if (text[i] != '[') throw ParseError("expected '[' in vector list '" + text + "'");
    auto close = text.find(']', i);
    if (close == std::string::npos) throw ParseError("unterminated vector in '" + text + "'");
    std::vector<std::int64_t> v;
    for (const auto& tok : split(text.substr(i + 1, close - i - 1), ',')) {
      try {
        std::size_t used = 0;
        v.push_back(std::stoll(tok, &used));
        if (used != tok.size()) throw std::invalid_argument(tok);
      } catch (const std::exception&) {
        throw ParseError("bad vector entry '" + tok + "'");
      }
    }
    out.push_back(std::move(v));
    i = close + 1;
    if (i < text.size()) {
      if (text[i] != ',') throw ParseError("expected ',' between vectors in '" + text + "'");
      ++i;
    }
  }
  return out;
}

}  // namespace

bool is_prime(std::int64_t p) {
  if (p < 2) return false;
  for (std::int64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

std::string kind_name(SubgroupKind kind, int prime) {
  switch (kind) {
    case SubgroupKind::StandardParabolic: return "standard-parabolic";
    case SubgroupKind::Parabolic: return "parabolic";
    case SubgroupKind::Good: return "good(" + std::to_string(prime) + ")";
    default: return "general";
  }
}

int resolve_bound(const CoxeterSystem& system, std::optional<int> requested) {
  if (requested) {
    if (*requested < 0) throw ValidationError("length bound must be nonnegative");
    return *requested;
  }
  if (auto top = system.longest_length()) return *top;
  throw ValidationError("a length bound is required for the infinite system " + system.name());
}

ReflectionSubgroup make_subgroup(std::shared_ptr<const CoxeterSystem> system, const std::vector<Element>& gens,
                                 int bound, std::string description) {
  const CoxeterSystem& sys = *system;
  for (Element r : gens) {
    if (r.system_ptr() != &sys) throw ValidationError("reflection belongs to a different system");
    if (!sys.is_reflection(r)) throw ValidationError(r.to_string() + " is not a reflection");
  }
  ReflectionSubgroup sub;
  sub.parent_ = system;
  sub.bound_ = bound;
  sub.description_ = std::move(description);

  std::vector<Element> frontier{sys.identity()};
  sub.members_.insert(sys.identity());
  bool truncated = false;
  while (!frontier.empty()) {
    std::vector<Element> next;
    for (Element x : frontier)
      for (Element r : gens)
        for (Element y : {sys.multiply(x, r), sys.multiply(r, x)}) {
          if (y.length() > bound) {
            truncated = true;
            continue;
          }
          if (sub.members_.insert(y).second) next.push_back(y);
        }
    frontier = std::move(next);
  }
  sub.closed_ = !truncated;
  sub.elements_.assign(sub.members_.begin(), sub.members_.end());
  std::sort(sub.elements_.begin(), sub.elements_.end(), ShortLexLess{});

  for (Element x : sub.elements_)
    if (auto root = sys.reflection_root(x)) sub.reflections_.push_back({x, *root});

  // t is canonical iff no other reflection of the subgroup is sent to a
  // negative root by t.
  for (const auto& t : sub.reflections_) {
    bool canonical = true;
    for (const auto& r : sub.reflections_) {
      if (r.element == t.element) continue;
      if (!sys.act_on_root(t.element, r.root).positive) {
        canonical = false;
        break;
      }
    }
    if (canonical) sub.canonical_.push_back(t);
  }

  const int k = static_cast<int>(sub.canonical_.size());
  if (k > 0) {
    std::vector<int> m(static_cast<std::size_t>(k) * k, 1);
    for (int i = 0; i < k; ++i)
      for (int j = i + 1; j < k; ++j) {
        int o = dihedral_order(sys, sub.canonical_[i].element, sub.canonical_[j].element);
        if (o == 1 || o == 5) throw ComputationError("unexpected dihedral order among canonical generators");
        m[i * k + j] = m[j * k + i] = o;
      }
    CoxeterSystem::Options opt;
    opt.name = sub.description_;
    sub.intrinsic_ = CoxeterSystem::create(CoxeterMatrix(k, std::move(m)), std::move(opt));
  }

  bool all_simple = std::all_of(sub.canonical_.begin(), sub.canonical_.end(),
                                [](const Reflection& r) { return r.element.length() == 1; });
  if (all_simple) {
    sub.kind_ = SubgroupKind::StandardParabolic;
  } else {
    for (Element w : sys.elements_up_to(bound)) {
      Element wi = sys.inverse(w);
      bool ok = std::all_of(sub.canonical_.begin(), sub.canonical_.end(), [&](const Reflection& r) {
        return sys.multiply(sys.multiply(wi, r.element), w).length() == 1;
      });
      if (ok) {
        sub.kind_ = SubgroupKind::Parabolic;
        break;
      }
    }
  }
  return sub;
}

ReflectionSubgroup generate_subgroup(std::shared_ptr<const CoxeterSystem> system,
                                     const std::vector<Element>& reflections, std::optional<int> bound) {
  int L = resolve_bound(*system, bound);
  std::string desc = "reflections:";
  for (std::size_t i = 0; i < reflections.size(); ++i) desc += (i ? "," : "") + reflections[i].to_string();
  return make_subgroup(std::move(system), reflections, L, desc);
}

ReflectionSubgroup standard_parabolic(std::shared_ptr<const CoxeterSystem> system, const std::vector<Gen>& gens,
                                      std::optional<int> bound) {
  int L = resolve_bound(*system, bound);
  std::vector<Element> refl;
  std::string desc = "parabolic:";
  for (std::size_t i = 0; i < gens.size(); ++i) {
    refl.push_back(system->generator(gens[i]));
    desc += (i ? "," : "") + std::string(1, system->letter(gens[i]));
  }
  return make_subgroup(std::move(system), refl, L, desc);
}

ReflectionSubgroup good_subgroup_mod_p(std::shared_ptr<const CoxeterSystem> system, int p,
                                       const std::vector<std::vector<std::int64_t>>& span,
                                       std::optional<int> bound) {
  if (!is_prime(p)) throw ValidationError(std::to_string(p) + " is not prime");
  const int dim = system->realization().lattice_rank;
  for (const auto& v : span)
    if (static_cast<int>(v.size()) != dim)
      throw ValidationError("subspace vectors need " + std::to_string(dim) + " coordinates");
  int L = resolve_bound(*system, bound);
  std::size_t base = rank_mod_p(span, p);
  std::vector<Element> chosen;
  for (const auto& r : system->reflections_up_to(L)) {
    auto rows = span;
    rows.push_back(r.root.coordinates);
    if (rank_mod_p(rows, p) == base) chosen.push_back(r.element);
  }
  std::string desc = "goodmodp:p=" + std::to_string(p) + ";V=";
  if (span.empty()) {
    desc += "0";
  } else {
    for (std::size_t i = 0; i < span.size(); ++i) {
      desc += i ? ",[" : "[";
      for (std::size_t j = 0; j < span[i].size(); ++j) desc += (j ? "," : "") + std::to_string(span[i][j]);
      desc += "]";
    }
  }
  ReflectionSubgroup sub = make_subgroup(std::move(system), chosen, L, desc);
  sub.kind_ = SubgroupKind::Good;
  sub.prime_ = p;
  return sub;
}

ReflectionSubgroup parse_subgroup(std::shared_ptr<const CoxeterSystem> system, const std::string& spec,
                                  std::optional<int> bound) {
  auto colon = spec.find(':');
  if (colon == std::string::npos)
    throw ParseError("subgroup spec '" + spec + "' must start with parabolic:, reflections: or goodmodp:");
  std::string kind = spec.substr(0, colon), body = spec.substr(colon + 1);
  if (kind == "parabolic") {
    std::vector<Gen> gens;
    for (const auto& tok : split(body, ',')) {
      if (tok.empty()) continue;
      if (tok.size() != 1) throw ValidationError("parabolic subgroups take single generator letters, got '" + tok + "'");
      auto g = system->generator_of_letter(tok[0]);
      if (!g) throw ValidationError("unknown generator '" + tok + "'");
      gens.push_back(*g);
    }
    return standard_parabolic(std::move(system), gens, bound);
  }
  if (kind == "reflections") {
    std::vector<Element> refl;
    for (const auto& tok : split(body, ','))
      if (!tok.empty()) refl.push_back(system->parse_word(tok));
    return generate_subgroup(std::move(system), refl, bound);
  }
  if (kind == "goodmodp") {
    std::optional<int> p;
    std::vector<std::vector<std::int64_t>> span;
    for (const auto& part : split(body, ';')) {
      if (part.rfind("p=", 0) == 0) {
        try {
          p = std::stoi(part.substr(2));
        } catch (const std::exception&) {
          throw ParseError("bad prime in '" + spec + "'");
        }
      } else if (part.rfind("V=", 0) == 0) {
        span = parse_vectors(part.substr(2));
      } else if (!part.empty()) {
        throw ParseError("unexpected '" + part + "' in '" + spec + "'");
      }
    }
    if (!p) throw ParseError("goodmodp spec needs p=<prime>");
    return good_subgroup_mod_p(std::move(system), *p, span, bound);
  }
  throw ParseError("unknown subgroup kind '" + kind + "'");
}

Element ReflectionSubgroup::to_intrinsic(Element x) const {
  if (!intrinsic_) throw ComputationError("the trivial subgroup has no intrinsic Coxeter system");
  const CoxeterSystem& sys = *parent_;
  std::vector<Gen> word;
  Element y = x;
  while (!y.is_identity()) {
    Element yi = sys.inverse(y);
    int found = -1;
    for (std::size_t i = 0; i < canonical_.size(); ++i)
      if (!sys.act_on_root(yi, canonical_[i].root).positive) {
        found = static_cast<int>(i);
        break;
      }
    if (found < 0) throw ComputationError(x.to_string() + " is not in the subgroup " + description_);
    word.push_back(found);
    y = sys.multiply(canonical_[found].element, y);
  }
  return intrinsic_->from_word(word);
}

Element ReflectionSubgroup::from_intrinsic(Element y) const {
  const CoxeterSystem& sys = *parent_;
  if (!intrinsic_) return sys.identity();
  Element x = sys.identity();
  for (Gen g : y.word()) x = sys.multiply(x, canonical_[g].element);
  return x;
}

int ReflectionSubgroup::intrinsic_length(Element x) const {
  if (!intrinsic_) {
    if (!x.is_identity()) throw ComputationError(x.to_string() + " is not in the trivial subgroup");
    return 0;
  }
  return to_intrinsic(x).length();
}

CosetTable::CosetTable(const ReflectionSubgroup& sub, Side side, std::optional<int> bound)
    : sub_(sub), side_(side), bound_(resolve_bound(sub.parent(), bound ? bound : std::optional<int>(sub.bound()))) {
  for (Element x : sub_.parent().elements_up_to(bound_))
    if (is_representative(x)) reps_.push_back(x);
}

bool CosetTable::is_representative(Element x) const {
  const CoxeterSystem& sys = sub_.parent();
  Element probe = side_ == Side::Right ? sys.inverse(x) : x;
  for (const auto& r : sub_.canonical_generators())
    if (!sys.act_on_root(probe, r.root).positive) return false;
  return true;
}

std::pair<Element, Element> CosetTable::decompose(Element x) const {
  const CoxeterSystem& sys = sub_.parent();
  if (x.length() > bound_)
    throw ComputationError(x.to_string() + " lies outside the explored region (length bound " +
                           std::to_string(bound_) + ")");
  Element u = sys.identity(), z = x;
  while (true) {
    Element probe = side_ == Side::Right ? sys.inverse(z) : z;
    const Reflection* hit = nullptr;
    for (const auto& r : sub_.canonical_generators())
      if (!sys.act_on_root(probe, r.root).positive) {
        hit = &r;
        break;
      }
    if (!hit) break;
    if (side_ == Side::Right) {
      z = sys.multiply(hit->element, z);
      u = sys.multiply(u, hit->element);
    } else {
      z = sys.multiply(z, hit->element);
      u = sys.multiply(hit->element, u);
    }
  }
  if (!sub_.contains(u))
    throw ComputationError("subgroup part of " + x.to_string() + " lies outside the explored subgroup");
  return {u, z};
}

}  // namespace coxkl
