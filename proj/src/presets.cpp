#include "coxkl/presets.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

#include "coxkl/checked.hpp"

namespace coxkl {

namespace {

int m_from_product(std::int64_t p) {
  switch (p) {
    case 0: return 2;
    case 1: return 3;
    case 2: return 4;
    case 3: return 6;
    default: return kInfinity;
  }
}

CartanMatrix type_a(int n) {
  CartanMatrix c(n, std::vector<std::int64_t>(n, 0));
  for (int i = 0; i < n; ++i) {
    c[i][i] = 2;
    if (i + 1 < n) c[i][i + 1] = c[i + 1][i] = -1;
  }
  return c;
}

const CartanMatrix kB2 = {{2, -1}, {-2, 2}};
const CartanMatrix kC2 = {{2, -2}, {-1, 2}};
const CartanMatrix kG2 = {{2, -1}, {-3, 2}};

std::shared_ptr<const CoxeterSystem> epsilon_rank2(const CartanMatrix& cartan, std::string name,
                                                   std::vector<std::vector<std::int64_t>> roots,
                                                   std::vector<std::vector<std::int64_t>> coroots) {
  CoxeterSystem::Options opt;
  opt.name = std::move(name);
  opt.realization = Realization{2, std::move(roots), std::move(coroots)};
  return CoxeterSystem::create(coxeter_matrix_from_cartan(cartan), std::move(opt));
}

std::string trim(std::string_view s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

std::vector<std::string> split_ws(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

std::int64_t parse_entry(const std::string& tok, int line) {
  std::int64_t v = 0;
  auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || p != tok.data() + tok.size())
    throw ParseError("line " + std::to_string(line) + ": bad integer '" + tok + "'");
  return v;
}

}  // namespace

CoxeterMatrix coxeter_matrix_from_cartan(const CartanMatrix& cartan) {
  const int n = static_cast<int>(cartan.size());
  std::vector<int> m(static_cast<std::size_t>(n) * n, 1);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) m[i * n + j] = m_from_product(checked_mul(cartan[i][j], cartan[j][i]));
  return CoxeterMatrix(n, std::move(m));
}

std::shared_ptr<const CoxeterSystem> system_from_cartan(const CartanMatrix& cartan, std::string name) {
  const int n = static_cast<int>(cartan.size());
  Realization r;
  r.lattice_rank = n;
  r.roots.assign(n, std::vector<std::int64_t>(n, 0));
  for (int i = 0; i < n; ++i) r.roots[i][i] = 1;
  r.coroots = cartan;
  CoxeterSystem::Options opt;
  opt.name = std::move(name);
  opt.realization = std::move(r);
  return CoxeterSystem::create(coxeter_matrix_from_cartan(cartan), std::move(opt));
}

FiniteRootData finite_root_data(const CartanMatrix& cartan) {
  const int n = static_cast<int>(cartan.size());
  CartanMatrix dual(n, std::vector<std::int64_t>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) dual[i][j] = cartan[j][i];
  auto sys = system_from_cartan(cartan, "finite");
  auto cosys = system_from_cartan(dual, "dual");
  auto top = sys->longest_length();
  if (!top) throw ValidationError("root data requested for an infinite root system");
  FiniteRootData data;
  data.cartan = cartan;
  std::int64_t best = -1;
  for (const auto& refl : sys->reflections_up_to(*top)) {
    auto co = cosys->reflection_root(cosys->from_word(refl.element.word()));
    if (!co) throw ComputationError("dual reflection lookup failed");
    std::int64_t h = 0;
    for (auto c : co->simple) h += c;
    if (h > best) {
      best = h;
      data.highest_coroot = data.roots.size();
    }
    data.roots.push_back(refl.root.simple);
    data.coroots.push_back(co->simple);
  }
  return data;
}

std::shared_ptr<const CoxeterSystem> affine_system(const CartanMatrix& finite_cartan, std::string name) {
  const int n = static_cast<int>(finite_cartan.size());
  auto data = finite_root_data(finite_cartan);
  const auto& phi = data.roots[data.highest_coroot];
  const auto& theta = data.coroots[data.highest_coroot];
  CartanMatrix c(n + 1, std::vector<std::int64_t>(n + 1, 0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) c[i][j] = finite_cartan[i][j];
  for (int i = 0; i < n; ++i) {
    std::int64_t theta_on_i = 0, i_on_phi = 0;
    for (int j = 0; j < n; ++j) {
      theta_on_i += theta[j] * finite_cartan[j][i];
      i_on_phi += finite_cartan[i][j] * phi[j];
    }
    c[n][i] = -theta_on_i;
    c[i][n] = -i_on_phi;
  }
  c[n][n] = 2;
  Realization r;
  r.lattice_rank = n + 1;
  r.roots.assign(n + 1, std::vector<std::int64_t>(n + 1, 0));
  for (int i = 0; i <= n; ++i) r.roots[i][i] = 1;
  r.coroots = c;
  AffineStructure aff;
  aff.finite_cartan = finite_cartan;
  for (int i = 0; i < n; ++i) aff.finite_generators.push_back(i);
  aff.affine_generator = n;
  CoxeterSystem::Options opt;
  opt.name = std::move(name);
  opt.realization = std::move(r);
  opt.affine = std::move(aff);
  return CoxeterSystem::create(coxeter_matrix_from_cartan(c), std::move(opt));
}

std::vector<std::string> preset_names() {
  return {"A1", "A2", "A3", "B2", "C2", "G2", "A1~", "A2~", "C2~", "G2~"};
}

std::shared_ptr<const CoxeterSystem> preset_system(std::string_view name) {
  std::string n(name);
  if (n == "B2") return epsilon_rank2(kB2, n, {{1, -1}, {0, 1}}, {{1, -1}, {0, 2}});
  // alpha = e1 - e2 (short), beta = 2 e2 (long)
  if (n == "C2") return epsilon_rank2(kC2, n, {{1, -1}, {0, 2}}, {{1, -1}, {0, 1}});
  if (n == "G2") return system_from_cartan(kG2, n);
  if (n == "A1~") return affine_system(type_a(1), n);
  if (n == "A2~") return affine_system(type_a(2), n);
  if (n == "C2~") return affine_system(kC2, n);
  if (n == "G2~") return affine_system(kG2, n);
  if (n.size() >= 2 && n[0] == 'A' && n.find_first_not_of("0123456789", 1) == std::string::npos) {
    int k = std::stoi(n.substr(1));
    if (k < 1 || k > 20) throw ValidationError("type A rank must be between 1 and 20");
    return system_from_cartan(type_a(k), n);
  }
  return nullptr;
}

std::shared_ptr<const CoxeterSystem> parse_system(std::string_view text, std::string name) {
  std::vector<std::pair<int, std::string>> lines;
  {
    std::istringstream in{std::string(text)};
    std::string raw;
    int no = 0;
    while (std::getline(in, raw)) {
      ++no;
      auto hash = raw.find('#');
      if (hash != std::string::npos) raw.resize(hash);
      auto t = trim(raw);
      if (!t.empty()) lines.emplace_back(no, t);
    }
  }
  if (lines.empty()) throw ParseError("empty system description");
  auto head = split_ws(lines[0].second);
  if (head.size() != 2 || head[0] != "rank") throw ParseError("line " + std::to_string(lines[0].first) + ": expected 'rank N'");
  std::int64_t rank = parse_entry(head[1], lines[0].first);
  if (rank < 1 || rank > 24) throw ValidationError("rank must be between 1 and 24");
  if (static_cast<std::int64_t>(lines.size()) < 1 + rank) throw ParseError("missing Coxeter matrix rows");
  std::vector<int> entries;
  for (int i = 1; i <= rank; ++i) {
    auto toks = split_ws(lines[i].second);
    if (static_cast<std::int64_t>(toks.size()) != rank)
      throw ParseError("line " + std::to_string(lines[i].first) + ": expected " + std::to_string(rank) + " entries");
    for (const auto& tok : toks) {
      if (tok == "inf" || tok == "oo")
        entries.push_back(kInfinity);
      else {
        auto v = parse_entry(tok, lines[i].first);
        if (v < 1 || v > 1000) throw ValidationError("line " + std::to_string(lines[i].first) + ": bad entry " + tok);
        entries.push_back(static_cast<int>(v));
      }
    }
  }
  CoxeterMatrix matrix(static_cast<int>(rank), std::move(entries));
  CoxeterSystem::Options opt;
  opt.name = std::move(name);
  std::size_t pos = 1 + static_cast<std::size_t>(rank);
  if (pos < lines.size()) {
    if (lines[pos].second != "realization")
      throw ParseError("line " + std::to_string(lines[pos].first) + ": expected 'realization'");
    ++pos;
    std::map<char, std::vector<std::int64_t>> roots, coroots;
    int lattice = -1;
    const std::string letters = "stuwxyzabcdfghijklmnopqr";
    for (; pos < lines.size(); ++pos) {
      const auto& [no, line] = lines[pos];
      auto colon = line.find(':');
      if (colon == std::string::npos) throw ParseError("line " + std::to_string(no) + ": expected 'root s: ...'");
      auto lhs = split_ws(line.substr(0, colon));
      auto rhs = split_ws(line.substr(colon + 1));
      if (lhs.size() != 2 || (lhs[0] != "root" && lhs[0] != "coroot") || lhs[1].size() != 1)
        throw ParseError("line " + std::to_string(no) + ": expected 'root <letter>:' or 'coroot <letter>:'");
      char g = lhs[1][0];
      auto gi = letters.find(g);
      if (gi == std::string::npos || static_cast<std::int64_t>(gi) >= rank)
        throw ValidationError(std::string("unknown generator '") + g + "'");
      std::vector<std::int64_t> vec;
      for (const auto& tok : rhs) vec.push_back(parse_entry(tok, no));
      if (vec.empty()) throw ParseError("line " + std::to_string(no) + ": empty vector");
      if (lattice < 0) lattice = static_cast<int>(vec.size());
      if (static_cast<int>(vec.size()) != lattice)
        throw ValidationError("line " + std::to_string(no) + ": inconsistent lattice rank");
      auto& target = lhs[0] == "root" ? roots : coroots;
      if (!target.emplace(g, std::move(vec)).second)
        throw ValidationError("line " + std::to_string(no) + ": duplicate " + lhs[0] + " for '" + g + "'");
    }
    Realization r;
    r.lattice_rank = lattice;
    for (int s = 0; s < rank; ++s) {
      char g = letters[s];
      if (!roots.count(g) || !coroots.count(g))
        throw ValidationError(std::string("realization lacks root or coroot for '") + g + "'");
      r.roots.push_back(roots[g]);
      r.coroots.push_back(coroots[g]);
    }
    opt.realization = std::move(r);
  }
  return CoxeterSystem::create(std::move(matrix), std::move(opt));
}

std::shared_ptr<const CoxeterSystem> load_system(const std::string& source) {
  if (auto p = preset_system(source)) return p;
  std::ifstream in(source);
  if (!in) throw ValidationError("unknown system '" + source + "' (not a preset and not a readable file)");
  std::stringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("cannot read system file '" + source + "'");
  return parse_system(buf.str(), source);
}

}  // namespace coxkl
