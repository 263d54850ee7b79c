#include "coxkl/pcanonical.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace coxkl {

namespace {

std::string strip(std::string_view s) {
  std::string out;
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) out += c;
  return out;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

bool is_prime(int p) {
  if (p < 2) return false;
  for (int d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

constexpr std::string_view kC2P2 = R"(# C2, characteristic 2. Letters: s = e1-e2 (short), t = 2e2 (long).
pcanonical p=2 system=C2
e    : e=1
s    : s=1 ; e=v
t    : t=1 ; e=v
st   : st=1 ; s=v ; t=v ; e=v^2
ts   : ts=1 ; s=v ; t=v ; e=v^2
sts  : sts=1 ; st=v ; ts=v ; s=v^2+1 ; t=v^2 ; e=v^3+v
tst  : tst=1 ; st=v ; ts=v ; s=v^2 ; t=v^2 ; e=v^3
stst : stst=1 ; sts=v ; tst=v ; st=v^2 ; ts=v^2 ; s=v^3 ; t=v^3 ; e=v^4
)";

}  // namespace

KLExpansion kl_expansion(const HeckeElement& h, const KLBasis& kl) {
  KLExpansion out;
  HeckeElement rest = h;
  while (!rest.is_zero()) {
    Element top = std::max_element(rest.terms().begin(), rest.terms().end(), [](const auto& a, const auto& b) {
                    return ShortLexLess{}(a.first, b.first);
                  })->first;
    LaurentPoly c = rest.coeff(top);
    out.emplace_back(top, c);
    rest -= c * kl.b(top);
  }
  return out;
}

const HeckeElement& PCanonicalBasis::at(Element x) const {
  auto it = elements.find(x);
  if (it == elements.end())
    throw ComputationError("p-canonical data has no element " + x.to_string());
  return it->second;
}

PCanonicalBasis load_pcanonical(std::string_view text, const KLBasis& kl, const PCanonicalOptions& options) {
  const CoxeterSystem& sys = kl.system();
  PCanonicalBasis basis;
  std::istringstream in{std::string(text)};
  std::string raw;
  int no = 0;
  bool have_header = false;
  auto where = [&] { return "line " + std::to_string(no) + ": "; };
  while (std::getline(in, raw)) {
    ++no;
    if (auto h = raw.find('#'); h != std::string::npos) raw.resize(h);
    std::string line = strip(raw);
    if (line.empty()) continue;
    if (!have_header) {
      std::istringstream hs(raw);
      std::string word, ptok, stok, extra;
      hs >> word >> ptok >> stok;
      if (word != "pcanonical" || ptok.rfind("p=", 0) != 0 || stok.rfind("system=", 0) != 0 || (hs >> extra))
        throw ParseError(where() + "expected header 'pcanonical p=<prime> system=<name>'");
      try {
        basis.p = std::stoi(ptok.substr(2));
      } catch (const std::exception&) {
        throw ParseError(where() + "bad prime '" + ptok.substr(2) + "'");
      }
      if (!is_prime(basis.p)) throw ValidationError(where() + "p=" + std::to_string(basis.p) + " is not prime");
      basis.system_name = stok.substr(7);
      if (!sys.name().empty() && basis.system_name != sys.name())
        throw ValidationError(where() + "data is for system " + basis.system_name + ", not " + sys.name());
      have_header = true;
      continue;
    }
    auto colon = line.find(':');
    if (colon == std::string::npos) throw ParseError(where() + "expected '<word> : <word>=<poly> ; ...'");
    Element x = sys.parse_word(line.substr(0, colon));
    HeckeElement h(&sys);
    for (const auto& term : split(line.substr(colon + 1), ';')) {
      if (term.empty()) continue;
      auto eq = term.find('=');
      if (eq == std::string::npos) throw ParseError(where() + "term '" + term + "' lacks '='");
      Element y = sys.parse_word(term.substr(0, eq));
      LaurentPoly c;
      try {
        c = LaurentPoly::parse(term.substr(eq + 1));
      } catch (const ParseError& e) {
        throw ParseError(where() + e.what());
      }
      h.add_term(y, c);
    }
    if (basis.elements.count(x)) throw ValidationError(where() + "duplicate record for " + x.to_string());
    const std::string name = x.to_string();
    if (bar(h) != h) {
      std::string msg = "p-canonical element for " + name + " is not self-dual";
      if (!options.lenient_duality) throw ValidationError(where() + msg);
      basis.warnings.push_back(msg);
    }
    KLExpansion exp = kl_expansion(h, kl);
    for (const auto& [y, c] : exp) {
      if (!c.has_nonnegative_coefficients()) {
        std::string msg = "p-canonical element for " + name + " has coefficient " + c.to_string() + " on b_" +
                          y.to_string() + " in the KL basis";
        if (options.strict_positivity) throw ValidationError(where() + msg);
        basis.warnings.push_back(msg);
      }
    }
    basis.expansions.emplace(x, std::move(exp));
    basis.elements.emplace(x, std::move(h));
  }
  if (!have_header) throw ParseError("missing 'pcanonical' header");
  return basis;
}

PCanonicalBasis load_pcanonical_file(const std::string& path, const KLBasis& kl, const PCanonicalOptions& options) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open p-canonical file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return load_pcanonical(buf.str(), kl, options);
}

std::string_view bundled_c2_p2() { return kC2P2; }

std::string format_pcanonical(const PCanonicalBasis& basis) {
  std::string out = "pcanonical p=" + std::to_string(basis.p) + " system=" + basis.system_name + "\n";
  for (const auto& [x, h] : basis.elements) out += x.to_string() + " : " + h.to_string() + "\n";
  return out;
}

}  // namespace coxkl
