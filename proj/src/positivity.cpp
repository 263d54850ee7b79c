#include "coxkl/positivity.hpp"

#include "coxkl/checked.hpp"

#include <algorithm>
#include <functional>
#include <map>

namespace coxkl {

namespace {

using Column = std::map<Element, LaurentPoly>;
using BasisFn = std::function<Column(Element)>;
using OrderFn = std::function<bool(Element, Element)>;  // strict "lower than"

// Groups `target` by right coset of the subgroup and solves each coset
// against the unitriangular subgroup basis, top element first.
std::vector<MixedTerm> solve(const Column& target, const CosetTable& table, const BasisFn& basis,
                             const OrderFn& lower) {
  std::map<Element, Column, ShortLexLess> buckets;
  for (const auto& [y, c] : target) {
    auto [u, z] = table.decompose(y);
    buckets[z][u] += c;
  }
  std::vector<MixedTerm> terms;
  for (auto& [z, rem] : buckets) {
    std::erase_if(rem, [](const auto& kv) { return kv.second.is_zero(); });
    std::vector<MixedTerm> coset;
    while (!rem.empty()) {
      Element top = rem.begin()->first;
      for (const auto& [u, c] : rem)
        if (lower(top, u)) top = u;
      LaurentPoly c = rem.at(top);
      coset.push_back({top, z, c});
      Column b = basis(top);
      if (b.count(top) == 0 || b.at(top) != LaurentPoly(1))
        throw ComputationError("subgroup basis element " + top.to_string() + " is not unitriangular");
      for (const auto& [u, h] : b) {
        if (u != top && !lower(u, top))
          throw ComputationError("subgroup basis element " + top.to_string() + " is not unitriangular");
        LaurentPoly& slot = rem[u];
        slot -= c * h;
        if (slot.is_zero()) rem.erase(u);
      }
    }
    ShortLexLess sl;
    std::sort(coset.begin(), coset.end(), [&](const MixedTerm& a, const MixedTerm& b) { return sl(a.v, b.v); });
    terms.insert(terms.end(), coset.begin(), coset.end());
  }
  return terms;
}

Column constant_column(const GroupAlgebraElement& g) {
  Column out;
  for (const auto& [x, c] : g.terms()) out[x] = LaurentPoly(c);
  return out;
}

GroupAlgebraElement point(Element x) {
  GroupAlgebraElement g;
  g.add_term(x, 1);
  return g;
}

// Ambient-valued basis of the subgroup at v = 1, plus the order used for
// the solve (intrinsic length, then ShortLex of the intrinsic word).
struct SubgroupBasisAtOne {
  const ReflectionSubgroup& sub;
  const PCanonicalBasis* supplied;
  std::optional<KLBasis> kl;

  SubgroupBasisAtOne(const ReflectionSubgroup& s, const PCanonicalBasis* b) : sub(s), supplied(b) {
    if (!sub.is_trivial() && !supplied) kl.emplace(sub.intrinsic());
  }

  GroupAlgebraElement at_one(Element u) const {
    if (sub.is_trivial()) {
      if (!u.is_identity()) throw ComputationError(u.to_string() + " is not in the trivial subgroup");
      return point(u);
    }
    Element y = sub.to_intrinsic(u);
    const HeckeElement* h = nullptr;
    if (supplied) {
      if (!supplied->contains(y))
        throw ValidationError("subgroup basis has no element for " + y.to_string() + " (" + u.to_string() + ")");
      h = &supplied->at(y);
    } else {
      h = &kl->b(y);
    }
    GroupAlgebraElement out;
    for (const auto& [yy, c] : h->terms()) out.add_term(sub.from_intrinsic(yy), c.eval_at_one());
    return out;
  }

  bool lower(Element a, Element b) const {
    if (sub.is_trivial()) return false;
    Element ia = sub.to_intrinsic(a), ib = sub.to_intrinsic(b);
    return ShortLexLess{}(ia, ib);
  }
};

GroupAlgebraElement recombine_at_one(const MixedExpansion& e, const SubgroupBasisAtOne& basis) {
  const CoxeterSystem& sys = e.target.system();
  GroupAlgebraElement back;
  for (const auto& t : e.terms) {
    std::int64_t c = t.coeff.eval_at_one();
    GroupAlgebraElement bv = basis.at_one(t.v);
    for (const auto& [y, h] : bv.terms()) back.add_term(sys.multiply(y, t.x), checked_mul(c, h));
  }
  return back;
}

MixedExpansion expand_at_one(Element w, const GroupAlgebraElement& target, const ReflectionSubgroup& sub,
                             const PCanonicalBasis* supplied) {
  if (&sub.parent() != w.system_ptr()) throw ValidationError("subgroup and element live in different systems");
  CosetTable table(sub, Side::Right, std::max(sub.bound(), w.length()));
  SubgroupBasisAtOne basis(sub, supplied);
  MixedExpansion e;
  e.target = w;
  e.subgroup = sub.description();
  e.at_one = true;
  e.terms = solve(
      constant_column(target), table, [&](Element u) { return constant_column(basis.at_one(u)); },
      [&](Element a, Element b) { return basis.lower(a, b); });

  e.residual_zero = recombine_at_one(e, basis) == target;
  if (!e.residual_zero) throw ComputationError("mixed expansion of " + w.to_string() + " does not recombine");
  return e;
}

}  // namespace

LaurentPoly MixedExpansion::coeff(Element v, Element x) const {
  for (const auto& t : terms)
    if (t.v == v && t.x == x) return t.coeff;
  return LaurentPoly();
}

MixedExpansion mixed_expand(Element w, const std::vector<Gen>& parabolic, const KLBasis& kl) {
  const CoxeterSystem& sys = kl.system();
  if (w.system_ptr() != &sys) throw ValidationError("element and KL basis live in different systems");
  for (Gen g : parabolic)
    if (g < 0 || g >= sys.rank()) throw ValidationError("generator index " + std::to_string(g) + " out of range");
  // lengths add in W_I x ^IW, so the ambient length of w bounds everything
  ReflectionSubgroup sub = standard_parabolic(kl.system_ptr(), parabolic, w.length());
  CosetTable table(sub, Side::Right, w.length());
  const HeckeElement& target = kl.b(w);

  MixedExpansion e;
  e.target = w;
  e.subgroup = sub.description();
  e.terms = solve(
      Column(target.terms().begin(), target.terms().end()), table,
      [&](Element u) {
        const auto& t = kl.b(u).terms();
        return Column(t.begin(), t.end());
      },
      [](Element a, Element b) { return ShortLexLess{}(a, b); });

  e.residual_zero = recombine(e, kl) == target;
  if (!e.residual_zero) throw ComputationError("mixed expansion of " + w.to_string() + " does not recombine");
  return e;
}

MixedExpansion hyperbolic_expand(Element w, const ReflectionSubgroup& sub, const KLBasis& kl) {
  if (w.system_ptr() != &kl.system()) throw ValidationError("element and KL basis live in different systems");
  return expand_at_one(w, specialize_v1(kl.b(w)), sub, nullptr);
}

MixedExpansion pcanonical_expand(Element w, const ReflectionSubgroup& sub, const PCanonicalBasis& pbasis,
                                 const PCanonicalBasis* sub_basis) {
  if (sub.kind() != SubgroupKind::Good) throw ValidationError("subgroup " + sub.description() + " is not marked good");
  if (sub.prime() != pbasis.p)
    throw ValidationError("subgroup is good for p=" + std::to_string(sub.prime()) + " but the basis is for p=" +
                          std::to_string(pbasis.p));
  if (!pbasis.contains(w)) throw ValidationError("p-canonical data has no element for " + w.to_string());
  return expand_at_one(w, specialize_v1(pbasis.at(w)), sub, sub_basis);
}

HeckeElement recombine(const MixedExpansion& e, const KLBasis& kl) {
  if (e.at_one) throw ValidationError("expansion was taken at v = 1; recombine it in the group algebra");
  HeckeElement back(&kl.system());
  for (const auto& t : e.terms) back += t.coeff * mult(kl.b(t.v), HeckeElement::delta(t.x));
  return back;
}

GroupAlgebraElement recombine(const MixedExpansion& e, const ReflectionSubgroup& sub, const PCanonicalBasis* sub_basis) {
  return recombine_at_one(e, SubgroupBasisAtOne(sub, sub_basis));
}

PositivityReport verify_positivity(const MixedExpansion& e) {
  PositivityReport r;
  r.residual_zero = e.residual_zero;
  for (const auto& t : e.terms) {
    if (t.coeff.has_nonnegative_coefficients()) continue;
    r.positive = false;
    r.negative_terms.push_back(t);
    std::int64_t m = t.coeff.min_coefficient();
    if (!r.min_negative || m < *r.min_negative) r.min_negative = m;
  }
  return r;
}

}  // namespace coxkl
