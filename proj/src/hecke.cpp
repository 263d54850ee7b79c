#include "coxkl/hecke.hpp"

#include <algorithm>
#include <cstdlib>
#include <thread>

#include "coxkl/presets.hpp"

namespace coxkl {

namespace {

const LaurentPoly& vinv_minus_v() {
  static const LaurentPoly p = LaurentPoly::v_inv() - LaurentPoly::v();
  return p;
}

const LaurentPoly& v_minus_vinv() {
  static const LaurentPoly p = LaurentPoly::v() - LaurentPoly::v_inv();
  return p;
}

void same_system(const CoxeterSystem* a, const CoxeterSystem* b) {
  if (a && b && a != b) throw ValidationError("Hecke elements belong to different Coxeter systems");
}

}  // namespace

HeckeElement HeckeElement::delta(Element x) {
  HeckeElement h(x.system_ptr());
  h.terms_.emplace(x, LaurentPoly(1));
  return h;
}

void HeckeElement::adopt(const CoxeterSystem* s) {
  same_system(system_, s);
  if (!system_) system_ = s;
}

LaurentPoly HeckeElement::coeff(Element x) const {
  auto it = terms_.find(x);
  return it == terms_.end() ? LaurentPoly() : it->second;
}

void HeckeElement::add_term(Element x, const LaurentPoly& c) {
  if (c.is_zero()) return;
  adopt(x.system_ptr());
  auto [it, inserted] = terms_.try_emplace(x, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

std::vector<std::pair<Element, LaurentPoly>> HeckeElement::sorted() const {
  std::vector<std::pair<Element, LaurentPoly>> out(terms_.begin(), terms_.end());
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return ShortLexLess{}(a.first, b.first); });
  return out;
}

std::string HeckeElement::to_string() const {
  if (terms_.empty()) return "0";
  auto s = sorted();
  std::string out;
  for (auto it = s.rbegin(); it != s.rend(); ++it) {
    if (!out.empty()) out += " ; ";
    out += it->first.to_string() + "=" + it->second.to_string();
  }
  return out;
}

HeckeElement& HeckeElement::operator+=(const HeckeElement& o) {
  adopt(o.system_);
  for (const auto& [x, c] : o.terms_) add_term(x, c);
  return *this;
}

HeckeElement& HeckeElement::operator-=(const HeckeElement& o) {
  adopt(o.system_);
  for (const auto& [x, c] : o.terms_) add_term(x, -c);
  return *this;
}

HeckeElement operator*(const LaurentPoly& c, const HeckeElement& h) {
  HeckeElement r(h.system_);
  if (c.is_zero()) return r;
  for (const auto& [x, p] : h.terms_) r.add_term(x, c * p);
  return r;
}

void GroupAlgebraElement::add_term(Element x, std::int64_t c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(x, c);
  if (!inserted) {
    it->second = checked_add(it->second, c);
    if (it->second == 0) terms_.erase(it);
  }
}

std::int64_t GroupAlgebraElement::coeff(Element x) const {
  auto it = terms_.find(x);
  return it == terms_.end() ? 0 : it->second;
}

std::vector<std::pair<Element, std::int64_t>> GroupAlgebraElement::sorted() const {
  std::vector<std::pair<Element, std::int64_t>> out(terms_.begin(), terms_.end());
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return ShortLexLess{}(a.first, b.first); });
  return out;
}

std::string GroupAlgebraElement::to_string() const {
  if (terms_.empty()) return "0";
  auto s = sorted();
  std::string out;
  for (auto it = s.rbegin(); it != s.rend(); ++it) {
    if (!out.empty()) out += " ; ";
    out += it->first.to_string() + "=" + std::to_string(it->second);
  }
  return out;
}

GroupAlgebraElement& GroupAlgebraElement::operator+=(const GroupAlgebraElement& o) {
  for (const auto& [x, c] : o.terms_) add_term(x, c);
  return *this;
}

GroupAlgebraElement& GroupAlgebraElement::operator-=(const GroupAlgebraElement& o) {
  for (const auto& [x, c] : o.terms_) add_term(x, checked_sub(0, c));
  return *this;
}

GroupAlgebraElement operator*(const GroupAlgebraElement& a, const GroupAlgebraElement& b) {
  GroupAlgebraElement r;
  for (const auto& [x, cx] : a.terms_)
    for (const auto& [y, cy] : b.terms_) r.add_term(x.system().multiply(x, y), checked_mul(cx, cy));
  return r;
}

HeckeElement left_mult_generator(Gen s, const HeckeElement& h) {
  HeckeElement r(h.system());
  for (const auto& [x, c] : h.terms()) {
    const CoxeterSystem& sys = x.system();
    Element sx = sys.left_multiply(s, x);
    r.add_term(sx, c);
    if (sys.is_left_descent(s, x)) r.add_term(x, c * vinv_minus_v());
  }
  return r;
}

HeckeElement right_mult_generator(const HeckeElement& h, Gen s) {
  HeckeElement r(h.system());
  for (const auto& [x, c] : h.terms()) {
    const CoxeterSystem& sys = x.system();
    Element xs = sys.right_multiply(x, s);
    r.add_term(xs, c);
    if (sys.is_right_descent(x, s)) r.add_term(x, c * vinv_minus_v());
  }
  return r;
}

HeckeElement mult(const HeckeElement& a, const HeckeElement& b) {
  same_system(a.system(), b.system());
  HeckeElement r(a.system() ? a.system() : b.system());
  for (const auto& [x, c] : a.terms()) {
    HeckeElement part = b;
    const auto& w = x.word();
    for (auto it = w.rbegin(); it != w.rend(); ++it) part = left_mult_generator(*it, part);
    r += c * part;
  }
  return r;
}

HeckeElement delta_inverse(Element x) {
  // delta_x^{-1} = delta_{s1}^{-1} ... delta_{sk}^{-1} read right to left
  // along x^{-1} = sk ... s1, with delta_s^{-1} = delta_s + (v - v^-1).
  const CoxeterSystem& sys = x.system();
  HeckeElement r = HeckeElement::unit(sys);
  const auto& w = x.word();
  for (auto it = w.begin(); it != w.end(); ++it) {
    HeckeElement next = left_mult_generator(*it, r);
    next += v_minus_vinv() * r;
    r = std::move(next);
  }
  return r;
}

HeckeElement bar(const HeckeElement& h) {
  HeckeElement r(h.system());
  for (const auto& [x, c] : h.terms()) {
    // bar(delta_x) = delta_{x^{-1}}^{-1}: product of delta_s^{-1} along the word of x
    const CoxeterSystem& sys = x.system();
    HeckeElement part = HeckeElement::unit(sys);
    const auto& w = x.word();
    for (auto it = w.rbegin(); it != w.rend(); ++it) {
      HeckeElement next = left_mult_generator(*it, part);
      next += v_minus_vinv() * part;
      part = std::move(next);
    }
    r += c.bar() * part;
  }
  return r;
}

HeckeElement tau(const HeckeElement& h) {
  HeckeElement r(h.system());
  for (const auto& [x, c] : h.terms()) r += c.bar() * delta_inverse(x);
  return r;
}

HeckeElement tau_alt(const HeckeElement& h) {
  HeckeElement r(h.system());
  for (const auto& [x, c] : h.terms()) {
    const CoxeterSystem& sys = x.system();
    // tau(delta_s) = tau(b_s - v) = b_s - v^-1; anti-multiplicative, so the
    // factors of x = s1...sk are multiplied as tau(s_k) ... tau(s_1).
    HeckeElement part = HeckeElement::unit(sys);
    for (Gen s : x.word()) {
      HeckeElement ts = HeckeElement::delta(sys.generator(s));
      ts.add_term(sys.identity(), LaurentPoly::v() - LaurentPoly::v_inv());
      part = mult(ts, part);
    }
    r += c.bar() * part;
  }
  return r;
}

LaurentPoly form(const HeckeElement& h, const HeckeElement& hp) {
  same_system(h.system(), hp.system());
  const CoxeterSystem* sys = h.system() ? h.system() : hp.system();
  if (!sys) return LaurentPoly();
  return mult(tau(h), hp).coeff(sys->identity());
}

GroupAlgebraElement specialize_v1(const HeckeElement& h) {
  GroupAlgebraElement r;
  for (const auto& [x, c] : h.terms()) r.add_term(x, c.eval_at_one());
  return r;
}

KLBasis::KLBasis(std::shared_ptr<const CoxeterSystem> system) : system_(std::move(system)) {}

const HeckeElement* KLBasis::find(Element x) const {
  std::shared_lock lock(mutex_);
  auto it = cache_.find(x.id());
  return it == cache_.end() ? nullptr : &it->second;
}

const HeckeElement& KLBasis::store(Element x, HeckeElement h) const {
  std::unique_lock lock(mutex_);
  return cache_.try_emplace(x.id(), std::move(h)).first->second;
}

std::size_t KLBasis::cached() const {
  std::shared_lock lock(mutex_);
  return cache_.size();
}

const HeckeElement& KLBasis::b(Element x) const {
  if (x.system_ptr() != system_.get()) throw ValidationError("element does not belong to this KL basis");
  if (const auto* h = find(x)) return *h;
  return store(x, compute(x));
}

HeckeElement KLBasis::compute(Element x) const {
  const CoxeterSystem& sys = *system_;
  if (x.is_identity()) return HeckeElement::unit(sys);
  Gen s = *sys.first_left_descent(x);
  Element y = sys.left_multiply(s, x);
  const HeckeElement& by = b(y);
  // b_s b_y = delta_s b_y + v b_y
  HeckeElement r = left_mult_generator(s, by);
  r += LaurentPoly::v() * by;
  for (const auto& [z, c] : by.terms()) {
    if (z == y || !sys.is_left_descent(s, z)) continue;
    std::int64_t m = c.coeff(1);
    if (m != 0) r -= LaurentPoly(m) * b(z);
  }
  return r;
}

int thread_count_from_env() {
  if (const char* env = std::getenv("COXKL_THREADS")) {
    int n = std::atoi(env);
    if (n > 0) return std::min(n, 256);
  }
  return 1;
}

void KLBasis::compute_up_to(int max_length, int threads) const {
  if (threads <= 0) threads = thread_count_from_env();
  for (int k = 0; k <= max_length; ++k) {
    auto level = system_->elements_of_length(k);
    if (level.empty()) break;
    if (threads == 1 || level.size() < 2) {
      for (Element x : level) b(x);
      continue;
    }
    // Elements of one length only depend on shorter ones, already cached.
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(threads);
    for (int t = 0; t < threads; ++t) {
      pool.emplace_back([&, t] {
        try {
          for (std::size_t i = t; i < level.size(); i += threads) b(level[i]);
        } catch (...) {
          errors[t] = std::current_exception();
        }
      });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  }
}

HeckeElement ev_element(const CoxeterSystem& system) {
  const int r = system.rank();
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) {
      int expect = i == j ? 1 : (std::abs(i - j) == 1 ? 3 : 2);
      if (system.matrix()(i, j) != expect) throw ValidationError("e_v needs a system of type A");
    }
  const int n = r + 1;
  const int big_n = n * (n - 1) / 2;
  HeckeElement e(&system);
  for (Element x : system.elements_up_to(big_n)) e.add_term(x, LaurentPoly::monomial(1, big_n - x.length()));
  return e;
}

bool verify_ev_square(int n) {
  if (n < 2 || n > 6) throw ValidationError("verify_ev_square supports n = 2..6");
  auto sys = preset_system("A" + std::to_string(n - 1));
  HeckeElement e = ev_element(*sys);
  return mult(e, e) == quantum_factorial(n) * e;
}

}  // namespace coxkl
