#include "coxkl/coxeter.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numbers>
#include <unordered_set>

#include <boost/multiprecision/cpp_int.hpp>

#include "coxkl/checked.hpp"

namespace coxkl {

namespace {

using Rational = boost::multiprecision::cpp_rational;

constexpr std::string_view kLetters = "stuwxyzabcdfghijklmnopqr";

bool valid_entry(int m) { return m == kInfinity || m == 2 || m == 3 || m == 4 || m == 6; }

// Cartan product a_st * a_ts expected for a given m.
bool product_matches(int m, std::int64_t prod) {
  switch (m) {
    case 2: return prod == 0;
    case 3: return prod == 1;
    case 4: return prod == 2;
    case 6: return prod == 3;
    case kInfinity: return prod >= 4;
    default: return false;
  }
}

std::pair<std::int64_t, std::int64_t> default_cartan(int m) {
  switch (m) {
    case 2: return {0, 0};
    case 3: return {-1, -1};
    case 4: return {-1, -2};
    case 6: return {-1, -3};
    default: return {-2, -2};
  }
}

// Solves A c = b over Q where A is given by its columns; returns nullopt if
// inconsistent. Assumes the columns are linearly independent.
std::optional<std::vector<Rational>> solve_columns(const std::vector<std::vector<std::int64_t>>& cols,
                                                   std::span<const std::int64_t> b) {
  const std::size_t n = cols.size();
  const std::size_t m = b.size();
  std::vector<std::vector<Rational>> a(m, std::vector<Rational>(n + 1));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) a[i][j] = cols[j][i];
    a[i][n] = b[i];
  }
  std::size_t row = 0;
  std::vector<std::size_t> pivots;
  for (std::size_t col = 0; col < n && row < m; ++col) {
    std::size_t p = row;
    while (p < m && a[p][col] == 0) ++p;
    if (p == m) continue;
    std::swap(a[p], a[row]);
    for (std::size_t i = 0; i < m; ++i) {
      if (i == row || a[i][col] == 0) continue;
      Rational f = a[i][col] / a[row][col];
      for (std::size_t j = col; j <= n; ++j) a[i][j] -= f * a[row][j];
    }
    pivots.push_back(col);
    ++row;
  }
  for (std::size_t i = row; i < m; ++i)
    if (a[i][n] != 0) return std::nullopt;
  std::vector<Rational> c(n);
  for (std::size_t r = 0; r < pivots.size(); ++r) c[pivots[r]] = a[r][n] / a[r][pivots[r]];
  return c;
}

std::size_t column_rank(const std::vector<std::vector<std::int64_t>>& cols, std::size_t dim) {
  std::vector<std::vector<Rational>> a(dim, std::vector<Rational>(cols.size()));
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < cols.size(); ++j) a[i][j] = cols[j][i];
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols.size() && row < dim; ++col) {
    std::size_t p = row;
    while (p < dim && a[p][col] == 0) ++p;
    if (p == dim) continue;
    std::swap(a[p], a[row]);
    for (std::size_t i = row + 1; i < dim; ++i) {
      Rational f = a[i][col] / a[row][col];
      for (std::size_t j = col; j < cols.size(); ++j) a[i][j] -= f * a[row][j];
    }
    ++row;
  }
  return row;
}

int root_sign(std::span<const std::int64_t> simple) {
  bool pos = false, neg = false;
  for (auto c : simple) {
    if (c > 0) pos = true;
    if (c < 0) neg = true;
  }
  if (pos && !neg) return 1;
  if (neg && !pos) return -1;
  return 0;
}

int first_nonzero_sign(const IntMatrix& m, int col) {
  for (int i = 0; i < m.dim(); ++i) {
    if (m(i, col) > 0) return 1;
    if (m(i, col) < 0) return -1;
  }
  return 0;
}

}  // namespace

CoxeterMatrix::CoxeterMatrix(int rank, std::vector<int> entries) : rank_(rank), entries_(std::move(entries)) {
  if (rank < 1) throw ValidationError("rank must be positive");
  if (static_cast<int>(entries_.size()) != rank * rank)
    throw ValidationError("Coxeter matrix needs " + std::to_string(rank * rank) + " entries");
  for (int s = 0; s < rank; ++s) {
    for (int t = 0; t < rank; ++t) {
      int m = (*this)(s, t);
      if (s == t) {
        if (m != 1) throw ValidationError("diagonal Coxeter matrix entries must be 1");
        continue;
      }
      if (m != (*this)(t, s)) throw ValidationError("Coxeter matrix is not symmetric");
      if (!valid_entry(m))
        throw ValidationError("non-crystallographic Coxeter matrix entry " + std::to_string(m) +
                              " (allowed: 2, 3, 4, 6, inf)");
    }
  }
}

IntMatrix IntMatrix::identity(int n) {
  IntMatrix m(n);
  for (int i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::operator*(const IntMatrix& o) const {
  IntMatrix r(n_);
  for (int i = 0; i < n_; ++i)
    for (int k = 0; k < n_; ++k) {
      std::int64_t a = (*this)(i, k);
      if (a == 0) continue;
      for (int j = 0; j < n_; ++j) r(i, j) = checked_add(r(i, j), checked_mul(a, o(k, j)));
    }
  return r;
}

std::vector<std::int64_t> IntMatrix::apply(std::span<const std::int64_t> v) const {
  std::vector<std::int64_t> r(n_, 0);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j)
      if (v[j] != 0) r[i] = checked_add(r[i], checked_mul((*this)(i, j), v[j]));
  return r;
}

std::size_t IntMatrixHash::operator()(const IntMatrix& m) const noexcept {
  std::size_t h = 0xcbf29ce484222325ULL;
  for (auto x : m.data()) {
    h ^= static_cast<std::size_t>(x) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

struct CoxeterSystem::Record {
  IntMatrix action;
  IntMatrix inverse;
  std::vector<Gen> word;
  std::unique_ptr<std::atomic<std::int64_t>[]> left;
  std::unique_ptr<std::atomic<std::int64_t>[]> right;

  Record(IntMatrix a, IntMatrix inv, std::vector<Gen> w, int rank)
      : action(std::move(a)),
        inverse(std::move(inv)),
        word(std::move(w)),
        left(new std::atomic<std::int64_t>[rank]),
        right(new std::atomic<std::int64_t>[rank]) {
    for (int s = 0; s < rank; ++s) {
      left[s].store(-1, std::memory_order_relaxed);
      right[s].store(-1, std::memory_order_relaxed);
    }
  }
};

std::shared_ptr<const CoxeterSystem> CoxeterSystem::create(CoxeterMatrix matrix, Options options) {
  return std::shared_ptr<const CoxeterSystem>(new CoxeterSystem(std::move(matrix), std::move(options)));
}

CoxeterSystem::CoxeterSystem(CoxeterMatrix matrix, Options options)
    : name_(std::move(options.name)), matrix_(std::move(matrix)), affine_(std::move(options.affine)) {
  const int n = rank();
  if (n > static_cast<int>(kLetters.size()))
    throw ValidationError("rank " + std::to_string(n) + " exceeds the " + std::to_string(kLetters.size()) +
                          " available generator letters");
  if (options.realization) {
    realization_ = std::move(*options.realization);
  } else {
    realization_.lattice_rank = n;
    realization_.roots.assign(n, std::vector<std::int64_t>(n, 0));
    realization_.coroots.assign(n, std::vector<std::int64_t>(n, 0));
    for (int s = 0; s < n; ++s) {
      realization_.roots[s][s] = 1;
      realization_.coroots[s][s] = 2;
      for (int t = s + 1; t < n; ++t) {
        auto [ast, ats] = default_cartan(matrix_(s, t));
        realization_.coroots[s][t] = ast;
        realization_.coroots[t][s] = ats;
      }
    }
  }
  validate_realization();

  generator_matrices_.reserve(n);
  for (int s = 0; s < n; ++s) {
    IntMatrix g = IntMatrix::identity(n);
    for (int u = 0; u < n; ++u) g(s, u) -= cartan(s, u);
    generator_matrices_.push_back(std::move(g));
  }
  verify_braid_relations();

  // Positive definiteness of the cosine form decides finiteness.
  std::vector<double> b(static_cast<std::size_t>(n) * n);
  for (int s = 0; s < n; ++s)
    for (int t = 0; t < n; ++t) {
      int m = matrix_(s, t);
      b[s * n + t] = s == t ? 1.0 : (m == kInfinity ? -1.0 : -std::cos(std::numbers::pi / m));
    }
  finite_ = true;
  for (int j = 0; j < n && finite_; ++j) {
    double d = b[j * n + j];
    for (int k = 0; k < j; ++k) d -= b[j * n + k] * b[j * n + k];
    if (d <= 1e-9) {
      finite_ = false;
      break;
    }
    d = std::sqrt(d);
    b[j * n + j] = d;
    for (int i = j + 1; i < n; ++i) {
      double x = b[i * n + j];
      for (int k = 0; k < j; ++k) x -= b[i * n + k] * b[j * n + k];
      b[i * n + j] = x / d;
    }
  }

  auto id = IntMatrix::identity(n);
  records_.push_back(std::make_unique<Record>(id, id, std::vector<Gen>{}, n));
  index_.emplace(id, 0);
  levels_.push_back({0});
}

CoxeterSystem::~CoxeterSystem() = default;

void CoxeterSystem::validate_realization() {
  const int n = rank();
  const auto& r = realization_;
  if (r.lattice_rank < 1) throw ValidationError("realization lattice rank must be positive");
  if (static_cast<int>(r.roots.size()) != n || static_cast<int>(r.coroots.size()) != n)
    throw ValidationError("realization must give one root and one coroot per generator");
  for (int s = 0; s < n; ++s)
    if (static_cast<int>(r.roots[s].size()) != r.lattice_rank ||
        static_cast<int>(r.coroots[s].size()) != r.lattice_rank)
      throw ValidationError("realization vectors must have lattice_rank coordinates");
  cartan_.assign(static_cast<std::size_t>(n) * n, 0);
  for (int s = 0; s < n; ++s)
    for (int t = 0; t < n; ++t) {
      std::int64_t p = 0;
      for (int i = 0; i < r.lattice_rank; ++i) p = checked_add(p, checked_mul(r.coroots[s][i], r.roots[t][i]));
      cartan_[s * n + t] = p;
    }
  auto L = [&](Gen s) { return std::string(1, letter(s)); };
  for (int s = 0; s < n; ++s) {
    if (cartan_[s * n + s] != 2)
      throw ValidationError("realization mismatch: <coroot, root> of " + L(s) + " is " +
                            std::to_string(cartan_[s * n + s]) + ", expected 2");
    for (int t = s + 1; t < n; ++t) {
      std::int64_t ast = cartan_[s * n + t], ats = cartan_[t * n + s];
      if (ast > 0 || ats > 0 || (ast == 0) != (ats == 0) || !product_matches(matrix_(s, t), checked_mul(ast, ats)))
        throw ValidationError("realization mismatch: Cartan numbers (" + std::to_string(ast) + ", " +
                              std::to_string(ats) + ") for " + L(s) + L(t) + " do not fit m = " +
                              (matrix_(s, t) == kInfinity ? std::string("inf") : std::to_string(matrix_(s, t))));
    }
  }
  if (column_rank(r.roots, static_cast<std::size_t>(r.lattice_rank)) != static_cast<std::size_t>(n))
    throw ValidationError("realization mismatch: simple roots must be linearly independent");
}

void CoxeterSystem::verify_braid_relations() const {
  const int n = rank();
  const auto id = IntMatrix::identity(n);
  for (int s = 0; s < n; ++s)
    if (!(generator_matrices_[s] * generator_matrices_[s] == id))
      throw ValidationError("generator " + std::string(1, letter(s)) + " is not an involution");
  for (int s = 0; s < n; ++s)
    for (int t = s + 1; t < n; ++t) {
      int m = matrix_(s, t);
      int limit = m == kInfinity ? 12 : m;
      IntMatrix st = generator_matrices_[s] * generator_matrices_[t];
      IntMatrix p = st;
      for (int k = 1; k <= limit; ++k) {
        bool is_id = p == id;
        if (is_id && k < limit) throw ValidationError("braid relation has smaller order than m");
        if (!is_id && k == limit && m != kInfinity) throw ValidationError("braid relation of order m fails");
        if (is_id && m == kInfinity) throw ValidationError("generator product has finite order for m = inf");
        p = p * st;
      }
    }
}

char CoxeterSystem::letter(Gen s) const { return kLetters.at(static_cast<std::size_t>(s)); }

std::optional<Gen> CoxeterSystem::generator_of_letter(char c) const {
  auto pos = kLetters.find(c);
  if (pos == std::string_view::npos || static_cast<int>(pos) >= rank()) return std::nullopt;
  return static_cast<Gen>(pos);
}

const CoxeterSystem::Record& CoxeterSystem::record(std::uint32_t id) const {
  std::shared_lock lock(mutex_);
  return *records_[id];
}

Element CoxeterSystem::intern(IntMatrix action, IntMatrix inverse) const {
  {
    std::shared_lock lock(mutex_);
    if (auto it = index_.find(action); it != index_.end()) return Element(this, it->second);
  }
  // Greedy smallest left descent gives the ShortLex-least reduced word.
  std::vector<Gen> word;
  IntMatrix a = action, inv = inverse;
  const int n = rank();
  while (true) {
    {
      std::shared_lock lock(mutex_);
      if (auto it = index_.find(a); it != index_.end()) {
        const auto& tail = records_[it->second]->word;
        word.insert(word.end(), tail.begin(), tail.end());
        break;
      }
    }
    Gen s = -1;
    for (Gen u = 0; u < n; ++u)
      if (first_nonzero_sign(inv, u) < 0) {
        s = u;
        break;
      }
    if (s < 0) throw ComputationError("element table inconsistent: no descent for a non-identity element");
    word.push_back(s);
    a = generator_matrices_[s] * a;
    inv = inv * generator_matrices_[s];
  }
  std::unique_lock lock(mutex_);
  if (auto it = index_.find(action); it != index_.end()) return Element(this, it->second);
  if (records_.size() >= 0xffffffffu) throw ComputationError("element table is full");
  auto id = static_cast<std::uint32_t>(records_.size());
  records_.push_back(std::make_unique<Record>(action, std::move(inverse), std::move(word), n));
  index_.emplace(std::move(action), id);
  return Element(this, id);
}

Element CoxeterSystem::generator(Gen s) const {
  if (s < 0 || s >= rank()) throw ValidationError("generator index out of range");
  return right_multiply(identity(), s);
}

Element CoxeterSystem::parse_word(std::string_view text) const {
  std::string w;
  for (char c : text)
    if (c != ' ' && c != '\t') w += c;
  if (w.empty()) throw ValidationError("empty element word (use 'e' for the identity)");
  if (w == "e") return identity();
  Element x = identity();
  for (char c : w) {
    auto g = generator_of_letter(c);
    if (!g) throw ValidationError(std::string("unknown generator '") + c + "'");
    x = right_multiply(x, *g);
  }
  return x;
}

Element CoxeterSystem::from_word(std::span<const Gen> word) const {
  Element x = identity();
  for (Gen s : word) {
    if (s < 0 || s >= rank()) throw ValidationError("generator index out of range");
    x = right_multiply(x, s);
  }
  return x;
}

Element CoxeterSystem::right_multiply(Element x, Gen s) const {
  const Record& rec = record(x.id());
  std::int64_t cached = rec.right[s].load(std::memory_order_acquire);
  if (cached >= 0) return Element(this, static_cast<std::uint32_t>(cached));
  const int n = rank();
  IntMatrix a = rec.action;
  for (int u = 0; u < n; ++u) {
    std::int64_t c = cartan(s, u);
    if (u == s || c == 0) continue;
    for (int i = 0; i < n; ++i) a(i, u) = checked_sub(a(i, u), checked_mul(c, rec.action(i, s)));
  }
  for (int i = 0; i < n; ++i) a(i, s) = -rec.action(i, s);
  IntMatrix inv = generator_matrices_[s] * rec.inverse;
  Element y = intern(std::move(a), std::move(inv));
  rec.right[s].store(y.id(), std::memory_order_release);
  record(y.id()).right[s].store(x.id(), std::memory_order_release);
  return y;
}

Element CoxeterSystem::left_multiply(Gen s, Element x) const {
  const Record& rec = record(x.id());
  std::int64_t cached = rec.left[s].load(std::memory_order_acquire);
  if (cached >= 0) return Element(this, static_cast<std::uint32_t>(cached));
  IntMatrix a = generator_matrices_[s] * rec.action;
  IntMatrix inv = rec.inverse * generator_matrices_[s];
  Element y = intern(std::move(a), std::move(inv));
  rec.left[s].store(y.id(), std::memory_order_release);
  record(y.id()).left[s].store(x.id(), std::memory_order_release);
  return y;
}

Element CoxeterSystem::multiply(Element x, Element y) const {
  if (x.system_ptr() != this || y.system_ptr() != this)
    throw ValidationError("elements belong to different Coxeter systems");
  Element r = x;
  for (Gen s : record(y.id()).word) r = right_multiply(r, s);
  return r;
}

Element CoxeterSystem::inverse(Element x) const {
  const Record& rec = record(x.id());
  return intern(rec.inverse, rec.action);
}

int CoxeterSystem::length(Element x) const { return static_cast<int>(record(x.id()).word.size()); }

const std::vector<Gen>& CoxeterSystem::word(Element x) const { return record(x.id()).word; }

const IntMatrix& CoxeterSystem::action(Element x) const { return record(x.id()).action; }

bool CoxeterSystem::is_left_descent(Gen s, Element x) const {
  return first_nonzero_sign(record(x.id()).inverse, s) < 0;
}

bool CoxeterSystem::is_right_descent(Element x, Gen s) const {
  return first_nonzero_sign(record(x.id()).action, s) < 0;
}

std::vector<Gen> CoxeterSystem::descents(Element x, Side side) const {
  std::vector<Gen> out;
  for (Gen s = 0; s < rank(); ++s)
    if (side == Side::Left ? is_left_descent(s, x) : is_right_descent(x, s)) out.push_back(s);
  return out;
}

std::optional<Gen> CoxeterSystem::first_left_descent(Element x) const {
  const auto& w = record(x.id()).word;
  if (w.empty()) return std::nullopt;
  return w.front();
}

bool CoxeterSystem::bruhat_leq(Element x, Element y) const {
  if (x.system_ptr() != this || y.system_ptr() != this)
    throw ValidationError("elements belong to different Coxeter systems");
  while (true) {
    if (x == y) return true;
    int lx = length(x), ly = length(y);
    if (lx >= ly) return false;
    if (lx == 0) return true;
    Gen s = *first_left_descent(y);
    if (is_left_descent(s, x)) x = left_multiply(s, x);
    y = left_multiply(s, y);
  }
}

std::vector<std::int64_t> CoxeterSystem::to_lattice(std::span<const std::int64_t> simple) const {
  std::vector<std::int64_t> out(realization_.lattice_rank, 0);
  for (int s = 0; s < rank(); ++s) {
    if (simple[s] == 0) continue;
    for (int i = 0; i < realization_.lattice_rank; ++i)
      out[i] = checked_add(out[i], checked_mul(simple[s], realization_.roots[s][i]));
  }
  return out;
}

Root CoxeterSystem::root_from_simple(std::vector<std::int64_t> simple) const {
  if (static_cast<int>(simple.size()) != rank()) throw ValidationError("root has the wrong number of coordinates");
  int sign = root_sign(simple);
  if (sign == 0) throw ValidationError("vector is not a root: mixed or zero simple-root coefficients");
  Root r;
  r.coordinates = to_lattice(simple);
  r.simple = std::move(simple);
  r.positive = sign > 0;
  return r;
}

Root CoxeterSystem::simple_root(Gen s) const {
  std::vector<std::int64_t> c(rank(), 0);
  c[s] = 1;
  return root_from_simple(std::move(c));
}

Root CoxeterSystem::act_on_root(Element x, const Root& root) const {
  return root_from_simple(action(x).apply(root.simple));
}

Root CoxeterSystem::root_from_lattice(std::span<const std::int64_t> coordinates) const {
  if (static_cast<int>(coordinates.size()) != realization_.lattice_rank)
    throw ValidationError("vector has the wrong number of lattice coordinates");
  auto sol = solve_columns(realization_.roots, coordinates);
  if (!sol) throw ValidationError("vector is not in the span of the simple roots");
  std::vector<std::int64_t> simple;
  for (const auto& q : *sol) {
    if (denominator(q) != 1) throw ValidationError("vector is not an integral combination of simple roots");
    auto num = numerator(q);
    if (num > std::numeric_limits<std::int64_t>::max() || num < std::numeric_limits<std::int64_t>::min())
      throw OverflowError("root coordinate out of range");
    simple.push_back(static_cast<std::int64_t>(num));
  }
  return root_from_simple(std::move(simple));
}

std::optional<Root> CoxeterSystem::reflection_root(Element x) const {
  std::vector<Gen> conj;
  Element y = x;
  while (true) {
    int l = length(y);
    if (l % 2 == 0) return std::nullopt;
    if (l == 1) break;
    Gen s = *first_left_descent(y);
    Element z = right_multiply(left_multiply(s, y), s);
    if (length(z) != l - 2) return std::nullopt;
    conj.push_back(s);
    y = z;
  }
  std::vector<std::int64_t> simple(rank(), 0);
  simple[word(y).front()] = 1;
  for (auto it = conj.rbegin(); it != conj.rend(); ++it) simple = generator_matrices_[*it].apply(simple);
  return root_from_simple(std::move(simple));
}

std::vector<Reflection> CoxeterSystem::reflections_up_to(int max_length) const {
  std::vector<Reflection> out;
  for (int k = 1; k <= max_length; k += 2) {
    auto level = elements_of_length(k);
    if (level.empty()) break;
    for (Element x : level)
      if (auto r = reflection_root(x)) out.push_back({x, std::move(*r)});
  }
  return out;
}

bool CoxeterSystem::ensure_level(int length) const {
  // levels_mutex_ held by caller
  while (static_cast<int>(levels_.size()) <= length) {
    if (longest_) return false;
    std::unordered_set<std::uint32_t> seen;
    std::vector<Element> next;
    for (std::uint32_t id : levels_.back()) {
      Element x(this, id);
      for (Gen s = 0; s < rank(); ++s) {
        if (is_right_descent(x, s)) continue;
        Element y = right_multiply(x, s);
        if (seen.insert(y.id()).second) next.push_back(y);
      }
    }
    if (next.empty()) {
      longest_ = static_cast<int>(levels_.size()) - 1;
      return false;
    }
    std::sort(next.begin(), next.end(), ShortLexLess{});
    std::vector<std::uint32_t> ids;
    ids.reserve(next.size());
    for (Element e : next) ids.push_back(e.id());
    levels_.push_back(std::move(ids));
  }
  return true;
}

std::vector<Element> CoxeterSystem::elements_of_length(int length) const {
  std::lock_guard lock(levels_mutex_);
  std::vector<Element> out;
  if (length < 0 || !ensure_level(length)) return out;
  for (auto id : levels_[length]) out.emplace_back(this, id);
  return out;
}

std::vector<Element> CoxeterSystem::elements_up_to(int max_length) const {
  std::vector<Element> out;
  for (int k = 0; k <= max_length; ++k) {
    auto level = elements_of_length(k);
    if (level.empty()) break;
    out.insert(out.end(), level.begin(), level.end());
  }
  return out;
}

std::optional<int> CoxeterSystem::longest_length() const {
  if (!finite_) return std::nullopt;
  std::lock_guard lock(levels_mutex_);
  for (int k = 0; ensure_level(k); ++k) {
  }
  return longest_;
}

std::optional<std::size_t> CoxeterSystem::order() const {
  auto top = longest_length();
  if (!top) return std::nullopt;
  std::lock_guard lock(levels_mutex_);
  std::size_t n = 0;
  for (int k = 0; k <= *top; ++k) n += levels_[k].size();
  return n;
}

int CoxeterSystem::effective_bound(std::optional<int> requested, int fallback) const {
  if (requested) return *requested;
  if (auto top = longest_length()) return *top;
  return fallback;
}

std::size_t CoxeterSystem::table_size() const {
  std::shared_lock lock(mutex_);
  return records_.size();
}

int Element::length() const { return system_->length(*this); }

const std::vector<Gen>& Element::word() const { return system_->word(*this); }

std::string Element::to_string() const { return word_to_string(*system_, word()); }

bool ShortLexLess::operator()(const Element& a, const Element& b) const {
  const auto& wa = a.word();
  const auto& wb = b.word();
  if (wa.size() != wb.size()) return wa.size() < wb.size();
  return wa < wb;
}

std::string word_to_string(const CoxeterSystem& system, std::span<const Gen> word) {
  if (word.empty()) return "e";
  std::string out;
  for (Gen s : word) out += system.letter(s);
  return out;
}

}  // namespace coxkl
