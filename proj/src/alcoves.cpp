#include "coxkl/alcoves.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>

#include "coxkl/error.hpp"

namespace coxkl {

namespace {

std::int64_t floor_of(const Rational& q) {
  using boost::multiprecision::cpp_int;
  cpp_int num = boost::multiprecision::numerator(q), den = boost::multiprecision::denominator(q);
  cpp_int f = num / den;
  if (num % den != 0 && num < 0) f -= 1;
  return f.convert_to<std::int64_t>();
}

bool is_integer(const Rational& q) { return boost::multiprecision::denominator(q) == 1; }

std::string fmt(double x) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(2) << x;
  return s.str();
}

std::size_t simple_index(const FiniteRootData& data, int i) {
  const std::size_t n = data.cartan.size();
  std::vector<std::int64_t> e(n, 0);
  e[i] = 1;
  for (std::size_t a = 0; a < data.roots.size(); ++a)
    if (data.roots[a] == e) return a;
  throw ComputationError("simple root missing from root data");
}

const char* const kLayerColours[] = {"#d62728", "#1f77b4", "#2ca02c", "#ff7f0e", "#9467bd"};

}  // namespace

Point AffineMap::operator()(const Point& x) const {
  Point y = shift;
  for (std::size_t i = 0; i < y.size(); ++i)
    for (std::size_t j = 0; j < x.size(); ++j) y[i] += linear[i][j] * x[j];
  return y;
}

AffineMap AffineMap::after(const AffineMap& inner) const {
  AffineMap r;
  const std::size_t n = shift.size();
  r.linear.assign(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) r.linear[i][j] += linear[i][k] * inner.linear[k][j];
  r.shift = (*this)(inner.shift);
  return r;
}

AffineArrangement::AffineArrangement(std::shared_ptr<const CoxeterSystem> system) : system_(std::move(system)) {
  const auto& aff = system_->affine();
  if (!aff) throw ValidationError("alcove geometry needs an affine system; " + system_->name() + " is not one");
  n_ = static_cast<int>(aff->finite_cartan.size());
  data_ = finite_root_data(aff->finite_cartan);
  highest_ = data_.highest_coroot;
  gens_.resize(system_->rank());
  for (int i = 0; i < n_; ++i) gens_[aff->finite_generators[i]] = reflection(simple_index(data_, i), 0);
  gens_[aff->affine_generator] = reflection(highest_, 1);
}

Rational AffineArrangement::pair(const Point& p, std::size_t a) const {
  Rational s = 0;
  for (int j = 0; j < n_; ++j) s += Rational(data_.coroots[a][j]) * p[j];
  return s;
}

Point AffineArrangement::root_vector(std::size_t a) const {
  // alpha_j has weight coordinates <alpha_j, alpha_i^vee> = cartan[i][j]
  Point v(n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) v[i] += Rational(data_.cartan[i][j] * data_.roots[a][j]);
  return v;
}

AffineMap AffineArrangement::reflection(std::size_t a, const Rational& level) const {
  Point alpha = root_vector(a);
  AffineMap m;
  m.linear.assign(n_, std::vector<Rational>(n_));
  m.shift.assign(n_, Rational(0));
  for (int i = 0; i < n_; ++i) {
    for (int j = 0; j < n_; ++j) m.linear[i][j] = (i == j ? 1 : 0) - alpha[i] * Rational(data_.coroots[a][j]);
    m.shift[i] = level * alpha[i];
  }
  return m;
}

AffineMap AffineArrangement::generator_map(Gen g) const {
  if (g < 0 || g >= static_cast<Gen>(gens_.size())) throw ValidationError("generator out of range");
  return gens_[g];
}

AffineMap AffineArrangement::map_of(Element x) const {
  if (x.system_ptr() != system_.get()) throw ValidationError("element belongs to a different system");
  AffineMap m;
  m.linear.assign(n_, std::vector<Rational>(n_));
  m.shift.assign(n_, Rational(0));
  for (int i = 0; i < n_; ++i) m.linear[i][i] = 1;
  for (Gen g : x.word()) m = m.after(gens_[g]);
  return m;
}

std::vector<Point> AffineArrangement::base_vertices() const {
  std::vector<Point> v{Point(n_, Rational(0))};
  for (int i = 0; i < n_; ++i) {
    Point p(n_, Rational(0));
    p[i] = Rational(1, data_.coroots[highest_][i]);
    v.push_back(p);
  }
  return v;
}

Point AffineArrangement::base_sample() const {
  Point c(n_, Rational(0));
  auto verts = base_vertices();
  for (const auto& v : verts)
    for (int i = 0; i < n_; ++i) c[i] += v[i];
  for (auto& x : c) x /= static_cast<int>(verts.size());
  return c;
}

Alcove AffineArrangement::alcove_of_point(const Point& interior) const {
  Alcove a;
  for (std::size_t r = 0; r < data_.roots.size(); ++r) {
    Rational v = pair(interior, r);
    if (is_integer(v)) throw ComputationError("sample point lies on a hyperplane");
    a.k.push_back(floor_of(v));
  }
  return a;
}

Alcove AffineArrangement::base_alcove() const { return alcove_of_point(base_sample()); }

Alcove AffineArrangement::alcove_of(Element x) const { return alcove_of_point(map_of(x)(base_sample())); }

std::vector<Point> AffineArrangement::vertices_of(Element x) const {
  AffineMap m = map_of(x);
  std::vector<Point> out;
  for (const auto& v : base_vertices()) out.push_back(m(v));
  return out;
}

Element AffineArrangement::element_of(const AffineMap& g) const {
  const auto& aff = *system_->affine();
  const Point sample = base_sample();
  AffineMap cur = g;
  std::vector<Gen> word;
  Alcove base = base_alcove();
  const std::int64_t distance = separation(base, alcove_of_point(cur(sample)));
  for (std::int64_t step = 0; step <= distance; ++step) {
    Alcove here = alcove_of_point(cur(sample));
    if (here == base) break;
    std::optional<Gen> wall;
    for (int i = 0; i < n_ && !wall; ++i)
      if (here.k[simple_index(data_, i)] < 0) wall = aff.finite_generators[i];
    if (!wall && here.k[highest_] >= 1) wall = aff.affine_generator;
    if (!wall) throw ComputationError("no separating wall found");
    cur = gens_[*wall].after(cur);
    word.push_back(*wall);
  }
  AffineMap id;
  id.linear.assign(n_, std::vector<Rational>(n_));
  id.shift.assign(n_, Rational(0));
  for (int i = 0; i < n_; ++i) id.linear[i][i] = 1;
  if (!(cur == id)) throw ValidationError("affine map is not an element of " + system_->name());
  return system_->from_word(word);
}

std::int64_t separation(const Alcove& a, const Alcove& b) {
  if (a.k.size() != b.k.size()) throw ValidationError("alcoves from different arrangements");
  std::int64_t d = 0;
  for (std::size_t i = 0; i < a.k.size(); ++i) d += std::abs(a.k[i] - b.k[i]);
  return d;
}

ScaledSubgroup scaled_subgroup(const AffineArrangement& arr, const Rational& scale, int levels, const Point& base,
                               bool build_subgroup) {
  if (scale <= 0) throw ValidationError("scale must be positive");
  if (!is_integer(scale)) throw ValidationError("scale " + scale.str() + " is not an integer; l R is not inside R");
  if (levels < 0) throw ValidationError("levels must be nonnegative");
  const int n = arr.rank();
  Point b = base.empty() ? Point(n, Rational(0)) : base;
  if (static_cast<int>(b.size()) != n) throw ValidationError("base point needs " + std::to_string(n) + " coordinates");
  for (const auto& c : b)
    if (!is_integer(c)) throw ValidationError("base point " + c.str() + " is off the lattice; l R is not inside R");

  ScaledSubgroup out;
  out.scale = scale;
  out.levels = levels;
  out.base = b;
  Rational m = 1;
  for (int i = 0; i < levels; ++i) m *= scale;

  const auto& data = arr.roots();
  const std::size_t top = data.highest_coroot;
  for (int i = 0; i < n; ++i) {
    std::size_t a = simple_index(data, i);
    out.generators.push_back(arr.element_of(arr.reflection(a, arr.pair(b, a))));
  }
  out.generators.push_back(arr.element_of(arr.reflection(top, arr.pair(b, top) + m)));

  // alcoves inside b + m A0 are at most (m + |<b, alpha^vee>| + 1) hyperplanes away per root
  std::int64_t bound = 0;
  for (std::size_t a = 0; a < data.roots.size(); ++a)
    bound += m.convert_to<std::int64_t>() + std::abs(floor_of(arr.pair(b, a))) + 1;
  const Point sample = arr.base_sample();
  for (Element x : arr.system().elements_up_to(static_cast<int>(bound))) {
    Point p = arr.map_of(x)(sample);
    Point rel(n);
    for (int i = 0; i < n; ++i) rel[i] = p[i] - b[i];
    bool inside = arr.pair(rel, top) < m;
    for (int i = 0; i < n && inside; ++i) inside = rel[i] > 0;  // rel[i] = <rel, alpha_i^vee>
    if (inside) out.copies.push_back(x);
  }

  if (build_subgroup) {
    int gbound = 0;
    for (Element g : out.generators) gbound = std::max(gbound, g.length());
    std::string desc = "scaled:l=" + scale.str() + "^" + std::to_string(levels);
    out.subgroup = make_subgroup(arr.system_ptr(), out.generators, gbound, desc);
  }
  return out;
}

SeparationReport check_separation(const AffineArrangement& arr, int max_length) {
  SeparationReport r;
  r.max_length = max_length;
  Alcove base = arr.base_alcove();
  std::set<Alcove> seen;
  for (Element x : arr.system().elements_up_to(max_length)) {
    Alcove a = arr.alcove_of(x);
    if (separation(base, a) != x.length()) r.mismatches.push_back(x);
    if (!seen.insert(a).second) r.injective = false;
    ++r.checked;
  }
  return r;
}

std::string render_arrangement(const AffineArrangement& arr, const RenderOptions& o) {
  const int n = arr.rank();
  if (n > 2) throw ValidationError("rendering supports finite rank at most 2");
  const auto& data = arr.roots();
  const auto& A = data.cartan;

  // squared root lengths, short roots normalized to 2
  std::vector<double> len(n, 1.0);
  if (n == 2 && A[0][1] != 0) len[1] = len[0] * double(A[0][1]) / double(A[1][0]);
  double shortest = *std::min_element(len.begin(), len.end());
  for (auto& l : len) l *= 2.0 / shortest;
  // Gram matrix of simple roots and its Cholesky factor
  std::vector<std::vector<double>> B(n, std::vector<double>(n)), R(n, std::vector<double>(n, 0.0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) B[i][j] = double(A[i][j]) * len[i] / 2.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= i; ++j) {
      double s = B[i][j];
      for (int k = 0; k < j; ++k) s -= R[i][k] * R[j][k];
      R[i][j] = i == j ? std::sqrt(s) : s / R[j][j];
    }
  // weight coordinates -> plane
  auto embed = [&](const Point& p) {
    std::array<double, 2> e{0.0, 0.0};
    for (int i = 0; i < n; ++i) {
      double s = p[i].convert_to<double>() * len[i] / 2.0;
      for (int k = 0; k < i; ++k) s -= R[i][k] * e[k];
      e[i] = s / R[i][i];
    }
    return e;
  };
  // coroot of positive root a as a vector in the plane
  auto coroot = [&](std::size_t a) {
    std::array<double, 2> v{0.0, 0.0};
    double norm = 0.0;
    std::array<double, 2> alpha{0.0, 0.0};
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) alpha[k] += double(data.roots[a][j]) * R[j][k];
    for (int k = 0; k < n; ++k) norm += alpha[k] * alpha[k];
    for (int k = 0; k < n; ++k) v[k] = 2.0 * alpha[k] / norm;
    return v;
  };

  const auto [x0, y0, x1, y1] = o.bbox;
  if (!(x0 < x1) || (n == 2 && !(y0 < y1))) throw ValidationError("empty bounding box");
  const double unit = 60.0;
  const double height = n == 2 ? (y1 - y0) : 2.0;
  auto X = [&](double x) { return (x - x0) * unit; };
  auto Y = [&](double y) { return n == 2 ? (y1 - y) * unit : unit; };
  std::array<double, 2> b{0.0, 0.0};
  if (!o.base.empty()) b = embed(o.base);

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt((x1 - x0) * unit) << "\" height=\""
      << fmt(height * unit) << "\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  auto polygon = [&](const std::vector<Point>& verts, const std::string& fill, double opacity) {
    if (n == 1) {
      double a = embed(verts[0])[0], c = embed(verts[1])[0];
      svg << "<rect x=\"" << fmt(X(std::min(a, c))) << "\" y=\"" << fmt(Y(0) - 0.25 * unit) << "\" width=\""
          << fmt(std::abs(c - a) * unit) << "\" height=\"" << fmt(0.5 * unit) << "\" fill=\"" << fill
          << "\" fill-opacity=\"" << opacity << "\"/>\n";
      return;
    }
    svg << "<polygon points=\"";
    for (const auto& v : verts) {
      auto e = embed(v);
      svg << fmt(X(e[0])) << "," << fmt(Y(e[1])) << " ";
    }
    svg << "\" fill=\"" << fill << "\" fill-opacity=\"" << opacity << "\"/>\n";
  };

  // fundamental alcove chain, largest first so the small ones stay visible
  std::vector<std::int64_t> chain = o.scales;
  std::sort(chain.rbegin(), chain.rend());
  for (std::size_t c = 0; c < chain.size(); ++c) {
    std::vector<Point> verts = arr.base_vertices();
    for (auto& v : verts)
      for (int i = 0; i < n; ++i) v[i] = v[i] * Rational(chain[c]) + (o.base.empty() ? Rational(0) : o.base[i]);
    polygon(verts, "#f4c7c3", 0.5);
  }
  polygon(arr.base_vertices(), "#9ecae1", 0.8);
  for (Element x : o.highlight) polygon(arr.vertices_of(x), "#fdd835", 0.7);

  // hyperplane layers: grey base, then each scale
  auto draw_family = [&](std::int64_t step, const std::string& colour, double width) {
    for (std::size_t a = 0; a < data.roots.size(); ++a) {
      auto v = coroot(a);
      double offset = v[0] * b[0] + v[1] * b[1];
      double lo = 1e300, hi = -1e300;
      for (double cx : {x0, x1})
        for (double cy : (n == 2 ? std::vector<double>{y0, y1} : std::vector<double>{0.0})) {
          double val = v[0] * cx + (n == 2 ? v[1] * cy : 0.0);
          lo = std::min(lo, val);
          hi = std::max(hi, val);
        }
      for (std::int64_t k = static_cast<std::int64_t>(std::ceil((lo - offset) / step)) * step;
           offset + double(k) <= hi + 1e-9; k += step) {
        double level = offset + double(k);
        if (n == 1) {
          double x = level / v[0];
          svg << "<line x1=\"" << fmt(X(x)) << "\" y1=\"" << fmt(Y(0) - 0.4 * unit) << "\" x2=\"" << fmt(X(x))
              << "\" y2=\"" << fmt(Y(0) + 0.4 * unit) << "\" stroke=\"" << colour << "\" stroke-width=\"" << width
              << "\"/>\n";
          continue;
        }
        // clip {p : v.p = level} to the box
        double norm2 = v[0] * v[0] + v[1] * v[1];
        std::array<double, 2> p0{v[0] * level / norm2, v[1] * level / norm2}, d{-v[1], v[0]};
        double t0 = -1e300, t1 = 1e300;
        bool empty = false;
        for (int k2 = 0; k2 < 2 && !empty; ++k2) {
          double lo2 = k2 == 0 ? x0 : y0, hi2 = k2 == 0 ? x1 : y1;
          if (std::abs(d[k2]) < 1e-12) {
            if (p0[k2] < lo2 || p0[k2] > hi2) empty = true;
            continue;
          }
          double ta = (lo2 - p0[k2]) / d[k2], tb = (hi2 - p0[k2]) / d[k2];
          t0 = std::max(t0, std::min(ta, tb));
          t1 = std::min(t1, std::max(ta, tb));
        }
        if (empty || t0 >= t1) continue;
        svg << "<line x1=\"" << fmt(X(p0[0] + t0 * d[0])) << "\" y1=\"" << fmt(Y(p0[1] + t0 * d[1])) << "\" x2=\""
            << fmt(X(p0[0] + t1 * d[0])) << "\" y2=\"" << fmt(Y(p0[1] + t1 * d[1])) << "\" stroke=\"" << colour
            << "\" stroke-width=\"" << width << "\"/>\n";
      }
    }
  };
  if (n == 1)
    svg << "<line x1=\"0\" y1=\"" << fmt(Y(0)) << "\" x2=\"" << fmt((x1 - x0) * unit) << "\" y2=\"" << fmt(Y(0))
        << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
  draw_family(1, "#aaaaaa", 1.0);
  for (std::size_t c = 0; c < o.scales.size(); ++c) {
    if (o.scales[c] < 1) throw ValidationError("scales must be positive integers");
    draw_family(o.scales[c], kLayerColours[c % 5], 2.0 + double(c));
  }
  svg << "</svg>\n";
  return svg.str();
}

void render_arrangement(const AffineArrangement& arr, const RenderOptions& options, const std::string& path) {
  std::string s = render_arrangement(arr, options);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << s;
  if (!out) throw IoError("failed writing '" + path + "'");
}

}  // namespace coxkl
