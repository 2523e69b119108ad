#include "homlab/constructions.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <map>
#include <limits>
#include <set>
#include <sstream>
#include <string>

#include "homlab/error.hpp"
#include "homlab/homogeneity.hpp"
#include "homlab/structure.hpp"

namespace homlab {

namespace {

bool close_rel(double a, double b) {
  return std::abs(a - b) <= 1e-9 * std::max({1.0, std::abs(a), std::abs(b)});
}

void require_points(std::int64_t n) {
  if (n > kMaxConstructionPoints)
    fail(ErrorKind::DegreeTooLarge,
         std::to_string(n) + " points exceeds " + std::to_string(kMaxConstructionPoints));
}

const std::vector<double>& require_palette(const ColoredSpace& s) {
  if (!s.has_palette()) fail(ErrorKind::NoPalette, "space has no real palette");
  return *s.palette();
}

// Builds a space from real distances whose distinct values are already
// separated by more than the merge tolerance.
ColoredSpace from_values(const RealMatrix& d) {
  std::vector<double> values{0.0};
  for (const auto& row : d) values.insert(values.end(), row.begin(), row.end());
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  const int n = static_cast<int>(d.size());
  ColorMatrix m(n, std::vector<int>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      m[i][j] = static_cast<int>(std::lower_bound(values.begin(), values.end(), d[i][j]) -
                                 values.begin());
  return new_space(m, values);
}

Permutation perm_of(const std::vector<int>& img) { return Permutation::from_images(img); }

std::string fmt(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

}  // namespace

ColoredSpace cycle(int n) {
  if (n < 1) fail(ErrorKind::PreconditionFailed, "cycle needs n >= 1");
  require_points(n);
  ColorMatrix m(n, std::vector<int>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const int k = std::abs(i - j);
      m[i][j] = std::min(k, n - k);
    }
  std::vector<double> palette;
  for (int k = 0; k <= n / 2; ++k) palette.push_back(k);
  return new_space(m, palette);
}

ColoredSpace scale(const ColoredSpace& space, double factor) {
  std::vector<double> palette = require_palette(space);
  if (!(factor > 0)) fail(ErrorKind::PreconditionFailed, "scale factor must be positive");
  for (double& v : palette) v *= factor;
  return new_space(space.matrix(), palette);
}

ColoredSpace l1_product(const ColoredSpace& x, const ColoredSpace& y) {
  const auto& px = require_palette(x);
  const auto& py = require_palette(y);
  require_points(static_cast<std::int64_t>(x.size()) * y.size());
  struct Sum {
    double v;
    int cx, cy;
  };
  std::vector<Sum> sums;
  for (int i = 0; i < x.num_colors(); ++i)
    for (int j = 0; j < y.num_colors(); ++j) sums.push_back({px[i] + py[j], i, j});
  std::sort(sums.begin(), sums.end(), [](const Sum& a, const Sum& b) { return a.v < b.v; });
  for (size_t k = 1; k < sums.size(); ++k)
    if (close_rel(sums[k - 1].v, sums[k].v))
      fail(ErrorKind::SumNotInjective,
           fmt(px[sums[k - 1].cx]) + "+" + fmt(py[sums[k - 1].cy]) + " = " +
               fmt(px[sums[k].cx]) + "+" + fmt(py[sums[k].cy]));
  std::vector<int> color_of(static_cast<size_t>(x.num_colors()) * y.num_colors());
  std::vector<double> palette;
  for (size_t k = 0; k < sums.size(); ++k) {
    color_of[static_cast<size_t>(sums[k].cx) * y.num_colors() + sums[k].cy] = static_cast<int>(k);
    palette.push_back(sums[k].v);
  }
  const int nx = x.size(), ny = y.size(), n = nx * ny;
  ColorMatrix m(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      m[a][b] = color_of[static_cast<size_t>(x.color(a / ny, b / ny)) * y.num_colors() +
                         y.color(a % ny, b % ny)];
  return new_space(m, palette);
}

ColoredSpace binary_space(int m) {
  if (m < 0) fail(ErrorKind::PreconditionFailed, "m must be nonnegative");
  if (m > kMaxBinaryExponent)
    fail(ErrorKind::DegreeTooLarge, "m = " + std::to_string(m) + " exceeds 10");
  const int n = 1 << m;
  std::vector<double> palette(n);
  for (int v = 0; v < n; ++v) palette[v] = v;
  if (n <= kMaxConstructionPoints) {
    ColorMatrix mat(n, std::vector<int>(n));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) mat[i][j] = i ^ j;
    return new_space(mat, palette);
  }
  // x xor z <= (x xor y) + (y xor z) always; the cubic check is skipped here.
  std::vector<int> colors(static_cast<size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) colors[static_cast<size_t>(i) * n + j] = i ^ j;
  return make_space_unchecked(n, std::move(colors), n, palette);
}

ColoredSpace boolean_space(const NormTable& t) {
  if (t.m < 0 || t.m > kMaxBinaryExponent)
    fail(ErrorKind::DegreeTooLarge, "m = " + std::to_string(t.m));
  const int n = 1 << t.m;
  if (static_cast<int>(t.norm.size()) != n)
    fail(ErrorKind::PreconditionFailed, "norm table needs 2^m entries");
  if (t.norm[0] != 0) fail(ErrorKind::PreconditionFailed, "norm of the empty set must be 0");
  std::vector<int> order(n);
  for (int v = 0; v < n; ++v) {
    if (v > 0 && !(t.norm[v] > 0))
      fail(ErrorKind::NormNotInjective, "norm[" + std::to_string(v) + "] is not positive");
    order[v] = v;
  }
  std::sort(order.begin(), order.end(), [&](int a, int b) { return t.norm[a] < t.norm[b]; });
  for (int k = 1; k < n; ++k)
    if (close_rel(t.norm[order[k - 1]], t.norm[order[k]]))
      fail(ErrorKind::NormNotInjective, "norm[" + std::to_string(order[k - 1]) + "] = norm[" +
                                            std::to_string(order[k]) + "]");
  for (int a = 1; a < n; ++a)
    for (int b = 1; b < n; ++b)
      if (t.norm[a ^ b] > (t.norm[a] + t.norm[b]) * (1 + 1e-12))
        fail(ErrorKind::TriangleViolation,
             "norm[" + std::to_string(a ^ b) + "] > norm[" + std::to_string(a) + "] + norm[" +
                 std::to_string(b) + "]");
  std::vector<int> rank(n);
  std::vector<double> palette(n);
  for (int k = 0; k < n; ++k) {
    rank[order[k]] = k;
    palette[k] = t.norm[order[k]];
  }
  std::vector<int> colors(static_cast<size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) colors[static_cast<size_t>(i) * n + j] = rank[i ^ j];
  // Translations are automorphisms and rows are injective by construction.
  ColoredSpace s = n <= kMaxConstructionPoints
                       ? new_space([&] {
                           ColorMatrix m(n, std::vector<int>(n));
                           for (int i = 0; i < n; ++i)
                             for (int j = 0; j < n; ++j) m[i][j] = rank[i ^ j];
                           return m;
                         }(),
                                   palette)
                       : make_space_unchecked(n, std::move(colors), n, palette);
  if (!is_isosceles_free(s))
    fail(ErrorKind::InternalInvariantViolation, "Boolean space is not isosceles-free");
  return s;
}

ColoredSpace b_space(int m, int k) {
  if (m < 0 || k < 0) fail(ErrorKind::PreconditionFailed, "m and k must be nonnegative");
  if (m > kMaxBinaryExponent) fail(ErrorKind::DegreeTooLarge, "m too large");
  require_points((static_cast<std::int64_t>(2) * k + 1) << m);
  return l1_product(scale(cycle(2 * k + 1), static_cast<double>(1 << m)), binary_space(m));
}

bool rainbow_triangle_condition(const ColoredSpace& x, const std::vector<double>& r) {
  const auto& p = require_palette(x);
  const double dmax = p.back();
  const double dmin = p.size() > 1 ? p[1] : std::numeric_limits<double>::infinity();
  for (double a : r) {
    if (a < dmax) return false;
    for (double b : r)
      if (std::abs(a - b) > dmin) return false;
  }
  return true;
}

std::vector<double> default_r(const ColoredSpace& x, std::size_t h_size) {
  const double dmax = require_palette(x).back();
  std::vector<double> r(h_size);
  for (size_t i = 0; i < h_size; ++i)
    r[i] = dmax + 1 + static_cast<double>(i) / static_cast<double>(h_size);
  return r;
}

ColoredSpace rainbow_duplicate(const ColoredSpace& x, const RainbowParams& params) {
  const auto& pal = require_palette(x);
  const int n = x.size();
  require_points(2 * static_cast<std::int64_t>(n));
  if (!is_one_homogeneous(x)) fail(ErrorKind::NotHomogeneous, "X is not 1-homogeneous");
  const auto& h = params.h;
  const Permutation& g = params.g;

  auto is_aut = [&](const Permutation& p) {
    if (p.degree() != n) return false;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (x.color(p(i), p(j)) != x.color(i, j)) return false;
    return true;
  };
  for (const auto& e : h)
    if (!is_aut(e)) fail(ErrorKind::PreconditionFailed, "an element of H is not an automorphism");
  if (!is_aut(g)) fail(ErrorKind::PreconditionFailed, "g is not an automorphism");
  std::set<Permutation> hset(h.begin(), h.end());
  if (hset.size() != h.size()) fail(ErrorKind::PreconditionFailed, "H lists an element twice");
  for (const auto& a : h)
    for (const auto& b : h)
      if (!hset.count(a * b)) fail(ErrorKind::PreconditionFailed, "H is not closed");
  for (const auto& a : h)
    for (const auto& b : h)
      if (a * b != b * a) fail(ErrorKind::RainbowNotAbelian, "H is not abelian");

  // h_of[x * n + y] = index of the unique h with h(x) = y.
  std::vector<int> h_of(static_cast<size_t>(n) * n, -1);
  for (size_t k = 0; k < h.size(); ++k)
    for (int i = 0; i < n; ++i) {
      int& slot = h_of[static_cast<size_t>(i) * n + h[k](i)];
      if (slot >= 0)
        fail(ErrorKind::RainbowNotUniquelyTransitive, "two elements of H agree at a point");
      slot = static_cast<int>(k);
    }
  if (static_cast<int>(h.size()) != n)
    fail(ErrorKind::RainbowNotUniquelyTransitive, "|H| != |X|");

  if (!(g * g).is_identity()) fail(ErrorKind::RainbowGNotInvolution, "g * g != id");
  for (const auto& e : h)
    if (g * e * g.inverse() != e.inverse())
      fail(ErrorKind::RainbowGDoesNotInvert, "g h g^-1 != h^-1");

  const auto& r = params.r;
  if (r.size() != h.size()) fail(ErrorKind::PreconditionFailed, "r needs one value per h");
  for (double v : r)
    if (!(v > 0)) fail(ErrorKind::RainbowRNotPositive, "r value " + fmt(v));
  for (size_t a = 0; a < r.size(); ++a)
    for (size_t b = a + 1; b < r.size(); ++b)
      if (close_rel(r[a], r[b])) fail(ErrorKind::RainbowRNotInjective, "r repeats " + fmt(r[a]));
  for (double v : r)
    for (double d : pal)
      if (close_rel(v, d)) fail(ErrorKind::RainbowRHitsDistance, "r value " + fmt(v));

  RealMatrix d(2 * n, std::vector<double>(2 * n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      d[i][j] = d[n + i][n + j] = x.distance(i, j);
      d[i][n + j] = d[n + j][i] = r[h_of[static_cast<size_t>(i) * n + j]];
    }
  ColoredSpace out = from_values(d);

  const PermGroup aut = automorphisms(out);
  if (aut.order() != 2 * static_cast<std::int64_t>(h.size()))
    fail(ErrorKind::InternalInvariantViolation, "|Aut| != 2|H| for the duplicate");
  return out;
}

RainbowParams d_params(int n) {
  const ColoredSpace c = cycle(n);
  RainbowParams p;
  for (int k = 0; k < n; ++k) {
    std::vector<int> img(n);
    for (int i = 0; i < n; ++i) img[i] = (i + k) % n;
    p.h.push_back(perm_of(img));
  }
  std::vector<int> refl(n);
  for (int i = 0; i < n; ++i) refl[i] = (n - i) % n;
  p.g = perm_of(refl);
  p.r = default_r(c, p.h.size());
  return p;
}

ColoredSpace d_space(int n) {
  ColoredSpace out = rainbow_duplicate(cycle(n), d_params(n));
  if (delta(out) != n / 2 + 1 + n) fail(ErrorKind::InternalInvariantViolation, "delta(D_n)");
  return out;
}

RainbowParams e_params(int m, int k) {
  const ColoredSpace b = b_space(m, k);
  const int len = 2 * k + 1, w = 1 << m, n = len * w;
  RainbowParams p;
  for (int s = 0; s < len; ++s)
    for (int t = 0; t < w; ++t) {
      std::vector<int> img(n);
      for (int i = 0; i < len; ++i)
        for (int x = 0; x < w; ++x) img[i * w + x] = ((i + s) % len) * w + (x ^ t);
      p.h.push_back(perm_of(img));
    }
  std::vector<int> refl(n);
  for (int i = 0; i < len; ++i)
    for (int x = 0; x < w; ++x) refl[i * w + x] = ((len - i) % len) * w + x;
  p.g = perm_of(refl);
  p.r = default_r(b, p.h.size());
  return p;
}

ColoredSpace e_space(int m, int k) {
  if (m < 0 || k < 0) fail(ErrorKind::PreconditionFailed, "m and k must be nonnegative");
  require_points((static_cast<std::int64_t>(4) * k + 2) << m);
  ColoredSpace out = rainbow_duplicate(b_space(m, k), e_params(m, k));
  if (delta(out) != (1 << m) * (3 * k + 2))
    fail(ErrorKind::InternalInvariantViolation, "delta(E_{m,k}) != 2^m(3k+2)");
  return out;
}

RainbowParams discrete_boolean_params(int n) {
  if (n < 0) fail(ErrorKind::PreconditionFailed, "n must be nonnegative");
  if (n > kMaxDiscreteDuplicateExponent)
    fail(ErrorKind::DegreeTooLarge, "n = " + std::to_string(n) + " exceeds 4");
  const int size = 1 << n;
  RainbowParams p;
  for (int t = 0; t < size; ++t) {
    std::vector<int> img(size);
    for (int x = 0; x < size; ++x) img[x] = x ^ t;
    p.h.push_back(perm_of(img));
    p.r.push_back(1.0 + static_cast<double>(t + 1) / (size + 1));
  }
  p.g = Permutation::identity(size);
  return p;
}

ColoredSpace discrete_boolean_duplicate(int n) {
  RainbowParams p = discrete_boolean_params(n);
  ColoredSpace out = rainbow_duplicate(discrete_space(1 << n), p);
  if (!is_boolean_space(out)) fail(ErrorKind::InternalInvariantViolation, "duplicate not Boolean");
  if (n >= 2 && is_isosceles_free(out))
    fail(ErrorKind::InternalInvariantViolation, "duplicate is isosceles-free");
  return out;
}

namespace {

struct SplitRejected {
  std::string why;
};

// Recovers (X, H, r, g) from a split of y into two halves. Throws
// SplitRejected when the split does not carry a rainbow duplicate.
RainbowFactorization factor_split(const ColoredSpace& y, const PermGroup& aut,
                                  const Decomposition& halves) {
  auto reject = [](const char* why) { throw SplitRejected{why}; };
  const std::vector<int>& xs = halves.blocks[0];
  const std::vector<int>& zs = halves.blocks[1];
  const int n = static_cast<int>(xs.size());
  if (static_cast<int>(zs.size()) != n) reject("components differ in size");

  std::vector<int> index_in_x(y.size(), -1);
  for (int i = 0; i < n; ++i) index_in_x[xs[i]] = i;

  int q = y.num_colors();
  for (int a : xs)
    for (int b : zs) q = std::min(q, y.color(a, b));
  // psi(x) = the unique point of the other half at distance q.
  std::vector<int> psi(n, -1);
  std::vector<char> hit(y.size(), 0);
  for (int i = 0; i < n; ++i) {
    for (int b : zs)
      if (y.color(xs[i], b) == q) {
        if (psi[i] >= 0) reject("q is not a singleton");
        psi[i] = b;
      }
    if (psi[i] < 0 || hit[psi[i]]) reject("f_q is not a bijection");
    hit[psi[i]] = 1;
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (y.color(psi[i], psi[j]) != y.color(xs[i], xs[j])) reject("f_q is not an isometry");
  std::vector<int> psi_inv(y.size(), -1);
  for (int i = 0; i < n; ++i) psi_inv[psi[i]] = i;

  RainbowFactorization f;
  f.base = subspace(y, xs);
  f.base_points = xs;
  f.partner = psi;

  const PermGroup star = aut_star(y, aut, halves);
  for (const auto& e : star.elements()) {
    std::vector<int> img(n);
    for (int i = 0; i < n; ++i) img[i] = index_in_x[e(xs[i])];
    f.params.h.push_back(perm_of(img));
  }
  for (const auto& h : f.params.h) f.params.r.push_back(y.distance(xs[0], psi[h(0)]));
  for (size_t k = 0; k < f.params.h.size(); ++k) {
    const auto& h = f.params.h[k];
    for (int i = 0; i < n; ++i)
      if (y.distance(xs[i], psi[h(i)]) != f.params.r[k]) reject("cross distance not determined by h");
  }

  bool found = false;
  for (const auto& e : aut.elements()) {
    if (index_in_x[e(xs[0])] >= 0) continue;
    std::vector<int> img(n);
    for (int i = 0; i < n; ++i) img[i] = psi_inv[e(xs[i])];
    if (std::find(img.begin(), img.end(), -1) != img.end()) continue;
    Permutation g = perm_of(img);
    if (!(g * g).is_identity()) continue;
    bool inverts = true;
    for (const auto& h : f.params.h)
      if (g * h * g.inverse() != h.inverse()) {
        inverts = false;
        break;
      }
    if (!inverts) continue;
    f.params.g = std::move(g);
    found = true;
    break;
  }
  if (!found) reject("no admissible g recovered");

  ColoredSpace rebuilt;
  try {
    rebuilt = rainbow_duplicate(f.base, f.params);
  } catch (const Error&) {
    reject("recovered parameters are not admissible");
  }
  for (int i = 0; i < 2 * n; ++i)
    for (int j = 0; j < 2 * n; ++j) {
      const int a = i < n ? xs[i] : psi[i - n];
      const int b = j < n ? xs[j] : psi[j - n];
      if (rebuilt.distance(i, j) != y.distance(a, b)) reject("factorization does not reproduce Y");
    }
  if (canonical_form(rebuilt) != canonical_form(y))
    reject("canonical forms differ after factorization");
  return f;
}

// Splits of a space with regular Boolean Aut: one per index-2 subgroup K,
// halves K(0) and its complement. Ordered by the largest color inside a
// half, so the tightest base comes first.
std::vector<Decomposition> boolean_splits(const ColoredSpace& y, const PermGroup& aut) {
  const int n = y.size();
  // Coordinates of every element over a greedy basis of the Z_2-space.
  std::map<std::vector<int>, std::uint64_t> coord;
  coord[aut.elements()[0].to_vector()] = 0;
  int dim = 0;
  for (const auto& e : aut.elements()) {
    if (coord.count(e.to_vector())) continue;
    std::vector<std::pair<Permutation, std::uint64_t>> span;
    for (const auto& x : aut.elements())
      if (auto it = coord.find(x.to_vector()); it != coord.end()) span.emplace_back(x, it->second);
    for (const auto& [x, c] : span) coord[(e * x).to_vector()] = c | (std::uint64_t{1} << dim);
    ++dim;
  }
  std::vector<Decomposition> out;
  for (std::uint64_t v = 1; v < (std::uint64_t{1} << dim); ++v) {
    std::vector<char> in_a(n, 0);
    for (const auto& e : aut.elements())
      if (std::popcount(coord.at(e.to_vector()) & v) % 2 == 0) in_a[e(0)] = 1;
    Decomposition d;
    d.kind = DecompositionKind::IsoscelesGenerated;
    d.blocks.resize(2);
    for (int x = 0; x < n; ++x) d.blocks[in_a[x] ? 0 : 1].push_back(x);
    out.push_back(std::move(d));
  }
  auto widest = [&](const Decomposition& d) {
    int c = 0;
    for (int x : d.blocks[0]) c = std::max(c, y.color(0, x));
    return c;
  };
  std::stable_sort(out.begin(), out.end(), [&](const Decomposition& a, const Decomposition& b) {
    return widest(a) < widest(b);
  });
  return out;
}

}  // namespace

std::optional<RainbowFactorization> rainbow_factorization(const ColoredSpace& input) {
  if (!is_one_homogeneous(input)) fail(ErrorKind::NotHomogeneous, "Y is not 1-homogeneous");
  const Decomposition comps = isosceles_generated_components(input);
  const ColoredSpace y = with_palette(input);
  if (comps.blocks.size() == 2) {
    try {
      return factor_split(y, automorphisms(y), comps);
    } catch (const SplitRejected& e) {
      fail(ErrorKind::InternalInvariantViolation, e.why);
    }
  }
  // Isosceles-free duplicates have only singleton components; any split
  // along an index-2 subgroup of the regular Boolean Aut is then tried.
  if (y.size() < 2 || !is_isosceles_free(y)) return std::nullopt;
  const PermGroup aut = automorphisms(y);
  if (aut.order() != y.size() || !is_boolean(aut)) return std::nullopt;
  for (const auto& split : boolean_splits(y, aut)) {
    try {
      return factor_split(y, aut, split);
    } catch (const SplitRejected&) {
    }
  }
  return std::nullopt;
}

ColoredSpace hexagon(const std::array<double, 5>& d) {
  for (double v : d)
    if (!(v >= 1 && v <= 2))
      fail(ErrorKind::PreconditionFailed, "hexagon distances must lie in [1, 2]");
  for (int i = 0; i < 5; ++i)
    for (int j = i + 1; j < 5; ++j)
      if (close_rel(d[i], d[j])) fail(ErrorKind::DistancesNotDistinct, "d repeats " + fmt(d[i]));
  const int t[6][6] = {{0, 1, 2, 3, 4, 5}, {1, 0, 5, 4, 2, 3}, {2, 5, 0, 1, 3, 4},
                       {3, 4, 1, 0, 5, 2}, {4, 2, 3, 5, 0, 1}, {5, 3, 4, 2, 1, 0}};
  RealMatrix m(6, std::vector<double>(6));
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) m[i][j] = t[i][j] == 0 ? 0.0 : d[t[i][j] - 1];
  ColoredSpace s = from_values(m);
  if (!is_isosceles_free(s) || is_one_homogeneous(s))
    fail(ErrorKind::InternalInvariantViolation, "hexagon properties fail");
  return s;
}

bool tetrahedron_is_degenerate(double a, double b, double c) {
  return close_rel(a, b + c) || close_rel(b, a + c) || close_rel(c, a + b);
}

ColoredSpace tetrahedron(double a, double b, double c) {
  if (!(a > 0 && b > 0 && c > 0)) fail(ErrorKind::NotATriangle, "sides must be positive");
  if (close_rel(a, b) || close_rel(b, c) || close_rel(a, c))
    fail(ErrorKind::DistancesNotDistinct, "a, b, c must be distinct");
  const double slack = 1e-12 * (a + b + c);
  if (a > b + c + slack || b > a + c + slack || c > a + b + slack)
    fail(ErrorKind::NotATriangle, fmt(a) + ", " + fmt(b) + ", " + fmt(c));
  RealMatrix m = {{0, a, b, c}, {a, 0, c, b}, {b, c, 0, a}, {c, b, a, 0}};
  ColoredSpace s = from_values(m);
  if (!is_isosceles_free(s) || !is_one_homogeneous(s))
    fail(ErrorKind::InternalInvariantViolation, "tetrahedron is not homogeneous isosceles-free");
  return s;
}

WapGadget wap_gadget(const ColoredSpace& b, int p0, int p1) {
  if (!b.has_palette()) fail(ErrorKind::PreconditionFailed, "B needs a real palette");
  const int n = b.size();
  if (p0 < 0 || p1 < 0 || p0 >= n || p1 >= n || p0 == p1)
    fail(ErrorKind::PreconditionFailed, "marked points must be distinct points of B");
  if (!is_isosceles_free(b)) fail(ErrorKind::PreconditionFailed, "B is not isosceles-free");

  WapGadget w;
  double dmax = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) dmax = std::max(dmax, b.distance(i, j));
  w.r0 = dmax + 1;
  double gap = std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double diff = std::abs(b.distance(i, p0) - b.distance(j, p1));
      if (diff > 0) gap = std::min(gap, diff);
    }
  w.eps = gap / 2;
  w.r1 = w.r0 - w.eps;

  RealMatrix dx(n + 1, std::vector<double>(n + 1, 0.0)), dy = dx;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) dx[i][j] = dy[i][j] = b.distance(i, j);
    dx[i][n] = dx[n][i] = b.distance(i, p0) + w.r0;
    dy[i][n] = dy[n][i] = std::min(b.distance(i, p0) + w.r0, b.distance(i, p1) + w.r1);
  }
  w.x = from_metric(dx);
  w.y = from_metric(dy);
  if (!is_isosceles_free(w.x) || !is_isosceles_free(w.y))
    fail(ErrorKind::InternalInvariantViolation, "gadget extension is not isosceles-free");

  // Amalgam over {p0, p1}: the images of x and y sit at one distance from p0
  // but at different distances from p1.
  const double x0 = dx[p0][n], y0 = dy[p0][n];
  const double x1 = dx[p1][n], y1 = dy[p1][n];
  w.obstruction = x0 == y0 && x1 != y1;
  std::ostringstream os;
  os << "d(p0,x) = d(p0,y) = " << x0 << ", d(p1,x) = " << x1 << " != d(p1,y) = " << y1;
  w.detail = os.str();
  if (!w.obstruction) fail(ErrorKind::InternalInvariantViolation, "no forced isosceles triangle");
  return w;
}

}  // namespace homlab
