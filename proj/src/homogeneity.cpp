#include "homlab/homogeneity.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <string>

#include "homlab/error.hpp"
#include "homlab/structure.hpp"

namespace homlab {

namespace {

// Backtracking search for color-preserving bijections a -> b. Colors of b are
// first translated into a's color indices (untranslatable colors get -1 and
// can never match).
class Matcher {
 public:
  Matcher(const ColoredSpace& a, const ColoredSpace& b, const std::vector<int>& b_to_a)
      : a_(a), n_(a.size()), bc_(static_cast<size_t>(n_) * n_) {
    for (int y = 0; y < n_; ++y)
      for (int z = 0; z < n_; ++z) bc_[static_cast<size_t>(y) * n_ + z] = b_to_a[b.color(y, z)];
    std::map<std::vector<int>, int> ids;
    auto fingerprint = [&](auto&& color_of) {
      std::vector<int> fp(n_);
      for (int v = 0; v < n_; ++v) {
        std::vector<int> row(n_);
        for (int w = 0; w < n_; ++w) row[w] = color_of(v, w);
        std::sort(row.begin(), row.end());
        fp[v] = ids.emplace(std::move(row), static_cast<int>(ids.size())).first->second;
      }
      return fp;
    };
    fa_ = fingerprint([&](int v, int w) { return a_.color(v, w); });
    fb_ = fingerprint([&](int v, int w) { return bcolor(v, w); });
  }

  // visit receives the image array and returns true to stop the search.
  void run(const std::vector<std::pair<int, int>>& seed,
           const std::function<bool(const std::vector<int>&)>& visit) {
    std::vector<int> order, forced(n_, -1);
    std::vector<char> in_seed(n_, 0);
    for (auto [x, y] : seed) {
      order.push_back(x);
      forced[x] = y;
      in_seed[x] = 1;
    }
    // Greedy order: next the point whose colors to the placed points are
    // rarest in those points' rows, so images get forced early.
    std::vector<double> score(n_, 0.0);
    auto place = [&](int u) {
      std::vector<int> cnt(a_.num_colors(), 0);
      for (int w = 0; w < n_; ++w) ++cnt[a_.color(u, w)];
      for (int w = 0; w < n_; ++w) score[w] += 1.0 / cnt[a_.color(u, w)];
    };
    for (int v : order) place(v);
    while (static_cast<int>(order.size()) < n_) {
      int best = -1;
      for (int v = 0; v < n_; ++v)
        if (!in_seed[v] && (best < 0 || score[v] > score[best] + 1e-12)) best = v;
      in_seed[best] = 1;
      order.push_back(best);
      place(best);
    }
    std::vector<int> img(n_, -1);
    std::vector<char> used(n_, 0);
    std::function<bool(size_t)> rec = [&](size_t k) -> bool {
      if (k == order.size()) return visit(img);
      const int x = order[k];
      auto try_y = [&](int y) -> bool {
        if (used[y] || fa_[x] != fb_[y]) return false;
        for (size_t j = 0; j < k; ++j)
          if (a_.color(x, order[j]) != bcolor(y, img[order[j]])) return false;
        img[x] = y;
        used[y] = 1;
        const bool stop = rec(k + 1);
        img[x] = -1;
        used[y] = 0;
        return stop;
      };
      if (forced[x] >= 0) return try_y(forced[x]);
      for (int y = 0; y < n_; ++y)
        if (try_y(y)) return true;
      return false;
    };
    rec(0);
  }

 private:
  int bcolor(int y, int z) const { return bc_[static_cast<size_t>(y) * n_ + z]; }

  const ColoredSpace& a_;
  int n_;
  std::vector<int> bc_;
  std::vector<int> fa_, fb_;
};

std::vector<int> identity_colors(int c) {
  std::vector<int> v(c);
  std::iota(v.begin(), v.end(), 0);
  return v;
}

Permutation to_perm(const std::vector<int>& img) {
  std::vector<Permutation::Point> im(img.begin(), img.end());
  return Permutation(std::move(im));
}

void require_partial_isometry(const ColoredSpace& space, const PartialIsometry& f) {
  if (!is_partial_isometry(space, f))
    fail(ErrorKind::NotPartialIsometry, "map does not preserve colors or is not injective");
}

int find_root(std::vector<int>& parent, int x) {
  while (parent[x] != x) x = parent[x] = parent[parent[x]];
  return x;
}

// Checks level `depth` of the tuple recursion: points outside the tuple with
// equal color vectors to it must form a single orbit of its stabilizer.
bool tuple_levels_ok(const ColoredSpace& s, const std::vector<const Permutation*>& stab,
                     std::vector<int>& tuple, int remaining) {
  if (remaining == 0) return true;
  const int n = s.size();
  std::vector<char> in_tuple(n, 0);
  for (int t : tuple) in_tuple[t] = 1;

  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  for (const Permutation* g : stab)
    for (int x = 0; x < n; ++x) {
      int a = find_root(parent, x), b = find_root(parent, (*g)(x));
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }

  std::map<std::vector<int>, int> class_root;
  for (int x = 0; x < n; ++x) {
    if (in_tuple[x]) continue;
    std::vector<int> key(tuple.size());
    for (size_t i = 0; i < tuple.size(); ++i) key[i] = s.color(x, tuple[i]);
    auto [it, fresh] = class_root.emplace(std::move(key), find_root(parent, x));
    if (!fresh && it->second != find_root(parent, x)) return false;
  }
  if (stab.size() == 1) return true;

  for (int x = 0; x < n; ++x) {
    if (in_tuple[x] || find_root(parent, x) != x) continue;
    std::vector<const Permutation*> sub;
    for (const Permutation* g : stab)
      if ((*g)(x) == x) sub.push_back(g);
    tuple.push_back(x);
    const bool ok = tuple_levels_ok(s, sub, tuple, remaining - 1);
    tuple.pop_back();
    if (!ok) return false;
  }
  return true;
}

bool close_enough(double a, double b) {
  return std::abs(a - b) <= 1e-9 * std::max({1.0, std::abs(a), std::abs(b)});
}

}  // namespace

bool is_partial_isometry(const ColoredSpace& space, const PartialIsometry& f) {
  const int n = space.size();
  std::vector<char> src(n, 0), dst(n, 0);
  for (auto [x, y] : f.pairs) {
    if (x < 0 || x >= n || y < 0 || y >= n || src[x] || dst[y]) return false;
    src[x] = dst[y] = 1;
  }
  for (auto [x1, y1] : f.pairs)
    for (auto [x2, y2] : f.pairs)
      if (space.color(x1, x2) != space.color(y1, y2)) return false;
  return true;
}

PermGroup automorphisms(const ColoredSpace& space, std::int64_t cap) {
  const int n = space.size();
  std::vector<Permutation> elems;
  Matcher m(space, space, identity_colors(space.num_colors()));
  m.run({}, [&](const std::vector<int>& img) {
    if (static_cast<std::int64_t>(elems.size()) >= cap)
      fail(ErrorKind::OrderCapExceeded, "automorphism group exceeds cap " + std::to_string(cap));
    elems.push_back(to_perm(img));
    return false;
  });
  if (n == 0) elems.assign(1, Permutation::identity(0));
  return group_from_elements(n, std::move(elems));
}

std::optional<Permutation> extend_partial(const ColoredSpace& space, const PartialIsometry& f) {
  require_partial_isometry(space, f);
  std::optional<Permutation> out;
  Matcher m(space, space, identity_colors(space.num_colors()));
  m.run(f.pairs, [&](const std::vector<int>& img) {
    out = to_perm(img);
    return true;
  });
  return out;
}

std::int64_t count_extensions(const ColoredSpace& space, const PartialIsometry& f,
                              std::int64_t limit) {
  require_partial_isometry(space, f);
  std::int64_t count = 0;
  Matcher m(space, space, identity_colors(space.num_colors()));
  m.run(f.pairs, [&](const std::vector<int>&) { return ++count >= limit; });
  return count;
}

std::optional<std::vector<int>> find_isometry(const ColoredSpace& a, const ColoredSpace& b) {
  if (a.size() != b.size() || a.num_colors() != b.num_colors()) return std::nullopt;
  std::vector<int> b_to_a(b.num_colors(), -1);
  if (a.has_palette() && b.has_palette()) {
    const auto& pa = *a.palette();
    const auto& pb = *b.palette();
    for (size_t j = 0; j < pb.size(); ++j)
      for (size_t i = 0; i < pa.size(); ++i)
        if (close_enough(pa[i], pb[j])) b_to_a[j] = static_cast<int>(i);
  } else {
    b_to_a = identity_colors(b.num_colors());
  }
  std::optional<std::vector<int>> out;
  Matcher m(a, b, b_to_a);
  m.run({}, [&](const std::vector<int>& img) {
    out = img;
    return true;
  });
  return out;
}

std::optional<std::vector<int>> find_subset_isometry(const ColoredSpace& space,
                                                     const std::vector<int>& a,
                                                     const std::vector<int>& b) {
  if (a.size() != b.size()) return std::nullopt;
  const int k = static_cast<int>(a.size());
  // Re-index both subsets against the parent's colors so indices agree.
  auto induced = [&](const std::vector<int>& pts) {
    std::vector<int> colors(static_cast<size_t>(k) * k);
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) colors[static_cast<size_t>(i) * k + j] = space.color(pts[i], pts[j]);
    return make_space_unchecked(k, std::move(colors), space.num_colors(), std::nullopt);
  };
  const ColoredSpace sa = induced(a), sb = induced(b);
  std::optional<std::vector<int>> out;
  Matcher m(sa, sb, identity_colors(space.num_colors()));
  m.run({}, [&](const std::vector<int>& img) {
    std::vector<int> mapped(k);
    for (int i = 0; i < k; ++i) mapped[i] = b[img[i]];
    out = std::move(mapped);
    return true;
  });
  return out;
}

bool is_one_homogeneous(const ColoredSpace& space) {
  for (int x = 1; x < space.size(); ++x)
    if (!extend_partial(space, PartialIsometry{{{0, x}}})) return false;
  return true;
}

bool is_k_homogeneous(const ColoredSpace& space, const PermGroup& aut, int k) {
  if (k < 1) fail(ErrorKind::PreconditionFailed, "k must be at least 1");
  if (space.empty()) return true;
  std::vector<const Permutation*> all;
  all.reserve(aut.elements().size());
  for (const auto& e : aut.elements()) all.push_back(&e);
  std::vector<int> tuple;
  return tuple_levels_ok(space, all, tuple, std::min(k, space.size()));
}

bool is_k_homogeneous(const ColoredSpace& space, int k, std::int64_t cap) {
  return is_k_homogeneous(space, automorphisms(space, cap), k);
}

bool is_uniquely_k_homogeneous(const ColoredSpace& space, const PermGroup& aut, int k) {
  if (!is_k_homogeneous(space, aut, k)) return false;
  // Extensions of a one-point map are a coset of the point stabilizer.
  return space.empty() || aut.order() == space.size();
}

bool is_uniquely_k_homogeneous(const ColoredSpace& space, int k, std::int64_t cap) {
  return is_uniquely_k_homogeneous(space, automorphisms(space, cap), k);
}

bool is_ultrahomogeneous_full(const ColoredSpace& space, const PermGroup& aut) {
  if (space.empty()) return true;
  return is_k_homogeneous(space, aut, space.size());
}

bool is_ultrahomogeneous(const ColoredSpace& space, std::int64_t cap) {
  if (space.empty()) return true;
  const PermGroup aut = automorphisms(space, cap);
  if (is_isosceles_free(space) && is_k_homogeneous(space, aut, 1)) return true;
  return is_ultrahomogeneous_full(space, aut);
}

HomogeneityReport analyze_homogeneity(const ColoredSpace& space, const std::vector<int>& ks,
                                      bool ultra, std::int64_t cap) {
  HomogeneityReport r;
  const PermGroup aut = automorphisms(space, cap);
  r.aut_order = aut.order();
  for (int k : ks) {
    r.is_k_homogeneous[k] = is_k_homogeneous(space, aut, k);
    r.unique[k] = is_uniquely_k_homogeneous(space, aut, k);
  }
  if (ultra) {
    r.ultra = (!space.empty() && is_isosceles_free(space) && is_k_homogeneous(space, aut, 1)) ||
              is_ultrahomogeneous_full(space, aut);
  }
  return r;
}

EvaluationFlags evaluation_bijectivity(const ColoredSpace& space, const PermGroup& aut, int a) {
  const int n = space.size();
  if (a < 0 || a >= n) fail(ErrorKind::PreconditionFailed, "point out of range");
  EvaluationFlags f;
  std::vector<int> hits(space.num_colors(), 0);
  for (int x = 0; x < n; ++x) ++hits[space.color(a, x)];
  f.d_injective = std::all_of(hits.begin(), hits.end(), [](int h) { return h <= 1; });
  f.d_surjective = std::all_of(hits.begin(), hits.end(), [](int h) { return h >= 1; });
  std::vector<int> images(n, 0);
  for (const auto& g : aut.elements()) ++images[g(a)];
  f.e_injective = std::all_of(images.begin(), images.end(), [](int h) { return h <= 1; });
  f.e_surjective = std::all_of(images.begin(), images.end(), [](int h) { return h >= 1; });
  return f;
}

EvaluationFlags evaluation_bijectivity(const ColoredSpace& space, int a) {
  return evaluation_bijectivity(space, automorphisms(space), a);
}

const Permutation& ExtensionOperator::apply(const Permutation& f) const {
  for (size_t i = 0; i < domain.size(); ++i)
    if (domain[i] == f) return image[i];
  fail(ErrorKind::PreconditionFailed, "permutation is not an automorphism of the domain");
}

ExtensionOperator extension_operator(const ColoredSpace& x, const ColoredSpace& y,
                                     const std::vector<int>& e) {
  const int nx = x.size(), ny = y.size();
  if (nx == 0) fail(ErrorKind::EmptySpace, "extension operator needs a nonempty domain");
  if (!is_isosceles_free(x)) fail(ErrorKind::PreconditionFailed, "X is not isosceles-free");
  if (!is_isosceles_free(y)) fail(ErrorKind::PreconditionFailed, "Y is not isosceles-free");
  if (static_cast<int>(e.size()) != nx)
    fail(ErrorKind::PreconditionFailed, "e must be total on X");
  std::vector<char> hit(ny, 0);
  for (int v : e) {
    if (v < 0 || v >= ny || hit[v]) fail(ErrorKind::PreconditionFailed, "e is not injective");
    hit[v] = 1;
  }
  const bool by_value = x.has_palette() && y.has_palette();
  for (int i = 0; i < nx; ++i)
    for (int j = 0; j < nx; ++j) {
      const bool same = by_value ? close_enough(x.distance(i, j), y.distance(e[i], e[j]))
                                 : x.color(i, j) == y.color(e[i], e[j]);
      if (!same) fail(ErrorKind::PreconditionFailed, "e does not preserve distances");
    }

  const PermGroup aut_x = automorphisms(x);
  const PermGroup aut_y = automorphisms(y);
  const int base = e[0];
  // E_{e(a)}^{-1}: the automorphism of Y sending e(a) to a given point.
  std::vector<const Permutation*> sending(ny, nullptr);
  for (const auto& g : aut_y.elements()) sending[g(base)] = &g;
  if (std::find(sending.begin(), sending.end(), nullptr) != sending.end())
    fail(ErrorKind::PreconditionFailed, "Y is not homogeneous");

  ExtensionOperator op;
  op.domain = aut_x.elements();
  for (const auto& f : op.domain) {
    const Permutation& g = *sending[e[f(0)]];
    for (int i = 0; i < nx; ++i)
      if (g(e[i]) != e[f(i)])
        fail(ErrorKind::InternalInvariantViolation, "e_*(f) does not extend e f e^-1");
    op.image.push_back(g);
  }
  for (size_t i = 0; i < op.domain.size(); ++i)
    for (size_t j = 0; j < op.domain.size(); ++j)
      if (op.apply(op.domain[i] * op.domain[j]) != op.image[i] * op.image[j])
        fail(ErrorKind::InternalInvariantViolation, "e_* is not a homomorphism");
  for (size_t i = 0; i < op.image.size(); ++i)
    for (size_t j = i + 1; j < op.image.size(); ++j)
      if (op.image[i] == op.image[j])
        fail(ErrorKind::InternalInvariantViolation, "e_* is not injective");
  return op;
}

}  // namespace homlab
