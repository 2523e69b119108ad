#include "homlab/structure.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <string>

#include "homlab/constructions.hpp"
#include "homlab/error.hpp"
#include "homlab/homogeneity.hpp"

namespace homlab {

namespace {

int find_root(std::vector<int>& parent, int x) {
  while (parent[x] != x) x = parent[x] = parent[parent[x]];
  return x;
}

void unite(std::vector<int>& parent, int a, int b) {
  a = find_root(parent, a);
  b = find_root(parent, b);
  if (a != b) parent[std::max(a, b)] = std::min(a, b);
}

std::vector<std::vector<int>> blocks_of(std::vector<int>& parent) {
  const int n = static_cast<int>(parent.size());
  std::map<int, std::vector<int>> by_root;
  for (int x = 0; x < n; ++x) by_root[find_root(parent, x)].push_back(x);
  std::vector<std::vector<int>> out;
  for (auto& [root, block] : by_root) out.push_back(std::move(block));
  return out;
}

void require_one_homogeneous(const ColoredSpace& space) {
  if (!is_one_homogeneous(space)) fail(ErrorKind::NotHomogeneous, "space is not 1-homogeneous");
}

// Color multiplicities of one row.
std::vector<int> row_counts(const ColoredSpace& space, int x) {
  std::vector<int> cnt(space.num_colors(), 0);
  for (int c : space.row(x)) ++cnt[c];
  return cnt;
}

bool close_rel(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

}  // namespace

std::vector<int> Decomposition::block_of(int n) const {
  std::vector<int> out(n, -1);
  for (size_t b = 0; b < blocks.size(); ++b)
    for (int x : blocks[b]) out[x] = static_cast<int>(b);
  return out;
}

bool is_isosceles_free(const ColoredSpace& space) {
  std::vector<char> seen(space.num_colors());
  for (int x = 0; x < space.size(); ++x) {
    std::fill(seen.begin(), seen.end(), 0);
    for (int c : space.row(x)) {
      if (seen[c]) return false;
      seen[c] = 1;
    }
  }
  return true;
}

std::vector<int> singleton_distances(const ColoredSpace& space) {
  require_one_homogeneous(space);
  std::vector<int> out;
  if (space.empty()) return {0};
  const std::vector<int> cnt = row_counts(space, 0);
  for (int x = 1; x < space.size(); ++x)
    if (row_counts(space, x) != cnt)
      fail(ErrorKind::InternalInvariantViolation, "rows of a 1-homogeneous space differ");
  for (int c = 0; c < space.num_colors(); ++c)
    if (cnt[c] == 1) out.push_back(c);
  return out;
}

Decomposition isosceles_free_components(const ColoredSpace& space) {
  if (!space.empty() && !is_k_homogeneous(space, 2))
    fail(ErrorKind::NotHomogeneous, "space is not 2-homogeneous");
  const int n = space.size();
  Decomposition d;
  d.kind = DecompositionKind::IsoscelesFree;
  if (n == 0) return d;
  const std::vector<int> s = singleton_distances(space);
  std::vector<char> in_s(space.num_colors(), 0);
  for (int c : s) in_s[c] = 1;
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  for (int x = 0; x < n; ++x)
    for (int y = x + 1; y < n; ++y)
      if (in_s[space.color(x, y)]) unite(parent, x, y);
  d.blocks = blocks_of(parent);

  for (const auto& b : d.blocks) {
    for (int x : b)
      for (int y : b)
        if (!in_s[space.color(x, y)])
          fail(ErrorKind::InternalInvariantViolation, "singleton relation is not transitive");
    if (!is_isosceles_free(subspace(space, b)))
      fail(ErrorKind::InternalInvariantViolation, "component is not isosceles-free");
    if (!find_subset_isometry(space, d.blocks[0], b))
      fail(ErrorKind::InternalInvariantViolation, "components are not isometric");
  }
  return d;
}

Decomposition isosceles_generated_components(const ColoredSpace& space) {
  require_one_homogeneous(space);
  const int n = space.size();
  Decomposition d;
  d.kind = DecompositionKind::IsoscelesGenerated;
  if (n == 0) return d;
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  for (int x = 0; x < n; ++x) {
    const std::vector<int> cnt = row_counts(space, x);
    for (int y = 0; y < n; ++y)
      if (cnt[space.color(x, y)] > 1) unite(parent, x, y);
  }
  d.blocks = blocks_of(parent);

  const std::vector<int> block = d.block_of(n);
  const PermGroup aut = automorphisms(space);
  for (const auto& g : aut.generators()) {
    for (const auto& b : d.blocks) {
      const int target = block[g(b[0])];
      for (int x : b)
        if (block[g(x)] != target)
          fail(ErrorKind::InternalInvariantViolation, "components not invariant under Aut");
    }
  }
  return d;
}

PermGroup aut_star(const ColoredSpace& space, const PermGroup& aut, const Decomposition& d) {
  const std::vector<int> block = d.block_of(space.size());
  PermGroup star = filter_subgroup(aut, [&](const Permutation& p) {
    for (int x = 0; x < space.size(); ++x)
      if (block[p(x)] != block[x]) return false;
    return true;
  });
  if (!is_normal_subgroup(star, aut))
    fail(ErrorKind::InternalInvariantViolation, "Aut_* is not normal in Aut");
  return star;
}

PermGroup aut_star(const ColoredSpace& space, const Decomposition& d) {
  return aut_star(space, automorphisms(space), d);
}

ColoredSpace quotient_space(const ColoredSpace& space, const Decomposition& d, double a) {
  if (!(a > 0)) fail(ErrorKind::PreconditionFailed, "a must be positive");
  if (!is_one_homogeneous(space))
    fail(ErrorKind::PreconditionFailed, "space is not 1-homogeneous");
  const Decomposition expect = isosceles_generated_components(space);
  if (d.blocks != expect.blocks)
    fail(ErrorKind::PreconditionFailed, "decomposition is not the isosceles-generated one");
  const int n = space.size();
  const int m = static_cast<int>(d.blocks.size());
  if (n == 0) return new_space({}, std::vector<double>{0.0});
  const std::vector<int> block = d.block_of(n);

  // Classes of colors: a point sees r and q inside one other component.
  std::vector<int> cls(space.num_colors());
  std::iota(cls.begin(), cls.end(), 0);
  for (int x = 0; x < n; ++x) {
    std::vector<int> first(m, -1);
    for (int y = 0; y < n; ++y) {
      const int c = space.color(x, y);
      const int b = block[y];
      if (b == block[x]) {
        unite(cls, c, 0);
      } else if (first[b] < 0) {
        first[b] = c;
      } else {
        unite(cls, first[b], c);
      }
    }
  }
  ColorMatrix qm(m, std::vector<int>(m, 0));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      if (i == j) continue;
      const int c = find_root(cls, space.color(d.blocks[i][0], d.blocks[j][0]));
      for (int x : d.blocks[i])
        for (int y : d.blocks[j])
          if (find_root(cls, space.color(x, y)) != c)
            fail(ErrorKind::InternalInvariantViolation, "quotient distance not well defined");
      if (c == 0) fail(ErrorKind::InternalInvariantViolation, "distinct components at class 0");
      qm[i][j] = c;
    }
  ColoredSpace q = realize_metric(new_space(qm), a);

  if (!is_isosceles_free(q) || !is_one_homogeneous(q))
    fail(ErrorKind::InternalInvariantViolation, "quotient is not homogeneous isosceles-free");
  const PermGroup aut = automorphisms(space);
  const PermGroup star = aut_star(space, aut, d);
  if (aut.order() != star.order() * automorphisms(q).order())
    fail(ErrorKind::InternalInvariantViolation, "|Aut| != |Aut_*| * |Aut(quotient)|");
  return q;
}

bool is_boolean_space(const ColoredSpace& space) {
  if (space.empty() || !is_one_homogeneous(space)) return false;
  const PermGroup aut = automorphisms(space);
  const bool boolean = is_boolean(aut);
  if (boolean != is_abelian(aut))
    fail(ErrorKind::InternalInvariantViolation, "abelian and Boolean disagree on Aut");
  return boolean;
}

NormTable to_norm_table(const ColoredSpace& input, int base) {
  const int n = input.size();
  if (n == 0 || !is_isosceles_free(input) || !is_one_homogeneous(input))
    fail(ErrorKind::PreconditionFailed, "space is not nonempty homogeneous isosceles-free");
  if ((n & (n - 1)) != 0) fail(ErrorKind::NotPowerOfTwo, std::to_string(n) + " points");
  if (base < 0 || base >= n) fail(ErrorKind::PreconditionFailed, "base point out of range");
  const ColoredSpace space = with_palette(input);

  // Rows are injective, so a point is named by its color from the base.
  std::vector<int> at_color(space.num_colors(), -1);
  for (int z = 0; z < n; ++z) at_color[space.color(base, z)] = z;
  auto add = [&](int x, int y) { return at_color[space.color(x, y)]; };
  for (int x = 0; x < n; ++x) {
    if (add(x, x) != base || add(base, x) != x)
      fail(ErrorKind::InternalInvariantViolation, "triangle completion is not a Boolean group");
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z)
        if (add(add(x, y), z) != add(x, add(y, z)))
          fail(ErrorKind::InternalInvariantViolation, "triangle completion is not associative");
  }

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int x, int y) {
    return space.color(base, x) < space.color(base, y);
  });
  std::vector<int> span{base}, basis;
  std::vector<char> in_span(n, 0);
  in_span[base] = 1;
  for (int x : order) {
    if (in_span[x]) continue;
    basis.push_back(x);
    const size_t k = span.size();
    for (size_t i = 0; i < k; ++i) {
      const int z = add(span[i], x);
      span.push_back(z);
      in_span[z] = 1;
    }
  }
  NormTable t;
  t.m = static_cast<int>(basis.size());
  t.norm.assign(n, 0.0);
  std::vector<int> point_of(n, base);
  for (int mask = 1; mask < n; ++mask) {
    const int low = std::countr_zero(static_cast<unsigned>(mask));
    point_of[mask] = add(point_of[mask & (mask - 1)], basis[low]);
    t.norm[mask] = space.distance(base, point_of[mask]);
  }

  for (int s = 0; s < n; ++s)
    for (int r = 0; r < n; ++r)
      if (space.distance(point_of[s], point_of[r]) != t.norm[s ^ r])
        fail(ErrorKind::InternalInvariantViolation, "norm table does not reproduce the space");
  if (canonical_form(boolean_space(t)) != canonical_form(space))
    fail(ErrorKind::InternalInvariantViolation, "norm table round trip changed the space");
  return t;
}

NormProperties norm_properties(const NormTable& t) {
  if (t.m < 0 || static_cast<size_t>(1) << t.m != t.norm.size() || t.norm[0] != 0)
    fail(ErrorKind::PreconditionFailed, "invalid norm table");
  if (t.m > kMaxBasisSearch)
    fail(ErrorKind::BasisSearchTooLarge, "m = " + std::to_string(t.m));
  const int m = t.m;
  const int size = 1 << m;
  NormProperties out;
  std::vector<int> b;
  std::vector<double> nb(size);

  auto check = [&] {
    ++out.bases_checked;
    for (int s = 0; s < size; ++s) {
      int v = 0;
      for (int i = 0; i < m; ++i)
        if (s >> i & 1) v ^= b[i];
      nb[s] = t.norm[v];
    }
    if (!out.additive) {
      bool ok = true;
      for (int s = 0; s < size && ok; ++s) {
        double sum = 0;
        for (int i = 0; i < m; ++i)
          if (s >> i & 1) sum += nb[1 << i];
        ok = close_rel(nb[s], sum, 1e-9);
      }
      if (ok) {
        out.additive = true;
        out.additive_basis = b;
        out.weights.clear();
        for (int i = 0; i < m; ++i) out.weights.push_back(nb[1 << i]);
      }
    }
    if (!out.monotone) {
      bool ok = true;
      for (int s = 0; s < size && ok; ++s)
        for (int i = 0; i < m && ok; ++i)
          if (!(s >> i & 1)) ok = nb[s] <= nb[s | 1 << i];
      if (ok) {
        out.monotone = true;
        out.monotone_basis = b;
      }
    }
  };

  // Ordered bases, each new vector outside the span of the previous ones.
  std::vector<char> spanned(size, 0);
  std::function<void()> rec = [&] {
    if (static_cast<int>(b.size()) == m) {
      check();
      return;
    }
    std::vector<char> saved = spanned;
    std::vector<int> span_list;
    for (int v = 0; v < size; ++v)
      if (spanned[v] || v == 0) span_list.push_back(v);
    for (int v = 1; v < size; ++v) {
      if (spanned[v]) continue;
      for (int s : span_list) spanned[s ^ v] = 1;
      b.push_back(v);
      rec();
      b.pop_back();
      spanned = saved;
    }
  };
  spanned[0] = 1;
  rec();
  return out;
}

}  // namespace homlab
