#pragma once

// Brute-force reference implementations used as test oracles. Everything
// here is deliberately naive: full permutation scans, explicit closures and
// direct pattern comparisons, sharing no code with the library searches.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <vector>

#include "homlab/error.hpp"
#include "homlab/space.hpp"

namespace oracle {

using Perm = std::vector<int>;

inline std::vector<Perm> automorphisms(const homlab::ColoredSpace& s) {
  const int n = s.size();
  Perm p(n);
  std::iota(p.begin(), p.end(), 0);
  std::vector<Perm> out;
  do {
    bool ok = true;
    for (int i = 0; i < n && ok; ++i)
      for (int j = 0; j < n && ok; ++j) ok = s.color(p[i], p[j]) == s.color(i, j);
    if (ok) out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

inline int distinct_distances(const homlab::ColoredSpace& s) {
  std::set<int> c;
  for (int i = 0; i < s.size(); ++i)
    for (int j = 0; j < s.size(); ++j) c.insert(s.color(i, j));
  return static_cast<int>(c.size());
}

inline void tuples(int n, int len, Perm& cur, std::vector<Perm>& out) {
  if (static_cast<int>(cur.size()) == len) {
    out.push_back(cur);
    return;
  }
  for (int v = 0; v < n; ++v)
    if (std::find(cur.begin(), cur.end(), v) == cur.end()) {
      cur.push_back(v);
      tuples(n, len, cur, out);
      cur.pop_back();
    }
}

// Number of automorphisms extending a -> b (0 if a, b are not isometric).
inline int extensions(const homlab::ColoredSpace& s, const std::vector<Perm>& aut, const Perm& a,
                      const Perm& b) {
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < a.size(); ++j)
      if (s.color(a[i], a[j]) != s.color(b[i], b[j])) return -1;
  int count = 0;
  for (const auto& g : aut) {
    bool ok = true;
    for (size_t i = 0; i < a.size() && ok; ++i) ok = g[a[i]] == b[i];
    count += ok;
  }
  return count;
}

// Every isometry between subsets of size <= k extends; unique additionally
// requires exactly one extension for nonempty domains.
inline bool k_homogeneous(const homlab::ColoredSpace& s, int k, bool unique = false) {
  const auto aut = oracle::automorphisms(s);
  for (int len = 1; len <= std::min(k, s.size()); ++len) {
    std::vector<Perm> all;
    Perm cur;
    tuples(s.size(), len, cur, all);
    for (const auto& a : all)
      for (const auto& b : all) {
        const int e = extensions(s, aut, a, b);
        if (e == 0 || (unique && e > 1)) return false;
      }
  }
  return true;
}

inline Perm compose(const Perm& p, const Perm& q) {
  Perm r(q.size());
  for (size_t i = 0; i < q.size(); ++i) r[i] = p[q[i]];
  return r;
}

inline std::set<Perm> closure(int n, const std::vector<Perm>& gens) {
  Perm id(n);
  std::iota(id.begin(), id.end(), 0);
  std::set<Perm> seen{id};
  std::vector<Perm> frontier{id};
  while (!frontier.empty()) {
    std::vector<Perm> next;
    for (const auto& x : frontier)
      for (const auto& g : gens) {
        Perm y = compose(g, x);
        if (seen.insert(y).second) next.push_back(y);
      }
    frontier.swap(next);
  }
  return seen;
}

// Orbits on unordered pairs {i < j} by explicit orbit closure.
inline int pair_orbit_count(int n, const std::vector<Perm>& gens) {
  std::set<std::pair<int, int>> seen;
  int orbits = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      if (seen.count({i, j})) continue;
      ++orbits;
      std::vector<std::pair<int, int>> stack{{i, j}};
      seen.insert({i, j});
      while (!stack.empty()) {
        auto [a, b] = stack.back();
        stack.pop_back();
        for (const auto& g : gens) {
          std::pair<int, int> e{std::min(g[a], g[b]), std::max(g[a], g[b])};
          if (seen.insert(e).second) stack.push_back(e);
        }
      }
    }
  return orbits;
}

// Point relabeling and color relabeling both free (color 0 fixed).
inline bool isomorphic(const homlab::ColoredSpace& a, const homlab::ColoredSpace& b) {
  if (a.size() != b.size() || a.num_colors() != b.num_colors()) return false;
  const int n = a.size();
  Perm p(n);
  std::iota(p.begin(), p.end(), 0);
  do {
    std::map<int, int> fwd, back;
    bool ok = true;
    for (int i = 0; i < n && ok; ++i)
      for (int j = 0; j < n && ok; ++j) {
        const int x = a.color(i, j), y = b.color(p[i], p[j]);
        auto [f, fi] = fwd.emplace(x, y);
        auto [g, gi] = back.emplace(y, x);
        ok = f->second == y && g->second == x;
      }
    if (ok) return true;
  } while (std::next_permutation(p.begin(), p.end()));
  return false;
}

inline homlab::ColoredSpace random_coloring(int n, int colors, std::mt19937_64& rng) {
  homlab::ColorMatrix m(n, std::vector<int>(n, 0));
  std::uniform_int_distribution<int> pick(1, colors);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) m[i][j] = m[j][i] = pick(rng);
  return homlab::new_space(m);
}

inline Perm random_perm(int n, std::mt19937_64& rng) {
  Perm p(n);
  std::iota(p.begin(), p.end(), 0);
  std::shuffle(p.begin(), p.end(), rng);
  return p;
}

// All subgroups of S_n generated by at most two elements, as element sets.
inline std::set<std::set<Perm>> two_generated_subgroups(int n) {
  std::vector<Perm> all;
  Perm p(n);
  std::iota(p.begin(), p.end(), 0);
  do all.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  std::set<std::set<Perm>> out;
  for (size_t i = 0; i < all.size(); ++i)
    for (size_t j = i; j < all.size(); ++j) out.insert(closure(n, {all[i], all[j]}));
  return out;
}

inline bool transitive(int n, const std::set<Perm>& g) {
  std::set<int> orbit;
  for (const auto& x : g) orbit.insert(x[0]);
  return static_cast<int>(orbit.size()) == n;
}

// Number of conjugacy classes among the given subgroups of S_n.
inline int conjugacy_classes(int n, const std::vector<std::set<Perm>>& groups) {
  std::vector<Perm> all;
  Perm p(n);
  std::iota(p.begin(), p.end(), 0);
  do all.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  std::set<std::set<Perm>> seen;
  int classes = 0;
  for (const auto& g : groups) {
    if (seen.count(g)) continue;
    ++classes;
    for (const auto& x : all) {
      Perm xi(n);
      for (int i = 0; i < n; ++i) xi[x[i]] = i;
      std::set<Perm> c;
      for (const auto& h : g) c.insert(compose(compose(x, h), xi));
      seen.insert(c);
    }
  }
  return classes;
}

}  // namespace oracle
