// Subgroup classes of S_n (n <= 8) by a lattice walk: every subgroup H > 1 is
// <K, p> for a maximal subgroup K, so starting from the trivial group and
// adjoining one representative from each N(K)-orbit of double cosets K p K
// reaches every class. Permutations are packed 3 bits per point.

#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <mutex>
#include <numeric>
#include <set>

#include "homlab/error.hpp"
#include "homlab/permgroup.hpp"

namespace homlab {

namespace {

using Packed = std::uint32_t;

constexpr int kBits = 3;
constexpr Packed kMask = 7;
constexpr std::size_t kCodeSpace = std::size_t{1} << 24;

inline int at(Packed p, int i) { return static_cast<int>((p >> (kBits * i)) & kMask); }

struct Ctx {
  int n;
  Packed identity = 0;
  std::vector<Packed> all;           // every permutation of degree n
  std::vector<std::uint64_t> marks;  // bitset over codes, kept clear between uses
  std::vector<std::uint8_t> type_of;  // cycle-type index by code

  explicit Ctx(int degree) : n(degree), marks(kCodeSpace / 64, 0) {
    std::vector<int> v(n);
    std::iota(v.begin(), v.end(), 0);
    identity = pack(v);
    do {
      all.push_back(pack(v));
    } while (std::next_permutation(v.begin(), v.end()));
    type_of.assign(kCodeSpace, 0);
    std::map<std::vector<int>, int> ids;
    for (Packed p : all) {
      auto lens = cycle_lengths(p);
      auto it = ids.emplace(lens, static_cast<int>(ids.size())).first;
      type_of[p] = static_cast<std::uint8_t>(it->second);
    }
  }

  std::vector<int> cycle_lengths(Packed p) const {
    std::array<char, 8> seen{};
    std::vector<int> lens;
    for (int i = 0; i < n; ++i) {
      if (seen[i]) continue;
      int len = 0;
      for (int x = i; !seen[x]; x = at(p, x)) {
        seen[x] = 1;
        ++len;
      }
      lens.push_back(len);
    }
    std::sort(lens.begin(), lens.end());
    return lens;
  }

  Packed pack(const std::vector<int>& v) const {
    Packed p = 0;
    for (int i = 0; i < n; ++i) p |= static_cast<Packed>(v[i]) << (kBits * i);
    return p;
  }
  Packed mul(Packed p, Packed q) const {  // p after q
    Packed r = 0;
    for (int i = 0; i < n; ++i) r |= static_cast<Packed>(at(p, at(q, i))) << (kBits * i);
    return r;
  }
  Packed inv(Packed p) const {
    Packed r = 0;
    for (int i = 0; i < n; ++i) r |= static_cast<Packed>(i) << (kBits * at(p, i));
    return r;
  }
  bool test(Packed c) const { return (marks[c >> 6] >> (c & 63)) & 1; }
  void set(Packed c) { marks[c >> 6] |= std::uint64_t{1} << (c & 63); }
  void reset(Packed c) { marks[c >> 6] &= ~(std::uint64_t{1} << (c & 63)); }

  // Closure of gens, unsorted.
  std::vector<Packed> close(const std::vector<Packed>& gens) {
    return extend({identity}, gens);
  }

  // Elements of <base, gens> where base_elems is the group generated by a
  // prefix of gens: right cosets base * y are added whole.
  std::vector<Packed> extend(const std::vector<Packed>& base_elems, const std::vector<Packed>& gens) {
    std::vector<Packed> elems = base_elems;
    for (Packed e : elems) set(e);
    std::vector<Packed> reps{identity};
    for (size_t r = 0; r < reps.size(); ++r)
      for (Packed g : gens) {
        const Packed y = mul(reps[r], g);
        if (test(y)) continue;
        reps.push_back(y);
        for (Packed e : base_elems) {
          const Packed z = mul(e, y);
          set(z);
          elems.push_back(z);
        }
      }
    for (Packed e : elems) reset(e);
    return elems;
  }
};

struct Sub {
  std::vector<Packed> gens;
  std::vector<Packed> elems;  // sorted
  std::vector<int> key;       // order, orbit lengths, cycle-type histogram
  bool contains(Packed p) const { return std::binary_search(elems.begin(), elems.end(), p); }
};

int cycle_code(const Ctx& c, Packed p) { return c.type_of[p]; }

std::vector<int> invariants(const Ctx& c, const Sub& s) {
  std::vector<int> key{static_cast<int>(s.elems.size())};
  std::vector<int> parent(c.n);
  std::iota(parent.begin(), parent.end(), 0);
  auto root = [&](int x) {
    while (parent[x] != x) x = parent[x];
    return x;
  };
  for (Packed g : s.gens)
    for (int i = 0; i < c.n; ++i) {
      int a = root(i), b = root(at(g, i));
      if (a != b) parent[a] = b;
    }
  std::vector<int> sizes(c.n, 0);
  for (int i = 0; i < c.n; ++i) ++sizes[root(i)];
  std::vector<int> orbit_lens;
  for (int v : sizes)
    if (v) orbit_lens.push_back(v);
  std::sort(orbit_lens.begin(), orbit_lens.end());
  key.insert(key.end(), orbit_lens.begin(), orbit_lens.end());
  key.push_back(-1);
  std::vector<int> hist(32, 0);
  for (Packed e : s.elems) ++hist[cycle_code(c, e)];
  key.insert(key.end(), hist.begin(), hist.end());
  return key;
}

// True if x * h * x^-1 lies in k for some x, for groups of equal order.
bool conjugate_into(const Ctx& c, const Sub& h, const Sub& k) {
  if (h.gens.empty()) return true;
  std::map<int, std::vector<Packed>> by_type;
  for (Packed e : k.elems) by_type[cycle_code(c, e)].push_back(e);
  size_t best = SIZE_MAX;
  Packed anchor = 0;
  for (Packed g : h.gens) {
    auto it = by_type.find(cycle_code(c, g));
    if (it == by_type.end()) return false;
    if (it->second.size() < best) {
      best = it->second.size();
      anchor = g;
    }
  }
  // Cycles of the anchor, longest first.
  std::vector<std::vector<int>> ca;
  {
    std::array<char, 8> seen{};
    for (int i = 0; i < c.n; ++i) {
      if (seen[i]) continue;
      ca.emplace_back();
      for (int x = i; !seen[x]; x = at(anchor, x)) {
        seen[x] = 1;
        ca.back().push_back(x);
      }
    }
    std::sort(ca.begin(), ca.end(), [](auto& a, auto& b) { return a.size() > b.size(); });
  }
  for (Packed target : by_type[cycle_code(c, anchor)]) {
    std::vector<std::vector<int>> cb;
    std::array<char, 8> seen{};
    for (int i = 0; i < c.n; ++i) {
      if (seen[i]) continue;
      cb.emplace_back();
      for (int x = i; !seen[x]; x = at(target, x)) {
        seen[x] = 1;
        cb.back().push_back(x);
      }
    }
    std::vector<char> used(cb.size(), 0);
    std::vector<int> x(c.n, 0);
    std::function<bool(size_t)> rec = [&](size_t j) -> bool {
      if (j == ca.size()) {
        const Packed px = c.pack(x), pxi = c.inv(px);
        for (Packed g : h.gens)
          if (!k.contains(c.mul(c.mul(px, g), pxi))) return false;
        return true;
      }
      const size_t len = ca[j].size();
      for (size_t t = 0; t < cb.size(); ++t) {
        if (used[t] || cb[t].size() != len) continue;
        used[t] = 1;
        for (size_t shift = 0; shift < len; ++shift) {
          for (size_t q = 0; q < len; ++q) x[ca[j][q]] = cb[t][(q + shift) % len];
          if (rec(j + 1)) return true;
        }
        used[t] = 0;
      }
      return false;
    };
    if (rec(0)) return true;
  }
  return false;
}

// Group order by a deterministic Schreier-Sims run with base 0..n-1.
std::int64_t group_order(const Ctx& c, const std::vector<Packed>& gens) {
  const int n = c.n;
  constexpr Packed kNone = ~Packed{0};
  std::vector<std::vector<Packed>> strong(n + 1);
  std::vector<std::array<Packed, 8>> trans(n);
  auto first_moved = [&](Packed g) {
    for (int i = 0; i < n; ++i)
      if (at(g, i) != i) return i;
    return n;
  };
  auto rebuild = [&](int level) {
    trans[level].fill(kNone);
    trans[level][level] = c.identity;
    std::array<int, 8> orbit{};
    int len = 0;
    orbit[len++] = level;
    for (int q = 0; q < len; ++q)
      for (Packed s : strong[level]) {
        const int k = at(s, orbit[q]);
        if (trans[level][k] == kNone) {
          trans[level][k] = c.mul(s, trans[level][orbit[q]]);
          orbit[len++] = k;
        }
      }
  };
  // Returns the level where sifting stopped (n when g sifts to the identity).
  auto sift = [&](Packed& g, int from) {
    for (int l = from; l < n; ++l) {
      const Packed u = trans[l][at(g, l)];
      if (u == kNone) return l;
      g = c.mul(c.inv(u), g);
    }
    return n;
  };
  for (Packed g : gens) {
    const int m = first_moved(g);
    for (int l = 0; l <= m && l < n; ++l) strong[l].push_back(g);
  }
  for (int l = 0; l < n; ++l) rebuild(l);
  int level = n - 1;
  while (level >= 0) {
    bool clean = true;
    for (int j = 0; j < n && clean; ++j) {
      if (trans[level][j] == kNone) continue;
      for (size_t si = 0; si < strong[level].size() && clean; ++si) {
        const Packed s = strong[level][si];
        Packed h = c.mul(c.inv(trans[level][at(s, j)]), c.mul(s, trans[level][j]));
        const int stop = sift(h, level + 1);
        if (stop == n) continue;
        for (int l = level + 1; l <= stop; ++l) {
          strong[l].push_back(h);
          rebuild(l);
        }
        level = stop;
        clean = false;
      }
    }
    if (clean) --level;
  }
  std::int64_t order = 1;
  for (int l = 0; l < n; ++l) {
    int len = 0;
    for (int j = 0; j < n; ++j) len += trans[l][j] != kNone;
    order *= len;
  }
  return order;
}

std::vector<Sub> walk_lattice(int n) {
  Ctx c(n);
  std::vector<Sub> classes;
  std::map<std::vector<int>, std::vector<int>> buckets;

  auto add = [&](Sub s) {
    s.key = invariants(c, s);
    auto& bucket = buckets[s.key];
    for (int idx : bucket)
      if (conjugate_into(c, s, classes[idx])) return;
    bucket.push_back(static_cast<int>(classes.size()));
    std::sort(s.elems.begin(), s.elems.end());
    classes.push_back(std::move(s));
  };
  add(Sub{{}, {c.identity}, {}});

  std::vector<std::uint64_t> visited(kCodeSpace / 64);
  std::set<std::int64_t> seen_orders;
  for (size_t head = 0; head < classes.size(); ++head) {
    const Sub g = classes[head];
    if (static_cast<std::size_t>(g.elems.size()) == c.all.size()) continue;
    // Normalizer generators.
    std::vector<Packed> norm_elems;
    for (Packed x : c.all) {
      const Packed xi = c.inv(x);
      bool ok = true;
      for (Packed s : g.gens)
        if (!g.contains(c.mul(c.mul(x, s), xi))) {
          ok = false;
          break;
        }
      if (ok) norm_elems.push_back(x);
    }
    std::vector<Packed> norm_gens;
    {
      std::vector<Packed> sub{c.identity};
      for (Packed x : norm_elems) {
        if (std::binary_search(sub.begin(), sub.end(), x)) continue;
        norm_gens.push_back(x);
        sub = c.close(norm_gens);
        std::sort(sub.begin(), sub.end());
        if (sub.size() == norm_elems.size()) break;
      }
    }
    std::vector<std::pair<Packed, Packed>> conj;  // (nu, nu^-1)
    for (Packed v : norm_gens) conj.emplace_back(v, c.inv(v));

    std::fill(visited.begin(), visited.end(), 0);
    auto seen = [&](Packed p) { return (visited[p >> 6] >> (p & 63)) & 1; };
    auto mark = [&](Packed p) { visited[p >> 6] |= std::uint64_t{1} << (p & 63); };
    for (Packed e : g.elems) mark(e);
    std::vector<Packed> queue;
    for (Packed start : c.all) {
      if (seen(start)) continue;
      mark(start);
      queue.assign(1, start);
      for (size_t q = 0; q < queue.size(); ++q) {
        const Packed p = queue[q];
        auto push = [&](Packed y) {
          if (!seen(y)) {
            mark(y);
            queue.push_back(y);
          }
        };
        for (Packed s : g.gens) {
          push(c.mul(s, p));
          push(c.mul(p, s));
        }
        for (auto [v, vi] : conj) push(c.mul(c.mul(v, p), vi));
      }
      std::vector<Packed> gens = g.gens;
      gens.push_back(start);
      // S_n and A_n are the only subgroups of their orders.
      const std::int64_t order = group_order(c, gens);
      const auto full = static_cast<std::int64_t>(c.all.size());
      if ((order == full || (n > 1 && 2 * order == full)) && seen_orders.count(order)) continue;
      seen_orders.insert(order);
      Sub h;
      h.elems = c.extend(g.elems, gens);
      h.gens = std::move(gens);
      add(std::move(h));
    }
  }
  return classes;
}

PermGroup to_group(int n, const Sub& s) {
  std::vector<Permutation> gens;
  for (Packed g : s.gens) {
    std::vector<Permutation::Point> im(n);
    for (int i = 0; i < n; ++i) im[i] = static_cast<Permutation::Point>(at(g, i));
    gens.emplace_back(std::move(im));
  }
  return close(n, gens, static_cast<std::int64_t>(s.elems.size()) + 1);
}

const std::vector<Sub>& lattice(int n) {
  static std::mutex mu;
  static std::map<int, std::vector<Sub>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, walk_lattice(n)).first;
  return it->second;
}

}  // namespace

std::vector<PermGroup> enumerate_subgroup_classes(int n) {
  if (n < 1 || n > kMaxTransitiveDegree)
    fail(ErrorKind::DegreeTooLarge, "subgroup lattice needs 1 <= n <= 8");
  std::vector<PermGroup> out;
  for (const Sub& s : lattice(n)) out.push_back(to_group(n, s));
  return out;
}

std::vector<PermGroup> enumerate_transitive_groups(int n, std::int64_t order_cap) {
  if (n < 1 || n > kMaxTransitiveDegree)
    fail(ErrorKind::DegreeTooLarge, "transitive groups need 1 <= n <= 8");
  std::vector<const Sub*> picked;
  for (const Sub& s : lattice(n)) {
    // key = order, orbit lengths..., -1, ...; transitive iff one orbit of length n.
    if (s.key[1] == n && s.key[2] == -1) picked.push_back(&s);
  }
  std::stable_sort(picked.begin(), picked.end(),
                   [](const Sub* a, const Sub* b) { return a->key < b->key; });
  std::vector<PermGroup> out;
  for (const Sub* s : picked) {
    if (static_cast<std::int64_t>(s->elems.size()) > order_cap)
      fail(ErrorKind::OrderCapExceeded, "transitive group of order " +
                                            std::to_string(s->elems.size()) + " exceeds cap");
    out.push_back(to_group(n, *s));
  }
  return out;
}

std::vector<PermGroup> minimal_transitive_groups(const std::vector<PermGroup>& transitive) {
  std::vector<PermGroup> out;
  for (const auto& t : transitive) {
    bool minimal = true;
    for (const auto& s : transitive) {
      if (s.order() >= t.order() || t.order() % s.order() != 0) continue;
      if (!conjugating_element(s, t).empty()) {
        minimal = false;
        break;
      }
    }
    if (minimal) out.push_back(t);
  }
  return out;
}

}  // namespace homlab
