#include "homlab/permgroup.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <map>
#include <numeric>
#include <string>

#include "homlab/error.hpp"

namespace homlab {

Permutation Permutation::identity(int n) {
  std::vector<Point> im(n);
  std::iota(im.begin(), im.end(), Point{0});
  return Permutation(std::move(im));
}

Permutation Permutation::from_images(std::span<const int> images) {
  const int n = static_cast<int>(images.size());
  std::vector<char> seen(n, 0);
  std::vector<Point> im(n);
  for (int i = 0; i < n; ++i) {
    const int y = images[i];
    if (y < 0 || y >= n || seen[y])
      fail(ErrorKind::PreconditionFailed, "not a permutation at position " + std::to_string(i));
    seen[y] = 1;
    im[i] = static_cast<Point>(y);
  }
  return Permutation(std::move(im));
}

Permutation Permutation::inverse() const {
  std::vector<Point> im(images_.size());
  for (size_t i = 0; i < images_.size(); ++i) im[images_[i]] = static_cast<Point>(i);
  return Permutation(std::move(im));
}

bool Permutation::is_identity() const {
  for (size_t i = 0; i < images_.size(); ++i)
    if (images_[i] != i) return false;
  return true;
}

int Permutation::order() const {
  int result = 1;
  for (int len : cycle_type(*this)) result = std::lcm(result, len);
  return result;
}

Permutation operator*(const Permutation& p, const Permutation& q) {
  std::vector<Permutation::Point> im(q.images_.size());
  for (size_t i = 0; i < im.size(); ++i) im[i] = p.images_[q.images_[i]];
  return Permutation(std::move(im));
}

std::size_t PermutationHash::operator()(const Permutation& p) const {
  std::size_t h = 1469598103934665603ull;
  for (auto x : p.images()) {
    h ^= x;
    h *= 1099511628211ull;
  }
  return h;
}

std::int64_t default_group_cap() {
  if (const char* env = std::getenv("HOMLAB_AUT_CAP")) {
    char* end = nullptr;
    const long long v = std::strtoll(env, &end, 10);
    if (end != env && v > 0) return v;
  }
  return kDefaultGroupCap;
}

PermGroup close(int degree, const std::vector<Permutation>& generators, std::int64_t cap) {
  PermGroup g;
  g.n_ = degree;
  for (const auto& p : generators) {
    if (p.degree() != degree)
      fail(ErrorKind::DegreeMismatch, "generator of degree " + std::to_string(p.degree()) +
                                          " in a group of degree " + std::to_string(degree));
    if (!p.is_identity()) g.generators_.push_back(p);
  }
  auto id = Permutation::identity(degree);
  g.index_.insert(id);
  g.elements_.push_back(id);
  for (size_t head = 0; head < g.elements_.size(); ++head) {
    for (const auto& s : g.generators_) {
      Permutation next = g.elements_[head] * s;
      if (g.index_.insert(next).second) {
        if (static_cast<std::int64_t>(g.elements_.size()) >= cap)
          fail(ErrorKind::OrderCapExceeded, "group order exceeds cap " + std::to_string(cap));
        g.elements_.push_back(std::move(next));
      }
    }
  }
  return g;
}

PermGroup group_from_elements(int degree, std::vector<Permutation> elements,
                              std::vector<Permutation> generators) {
  PermGroup g;
  g.n_ = degree;
  auto id = Permutation::identity(degree);
  auto it = std::find(elements.begin(), elements.end(), id);
  if (it == elements.end())
    fail(ErrorKind::InternalInvariantViolation, "element list lacks the identity");
  std::iter_swap(elements.begin(), it);
  g.index_.insert(elements.begin(), elements.end());
  g.elements_ = std::move(elements);
  if (generators.empty()) generators = small_generating_set(degree, g.elements_);
  g.generators_ = std::move(generators);
  return g;
}

PermGroup trivial_group(int n) { return close(n, {}); }

PermGroup symmetric_group(int n) {
  std::vector<Permutation> gens;
  if (n >= 2) {
    std::vector<int> cyc(n), tr(n);
    std::iota(tr.begin(), tr.end(), 0);
    std::swap(tr[0], tr[1]);
    for (int i = 0; i < n; ++i) cyc[i] = (i + 1) % n;
    gens.push_back(Permutation::from_images(cyc));
    gens.push_back(Permutation::from_images(tr));
  }
  return close(n, gens);
}

PermGroup filter_subgroup(const PermGroup& g, const std::function<bool(const Permutation&)>& pred) {
  std::vector<Permutation> keep;
  for (const auto& e : g.elements())
    if (pred(e)) keep.push_back(e);
  return group_from_elements(g.degree(), std::move(keep));
}

std::vector<Permutation> small_generating_set(int degree, std::span<const Permutation> elements) {
  std::vector<Permutation> gens;
  PermGroup sub = trivial_group(degree);
  for (const auto& e : elements) {
    if (sub.contains(e)) continue;
    gens.push_back(e);
    sub = close(degree, gens, static_cast<std::int64_t>(elements.size()) + 1);
    if (sub.order() == static_cast<std::int64_t>(elements.size())) break;
  }
  return gens;
}

namespace {

int find_root(std::vector<int>& parent, int x) {
  while (parent[x] != x) x = parent[x] = parent[parent[x]];
  return x;
}

template <typename Key>
std::vector<std::vector<Key>> group_by_root(std::vector<int>& parent, const std::vector<Key>& keys) {
  std::map<int, int> slot;
  std::vector<std::vector<Key>> out;
  for (size_t i = 0; i < keys.size(); ++i) {
    const int r = find_root(parent, static_cast<int>(i));
    auto [it, fresh] = slot.emplace(r, static_cast<int>(out.size()));
    if (fresh) out.emplace_back();
    out[it->second].push_back(keys[i]);
  }
  return out;
}

}  // namespace

std::vector<std::vector<int>> point_orbits(const PermGroup& g) {
  const int n = g.degree();
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  for (const auto& s : g.generators())
    for (int x = 0; x < n; ++x) {
      int a = find_root(parent, x), b = find_root(parent, s(x));
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
  std::vector<int> keys(n);
  std::iota(keys.begin(), keys.end(), 0);
  return group_by_root(parent, keys);
}

std::vector<std::vector<std::pair<int, int>>> pair_orbitals(const PermGroup& g) {
  const int n = g.degree();
  std::vector<std::pair<int, int>> pairs;
  std::vector<int> index(static_cast<size_t>(n) * n, -1);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      index[static_cast<size_t>(i) * n + j] = index[static_cast<size_t>(j) * n + i] =
          static_cast<int>(pairs.size());
      pairs.emplace_back(i, j);
    }
  std::vector<int> parent(pairs.size());
  std::iota(parent.begin(), parent.end(), 0);
  for (const auto& s : g.generators())
    for (size_t k = 0; k < pairs.size(); ++k) {
      const int img = index[static_cast<size_t>(s(pairs[k].first)) * n + s(pairs[k].second)];
      int a = find_root(parent, static_cast<int>(k)), b = find_root(parent, img);
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
  return group_by_root(parent, pairs);
}

bool is_transitive(const PermGroup& g) { return point_orbits(g).size() <= 1; }

bool is_regular(const PermGroup& g) { return is_transitive(g) && g.order() == g.degree(); }

bool is_abelian(const PermGroup& g) {
  const auto& gens = g.generators();
  for (size_t i = 0; i < gens.size(); ++i)
    for (size_t j = i + 1; j < gens.size(); ++j)
      if (gens[i] * gens[j] != gens[j] * gens[i]) return false;
  return true;
}

bool is_boolean(const PermGroup& g) {
  for (const auto& s : g.generators())
    if (!(s * s).is_identity()) return false;
  return is_abelian(g);
}

bool is_normal_subgroup(const PermGroup& n, const PermGroup& g) {
  for (const auto& h : n.generators())
    if (!g.contains(h)) return false;
  for (const auto& x : g.generators()) {
    const Permutation xi = x.inverse();
    for (const auto& h : n.generators())
      if (!n.contains(x * h * xi)) return false;
  }
  return true;
}

int count_involutions(const PermGroup& g) {
  int count = 0;
  for (const auto& e : g.elements())
    if (!e.is_identity() && (e * e).is_identity()) ++count;
  return count;
}

std::vector<int> cycle_type(const Permutation& p) {
  const int n = p.degree();
  std::vector<char> seen(n, 0);
  std::vector<int> lens;
  for (int i = 0; i < n; ++i) {
    if (seen[i]) continue;
    int len = 0;
    for (int x = i; !seen[x]; x = p(x)) {
      seen[x] = 1;
      ++len;
    }
    lens.push_back(len);
  }
  std::sort(lens.begin(), lens.end());
  return lens;
}

namespace {

// Cycles of p as point lists, each starting at its smallest point.
std::vector<std::vector<int>> cycles_of(const Permutation& p) {
  const int n = p.degree();
  std::vector<char> seen(n, 0);
  std::vector<std::vector<int>> out;
  for (int i = 0; i < n; ++i) {
    if (seen[i]) continue;
    out.emplace_back();
    for (int x = i; !seen[x]; x = p(x)) {
      seen[x] = 1;
      out.back().push_back(x);
    }
  }
  return out;
}

// Tries every x with x*a*x^-1 = b for the single pair (a, b) of equal cycle
// type, calling accept(x) until it returns true.
bool conjugators(const Permutation& a, const Permutation& b,
                 const std::function<bool(const std::vector<int>&)>& accept) {
  const int n = a.degree();
  auto ca = cycles_of(a), cb = cycles_of(b);
  std::sort(ca.begin(), ca.end(), [](auto& l, auto& r) { return l.size() > r.size(); });
  std::vector<char> used(cb.size(), 0);
  std::vector<int> x(n, -1);
  std::function<bool(size_t)> rec = [&](size_t k) -> bool {
    if (k == ca.size()) return accept(x);
    const auto& src = ca[k];
    for (size_t j = 0; j < cb.size(); ++j) {
      if (used[j] || cb[j].size() != src.size()) continue;
      used[j] = 1;
      const size_t len = src.size();
      for (size_t shift = 0; shift < len; ++shift) {
        for (size_t t = 0; t < len; ++t) x[src[t]] = cb[j][(t + shift) % len];
        if (rec(k + 1)) return true;
      }
      used[j] = 0;
    }
    return false;
  };
  return rec(0);
}

}  // namespace

std::vector<int> conjugating_element(const PermGroup& h, const PermGroup& g) {
  const int n = h.degree();
  if (g.degree() != n) return {};
  if (h.generators().empty()) {
    std::vector<int> id(n);
    std::iota(id.begin(), id.end(), 0);
    return id;
  }
  // Anchor on the generator whose cycle type is rarest in g.
  std::map<std::vector<int>, std::vector<const Permutation*>> by_type;
  for (const auto& e : g.elements()) by_type[cycle_type(e)].push_back(&e);
  const Permutation* anchor = nullptr;
  size_t best = SIZE_MAX;
  for (const auto& s : h.generators()) {
    auto it = by_type.find(cycle_type(s));
    if (it == by_type.end()) return {};
    if (it->second.size() < best) {
      best = it->second.size();
      anchor = &s;
    }
  }
  std::vector<int> found;
  for (const Permutation* target : by_type[cycle_type(*anchor)]) {
    const bool ok = conjugators(*anchor, *target, [&](const std::vector<int>& x) {
      const Permutation px = Permutation::from_images(x), pxi = px.inverse();
      for (const auto& s : h.generators())
        if (!g.contains(px * s * pxi)) return false;
      found = x;
      return true;
    });
    if (ok) return found;
  }
  return {};
}

bool are_conjugate(const PermGroup& a, const PermGroup& b) {
  if (a.degree() != b.degree() || a.order() != b.order()) return false;
  return !conjugating_element(a, b).empty();
}

}  // namespace homlab
