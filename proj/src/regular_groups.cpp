// Abstract groups of order <= 20 as Cayley tables, built by cyclic
// extensions: every group of order < 60 is solvable, hence has a normal
// subgroup N of prime index p, and is determined by N, an automorphism phi of
// N (conjugation by a coset generator a) and w = a^p in N.

#include <algorithm>
#include <functional>
#include <map>
#include <mutex>
#include <numeric>

#include "homlab/error.hpp"
#include "homlab/permgroup.hpp"

namespace homlab {

namespace {

struct Table {
  int n = 1;
  std::vector<int> mul{0};  // mul[a * n + b]; element 0 is the identity

  int op(int a, int b) const { return mul[a * n + b]; }
};

int element_order(const Table& t, int x) {
  int k = 1;
  for (int y = x; y != 0; y = t.op(y, x)) ++k;
  return k;
}

std::vector<int> order_profile(const Table& t) {
  std::vector<int> hist(t.n + 1, 0);
  for (int x = 0; x < t.n; ++x) ++hist[element_order(t, x)];
  return hist;
}

std::vector<char> subgroup_generated(const Table& t, const std::vector<int>& gens) {
  std::vector<char> in(t.n, 0);
  std::vector<int> queue{0};
  in[0] = 1;
  for (size_t h = 0; h < queue.size(); ++h)
    for (int g : gens) {
      const int y = t.op(queue[h], g);
      if (!in[y]) {
        in[y] = 1;
        queue.push_back(y);
      }
    }
  return in;
}

// Greedy generating set preferring elements of large order.
std::vector<int> generating_set(const Table& t) {
  std::vector<int> by_order(t.n);
  std::iota(by_order.begin(), by_order.end(), 0);
  std::vector<int> ord(t.n);
  for (int x = 0; x < t.n; ++x) ord[x] = element_order(t, x);
  std::stable_sort(by_order.begin(), by_order.end(), [&](int a, int b) { return ord[a] > ord[b]; });
  std::vector<int> gens;
  std::vector<char> in = subgroup_generated(t, gens);
  for (int x : by_order) {
    if (in[x]) continue;
    gens.push_back(x);
    in = subgroup_generated(t, gens);
  }
  return gens;
}

// Enumerates homomorphisms a -> b that are bijective, given by images of a's
// generating set. visit returns true to stop.
void for_each_isomorphism(const Table& a, const Table& b,
                          const std::function<bool(const std::vector<int>&)>& visit) {
  if (a.n != b.n) return;
  const auto gens = generating_set(a);
  std::vector<int> ord_b(b.n);
  for (int y = 0; y < b.n; ++y) ord_b[y] = element_order(b, y);
  std::vector<int> img(gens.size());

  auto extend = [&]() -> std::vector<int> {
    std::vector<int> f(a.n, -1);
    f[0] = 0;
    std::vector<int> queue{0};
    for (size_t h = 0; h < queue.size(); ++h) {
      const int x = queue[h];
      for (size_t i = 0; i < gens.size(); ++i) {
        const int y = a.op(x, gens[i]);
        const int fy = b.op(f[x], img[i]);
        if (f[y] < 0) {
          f[y] = fy;
          queue.push_back(y);
        } else if (f[y] != fy) {
          return {};
        }
      }
    }
    std::vector<char> hit(b.n, 0);
    for (int v : f) {
      if (hit[v]) return {};
      hit[v] = 1;
    }
    return f;
  };

  std::function<bool(size_t)> rec = [&](size_t k) -> bool {
    if (k == gens.size()) {
      auto f = extend();
      return !f.empty() && visit(f);
    }
    const int want = element_order(a, gens[k]);
    for (int y = 1; y < b.n; ++y) {
      if (ord_b[y] != want) continue;
      img[k] = y;
      if (rec(k + 1)) return true;
    }
    return false;
  };
  if (gens.empty()) {
    visit(std::vector<int>{0});
    return;
  }
  rec(0);
}

bool isomorphic(const Table& a, const Table& b) {
  if (a.n != b.n || order_profile(a) != order_profile(b)) return false;
  bool found = false;
  for_each_isomorphism(a, b, [&](const std::vector<int>&) { return found = true; });
  return found;
}

bool is_group_table(const Table& t) {
  const int n = t.n;
  for (int a = 0; a < n; ++a) {
    std::vector<char> row(n, 0), col(n, 0);
    for (int b = 0; b < n; ++b) {
      if (row[t.op(a, b)] || col[t.op(b, a)]) return false;
      row[t.op(a, b)] = col[t.op(b, a)] = 1;
    }
    if (t.op(0, a) != a || t.op(a, 0) != a) return false;
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (t.op(t.op(a, b), c) != t.op(a, t.op(b, c))) return false;
  return true;
}

std::vector<int> smallest_prime_factors(int n) {
  std::vector<int> ps;
  for (int p = 2; p <= n; ++p) {
    bool prime = true;
    for (int q = 2; q * q <= p; ++q)
      if (p % q == 0) prime = false;
    if (prime && n % p == 0) ps.push_back(p);
  }
  return ps;
}

// Group of order p*|N| with elements a^e x stored at e*|N| + x.
Table extension(const Table& nt, int p, const std::vector<int>& phi, int w) {
  const int m = nt.n;
  // phi_pow[f] = phi^f as an image array.
  std::vector<std::vector<int>> phi_pow(p, std::vector<int>(m));
  std::iota(phi_pow[0].begin(), phi_pow[0].end(), 0);
  for (int f = 1; f < p; ++f)
    for (int x = 0; x < m; ++x) phi_pow[f][x] = phi[phi_pow[f - 1][x]];
  Table t;
  t.n = p * m;
  t.mul.assign(static_cast<size_t>(t.n) * t.n, 0);
  for (int e = 0; e < p; ++e)
    for (int x = 0; x < m; ++x)
      for (int f = 0; f < p; ++f)
        for (int y = 0; y < m; ++y) {
          // a^e x a^f y = a^(e+f) phi^f(x) y, with a^p = w.
          int z = nt.op(phi_pow[f][x], y);
          int s = e + f;
          if (s >= p) {
            s -= p;
            z = nt.op(w, z);
          }
          t.mul[(e * m + x) * t.n + (f * m + y)] = s * m + z;
        }
  return t;
}

std::vector<Table> groups_of_order(int n);

std::vector<Table> build_groups(int n) {
  if (n == 1) return {Table{}};
  std::vector<Table> found;
  std::map<std::vector<int>, std::vector<int>> by_profile;
  for (int p : smallest_prime_factors(n)) {
    for (const Table& nt : groups_of_order(n / p)) {
      const int m = nt.n;
      std::vector<std::vector<int>> auts;
      for_each_isomorphism(nt, nt, [&](const std::vector<int>& f) {
        auts.push_back(f);
        return false;
      });
      std::vector<int> inv(m);
      for (int x = 0; x < m; ++x)
        for (int y = 0; y < m; ++y)
          if (nt.op(x, y) == 0) inv[x] = y;
      for (const auto& phi : auts) {
        std::vector<int> pp(m);
        std::iota(pp.begin(), pp.end(), 0);
        for (int f = 0; f < p; ++f)
          for (int x = 0; x < m; ++x) pp[x] = phi[pp[x]];
        for (int w = 0; w < m; ++w) {
          if (phi[w] != w) continue;
          bool ok = true;
          for (int x = 0; x < m && ok; ++x) ok = pp[x] == nt.op(nt.op(inv[w], x), w);
          if (!ok) continue;
          Table t = extension(nt, p, phi, w);
          if (!is_group_table(t))
            fail(ErrorKind::InternalInvariantViolation, "cyclic extension is not a group");
          auto profile = order_profile(t);
          auto& bucket = by_profile[profile];
          bool seen = false;
          for (int idx : bucket)
            if (isomorphic(found[idx], t)) {
              seen = true;
              break;
            }
          if (!seen) {
            bucket.push_back(static_cast<int>(found.size()));
            found.push_back(std::move(t));
          }
        }
      }
    }
  }
  std::stable_sort(found.begin(), found.end(), [](const Table& a, const Table& b) {
    return order_profile(a) > order_profile(b);
  });
  return found;
}

std::vector<Table> groups_of_order(int n) {
  static std::mutex mu;
  static std::map<int, std::vector<Table>> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
  }
  auto result = build_groups(n);
  std::lock_guard<std::mutex> lock(mu);
  return cache.emplace(n, std::move(result)).first->second;
}

PermGroup left_regular(const Table& t) {
  std::vector<Permutation> elems, gens;
  elems.reserve(t.n);
  for (int g = 0; g < t.n; ++g) {
    std::vector<Permutation::Point> im(t.n);
    for (int x = 0; x < t.n; ++x) im[x] = static_cast<Permutation::Point>(t.op(g, x));
    elems.emplace_back(std::move(im));
  }
  for (int g : generating_set(t)) gens.push_back(elems[g]);
  return group_from_elements(t.n, std::move(elems), std::move(gens));
}

}  // namespace

std::vector<PermGroup> enumerate_regular_groups_extended(int n) {
  if (n < 1 || n > kMaxRegularDegreeExtended)
    fail(ErrorKind::DegreeTooLarge, "regular groups need 1 <= n <= " +
                                        std::to_string(kMaxRegularDegreeExtended));
  std::vector<PermGroup> out;
  for (const Table& t : groups_of_order(n)) out.push_back(left_regular(t));
  return out;
}

std::vector<PermGroup> enumerate_regular_groups(int n, int limit) {
  if (n > kMaxRegularDegree)
    fail(ErrorKind::DegreeTooLarge, "regular groups need n <= " + std::to_string(kMaxRegularDegree));
  auto out = enumerate_regular_groups_extended(n);
  if (limit > 0 && static_cast<int>(out.size()) > limit) out.resize(limit);
  return out;
}

}  // namespace homlab
