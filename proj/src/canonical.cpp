// Canonical form up to point relabeling and color relabeling, by
// individualization-refinement on points and colors jointly. Refinement keeps
// an ordered partition of the points and one of the colors and splits cells
// by label-free signatures until both are stable; the search individualizes
// points of the first non-singleton cell. Leaves are compared by
// (refinement trace, relabeled matrix); automorphisms discovered between
// equal leaves prune sibling orbits and trigger backjumps.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <sstream>

#include "homlab/space.hpp"

namespace homlab {

namespace {

std::uint64_t mix(std::uint64_t h, std::uint64_t v) {
  h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  h ^= h >> 29;
  h *= 0xbf58476d1ce4e5b9ULL;
  return h ^ (h >> 32);
}

struct Partition {
  std::vector<int> pcell;  // point -> cell index
  std::vector<int> kcell;  // color -> cell index
  int np = 0, nk = 0;      // number of cells
};

struct Leaf {
  std::vector<std::uint64_t> trace;
  std::vector<int> code;
  std::vector<int> prefix;
  std::vector<int> order;  // canonical position -> point
};

class Canonizer {
 public:
  explicit Canonizer(const ColoredSpace& s) : s_(s), n_(s.size()), c_(s.num_colors()) {}

  std::vector<int> run() {
    if (n_ == 0) return {0};
    Partition p;
    p.pcell.assign(n_, 0);
    p.np = 1;
    p.kcell.assign(c_, 1);
    p.kcell[0] = 0;
    p.nk = c_ > 1 ? 2 : 1;
    std::vector<std::uint64_t> trace{refine(p)};
    std::vector<int> prefix;
    search(p, trace, prefix);
    std::vector<int> out{n_};
    out.insert(out.end(), best_.code.begin(), best_.code.end());
    return out;
  }

 private:
  // Splits cells until stable and returns a hash of the signatures seen.
  std::uint64_t refine(Partition& p) {
    std::uint64_t h = 0;
    std::vector<std::int64_t> sig;
    std::vector<std::vector<std::int64_t>> psig(n_), ksig(c_);
    for (;;) {
      for (int v = 0; v < n_; ++v) {
        sig.clear();
        for (int w = 0; w < n_; ++w)
          if (w != v) sig.push_back(static_cast<std::int64_t>(p.kcell[s_.color(v, w)]) * n_ + p.pcell[w]);
        std::sort(sig.begin(), sig.end());
        psig[v] = sig;
      }
      for (auto& k : ksig) k.clear();
      for (int x = 0; x < n_; ++x)
        for (int y = x + 1; y < n_; ++y) {
          const int a = std::min(p.pcell[x], p.pcell[y]), b = std::max(p.pcell[x], p.pcell[y]);
          ksig[s_.color(x, y)].push_back(static_cast<std::int64_t>(a) * n_ + b);
        }
      for (auto& k : ksig) std::sort(k.begin(), k.end());

      const int np = split(p.pcell, psig, h);
      const int nk = split(p.kcell, ksig, h);
      const bool stable = np == p.np && nk == p.nk;
      p.np = np;
      p.nk = nk;
      if (stable) break;
    }
    return h;
  }

  // Reorders by (cell, signature) and renumbers; folds one signature per new
  // cell into h.
  static int split(std::vector<int>& cell, const std::vector<std::vector<std::int64_t>>& sig,
                   std::uint64_t& h) {
    const int m = static_cast<int>(cell.size());
    std::vector<int> idx(m);
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](int a, int b) {
      if (cell[a] != cell[b]) return cell[a] < cell[b];
      return sig[a] < sig[b];
    });
    std::vector<int> out(m);
    int next = -1;
    for (int i = 0; i < m; ++i) {
      const int a = idx[i];
      if (i == 0 || cell[a] != cell[idx[i - 1]] || sig[a] != sig[idx[i - 1]]) {
        ++next;
        h = mix(h, static_cast<std::uint64_t>(cell[a]));
        h = mix(h, sig[a].size());
        for (std::int64_t v : sig[a]) h = mix(h, static_cast<std::uint64_t>(v));
      }
      out[a] = next;
    }
    cell = std::move(out);
    return next + 1;
  }

  Leaf make_leaf(const Partition& p, const std::vector<std::uint64_t>& trace,
                 const std::vector<int>& prefix) const {
    Leaf leaf;
    leaf.trace = trace;
    leaf.prefix = prefix;
    leaf.order.assign(n_, -1);
    for (int v = 0; v < n_; ++v) leaf.order[p.pcell[v]] = v;
    leaf.code.resize(static_cast<size_t>(n_) * n_);
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j)
        leaf.code[static_cast<size_t>(i) * n_ + j] = p.kcell[s_.color(leaf.order[i], leaf.order[j])];
    return leaf;
  }

  // Lexicographic comparison of trace prefixes up to the shorter length.
  static int compare_traces(const std::vector<std::uint64_t>& a,
                            const std::vector<std::uint64_t>& b) {
    const size_t k = std::min(a.size(), b.size());
    for (size_t i = 0; i < k; ++i)
      if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
    return 0;
  }

  // Records the automorphism leaf -> other and returns the depth to resume at.
  int record_automorphism(const Leaf& leaf, const Leaf& other) {
    std::vector<int> g(n_);
    for (int i = 0; i < n_; ++i) g[leaf.order[i]] = other.order[i];
    bool identity = true;
    for (int v = 0; v < n_; ++v)
      if (g[v] != v) identity = false;
    if (!identity) gens_.push_back(std::move(g));
    size_t k = 0;
    while (k < leaf.prefix.size() && k < other.prefix.size() && leaf.prefix[k] == other.prefix[k])
      ++k;
    return static_cast<int>(k);
  }

  // Returns the depth the search should resume at; a value below the
  // caller's depth unwinds further.
  int search(const Partition& p, std::vector<std::uint64_t>& trace, std::vector<int>& prefix) {
    const int depth = static_cast<int>(prefix.size());
    if (have_best_ && compare_traces(trace, best_.trace) > 0) return depth;

    if (p.np == n_) {
      Leaf leaf = make_leaf(p, trace, prefix);
      if (!have_first_) {
        first_ = leaf;
        best_ = std::move(leaf);
        have_first_ = have_best_ = true;
        return depth;
      }
      if (leaf.trace == first_.trace && leaf.code == first_.code)
        return record_automorphism(leaf, first_);
      if (leaf.trace == best_.trace && leaf.code == best_.code)
        return record_automorphism(leaf, best_);
      const int ct = compare_traces(leaf.trace, best_.trace);
      if (ct < 0 || (ct == 0 && (leaf.trace.size() < best_.trace.size() ||
                                 (leaf.trace.size() == best_.trace.size() && leaf.code < best_.code))))
        best_ = std::move(leaf);
      return depth;
    }

    int target = -1;
    {
      std::vector<int> size(p.np, 0);
      for (int v = 0; v < n_; ++v) ++size[p.pcell[v]];
      for (int c = 0; c < p.np; ++c)
        if (size[c] > 1) {
          target = c;
          break;
        }
    }
    std::vector<int> cell;
    for (int v = 0; v < n_; ++v)
      if (p.pcell[v] == target) cell.push_back(v);

    std::vector<int> done;
    for (int v : cell) {
      if (in_explored_orbit(v, done, prefix)) continue;
      done.push_back(v);
      Partition child = p;
      for (int w = 0; w < n_; ++w)
        if (child.pcell[w] > target || (child.pcell[w] == target && w != v)) ++child.pcell[w];
      ++child.np;
      trace.push_back(refine(child));
      prefix.push_back(v);
      const int resume = search(child, trace, prefix);
      prefix.pop_back();
      trace.pop_back();
      if (resume < depth) return resume;
    }
    return depth;
  }

  // Is v in the orbit of an explored sibling under the generators fixing the
  // current prefix pointwise?
  bool in_explored_orbit(int v, const std::vector<int>& done, const std::vector<int>& prefix) {
    if (done.empty() || gens_.empty()) return false;
    std::vector<int> parent(n_);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    for (const auto& g : gens_) {
      bool fixes = true;
      for (int x : prefix)
        if (g[x] != x) {
          fixes = false;
          break;
        }
      if (!fixes) continue;
      for (int x = 0; x < n_; ++x) {
        const int a = find(x), b = find(g[x]);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
      }
    }
    const int r = find(v);
    for (int d : done)
      if (find(d) == r) return true;
    return false;
  }

  const ColoredSpace& s_;
  int n_;
  int c_;
  Leaf first_, best_;
  bool have_first_ = false, have_best_ = false;
  std::vector<std::vector<int>> gens_;
};

}  // namespace

std::string canonical_form(const ColoredSpace& space) {
  const auto code = Canonizer(space).run();
  std::ostringstream os;
  for (size_t i = 0; i < code.size(); ++i) {
    if (i) os << ',';
    os << code[i];
  }
  return os.str();
}

}  // namespace homlab
