#include "homlab/extremal.hpp"

#include <omp.h>

#include <algorithm>
#include <chrono>
#include <functional>
#include <map>
#include <mutex>
#include <numeric>
#include <random>
#include <string>

#include "homlab/constructions.hpp"
#include "homlab/error.hpp"
#include "homlab/homogeneity.hpp"

namespace homlab {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

int thread_count(int jobs) { return jobs > 0 ? jobs : omp_get_max_threads(); }

bool qualifies(const ColoredSpace& s, int k) {
  if (k == 1) return is_one_homogeneous(s);
  return is_k_homogeneous(s, k);
}

// Candidate order used by every reduce: larger delta first, then the
// lexicographically least canonical form.
struct Best {
  int delta = 0;
  std::string canon;
  bool set = false;

  bool offer(int d, const std::string& c) {
    if (!set || d > delta || (d == delta && c < canon)) {
      delta = d;
      canon = c;
      set = true;
      return true;
    }
    return false;
  }
};

void verify_witness(const SearchReport& r) {
  const int k = r.target == Target::Delta1 ? 1 : 2;
  if (r.witness.size() != r.n || delta(r.witness) != r.lower || !qualifies(r.witness, k))
    fail(ErrorKind::InternalInvariantViolation, "search witness does not re-verify");
  if (r.lower > r.upper) fail(ErrorKind::InternalInvariantViolation, "lower bound above upper");
}

std::vector<std::pair<int, int>> edges_of(int n) {
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) e.emplace_back(i, j);
  return e;
}

ColoredSpace space_of_partition(int n, const std::vector<std::pair<int, int>>& edges,
                                const std::vector<int>& block, int blocks) {
  std::vector<int> colors(static_cast<size_t>(n) * n, 0);
  for (size_t e = 0; e < edges.size(); ++e) {
    const auto [i, j] = edges[e];
    colors[static_cast<size_t>(i) * n + j] = colors[static_cast<size_t>(j) * n + i] = block[e] + 1;
  }
  return make_space_unchecked(n, std::move(colors), blocks + 1, std::nullopt);
}

// Necessary condition for 1-homogeneity: every row has the same color counts.
bool rows_balanced(const ColoredSpace& s) {
  const int n = s.size();
  std::vector<int> first(s.num_colors(), 0), cnt(s.num_colors());
  for (int c : s.row(0)) ++first[c];
  for (int v = 1; v < n; ++v) {
    std::fill(cnt.begin(), cnt.end(), 0);
    for (int c : s.row(v)) ++cnt[c];
    if (cnt != first) return false;
  }
  return true;
}

// Enumerates restricted growth strings extending `block[0..pos)`.
void enumerate_partitions(std::vector<int>& block, size_t pos, int used,
                          const std::function<void(int)>& visit) {
  if (pos == block.size()) {
    visit(used);
    return;
  }
  for (int b = 0; b <= used; ++b) {
    block[pos] = b;
    enumerate_partitions(block, pos + 1, std::max(used, b + 1), visit);
  }
}

struct OracleLocal {
  Best best;
  ColoredSpace witness;
  std::int64_t partitions = 0;
};

void oracle_visit(int n, int k, const std::vector<std::pair<int, int>>& edges,
                  const std::vector<int>& block, int used, OracleLocal& local) {
  ++local.partitions;
  const int d = used + 1;
  if (local.best.set && d < local.best.delta) return;
  ColoredSpace s = space_of_partition(n, edges, block, used);
  if (!rows_balanced(s) || !qualifies(s, k)) return;
  if (local.best.offer(d, canonical_form(s))) local.witness = std::move(s);
}

int validate_k(int k) {
  if (k != 1 && k != 2) fail(ErrorKind::PreconditionFailed, "k must be 1 or 2");
  return k;
}

}  // namespace

std::string_view to_string(Target t) { return t == Target::Delta1 ? "Delta1" : "Delta2"; }

std::string_view to_string(Method m) {
  switch (m) {
    case Method::RegularOnly: return "RegularOnly";
    case Method::FullTransitive: return "FullTransitive";
    case Method::PartitionOracle: return "PartitionOracle";
    case Method::Formula: return "Formula";
  }
  return "?";
}

ColoredSpace orbital_coloring(const PermGroup& g) {
  if (!is_transitive(g)) fail(ErrorKind::NotTransitive, "group is not transitive");
  const int n = g.degree();
  ColorMatrix m(n, std::vector<int>(n, 0));
  const auto orbitals = pair_orbitals(g);
  for (size_t c = 0; c < orbitals.size(); ++c)
    for (auto [i, j] : orbitals[c]) m[i][j] = m[j][i] = static_cast<int>(c) + 1;
  ColoredSpace s = new_space(m);
  for (const auto& p : g.generators())
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (s.color(p(i), p(j)) != s.color(i, j))
          fail(ErrorKind::InternalInvariantViolation, "orbital coloring not G-invariant");
  return s;
}

int orbital_delta(const PermGroup& g) {
  if (!is_transitive(g)) fail(ErrorKind::NotTransitive, "group is not transitive");
  return 1 + static_cast<int>(pair_orbitals(g).size());
}

int beta(int n) {
  if (n < 1) fail(ErrorKind::PreconditionFailed, "n must be positive");
  int m = 0;
  while (n % 2 == 0) {
    n /= 2;
    ++m;
  }
  return (1 << m) * ((n - 1) / 2 + 1);
}

int embedded_upper_bound(int n, int k) {
  validate_k(k);
  if (n < 1) fail(ErrorKind::PreconditionFailed, "n must be positive");
  if (k == 2) return beta(n);
  if ((n & (n - 1)) == 0) return n;
  if (n % 2 == 1) return beta(n);
  const int half = n / 2;
  if (half % 2 == 1) {
    bool prime = half > 2;
    for (int d = 3; d * d <= half && prime; d += 2)
      if (half % d == 0) prime = false;
    if (prime) return 3 * ((half - 1) / 2) + 2;
  }
  if (n >= 7) return n - 2;
  return n;
}

GroupSearchResult best_orbital_coloring_serial(const std::vector<PermGroup>& groups, int k) {
  validate_k(k);
  GroupSearchResult out;
  Best best;
  for (size_t i = 0; i < groups.size(); ++i) {
    const ColoredSpace s = orbital_coloring(groups[i]);
    if (!qualifies(s, k)) continue;
    if (best.offer(delta(s), canonical_form(s))) out.best = static_cast<int>(i);
  }
  out.delta = best.delta;
  return out;
}

GroupSearchResult best_orbital_coloring_parallel(const std::vector<PermGroup>& groups, int k,
                                                 int jobs) {
  validate_k(k);
  const int count = static_cast<int>(groups.size());
  std::vector<int> d(count, 0);
  std::vector<std::string> errors(count);
#pragma omp parallel for schedule(dynamic) num_threads(thread_count(jobs))
  for (int i = 0; i < count; ++i) {
    try {
      if (k == 1) {
        d[i] = orbital_delta(groups[i]);
      } else {
        const ColoredSpace s = orbital_coloring(groups[i]);
        d[i] = qualifies(s, k) ? delta(s) : 0;
      }
    } catch (const std::exception& e) {
      errors[i] = e.what();
    }
  }
  for (const auto& e : errors)
    if (!e.empty()) fail(ErrorKind::InternalInvariantViolation, e);

  const int top = count ? *std::max_element(d.begin(), d.end()) : 0;
  std::vector<std::string> canon(count);
#pragma omp parallel for schedule(dynamic) num_threads(thread_count(jobs))
  for (int i = 0; i < count; ++i)
    if (top > 0 && d[i] == top) canon[i] = canonical_form(orbital_coloring(groups[i]));

  GroupSearchResult out;
  Best best;
  for (int i = 0; i < count; ++i)
    if (top > 0 && d[i] == top && best.offer(d[i], canon[i])) out.best = i;
  out.delta = best.delta;
  return out;
}

OracleResult partition_oracle_serial(int n, int k) {
  validate_k(k);
  if (n < 1) fail(ErrorKind::PreconditionFailed, "n must be positive");
  if (n > kMaxOracleDegree) fail(ErrorKind::DegreeTooLarge, "partition oracle needs n <= 5");
  const auto edges = edges_of(n);
  std::vector<int> block(edges.size());
  OracleLocal local;
  enumerate_partitions(block, 0, 0,
                       [&](int used) { oracle_visit(n, k, edges, block, used, local); });
  return {local.best.delta, local.witness, local.partitions};
}

OracleResult partition_oracle_parallel(int n, int k, int jobs) {
  validate_k(k);
  if (n < 1) fail(ErrorKind::PreconditionFailed, "n must be positive");
  if (n > kMaxOracleDegree) fail(ErrorKind::DegreeTooLarge, "partition oracle needs n <= 5");
  const auto edges = edges_of(n);
  const size_t split = std::min<size_t>(edges.size(), 5);

  // Work units: every restricted growth prefix of length `split`.
  std::vector<std::pair<std::vector<int>, int>> prefixes;
  {
    std::vector<int> prefix(split);
    enumerate_partitions(prefix, 0, 0, [&](int used) { prefixes.emplace_back(prefix, used); });
  }
  const int units = static_cast<int>(prefixes.size());
  std::vector<OracleLocal> results(units);
#pragma omp parallel for schedule(dynamic) num_threads(thread_count(jobs))
  for (int u = 0; u < units; ++u) {
    std::vector<int> block(edges.size());
    std::copy(prefixes[u].first.begin(), prefixes[u].first.end(), block.begin());
    enumerate_partitions(block, split, prefixes[u].second, [&](int used) {
      oracle_visit(n, k, edges, block, used, results[u]);
    });
  }
  OracleResult out;
  Best best;
  for (auto& r : results) {
    out.partitions += r.partitions;
    if (r.best.set && best.offer(r.best.delta, r.best.canon)) out.witness = r.witness;
  }
  out.delta = best.delta;
  return out;
}

namespace {

SearchReport group_search(int n, Target target, Method method, const std::vector<PermGroup>& groups,
                          int jobs) {
  const int k = target == Target::Delta1 ? 1 : 2;
  const GroupSearchResult r = jobs == 1 ? best_orbital_coloring_serial(groups, k)
                                        : best_orbital_coloring_parallel(groups, k, jobs);
  if (r.best < 0) fail(ErrorKind::InternalInvariantViolation, "no qualifying group");
  SearchReport rep;
  rep.n = n;
  rep.target = target;
  rep.method = method;
  rep.lower = r.delta;
  rep.witness_group = groups[r.best];
  rep.witness = orbital_coloring(groups[r.best]);
  rep.candidates = static_cast<std::int64_t>(groups.size());
  return rep;
}

SearchReport oracle_search(int n, Target target, int jobs) {
  const int k = target == Target::Delta1 ? 1 : 2;
  const OracleResult r = jobs == 1 ? partition_oracle_serial(n, k) : partition_oracle_parallel(n, k, jobs);
  SearchReport rep;
  rep.n = n;
  rep.target = target;
  rep.method = Method::PartitionOracle;
  rep.lower = rep.upper = r.delta;
  rep.witness = r.witness;
  rep.witness_group = automorphisms(r.witness);
  rep.candidates = r.partitions;
  return rep;
}

// Every transitive group has a minimal transitive subgroup (up to
// conjugacy) whose coloring has at least as many colors.
void check_monotone(const std::vector<PermGroup>& transitive,
                    const std::vector<PermGroup>& minimal) {
  for (const auto& g : transitive) {
    const int dg = orbital_delta(g);
    bool found = false;
    for (const auto& h : minimal)
      if (h.order() <= g.order() && g.order() % h.order() == 0 &&
          !conjugating_element(h, g).empty()) {
        if (orbital_delta(h) < dg)
          fail(ErrorKind::InternalInvariantViolation, "subgroup coloring has fewer colors");
        found = true;
      }
    if (!found) fail(ErrorKind::InternalInvariantViolation, "no minimal transitive subgroup");
  }
}

}  // namespace

SearchReport delta1(int n, Method method, int jobs) {
  const auto t0 = Clock::now();
  if (n < 1) fail(ErrorKind::PreconditionFailed, "n must be positive");
  SearchReport rep;
  switch (method) {
    case Method::RegularOnly: {
      if (n > kMaxRegularDegreeExtended)
        fail(ErrorKind::DegreeTooLarge, "regular search needs n <= 20");
      const auto groups = n <= kMaxRegularDegree ? enumerate_regular_groups(n)
                                                 : enumerate_regular_groups_extended(n);
      rep = group_search(n, Target::Delta1, method, groups, jobs);
      rep.upper = embedded_upper_bound(n, 1);
      break;
    }
    case Method::FullTransitive: {
      if (n > kMaxTransitiveDegree) fail(ErrorKind::DegreeTooLarge, "full search needs n <= 8");
      const auto transitive = enumerate_transitive_groups(n);
      const auto minimal = minimal_transitive_groups(transitive);
      check_monotone(transitive, minimal);
      rep = group_search(n, Target::Delta1, method, transitive, jobs);
      int best_minimal = 0;
      for (const auto& h : minimal) best_minimal = std::max(best_minimal, orbital_delta(h));
      if (best_minimal != rep.lower)
        fail(ErrorKind::InternalInvariantViolation, "minimal groups miss the maximum");
      rep.upper = rep.lower;
      break;
    }
    case Method::PartitionOracle:
      rep = oracle_search(n, Target::Delta1, jobs);
      break;
    case Method::Formula:
      fail(ErrorKind::PreconditionFailed, "Delta1 has no closed formula");
  }
  verify_witness(rep);
  rep.elapsed_seconds = seconds_since(t0);
  return rep;
}

SearchReport delta2(int n, Method method, int jobs) {
  const auto t0 = Clock::now();
  if (n < 1) fail(ErrorKind::PreconditionFailed, "n must be positive");
  SearchReport rep;
  switch (method) {
    case Method::FullTransitive:
      if (n > kMaxTransitiveDegree) fail(ErrorKind::DegreeTooLarge, "full search needs n <= 8");
      rep = group_search(n, Target::Delta2, method, enumerate_transitive_groups(n), jobs);
      rep.upper = rep.lower;
      break;
    case Method::PartitionOracle:
      rep = oracle_search(n, Target::Delta2, jobs);
      break;
    case Method::Formula: {
      if (n > kMaxFormulaDegree) fail(ErrorKind::DegreeTooLarge, "formula mode needs n <= 64");
      int m = 0, odd = n;
      while (odd % 2 == 0) {
        odd /= 2;
        ++m;
      }
      rep.n = n;
      rep.target = Target::Delta2;
      rep.method = method;
      rep.lower = rep.upper = beta(n);
      rep.witness = b_space(m, (odd - 1) / 2);
      rep.witness_group = automorphisms(rep.witness);
      rep.candidates = 1;
      break;
    }
    case Method::RegularOnly:
      fail(ErrorKind::PreconditionFailed, "Delta2 uses full, oracle or formula");
  }
  verify_witness(rep);
  rep.elapsed_seconds = seconds_since(t0);
  return rep;
}

PermGroup random_transitive_group(int n, std::uint64_t seed) {
  if (n < 1) fail(ErrorKind::PreconditionFailed, "n must be positive");
  if (n > kMaxRandomDegree) fail(ErrorKind::DegreeTooLarge, "random groups need n <= 10");
  static std::mutex mu;
  static std::map<int, std::vector<PermGroup>> pools;
  const std::vector<PermGroup>* pool;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = pools.find(n);
    if (it == pools.end())
      it = pools.emplace(n, n <= kMaxTransitiveDegree ? enumerate_transitive_groups(n)
                                                      : enumerate_regular_groups(n))
               .first;
    pool = &it->second;
  }
  std::mt19937_64 rng(seed);
  const PermGroup& base = (*pool)[std::uniform_int_distribution<size_t>(0, pool->size() - 1)(rng)];
  std::vector<Permutation> gens = base.generators();
  std::vector<int> x(n);
  std::iota(x.begin(), x.end(), 0);
  if (n > kMaxTransitiveDegree && rng() % 2 == 0) {
    std::shuffle(x.begin(), x.end(), rng);
    gens.push_back(Permutation::from_images(x));
  }
  PermGroup g = base;
  if (gens.size() > base.generators().size()) {
    try {
      g = close(n, gens, 50000);
      // A 2-transitive enlargement colors every pair alike; keep the base.
      if (pair_orbitals(g).size() == 1) g = base;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::OrderCapExceeded) throw;
    }
  }
  std::shuffle(x.begin(), x.end(), rng);
  const Permutation c = Permutation::from_images(x), ci = c.inverse();
  std::vector<Permutation> conj;
  for (const auto& p : g.generators()) conj.push_back(c * p * ci);
  return close(n, conj, std::max<std::int64_t>(g.order(), 1));
}

const std::vector<PublishedRow>& published_table() {
  static const std::vector<PublishedRow> rows = {
      {1, 1, 1},  {2, 2, 2},  {3, 2, 2},  {4, 4, 4},   {5, 3, 3},   {6, 4, 5},
      {7, 4, 4},  {8, 8, 8},  {9, 5, 5},  {10, 6, 8},  {11, 6, 6},  {12, 8, 10},
      {13, 7, 7}, {14, 8, 11}, {15, 8, 8}, {16, 16, 16}};
  return rows;
}

TableReport verify_table(int n_max, int jobs) {
  const auto t0 = Clock::now();
  if (n_max < 1) fail(ErrorKind::PreconditionFailed, "n_max must be positive");
  if (n_max > kMaxTableDegree) fail(ErrorKind::DegreeTooLarge, "table has rows up to 16");
  TableReport rep;
  rep.all_match = true;
  for (const PublishedRow& p : published_table()) {
    if (p.n > n_max) break;
    TableRow row;
    row.n = p.n;
    row.published_delta2 = p.delta2;
    row.published_delta1 = p.delta1;
    auto mismatch = [&](const std::string& what, int got, int want) {
      if (got != want && row.detail.empty())
        row.detail = what + " = " + std::to_string(got) + ", table says " + std::to_string(want);
    };

    row.delta2_formula = delta2(p.n, Method::Formula, jobs);
    mismatch("Delta2 formula", row.delta2_formula.lower, p.delta2);
    row.delta1_regular = delta1(p.n, Method::RegularOnly, jobs);
    mismatch("Delta1 regular lower", row.delta1_regular.lower, p.delta1);
    mismatch("Delta1 upper", row.delta1_regular.upper, p.delta1);
    if (p.n <= kMaxTransitiveDegree) {
      row.delta2_full = delta2(p.n, Method::FullTransitive, jobs);
      row.delta1_full = delta1(p.n, Method::FullTransitive, jobs);
      mismatch("Delta2 full", row.delta2_full->lower, p.delta2);
      mismatch("Delta1 full", row.delta1_full->lower, p.delta1);
    }
    if (p.n <= kMaxOracleDegree) {
      row.delta2_oracle = delta2(p.n, Method::PartitionOracle, jobs);
      row.delta1_oracle = delta1(p.n, Method::PartitionOracle, jobs);
      mismatch("Delta2 oracle", row.delta2_oracle->lower, p.delta2);
      mismatch("Delta1 oracle", row.delta1_oracle->lower, p.delta1);
    }
    row.match = row.detail.empty();
    rep.all_match = rep.all_match && row.match;
    rep.rows.push_back(std::move(row));
  }
  rep.elapsed_seconds = seconds_since(t0);
  return rep;
}

}  // namespace homlab
