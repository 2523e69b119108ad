// Acceptance checks, one line per criterion. Exit status 0 iff every
// criterion passes. Tolerances are pinned below; every count comparison is
// exact.

#include <algorithm>
#include <bit>
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "homlab/amalgamation.hpp"
#include "homlab/classify.hpp"
#include "homlab/constructions.hpp"
#include "homlab/error.hpp"
#include "homlab/extremal.hpp"
#include "homlab/homogeneity.hpp"
#include "homlab/structure.hpp"

using namespace homlab;

namespace {

constexpr double kTableBudgetSeconds = 900;   // criterion 1
constexpr double kConstructionBudget = 60;    // criterion 2, per check
constexpr double kCertificateBudget = 10;     // criterion 4, per check
constexpr double kRealTolerance = 0;          // palettes compare exactly
constexpr int kRandomColorings = 200;
constexpr int kMaxRandomN = 10;

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Collects sub-check failures for one criterion.
class Criterion {
 public:
  explicit Criterion(std::string name) : name_(std::move(name)), t0_(Clock::now()) {}

  void check(bool ok, const std::string& what) {
    ++checks_;
    if (!ok) failures_.push_back(what);
  }

  // Runs f, timing it against budget; exceptions count as failures.
  void timed(const std::string& what, double budget, const std::function<bool()>& f) {
    const auto t0 = Clock::now();
    bool ok = false;
    std::string err;
    try {
      ok = f();
    } catch (const std::exception& e) {
      err = std::string(" threw ") + e.what();
    }
    const double s = since(t0);
    check(ok && s <= budget, what + err + (s > budget ? " over budget" : ""));
  }

  void note(const std::string& s) { notes_ += (notes_.empty() ? "" : "; ") + s; }

  bool report() const {
    const bool ok = failures_.empty();
    std::printf("%s  %s: %d/%d checks", ok ? "PASS" : "FAIL", name_.c_str(),
                checks_ - static_cast<int>(failures_.size()), checks_);
    if (!notes_.empty()) std::printf("; %s", notes_.c_str());
    std::printf(" (%.2f s)\n", since(t0_));
    for (const auto& f : failures_) std::printf("      failed: %s\n", f.c_str());
    std::fflush(stdout);
    return ok;
  }

 private:
  std::string name_;
  Clock::time_point t0_;
  int checks_ = 0;
  std::vector<std::string> failures_;
  std::string notes_;
};

std::string str(int v) { return std::to_string(v); }

bool power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

std::set<double> palette_set(const ColoredSpace& s) {
  return {s.palette()->begin(), s.palette()->end()};
}

// ---------------------------------------------------------------- 1

bool table_reproduction() {
  Criterion c("1 table reproduction");
  const TableReport t = verify_table(kMaxTableDegree);
  int matched = 0;
  for (const auto& row : t.rows) {
    const std::string n = "n=" + str(row.n);
    bool d2 = row.delta2_formula.lower == row.published_delta2 && row.delta2_formula.exact();
    bool d1 = row.delta1_regular.exact() && row.delta1_regular.lower == row.published_delta1;
    if (row.n <= kMaxTransitiveDegree) {
      const bool full2 = row.delta2_full && row.delta2_full->lower == row.published_delta2;
      const bool full1 = row.delta1_full && row.delta1_full->lower == row.published_delta1;
      c.check(full2, n + " FullTransitive Delta2");
      c.check(full1, n + " FullTransitive Delta1");
      d2 = d2 && full2;
      d1 = d1 && full1;
    }
    if (row.n <= kMaxOracleDegree) {
      const bool o2 = row.delta2_oracle && row.delta2_full &&
                      row.delta2_oracle->lower == row.delta2_full->lower;
      const bool o1 = row.delta1_oracle && row.delta1_full &&
                      row.delta1_oracle->lower == row.delta1_full->lower;
      c.check(o2, n + " PartitionOracle agrees with FullTransitive on Delta2");
      c.check(o1, n + " PartitionOracle agrees with FullTransitive on Delta1");
      d2 = d2 && o2;
      d1 = d1 && o1;
    }
    c.check(d2, n + " Delta2 = " + str(row.published_delta2));
    c.check(d1, n + " Delta1 = " + str(row.published_delta1));
    matched += d2 + d1;
  }
  c.check(static_cast<int>(t.rows.size()) == kMaxTableDegree, "16 rows");
  c.check(t.all_match, "verify_table reports all rows matching");
  c.check(t.elapsed_seconds <= kTableBudgetSeconds, "within 15 minutes");
  c.note(str(matched) + "/32 table values reproduced");
  return c.report();
}

// ---------------------------------------------------------------- 2

bool construction_quantities() {
  Criterion c("2 construction quantities");
  c.timed("delta(C_n) for n <= 12", kConstructionBudget, [] {
    for (int n = 1; n <= 12; ++n)
      if (delta(cycle(n)) != n / 2 + 1) return false;
    return true;
  });
  c.timed("binary_space(m) for m <= 6", kConstructionBudget, [] {
    for (int m = 0; m <= 6; ++m) {
      const auto x = binary_space(m);
      if (delta(x) != (1 << m)) return false;
      std::set<double> want;
      for (int v = 0; v < (1 << m); ++v) want.insert(v);
      if (palette_set(x) != want) return false;
    }
    return true;
  });
  int b_count = 0, e_count = 0;
  c.timed("b_space sizes <= 24: delta and 2-homogeneity", kConstructionBudget, [&] {
    for (int m = 0; (1 << m) <= 24; ++m)
      for (int k = 0; (1 << m) * (2 * k + 1) <= 24; ++k) {
        const auto b = b_space(m, k);
        if (delta(b) != (1 << m) * (k + 1) || !is_k_homogeneous(b, 2)) return false;
        ++b_count;
      }
    return true;
  });
  c.timed("d_space(n) for n <= 10: delta and |Aut|", kConstructionBudget, [] {
    for (int n = 1; n <= 10; ++n) {
      const auto d = d_space(n);
      if (delta(d) != n / 2 + 1 + n || automorphisms(d).order() != 2 * n) return false;
    }
    return true;
  });
  c.timed("e_space sizes <= 24: delta", kConstructionBudget, [&] {
    for (int m = 0; 2 * (1 << m) <= 24; ++m)
      for (int k = 0; 2 * (1 << m) * (2 * k + 1) <= 24; ++k) {
        if (delta(e_space(m, k)) != (1 << m) * (3 * k + 2)) return false;
        ++e_count;
      }
    return true;
  });
  c.note(str(b_count) + " b spaces, " + str(e_count) + " e spaces");
  return c.report();
}

// ---------------------------------------------------------------- 3

struct Sample {
  std::string name;
  ColoredSpace space;
};

std::vector<Sample> corpus() {
  std::vector<Sample> out;
  for (int n = 1; n <= 12; ++n) out.push_back({"cycle " + str(n), cycle(n)});
  for (int m = 0; m <= 4; ++m) out.push_back({"binary " + str(m), binary_space(m)});
  for (int m = 0; (1 << m) <= 24; ++m)
    for (int k = 0; (1 << m) * (2 * k + 1) <= 24; ++k)
      out.push_back({"b " + str(m) + "," + str(k), b_space(m, k)});
  for (int n = 1; n <= 10; ++n) out.push_back({"d " + str(n), d_space(n)});
  for (int m = 0; 2 * (1 << m) <= 24; ++m)
    for (int k = 0; 2 * (1 << m) * (2 * k + 1) <= 24; ++k)
      out.push_back({"e " + str(m) + "," + str(k), e_space(m, k)});
  for (int n = 0; n <= 3; ++n) out.push_back({"db " + str(n), discrete_boolean_duplicate(n)});
  out.push_back({"tetrahedron", tetrahedron(1.0, 1.1, 1.2)});
  out.push_back({"hexagon", hexagon({1.1, 1.2, 1.3, 1.4, 1.5})});
  out.push_back({"nonmonotone", boolean_space({3, {0, 10, 11, 14, 12, 16, 15, 13}})});
  const auto w = wap_gadget(tetrahedron(1.0, 1.1, 1.2));
  out.push_back({"wap x", w.x});
  out.push_back({"wap y", w.y});
  for (int n = 1; n <= 6; ++n) out.push_back({"discrete " + str(n), discrete_space(n)});
  return out;
}

bool structure_properties() {
  Criterion c("3 structure property suite");
  std::vector<Sample> samples = corpus();
  const size_t corpus_size = samples.size();
  for (int i = 0; i < kRandomColorings; ++i) {
    const int n = 1 + i % kMaxRandomN;
    samples.push_back({"random seed " + str(i) + " n=" + str(n),
                       orbital_coloring(random_transitive_group(n, static_cast<std::uint64_t>(i)))});
  }

  int homogeneous = 0, iso_free = 0, multi = 0, violations = 0;
  auto check = [&](bool ok, const Sample& s, const std::string& what) {
    c.check(ok, s.name + ": " + what);
    violations += !ok;
  };
  for (const auto& s : samples) {
    try {
      const ColoredSpace& x = s.space;
      const PermGroup aut = automorphisms(x);
      const bool one = is_one_homogeneous(x);
      const bool free = is_isosceles_free(x);
      iso_free += free;
      if (free) check(is_boolean(aut), s, "isosceles-free space has Boolean Aut");
      if (!one || x.empty()) continue;
      ++homogeneous;
      if (free) {
        check(is_ultrahomogeneous_full(x, aut), s, "homogeneous isosceles-free is ultrahomogeneous");
        check(power_of_two(x.size()), s, "homogeneous isosceles-free has power-of-two size");
      }
      const int singles = static_cast<int>(singleton_distances(x).size());
      check(2 * delta(x) <= singles + x.size(), s, "singleton bound");

      const Decomposition dec = isosceles_generated_components(x);
      const int comps = static_cast<int>(dec.blocks.size());
      const PermGroup star = aut_star(x, aut, dec);
      if (comps >= 2) {
        ++multi;
        check(is_uniquely_k_homogeneous(x, aut, 1), s, "two or more components: unique 1-homogeneity");
        check(is_abelian(star), s, "two or more components: Aut_* abelian");
      }
      if (comps >= 3) check(is_boolean_space(x), s, "three or more components: Boolean space");

      const ColoredSpace q = quotient_space(x, dec);
      check(power_of_two(q.size()), s, "quotient has power-of-two size");
      check(is_isosceles_free(q) && is_one_homogeneous(q), s, "quotient homogeneous isosceles-free");
      check(aut.order() == star.order() * automorphisms(q).order(), s,
            "|Aut| = |Aut_*| |Aut(X/~)|");

      check(!classify(x).labels.empty(), s, "classification non-empty");
    } catch (const std::exception& e) {
      check(false, s, std::string("threw ") + e.what());
    }
  }
  c.note(str(static_cast<int>(corpus_size)) + " corpus + " + str(kRandomColorings) +
         " random spaces, " + str(homogeneous) + " homogeneous, " + str(iso_free) +
         " isosceles-free, " + str(multi) + " with >= 2 components, " + str(violations) +
         " violations");
  return c.report();
}

// ---------------------------------------------------------------- 4

bool counterexample_certificates() {
  Criterion c("4 counterexample certificates");
  c.timed("C_4 components are antipodal pairs with |Aut_*| = 4", kCertificateBudget, [] {
    const auto d = isosceles_free_components(cycle(4));
    return d.blocks == std::vector<std::vector<int>>{{0, 2}, {1, 3}} &&
           aut_star(cycle(4), d).order() == 4;
  });
  c.timed("hexagon isosceles-free and not 1-homogeneous", kCertificateBudget, [] {
    const auto h = hexagon({1.1, 1.2, 1.3, 1.4, 1.5});
    return is_isosceles_free(h) && !is_one_homogeneous(h) && delta(h) == 6;
  });
  std::int64_t bases = 0;
  int assignments = 0;
  c.timed("non-monotone table: every admissible assignment, all 168 bases", kCertificateBudget, [&] {
    // e0, e1, e2 take {10, 11, 12} and the pairs take {14, 15, 16} in any
    // order; e0 + e1 + e2 has norm 13.
    std::vector<double> singles{10, 11, 12}, pairs{14, 15, 16};
    do {
      do {
        NormTable t{3, {0, singles[0], singles[1], pairs[0], singles[2], pairs[2], pairs[1], 13}};
        const auto x = boolean_space(t);
        if (!is_isosceles_free(x) || !is_one_homogeneous(x)) return false;
        const auto p = norm_properties(t);
        if (p.monotone || p.bases_checked != 168) return false;
        bases += p.bases_checked;
        ++assignments;
      } while (std::next_permutation(pairs.begin(), pairs.end()));
    } while (std::next_permutation(singles.begin(), singles.end()));
    return assignments == 36;
  });
  std::string first;
  size_t witness_count = 0;
  c.timed("Z3 x Z3 scheme valid, incoherent with the published witness", kCertificateBudget, [&] {
    const auto z = z3z3_counterexample();
    if (!validate_scheme(z).valid() || z.size() != 10) return false;
    const auto w = coherence_check(z);
    if (!w) return false;
    const CoherenceWitness published{z3z3_index(0, 1), z3z3_index(0, 2), z3z3_index(1, 0),
                                 z3z3_index(2, 0)};
    const auto all = coherence_witnesses(z);
    witness_count = all.size();
    std::ostringstream os;
    os << "(" << (*w)[0] << "," << (*w)[1] << "," << (*w)[2] << "," << (*w)[3] << ")";
    first = os.str();
    const bool violates = z.t[published[0]][published[1]] == z.t[published[2]][published[3]] &&
                          z.t[published[0]][published[2]] != z.t[published[1]][published[3]];
    return violates && std::find(all.begin(), all.end(), published) != all.end() &&
           z.t[published[0]][published[1]] == z3z3_index(0, 0) &&
           z.t[published[0]][published[2]] == z3z3_index(2, 2) &&
           z.t[published[1]][published[3]] == z3z3_index(1, 1);
  });
  c.timed("WAP gadget on the 2-point base", kCertificateBudget, [] {
    const auto w = wap_gadget(new_space({{0, 1}, {1, 0}}, std::vector<double>{0, 1}));
    const bool params = std::abs(w.r0 - 2) <= kRealTolerance && std::abs(w.eps - 0.5) <= kRealTolerance &&
                        std::abs(w.r1 - 1.5) <= kRealTolerance;
    // Independent certificate: x and y agree at point 0 but not at point 1,
    // so no amalgam over B can identify them.
    const bool cert = w.x.distance(0, 2) == w.y.distance(0, 2) &&
                      w.x.distance(1, 2) != w.y.distance(1, 2);
    return params && w.obstruction && cert && is_isosceles_free(w.x) && is_isosceles_free(w.y);
  });
  c.note(str(assignments) + " norm assignments x 168 bases; Z3 x Z3 first witness " + first +
         ", published (2,3,4,7) among " + std::to_string(witness_count));
  return c.report();
}

// ---------------------------------------------------------------- 5

NormTable random_norm_table(int m, std::mt19937_64& rng) {
  // Distinct norms in [1, 2] always satisfy the triangle inequality.
  std::uniform_int_distribution<int> pick(0, 1 << 20);
  std::set<int> used;
  NormTable t{m, std::vector<double>(size_t{1} << m, 0)};
  for (size_t i = 1; i < t.norm.size(); ++i) {
    int v;
    do v = pick(rng);
    while (!used.insert(v).second);
    t.norm[i] = 1.0 + v / double(1 << 20);
  }
  return t;
}

bool same_scheme_up_to_relabeling(const TriangleScheme& a, const TriangleScheme& b) {
  if (a.size() != b.size()) return false;
  std::vector<int> sigma(a.size(), -1);
  for (int p = 0; p < a.size(); ++p) {
    const auto it = std::find(b.r.begin(), b.r.end(), a.r[p]);
    if (it == b.r.end()) return false;
    sigma[p] = static_cast<int>(it - b.r.begin());
  }
  for (int p = 0; p < a.size(); ++p)
    for (int q = 0; q < a.size(); ++q)
      if (b.t[sigma[p]][sigma[q]] != sigma[a.t[p][q]]) return false;
  return true;
}

bool round_trips() {
  Criterion c("5 round-trip identities");
  std::mt19937_64 rng(2024);
  int tables = 0, schemes = 0, duplicates = 0;
  for (int m = 0; m <= 4; ++m) {
    std::vector<NormTable> ts{to_norm_table(binary_space(m))};
    for (int i = 0; i < 5; ++i) ts.push_back(random_norm_table(m, rng));
    for (const auto& t : ts) {
      ++tables;
      const auto x = boolean_space(t);
      const auto back = boolean_space(to_norm_table(x));
      c.check(find_isometry(back, x).has_value(), "norm table round trip m=" + str(m));

      ++schemes;
      const auto s = scheme_from_space(x);
      c.check(same_scheme_up_to_relabeling(s, scheme_from_space(limit_space(s))),
              "scheme round trip m=" + str(m));
    }
  }
  for (int n = 1; n <= 8; ++n) {
    ++duplicates;
    const auto y = d_space(n);
    const auto f = rainbow_factorization(y);
    c.check(f && find_isometry(rainbow_duplicate(f->base, f->params), y) &&
                find_isometry(f->base, cycle(n)),
            "factorization of d_space(" + str(n) + ")");
  }
  for (int m = 0; 2 * (1 << m) <= 16; ++m)
    for (int k = 0; 2 * (1 << m) * (2 * k + 1) <= 16; ++k) {
      ++duplicates;
      const auto y = e_space(m, k);
      const auto f = rainbow_factorization(y);
      c.check(f && find_isometry(rainbow_duplicate(f->base, f->params), y) &&
                  canonical_form(f->base) == canonical_form(b_space(m, k)),
              "factorization of e_space(" + str(m) + "," + str(k) + ")");
    }
  c.note(str(tables) + " norm tables, " + str(schemes) + " schemes, " + str(duplicates) +
         " rainbow duplicates");
  return c.report();
}

// ---------------------------------------------------------------- 6

bool excluded_intervals() {
  Criterion c("6 excluded at desk scale, bound intervals reported");
  const auto r18 = delta1(18, Method::RegularOnly);
  const auto r20 = delta1(20, Method::RegularOnly);
  c.check(r18.lower == 14 && r18.upper == 16 && !r18.exact(), "Delta1(18) in [14, 16]");
  c.check(r20.lower == 16 && r20.upper == 18 && !r20.exact(), "Delta1(20) in [16, 18]");
  c.note("Delta1(18) in [" + str(r18.lower) + "," + str(r18.upper) + "], Delta1(20) in [" +
         str(r20.lower) + "," + str(r20.upper) + "], no exactness claimed");
  return c.report();
}

}  // namespace

int main() {
  bool ok = true;
  ok &= table_reproduction();
  ok &= construction_quantities();
  ok &= structure_properties();
  ok &= counterexample_certificates();
  ok &= round_trips();
  ok &= excluded_intervals();
  std::printf("%s\n", ok ? "ALL CRITERIA PASS" : "SOME CRITERIA FAIL");
  return ok ? 0 : 1;
}
