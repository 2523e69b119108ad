#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "homlab/permgroup.hpp"
#include "homlab/space.hpp"

namespace homlab {

enum class Target { Delta1, Delta2 };
enum class Method { RegularOnly, FullTransitive, PartitionOracle, Formula };

std::string_view to_string(Target t);
std::string_view to_string(Method m);

inline constexpr int kMaxOracleDegree = 5;
inline constexpr int kMaxFormulaDegree = 64;
inline constexpr int kMaxTableDegree = 16;

struct SearchReport {
  int n = 0;
  Target target = Target::Delta1;
  Method method = Method::RegularOnly;
  int lower = 0;
  int upper = 0;
  PermGroup witness_group;  // a transitive group whose coloring is the witness
  ColoredSpace witness;     // k-homogeneous with delta = lower
  std::int64_t candidates = 0;
  double elapsed_seconds = 0;

  bool exact() const { return lower == upper; }
};

// Colors are the orbits of G on unordered pairs, numbered by smallest pair,
// plus the diagonal. Throws NotTransitive.
ColoredSpace orbital_coloring(const PermGroup& g);

// delta(orbital_coloring(G)) without building the space.
int orbital_delta(const PermGroup& g);

// Proven upper bound on Delta_k(n) for k in {1, 2}.
int embedded_upper_bound(int n, int k);

// beta_n = 2^m (k + 1) for n = 2^m (2k + 1).
int beta(int n);

// jobs <= 0 means all available threads; jobs == 1 runs the serial reference.
//
// RegularOnly: n <= 20 (18 and 20 report intervals). FullTransitive: n <= 8.
// PartitionOracle: n <= 5. Throws DegreeTooLarge.
SearchReport delta1(int n, Method method, int jobs = 0);
// FullTransitive: n <= 8. PartitionOracle: n <= 5. Formula: n <= 64.
SearchReport delta2(int n, Method method, int jobs = 0);

// Best orbital coloring over a list of groups: maximal delta among colorings
// that are k-homogeneous, ties broken by least canonical form. Returns the
// index into groups, or -1 if none qualifies.
struct GroupSearchResult {
  int best = -1;
  int delta = 0;
};
GroupSearchResult best_orbital_coloring_serial(const std::vector<PermGroup>& groups, int k);
GroupSearchResult best_orbital_coloring_parallel(const std::vector<PermGroup>& groups, int k,
                                                 int jobs);

// Exhaustive search over all colorings of the edges of K_n (set partitions),
// maximal delta of a k-homogeneous one, ties broken by least canonical form.
struct OracleResult {
  int delta = 0;
  ColoredSpace witness;
  std::int64_t partitions = 0;
};
OracleResult partition_oracle_serial(int n, int k);
OracleResult partition_oracle_parallel(int n, int k, int jobs);

struct TableRow {
  int n = 0;
  int published_delta2 = 0;
  int published_delta1 = 0;
  SearchReport delta2_formula;
  std::optional<SearchReport> delta2_full;
  std::optional<SearchReport> delta2_oracle;
  SearchReport delta1_regular;
  std::optional<SearchReport> delta1_full;
  std::optional<SearchReport> delta1_oracle;
  bool match = false;
  std::string detail;  // first mismatch, empty when match
};

struct TableReport {
  std::vector<TableRow> rows;
  bool all_match = false;
  double elapsed_seconds = 0;
};

// A transitive group of degree n <= 10 drawn deterministically from seed:
// a transitive group for n <= 8, a regular group (sometimes enlarged by a
// random permutation) above, conjugated by a random relabeling.
PermGroup random_transitive_group(int n, std::uint64_t seed);
inline constexpr int kMaxRandomDegree = 10;

// Table 1 values (Delta2, Delta1) for n = 1..16.
struct PublishedRow {
  int n;
  int delta2;
  int delta1;
};
const std::vector<PublishedRow>& published_table();

// Throws DegreeTooLarge for n_max > 16.
TableReport verify_table(int n_max, int jobs = 0);

}  // namespace homlab
