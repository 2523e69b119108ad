#include "doctest.h"
#include "homlab/constructions.hpp"
#include "homlab/extremal.hpp"
#include "homlab/homogeneity.hpp"
#include "oracles.hpp"

using namespace homlab;

namespace {

Permutation perm(std::vector<int> v) { return Permutation::from_images(v); }

// Independent count for regular groups: 1 + (n - 1 + #involutions) / 2.
int regular_delta(const PermGroup& g) {
  return 1 + (static_cast<int>(g.order()) - 1 + count_involutions(g)) / 2;
}

}  // namespace

TEST_CASE("orbital colorings") {
  const auto c5 = orbital_coloring(close(5, {perm({1, 2, 3, 4, 0})}));
  CHECK(delta(c5) == 3);
  const auto klein = orbital_coloring(close(4, {perm({1, 0, 3, 2}), perm({2, 3, 0, 1})}));
  CHECK(delta(klein) == 4);
  CHECK(canonical_form(klein) == canonical_form(tetrahedron(1.0, 1.1, 1.2)));
  CHECK(delta(orbital_coloring(symmetric_group(5))) == 2);
  CHECK_THROWS_AS(orbital_coloring(trivial_group(3)), Error);

  for (int n = 1; n <= 12; ++n)
    for (const auto& g : enumerate_regular_groups(n)) {
      CHECK(orbital_delta(g) == regular_delta(g));
      CHECK(orbital_delta(g) == oracle::distinct_distances(orbital_coloring(g)));
    }
}

TEST_CASE("embedded upper bounds") {
  CHECK(embedded_upper_bound(18, 1) == 16);
  CHECK(embedded_upper_bound(9, 1) == 5);
  CHECK(embedded_upper_bound(4, 1) == 4);
  CHECK(embedded_upper_bound(20, 1) == 18);
  CHECK(embedded_upper_bound(14, 1) == 11);
  CHECK(embedded_upper_bound(12, 2) == 8);
  CHECK(beta(12) == 8);
  CHECK(beta(7) == 4);
  CHECK(beta(16) == 16);
}

TEST_CASE("delta1 examples") {
  const auto r6 = delta1(6, Method::FullTransitive);
  CHECK(r6.lower == 5);
  CHECK(r6.exact());
  const auto reg6 = delta1(6, Method::RegularOnly);
  CHECK(reg6.lower == 5);
  CHECK_FALSE(is_abelian(reg6.witness_group));
  CHECK(delta1(5, Method::FullTransitive).lower == 3);
  const auto o4 = delta1(4, Method::PartitionOracle);
  CHECK(o4.lower == 4);
  CHECK(o4.candidates == 203);
  CHECK_THROWS_AS(delta1(9, Method::FullTransitive), Error);
  CHECK_THROWS_AS(delta1(6, Method::PartitionOracle), Error);
  CHECK_THROWS_AS(delta1(21, Method::RegularOnly), Error);

  const auto r18 = delta1(18, Method::RegularOnly);
  CHECK(r18.lower == 14);
  CHECK(r18.upper == 16);
  CHECK_FALSE(r18.exact());
  const auto r20 = delta1(20, Method::RegularOnly);
  CHECK(r20.lower == 16);
  CHECK(r20.upper == 18);
}

TEST_CASE("delta2 examples") {
  CHECK(delta2(6, Method::FullTransitive).lower == 4);
  CHECK(delta2(8, Method::FullTransitive).lower == 8);
  const auto r12 = delta2(12, Method::Formula);
  CHECK(r12.lower == 8);
  CHECK(canonical_form(r12.witness) == canonical_form(b_space(2, 1)));
  CHECK_THROWS_AS(delta2(9, Method::FullTransitive), Error);
  CHECK_THROWS_AS(delta2(65, Method::Formula), Error);
}

TEST_CASE("oracle agrees with full enumeration") {
  for (int n = 1; n <= 5; ++n) {
    CHECK(delta1(n, Method::PartitionOracle).lower == delta1(n, Method::FullTransitive).lower);
    CHECK(delta2(n, Method::PartitionOracle).lower == delta2(n, Method::FullTransitive).lower);
  }
}

TEST_CASE("witnesses re-verify against brute force") {
  for (int n = 2; n <= 7; ++n) {
    const auto a = delta1(n, Method::FullTransitive);
    CHECK(oracle::k_homogeneous(a.witness, 1));
    CHECK(oracle::distinct_distances(a.witness) == a.lower);
    const auto b = delta2(n, Method::FullTransitive);
    CHECK(oracle::k_homogeneous(b.witness, 2));
    CHECK(oracle::distinct_distances(b.witness) == b.lower);
  }
}

TEST_CASE("parallel kernels match the serial reference") {
  for (int n = 4; n <= 8; ++n) {
    const auto groups = enumerate_transitive_groups(n);
    for (int k = 1; k <= 2; ++k) {
      const auto s = best_orbital_coloring_serial(groups, k);
      for (int jobs : {1, 2, 4}) {
        const auto p = best_orbital_coloring_parallel(groups, k, jobs);
        CHECK(p.best == s.best);
        CHECK(p.delta == s.delta);
      }
    }
  }
  for (int n = 1; n <= 5; ++n)
    for (int k = 1; k <= 2; ++k) {
      const auto s = partition_oracle_serial(n, k);
      const auto p = partition_oracle_parallel(n, k, 3);
      CHECK(s.delta == p.delta);
      CHECK(s.partitions == p.partitions);
      CHECK(canonical_form(s.witness) == canonical_form(p.witness));
    }
}

TEST_CASE("random transitive groups are deterministic") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const int n = 1 + static_cast<int>(seed % 10);
    const auto a = random_transitive_group(n, seed), b = random_transitive_group(n, seed);
    CHECK(is_transitive(a));
    CHECK(a.elements() == b.elements());
  }
}

TEST_CASE("verify_table") {
  CHECK(verify_table(1).all_match);
  const auto t = verify_table(8);
  CHECK(t.all_match);
  for (const auto& row : t.rows) {
    CHECK(row.delta1_full);
    CHECK(row.delta1_regular.exact());
  }
  CHECK_THROWS_AS(verify_table(17), Error);
}
