#include <random>

#include "doctest.h"
#include "homlab/constructions.hpp"
#include "homlab/homogeneity.hpp"
#include "homlab/permgroup.hpp"
#include "oracles.hpp"

using namespace homlab;

namespace {

Permutation perm(std::vector<int> v) { return Permutation::from_images(v); }

std::vector<oracle::Perm> as_vectors(const std::vector<Permutation>& ps) {
  std::vector<oracle::Perm> out;
  for (const auto& p : ps) out.push_back(p.to_vector());
  return out;
}

}  // namespace

TEST_CASE("close") {
  CHECK(close(3, {}).order() == 1);
  const auto d4 = close(4, {perm({1, 2, 3, 0}), perm({0, 3, 2, 1})});
  CHECK(d4.order() == 8);
  CHECK(static_cast<size_t>(d4.order()) == oracle::automorphisms(cycle(4)).size());
  CHECK(close(2, {perm({1, 0})}).order() == 2);
  CHECK_THROWS_AS(close(8, {perm({1, 2, 3, 4, 5, 6, 7, 0}), perm({1, 0, 2, 3, 4, 5, 6, 7})}, 100),
                  Error);
}

TEST_CASE("closure matches the oracle on random generators") {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 40; ++t) {
    const int n = 2 + static_cast<int>(rng() % 5);
    std::vector<Permutation> gens;
    const int k = 1 + static_cast<int>(rng() % 2);
    for (int i = 0; i < k; ++i) gens.push_back(perm(oracle::random_perm(n, rng)));
    const auto g = close(n, gens);
    CHECK(static_cast<size_t>(g.order()) == oracle::closure(n, as_vectors(gens)).size());
    CHECK(pair_orbitals(g).size() ==
          static_cast<size_t>(oracle::pair_orbit_count(n, as_vectors(gens))));
  }
}

TEST_CASE("orbits and orbitals") {
  const auto c5 = close(5, {perm({1, 2, 3, 4, 0})});
  const auto orb = pair_orbitals(c5);
  REQUIRE(orb.size() == 2);
  for (const auto& o : orb) {
    const auto [i, j] = o.front();
    const int d = std::min((j - i + 5) % 5, (i - j + 5) % 5);
    for (auto [a, b] : o) CHECK(std::min((b - a + 5) % 5, (a - b + 5) % 5) == d);
  }
  CHECK(point_orbits(trivial_group(3)).size() == 3);
  CHECK(pair_orbitals(symmetric_group(4)).size() == 1);
}

TEST_CASE("structural predicates") {
  const auto c5 = close(5, {perm({1, 2, 3, 4, 0})});
  CHECK(is_transitive(c5));
  CHECK(is_regular(c5));
  CHECK(is_abelian(c5));
  CHECK_FALSE(is_boolean(c5));

  const auto klein = close(4, {perm({1, 0, 3, 2}), perm({2, 3, 0, 1})});
  CHECK(klein.order() == 4);
  CHECK(is_regular(klein));
  CHECK(is_boolean(klein));

  const auto stab = close(3, {perm({0, 2, 1})});
  CHECK_FALSE(is_transitive(stab));
  CHECK(count_involutions(symmetric_group(3)) == 3);
}

TEST_CASE("regular groups: counts and pairwise non-isomorphic") {
  // Number of groups of order n, n = 1..16.
  const int counts[] = {1, 1, 1, 2, 1, 2, 1, 5, 2, 2, 1, 5, 1, 2, 1, 14};
  for (int n = 1; n <= 16; ++n) {
    const auto groups = enumerate_regular_groups(n);
    CHECK_MESSAGE(static_cast<int>(groups.size()) == counts[n - 1], "n = " << n);
    for (const auto& g : groups) {
      CHECK(g.order() == n);
      CHECK(is_regular(g));
    }
    // Regular representations are conjugate iff the groups are isomorphic.
    if (n <= 8)
      for (size_t i = 0; i < groups.size(); ++i)
        for (size_t j = i + 1; j < groups.size(); ++j) CHECK_FALSE(are_conjugate(groups[i], groups[j]));
  }
  CHECK(enumerate_regular_groups_extended(18).size() == 5);
  CHECK(enumerate_regular_groups_extended(20).size() == 5);
}

TEST_CASE("transitive groups agree with an exhaustive subgroup scan") {
  for (int n = 1; n <= 5; ++n) {
    std::vector<std::set<oracle::Perm>> trans;
    for (const auto& g : oracle::two_generated_subgroups(n))
      if (oracle::transitive(n, g)) trans.push_back(g);
    const int classes = oracle::conjugacy_classes(n, trans);
    const auto groups = enumerate_transitive_groups(n);
    CHECK_MESSAGE(static_cast<int>(groups.size()) == classes, "n = " << n);

    // Minimal: no proper transitive subgroup.
    std::vector<std::set<oracle::Perm>> minimal;
    for (const auto& g : trans) {
      bool is_min = true;
      for (const auto& h : trans)
        if (h.size() < g.size() && std::includes(g.begin(), g.end(), h.begin(), h.end())) is_min = false;
      if (is_min) minimal.push_back(g);
    }
    CHECK(static_cast<int>(minimal_transitive_groups(groups).size()) ==
          oracle::conjugacy_classes(n, minimal));
  }
  CHECK(enumerate_transitive_groups(3).size() == 2);
  CHECK(enumerate_transitive_groups(4).size() == 5);
}

TEST_CASE("transitive group counts up to degree 8") {
  const size_t counts[] = {1, 1, 2, 5, 5, 16, 7, 50};
  for (int n = 6; n <= 8; ++n) {
    const auto groups = enumerate_transitive_groups(n);
    CHECK(groups.size() == counts[n - 1]);
    for (size_t i = 0; i < groups.size(); ++i) CHECK(is_transitive(groups[i]));
  }
}
