#include <random>

#include "doctest.h"
#include "homlab/constructions.hpp"
#include "homlab/error.hpp"
#include "homlab/space.hpp"
#include "oracles.hpp"

using namespace homlab;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected a homlab::Error");
  return ErrorKind::InternalInvariantViolation;
}

}  // namespace

TEST_CASE("new_space validates and counts distances") {
  CHECK(delta(new_space({{0}})) == 1);
  const auto two = new_space({{0, 1}, {1, 0}}, std::vector<double>{0, 1});
  CHECK(two.size() == 2);
  CHECK(delta(two) == 2);

  CHECK(kind_of([] { new_space({{0, 1}, {2, 0}}); }) == ErrorKind::AsymmetricMatrix);
  CHECK(kind_of([] { new_space({{1, 1}, {1, 0}}); }) == ErrorKind::DiagonalNotZero);
  CHECK(kind_of([] { new_space({{0, 0}, {0, 0}}); }) == ErrorKind::OffDiagonalZero);
  CHECK(kind_of([] {
          new_space({{0, 1, 1}, {1, 0, 2}, {1, 2, 0}}, std::vector<double>{0, 1, 3});
        }) == ErrorKind::TriangleViolation);
  CHECK(kind_of([] { new_space({{0, 1}, {1, 0}}, std::vector<double>{0, 2, 1}); }) ==
        ErrorKind::PaletteNotStrictlyIncreasing);
}

TEST_CASE("colors are compacted preserving order") {
  const auto s = new_space({{0, 5, 9}, {5, 0, 5}, {9, 5, 0}});
  CHECK(s.num_colors() == 3);
  CHECK(s.color(0, 1) == 1);
  CHECK(s.color(0, 2) == 2);
}

TEST_CASE("from_metric") {
  RealMatrix c5(5, std::vector<double>(5));
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) c5[i][j] = std::min((i - j + 5) % 5, (j - i + 5) % 5);
  CHECK(delta(from_metric(c5)) == 3);

  const double a = 1.0, b = 1.1, c = 1.2;
  const RealMatrix tet = {{0, a, b, c}, {a, 0, c, b}, {b, c, 0, a}, {c, b, a, 0}};
  const auto t = from_metric(tet);
  CHECK(delta(t) == oracle::distinct_distances(t));
  CHECK(delta(t) == 4);
  CHECK(delta(from_metric({{0}})) == 1);

  // 1.0 and 1.0+1e-10 merge; the result keeps one color.
  CHECK(delta(from_metric({{0, 1.0, 1.0 + 1e-10}, {1.0, 0, 1.0}, {1.0 + 1e-10, 1.0, 0}})) == 2);
}

TEST_CASE("realize_metric palettes") {
  CHECK(*realize_metric(new_space({{0}}), 1.0).palette() == std::vector<double>{0});
  const auto c5 = realize_metric(cycle(5), 1.0);
  CHECK(*c5.palette() == std::vector<double>{0, 1, 1.5});
  CHECK(*realize_metric(discrete_space(3), 2.0).palette() == std::vector<double>{0, 2});

  // Exhaustive triangle check on a realized 4-color space.
  const auto x = realize_metric(binary_space(2), 1.0);
  std::vector<double> d;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) d.push_back(x.distance(i, j));
  CHECK(satisfies_triangle_inequality(4, d));
}

TEST_CASE("canonical_form examples") {
  const auto c4 = cycle(4);
  const std::vector<int> swap02{2, 1, 0, 3};
  CHECK(canonical_form(c4) == canonical_form(relabel_points(c4, swap02)));
  CHECK(canonical_form(c4) != canonical_form(discrete_space(4)));

  // Tetrahedron under every point relabeling and every color relabeling.
  const auto tet = tetrahedron(1.0, 1.1, 1.2);
  const auto ref = canonical_form(tet);
  std::vector<int> p{0, 1, 2, 3};
  do {
    std::vector<int> c{0, 1, 2, 3};
    do {
      CHECK(canonical_form(relabel_colors(relabel_points(tet, p), c)) == ref);
    } while (std::next_permutation(c.begin() + 1, c.end()));
  } while (std::next_permutation(p.begin(), p.end()));
}

TEST_CASE("canonical_form agrees with brute-force isomorphism") {
  std::mt19937_64 rng(12345);
  int equal = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 3 + static_cast<int>(rng() % 4);
    const int colors = 1 + static_cast<int>(rng() % 3);
    const auto a = oracle::random_coloring(n, colors, rng);
    ColoredSpace b;
    if (trial % 2) {
      b = relabel_points(a, oracle::random_perm(n, rng));
    } else {
      b = oracle::random_coloring(n, colors, rng);
    }
    const bool same = canonical_form(a) == canonical_form(b);
    equal += same;
    CHECK(same == oracle::isomorphic(a, b));
  }
  CHECK(equal >= 150);
}

TEST_CASE("canonical_form on symmetric spaces") {
  std::mt19937_64 rng(7);
  for (const auto& s : {binary_space(4), d_space(6), e_space(1, 1), discrete_space(9), cycle(12)}) {
    const auto ref = canonical_form(s);
    for (int t = 0; t < 5; ++t) CHECK(canonical_form(relabel_points(s, oracle::random_perm(s.size(), rng))) == ref);
  }
  CHECK(canonical_form(d_space(5)) != canonical_form(b_space(1, 2)));
}

TEST_CASE("subspace and empty space") {
  const auto s = subspace(cycle(6), std::vector<int>{0, 3});
  CHECK(s.size() == 2);
  CHECK(s.distance(0, 1) == 3);
  CHECK(new_space(ColorMatrix{}).empty());
}
