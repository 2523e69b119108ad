#include <algorithm>

#include "doctest.h"
#include "homlab/amalgamation.hpp"
#include "homlab/error.hpp"
#include "homlab/constructions.hpp"
#include "homlab/homogeneity.hpp"
#include "homlab/structure.hpp"

using namespace homlab;

namespace {

// Direct transcription of the affine-line completion on Z3 x Z3: the third
// point of the line through distinct u, v is 2u + 2v (mod 3).
std::array<int, 2> third(std::array<int, 2> u, std::array<int, 2> v) {
  return {(2 * u[0] + 2 * v[0]) % 3, (2 * u[1] + 2 * v[1]) % 3};
}

}  // namespace

TEST_CASE("validate_scheme") {
  CHECK(validate_scheme(scheme_from_space(binary_space(2))).valid());

  // t(1, 2) = 2 forces 1 to be the zero distance.
  TriangleScheme bad = scheme_from_space(binary_space(2));
  bad.t[1][2] = bad.t[2][1] = 2;
  CHECK_FALSE(validate_scheme(bad).valid());

  const auto z = z3z3_counterexample();
  const auto rep = validate_scheme(z);
  CHECK(rep.symmetric_and_bounded);
  CHECK(rep.involutive);

  TriangleScheme broken{{0, 1}, {{0, 1}}};
  CHECK_THROWS_AS(validate_scheme(broken), Error);
  TriangleScheme no_zero{{1, 2}, {{0, 1}, {1, 0}}};
  CHECK_THROWS_AS(validate_scheme(no_zero), Error);
}

TEST_CASE("z3z3 scheme is the affine plane") {
  const auto z = z3z3_counterexample();
  CHECK(z.size() == 10);
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int c = 0; c < 3; ++c)
        for (int d = 0; d < 3; ++d) {
          if (a == c && b == d) continue;
          const auto w = third({a, b}, {c, d});
          CHECK(z.t[z3z3_index(a, b)][z3z3_index(c, d)] == z3z3_index(w[0], w[1]));
        }
  for (double r : z.r) CHECK((r == 0 || (r >= 1 && r <= 2)));
}

TEST_CASE("coherence") {
  CHECK_FALSE(coherence_check(scheme_from_space(binary_space(3))));

  const auto z = z3z3_counterexample();
  REQUIRE(coherence_check(z));
  // t((0,1),(0,2)) = (0,0) = t((1,0),(2,0)) while t((0,1),(1,0)) = (2,2)
  // differs from t((0,2),(2,0)) = (1,1).
  const CoherenceWitness w{z3z3_index(0, 1), z3z3_index(0, 2), z3z3_index(1, 0), z3z3_index(2, 0)};
  CHECK(z.t[w[0]][w[1]] == z3z3_index(0, 0));
  CHECK(z.t[w[2]][w[3]] == z3z3_index(0, 0));
  CHECK(z.t[w[0]][w[2]] == z3z3_index(2, 2));
  CHECK(z.t[w[1]][w[3]] == z3z3_index(1, 1));
  const auto all = coherence_witnesses(z);
  CHECK(std::find(all.begin(), all.end(), w) != all.end());
  CHECK(all.front() == *coherence_check(z));

  TriangleScheme single{{0}, {{0}}};
  CHECK_FALSE(coherence_check(single));
}

TEST_CASE("limit_space") {
  const auto x2 = binary_space(2);
  CHECK(canonical_form(limit_space(scheme_from_space(x2))) == canonical_form(x2));
  TriangleScheme single{{0}, {{0}}};
  CHECK(limit_space(single).size() == 1);
  TriangleScheme pair{{0, 1.5}, {{0, 1}, {1, 0}}};
  const auto p = limit_space(pair);
  CHECK(p.size() == 2);
  CHECK(p.distance(0, 1) == 1.5);
  CHECK_THROWS_AS(limit_space(z3z3_counterexample()), Error);
}

TEST_CASE("scheme_from_space") {
  const auto s = scheme_from_space(binary_space(3));
  for (int p = 0; p < 8; ++p)
    for (int q = 0; q < 8; ++q) CHECK(s.r[s.t[p][q]] == (static_cast<int>(s.r[p]) ^ static_cast<int>(s.r[q])));

  const double a = 1.0, b = 1.1, c = 1.2;
  const auto t = scheme_from_space(tetrahedron(a, b, c));
  auto idx = [&](double v) {
    return static_cast<int>(std::find(t.r.begin(), t.r.end(), v) - t.r.begin());
  };
  CHECK(t.t[idx(a)][idx(b)] == idx(c));
  CHECK(t.t[idx(b)][idx(c)] == idx(a));
  CHECK(t.t[idx(c)][idx(a)] == idx(b));

  const auto one = scheme_from_space(new_space({{0}}));
  CHECK(one.r == std::vector<double>{0});
  CHECK_THROWS_AS(scheme_from_space(cycle(4)), Error);
}

TEST_CASE("limit spaces of coherent schemes have power-of-two size") {
  for (const auto& x : {binary_space(1), binary_space(2), binary_space(3), tetrahedron(1.0, 1.1, 1.2),
                        boolean_space({3, {0, 10, 11, 14, 12, 16, 15, 13}})}) {
    const auto s = scheme_from_space(x);
    const auto l = limit_space(s);
    CHECK(l.size() == s.size());
    CHECK((l.size() & (l.size() - 1)) == 0);
    CHECK(is_ultrahomogeneous(l));
    // Round trip on the scheme side, up to relabeling of R.
    const auto s2 = scheme_from_space(l);
    CHECK(canonical_form(limit_space(s2)) == canonical_form(l));
  }
}
