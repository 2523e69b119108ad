#include "doctest.h"
#include "homlab/classify.hpp"
#include "homlab/constructions.hpp"
#include "homlab/homogeneity.hpp"
#include "homlab/structure.hpp"
#include "oracles.hpp"

using namespace homlab;

namespace {

// The norm table of the non-monotone example, indexed by bitmask.
NormTable nonmonotone_table() { return {3, {0, 10, 11, 14, 12, 16, 15, 13}}; }

// Brute-force: is every row of colors injective?
bool rows_injective(const ColoredSpace& s) {
  for (int x = 0; x < s.size(); ++x) {
    std::set<int> seen;
    for (int y = 0; y < s.size(); ++y)
      if (!seen.insert(s.color(x, y)).second) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("isosceles-free") {
  CHECK(is_isosceles_free(hexagon({1.1, 1.2, 1.3, 1.4, 1.5})));
  CHECK_FALSE(is_isosceles_free(cycle(4)));
  CHECK(is_isosceles_free(tetrahedron(1.0, 1.1, 1.2)));
  for (const auto& s : {cycle(5), d_space(3), binary_space(3), e_space(0, 1)})
    CHECK(is_isosceles_free(s) == rows_injective(s));
}

TEST_CASE("singleton distances") {
  CHECK(singleton_distances(cycle(4)) == std::vector<int>{0, cycle(4).color(0, 2)});
  CHECK(singleton_distances(binary_space(2)).size() == 4);
  CHECK(singleton_distances(cycle(5)) == std::vector<int>{0});
  CHECK_THROWS_AS(singleton_distances(hexagon({1.1, 1.2, 1.3, 1.4, 1.5})), Error);
}

TEST_CASE("isosceles-free components") {
  const auto c4 = isosceles_free_components(cycle(4));
  CHECK(c4.blocks == std::vector<std::vector<int>>{{0, 2}, {1, 3}});
  CHECK(aut_star(cycle(4), c4).order() == 4);
  CHECK(isosceles_free_components(binary_space(2)).blocks.size() == 1);
  CHECK(isosceles_free_components(cycle(5)).blocks.size() == 5);
  CHECK_THROWS_AS(isosceles_free_components(d_space(3)), Error);
}

TEST_CASE("isosceles-generated components and quotient") {
  const auto d3 = d_space(3);
  const auto dec = isosceles_generated_components(d3);
  CHECK(dec.blocks == std::vector<std::vector<int>>{{0, 1, 2}, {3, 4, 5}});
  CHECK(aut_star(d3, dec).order() == 3);
  CHECK(quotient_space(d3, dec).size() == 2);

  const auto x2 = binary_space(2);
  const auto dx = isosceles_generated_components(x2);
  CHECK(dx.blocks.size() == 4);
  CHECK(canonical_form(quotient_space(x2, dx)) == canonical_form(x2));

  const auto dc = isosceles_generated_components(cycle(5));
  CHECK(dc.blocks.size() == 1);
  CHECK(quotient_space(cycle(5), dc).size() == 1);

  // The realized quotient palette sits in {0} ∪ [a, 2a].
  const auto q = quotient_space(e_space(1, 1), isosceles_generated_components(e_space(1, 1)), 3.0);
  for (double v : *q.palette()) CHECK((v == 0 || (v >= 3.0 && v <= 6.0)));
}

TEST_CASE("aut_star with singleton blocks is trivial") {
  for (const auto& s : {binary_space(3), cycle(5), discrete_space(3)}) {
    Decomposition d;
    for (int i = 0; i < s.size(); ++i) d.blocks.push_back({i});
    CHECK(aut_star(s, d).order() == 1);
  }
  const auto x3 = binary_space(3);
  CHECK(aut_star(x3, isosceles_generated_components(x3)).order() == 1);
}

TEST_CASE("boolean spaces") {
  CHECK(is_boolean_space(binary_space(3)));
  CHECK_FALSE(is_boolean_space(d_space(3)));
  CHECK_FALSE(is_boolean_space(discrete_space(4)));
  CHECK(is_boolean_space(discrete_boolean_duplicate(2)));
}

TEST_CASE("norm tables") {
  const auto t = to_norm_table(binary_space(2));
  CHECK(t.m == 2);
  CHECK(t.norm == std::vector<double>{0, 1, 2, 3});
  CHECK(to_norm_table(new_space({{0}})).norm == std::vector<double>{0});

  const auto tt = to_norm_table(tetrahedron(1.0, 1.1, 1.2));
  std::vector<double> sorted = tt.norm;
  std::sort(sorted.begin(), sorted.end());
  CHECK(sorted == std::vector<double>{0, 1.0, 1.1, 1.2});

  CHECK_THROWS_AS(to_norm_table(cycle(4)), Error);
  CHECK_THROWS_AS(to_norm_table(hexagon({1.1, 1.2, 1.3, 1.4, 1.5})), Error);
}

TEST_CASE("norm properties") {
  const auto x2 = norm_properties(to_norm_table(binary_space(2)));
  CHECK(x2.additive);
  CHECK(x2.monotone);
  std::vector<double> w = x2.weights;
  std::sort(w.begin(), w.end());
  CHECK(w == std::vector<double>{1, 2});

  const auto p = norm_properties(nonmonotone_table());
  CHECK_FALSE(p.monotone);
  CHECK_FALSE(p.additive);
  CHECK(p.bases_checked == 168);

  const NormTable big{5, std::vector<double>(32, 0)};
  CHECK_THROWS_AS(norm_properties(big), Error);
}

TEST_CASE("nonmonotone table gives a homogeneous isosceles-free space") {
  const auto s = boolean_space(nonmonotone_table());
  CHECK(s.size() == 8);
  CHECK(is_isosceles_free(s));
  CHECK(oracle::k_homogeneous(s, 1));
}

TEST_CASE("classify") {
  const auto d3 = classify(d_space(3));
  CHECK(d3.labels == std::vector<Label>{Label::RainbowDuplicate});
  REQUIRE(d3.factorization);
  CHECK(canonical_form(d3.factorization->base) == canonical_form(cycle(3)));

  const auto x2 = classify(binary_space(2));
  CHECK(x2.has(Label::Boolean));
  CHECK(x2.two_homogeneous_case == Label::IsoscelesFree);

  const auto c5 = classify(cycle(5));
  CHECK(c5.labels == std::vector<Label>{Label::IsoscelesGenerated});
  CHECK(c5.two_homogeneous_case == Label::IsoscelesGenerated);

  CHECK_THROWS_AS(classify(hexagon({1.1, 1.2, 1.3, 1.4, 1.5})), Error);
}
