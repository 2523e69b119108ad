#include <cstdio>
#include <filesystem>

#include "doctest.h"
#include "homlab/error.hpp"
#include "homlab//constructions.hpp"
#include "homlab/io.hpp"

using namespace homlab;

TEST_CASE("json round trip") {
  for (const auto& s : {cycle(5), d_space(3), discrete_space(3), new_space(ColorMatrix{})}) {
    CHECK(space_from_json(to_json(s)) == s);
    CHECK(parse_space(to_json(s).dump()) == s);
  }
}

TEST_CASE("text round trip drops the palette") {
  const auto s = e_space(0, 1);
  const auto back = parse_space(to_text(s));
  CHECK(back.matrix() == s.matrix());
  CHECK_FALSE(back.has_palette());
}

TEST_CASE("files") {
  const auto dir = std::filesystem::temp_directory_path();
  const auto json_path = (dir / "homlab_io_test.json").string();
  const auto text_path = (dir / "homlab_io_test.txt").string();
  write_space(json_path, binary_space(2));
  CHECK(read_space(json_path) == binary_space(2));
  write_space(text_path, binary_space(2));
  CHECK(read_space(text_path).matrix() == binary_space(2).matrix());
  std::remove(json_path.c_str());
  std::remove(text_path.c_str());
  CHECK_THROWS_AS(read_space((dir / "homlab_missing.json").string()), Error);
}

TEST_CASE("parse errors") {
  CHECK_THROWS_AS(parse_space("{\"n\": 2}"), Error);
  CHECK_THROWS_AS(parse_space("{\"n\": 2, \"colors\": [[0,1]]}"), Error);
  CHECK_THROWS_AS(parse_space("{oops"), Error);
  CHECK_THROWS_AS(parse_space("2\n0 1\n1"), Error);
  CHECK_THROWS_AS(parse_space("2\n0 1\n2 0"), Error);
}

TEST_CASE("scheme and norm table json") {
  const auto z = z3z3_counterexample();
  const auto back = scheme_from_json(to_json(z));
  CHECK(back.r == z.r);
  CHECK(back.t == z.t);
  const NormTable t{2, {0, 1, 2, 3}};
  CHECK(norm_table_from_json(to_json(t)).norm == t.norm);
  CHECK_THROWS_AS(norm_table_from_json(Json::parse("{\"m\": 2, \"norm\": [0, 1]}")), Error);
}

TEST_CASE("reports serialize") {
  const auto r = verify_table(3);
  const Json j = to_json(r);
  CHECK(j["all_match"] == true);
  CHECK(j["rows"].size() == 3);
  CHECK(table_text(r).find("all rows match") != std::string::npos);
}
