#include "homlab/io.hpp"

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "homlab/error.hpp"

namespace homlab {

namespace {

template <typename F>
auto parse_guard(std::string_view what, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Json::exception& e) {
    fail(ErrorKind::ParseError, std::string(what) + ": " + e.what());
  }
}

Json optional_witness(const std::optional<std::array<int, 2>>& w) {
  return w ? Json(*w) : Json(nullptr);
}

}  // namespace

Json to_json(const ColoredSpace& space) {
  Json j;
  j["n"] = space.size();
  j["colors"] = space.matrix();
  if (space.has_palette()) j["palette"] = *space.palette();
  return j;
}

ColoredSpace space_from_json(const Json& j) {
  return parse_guard("space", [&] {
    if (!j.is_object()) fail(ErrorKind::ParseError, "space must be a JSON object");
    const int n = j.at("n").get<int>();
    const auto colors = j.at("colors").get<ColorMatrix>();
    if (n < 0 || static_cast<int>(colors.size()) != n)
      fail(ErrorKind::ParseError, "colors must have n rows");
    for (const auto& row : colors)
      if (static_cast<int>(row.size()) != n) fail(ErrorKind::ParseError, "colors must be n x n");
    std::optional<std::vector<double>> palette;
    if (j.contains("palette") && !j["palette"].is_null())
      palette = j["palette"].get<std::vector<double>>();
    return new_space(colors, palette);
  });
}

std::string to_text(const ColoredSpace& space) {
  std::ostringstream os;
  const int n = space.size();
  os << n << '\n';
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) os << (j ? " " : "") << space.color(i, j);
    os << '\n';
  }
  return os.str();
}

ColoredSpace space_from_text(std::string_view text) {
  std::istringstream is{std::string(text)};
  int n = -1;
  if (!(is >> n) || n < 0) fail(ErrorKind::ParseError, "text space must start with n >= 0");
  ColorMatrix m(n, std::vector<int>(n));
  for (auto& row : m)
    for (int& c : row)
      if (!(is >> c)) fail(ErrorKind::ParseError, "text space needs n rows of n colors");
  std::string extra;
  if (is >> extra) fail(ErrorKind::ParseError, "trailing data after color matrix");
  return new_space(m);
}

ColoredSpace parse_space(std::string_view content) {
  const size_t p = content.find_first_not_of(" \t\r\n");
  if (p != std::string_view::npos && content[p] == '{') {
    const Json j = parse_guard("space", [&] { return Json::parse(content); });
    return space_from_json(j);
  }
  return space_from_text(content);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::ParseError, "cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << content)) fail(ErrorKind::ParseError, "cannot write " + path);
}

ColoredSpace read_space(const std::string& path) { return parse_space(read_file(path)); }

void write_space(const std::string& path, const ColoredSpace& space) {
  const bool text = path.size() >= 4 && path.compare(path.size() - 4, 4, ".txt") == 0;
  write_file(path, text ? to_text(space) : to_json(space).dump(2) + "\n");
}

Json to_json(const TriangleScheme& s) {
  Json j;
  j["R"] = s.r;
  j["t"] = s.t;
  return j;
}

TriangleScheme scheme_from_json(const Json& j) {
  return parse_guard("scheme", [&] {
    TriangleScheme s;
    s.r = j.at("R").get<std::vector<double>>();
    s.t = j.at("t").get<std::vector<std::vector<int>>>();
    return s;
  });
}

Json to_json(const NormTable& t) {
  Json j;
  j["m"] = t.m;
  j["norm"] = t.norm;
  return j;
}

NormTable norm_table_from_json(const Json& j) {
  return parse_guard("norm table", [&] {
    NormTable t;
    t.m = j.at("m").get<int>();
    t.norm = j.at("norm").get<std::vector<double>>();
    if (t.m < 0 || t.m > 30 || t.norm.size() != (size_t{1} << t.m))
      fail(ErrorKind::ParseError, "norm must have 2^m entries");
    return t;
  });
}

Json to_json(const Permutation& p) { return p.to_vector(); }

Json to_json(const PermGroup& g) {
  Json j;
  j["degree"] = g.degree();
  j["order"] = g.order();
  Json gens = Json::array();
  for (const auto& p : g.generators()) gens.push_back(to_json(p));
  j["generators"] = gens;
  return j;
}

Json to_json(const HomogeneityReport& r) {
  Json j;
  Json k = Json::object(), u = Json::object();
  for (auto [key, v] : r.is_k_homogeneous) k[std::to_string(key)] = v;
  for (auto [key, v] : r.unique) u[std::to_string(key)] = v;
  j["k_homogeneous"] = k;
  j["uniquely_k_homogeneous"] = u;
  j["ultrahomogeneous"] = r.ultra ? Json(*r.ultra) : Json(nullptr);
  j["aut_order"] = r.aut_order;
  return j;
}

Json to_json(const Decomposition& d) {
  Json j;
  j["kind"] = d.kind == DecompositionKind::IsoscelesFree ? "isosceles_free" : "isosceles_generated";
  j["blocks"] = d.blocks;
  return j;
}

Json to_json(const NormProperties& p) {
  Json j;
  j["additive"] = p.additive;
  j["monotone"] = p.monotone;
  j["additive_basis"] = p.additive ? Json(p.additive_basis) : Json(nullptr);
  j["monotone_basis"] = p.monotone ? Json(p.monotone_basis) : Json(nullptr);
  j["weights"] = p.additive ? Json(p.weights) : Json(nullptr);
  j["bases_checked"] = p.bases_checked;
  return j;
}

Json to_json(const RainbowFactorization& f) {
  Json j;
  j["base"] = to_json(f.base);
  j["base_points"] = f.base_points;
  j["partner"] = f.partner;
  Json h = Json::array();
  for (const auto& p : f.params.h) h.push_back(to_json(p));
  j["h"] = h;
  j["g"] = to_json(f.params.g);
  j["r"] = f.params.r;
  return j;
}

Json to_json(const Classification& c) {
  Json j;
  Json labels = Json::array();
  for (Label l : c.labels) labels.push_back(std::string(to_string(l)));
  j["labels"] = labels;
  j["components"] = c.components;
  j["two_homogeneous_case"] =
      c.two_homogeneous_case ? Json(std::string(to_string(*c.two_homogeneous_case))) : Json(nullptr);
  j["factorization"] = c.factorization ? to_json(*c.factorization) : Json(nullptr);
  return j;
}

Json to_json(const SchemeReport& r) {
  Json j;
  j["valid"] = r.valid();
  j["symmetric_and_bounded"] = r.symmetric_and_bounded;
  j["involutive"] = r.involutive;
  j["bound_witness"] = optional_witness(r.bound_witness);
  j["involution_witness"] = optional_witness(r.involution_witness);
  return j;
}

Json to_json(const WapGadget& w) {
  Json j;
  j["r0"] = w.r0;
  j["eps"] = w.eps;
  j["r1"] = w.r1;
  j["obstruction"] = w.obstruction;
  j["detail"] = w.detail;
  j["x"] = to_json(w.x);
  j["y"] = to_json(w.y);
  return j;
}

Json to_json(const SearchReport& r) {
  Json j;
  j["n"] = r.n;
  j["target"] = std::string(to_string(r.target));
  j["method"] = std::string(to_string(r.method));
  j["lower"] = r.lower;
  j["upper"] = r.upper;
  j["exact"] = r.exact();
  j["candidates"] = r.candidates;
  j["witness_group"] = to_json(r.witness_group);
  j["witness"] = to_json(r.witness);
  j["elapsed_seconds"] = r.elapsed_seconds;
  return j;
}

Json to_json(const TableReport& r) {
  Json rows = Json::array();
  auto bounds = [](const std::optional<SearchReport>& s) {
    return s ? Json(s->lower) : Json(nullptr);
  };
  for (const auto& row : r.rows) {
    Json j;
    j["n"] = row.n;
    j["published_delta2"] = row.published_delta2;
    j["published_delta1"] = row.published_delta1;
    j["delta2_formula"] = row.delta2_formula.lower;
    j["delta2_full"] = bounds(row.delta2_full);
    j["delta2_oracle"] = bounds(row.delta2_oracle);
    j["delta1_regular"] = {row.delta1_regular.lower, row.delta1_regular.upper};
    j["delta1_full"] = bounds(row.delta1_full);
    j["delta1_oracle"] = bounds(row.delta1_oracle);
    j["match"] = row.match;
    if (!row.match) j["detail"] = row.detail;
    rows.push_back(j);
  }
  Json j;
  j["rows"] = rows;
  j["all_match"] = r.all_match;
  j["elapsed_seconds"] = r.elapsed_seconds;
  return j;
}

std::string table_text(const TableReport& r) {
  auto cell = [](const std::optional<SearchReport>& s) {
    return s ? std::to_string(s->lower) : std::string("-");
  };
  std::ostringstream os;
  os << std::setw(4) << "n" << std::setw(8) << "D2" << std::setw(8) << "D1" << std::setw(10)
     << "D2 form" << std::setw(9) << "D2 full" << std::setw(8) << "D2 orc" << std::setw(12)
     << "D1 regular" << std::setw(9) << "D1 full" << std::setw(8) << "D1 orc" << "  ok\n";
  for (const auto& row : r.rows) {
    const auto& reg = row.delta1_regular;
    const std::string regular = reg.exact() ? std::to_string(reg.lower)
                                            : "[" + std::to_string(reg.lower) + "," +
                                                  std::to_string(reg.upper) + "]";
    os << std::setw(4) << row.n << std::setw(8) << row.published_delta2 << std::setw(8)
       << row.published_delta1 << std::setw(10) << row.delta2_formula.lower << std::setw(9)
       << cell(row.delta2_full) << std::setw(8) << cell(row.delta2_oracle) << std::setw(12)
       << regular << std::setw(9) << cell(row.delta1_full) << std::setw(8)
       << cell(row.delta1_oracle) << "  " << (row.match ? "yes" : "NO " + row.detail) << '\n';
  }
  os << (r.all_match ? "all rows match" : "MISMATCH") << " (" << std::fixed
     << std::setprecision(2) << r.elapsed_seconds << " s)\n";
  return os.str();
}

std::string search_text(const SearchReport& r) {
  std::ostringstream os;
  os << to_string(r.target) << "(" << r.n << ") via " << to_string(r.method) << ": ";
  if (r.exact())
    os << r.lower;
  else
    os << "[" << r.lower << ", " << r.upper << "]";
  os << "  witness group order " << r.witness_group.order() << ", " << r.candidates
     << " candidates, " << std::fixed << std::setprecision(3) << r.elapsed_seconds << " s\n";
  return os.str();
}

}  // namespace homlab
