#pragma once

#include <string>
#include <string_view>

#include "json.hpp"

#include "homlab/amalgamation.hpp"
#include "homlab/classify.hpp"
#include "homlab/constructions.hpp"
#include "homlab/extremal.hpp"
#include "homlab/homogeneity.hpp"
#include "homlab/structure.hpp"

namespace homlab {

using Json = nlohmann::ordered_json;

// {"n": int, "colors": [[int]], "palette": [float] optional}.
Json to_json(const ColoredSpace& space);
ColoredSpace space_from_json(const Json& j);

// First line n, then n rows of color indices.
std::string to_text(const ColoredSpace& space);
ColoredSpace space_from_text(std::string_view text);

// JSON when the first non-blank character is '{', text otherwise. Throws
// ParseError or any new_space error.
ColoredSpace parse_space(std::string_view content);

// Throws ParseError when the file cannot be read.
std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

ColoredSpace read_space(const std::string& path);
// Text format for paths ending in ".txt", JSON otherwise.
void write_space(const std::string& path, const ColoredSpace& space);

// {"R": [float], "t": [[int]]}.
Json to_json(const TriangleScheme& s);
TriangleScheme scheme_from_json(const Json& j);

// {"m": int, "norm": [float]}.
Json to_json(const NormTable& t);
NormTable norm_table_from_json(const Json& j);

Json to_json(const Permutation& p);
Json to_json(const PermGroup& g);
Json to_json(const HomogeneityReport& r);
Json to_json(const Decomposition& d);
Json to_json(const NormProperties& p);
Json to_json(const RainbowFactorization& f);
Json to_json(const Classification& c);
Json to_json(const SchemeReport& r);
Json to_json(const WapGadget& w);
Json to_json(const SearchReport& r);
Json to_json(const TableReport& r);

// Aligned text table with the columns of the published table.
std::string table_text(const TableReport& r);
std::string search_text(const SearchReport& r);

}  // namespace homlab
