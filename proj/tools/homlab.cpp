// homlab: command-line front end. Analysis output is JSON on stdout; domain
// errors go to stderr as JSON with exit code 1, usage errors exit with 2.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "homlab/amalgamation.hpp"
#include "homlab/classify.hpp"
#include "homlab/constructions.hpp"
#include "homlab/error.hpp"
#include "homlab/extremal.hpp"
#include "homlab/homogeneity.hpp"
#include "homlab/io.hpp"
#include "homlab/structure.hpp"

using namespace homlab;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Globals {
  bool pretty = false;
  int jobs = 0;
  std::uint64_t seed = 1;
};

Globals g_opts;

void emit(const Json& j) { std::cout << (g_opts.pretty ? j.dump(2) : j.dump()) << '\n'; }

template <typename T>
const T& need(const std::optional<T>& v, const std::string& flag, const std::string& what) {
  if (!v) throw UsageError(what + " requires " + flag);
  return *v;
}

Json space_summary(const ColoredSpace& s) {
  Json j;
  j["n"] = s.size();
  j["delta"] = delta(s);
  return j;
}

// ---- construct ----

struct ConstructArgs {
  std::string kind;
  std::optional<int> n, m, k;
  std::vector<double> d;
  std::optional<double> a, b, c;
  std::string side = "x";
  std::string base, table, out;
};

ColoredSpace two_point_base() { return new_space({{0, 1}, {1, 0}}, std::vector<double>{0, 1}); }

ColoredSpace build(const ConstructArgs& a) {
  const std::string& kind = a.kind;
  if (kind == "cycle") return cycle(need(a.n, "--n", kind));
  if (kind == "binary") return binary_space(need(a.m, "--m", kind));
  if (kind == "b") return b_space(need(a.m, "--m", kind), need(a.k, "--k", kind));
  if (kind == "d") return d_space(need(a.n, "--n", kind));
  if (kind == "e") return e_space(need(a.m, "--m", kind), need(a.k, "--k", kind));
  if (kind == "db") return discrete_boolean_duplicate(need(a.n, "--n", kind));
  if (kind == "hexagon") {
    if (a.d.size() != 5) throw UsageError("hexagon requires --d with 5 values");
    return hexagon({a.d[0], a.d[1], a.d[2], a.d[3], a.d[4]});
  }
  if (kind == "tetra")
    return tetrahedron(need(a.a, "--a", kind), need(a.b, "--b", kind), need(a.c, "--c", kind));
  if (kind == "wap") {
    const WapGadget w = wap_gadget(a.base.empty() ? two_point_base() : read_space(a.base));
    return a.side == "y" ? w.y : w.x;
  }
  if (kind == "boolean") {
    if (a.table.empty()) throw UsageError("boolean requires --table");
    return boolean_space(norm_table_from_json(Json::parse(read_file(a.table))));
  }
  if (kind == "random") return orbital_coloring(random_transitive_group(need(a.n, "--n", kind), g_opts.seed));
  throw UsageError("unknown construction " + kind);
}

int run_construct(const ConstructArgs& a) {
  const ColoredSpace s = build(a);
  if (a.out.empty()) {
    emit(to_json(s));
    return 0;
  }
  write_space(a.out, s);
  const ColoredSpace back = read_space(a.out);
  if (back.matrix() != s.matrix() || (back.has_palette() && back.palette() != s.palette()))
    fail(ErrorKind::InternalInvariantViolation, "written space does not reload identically");
  Json j = space_summary(s);
  j["written"] = a.out;
  emit(j);
  return 0;
}

// ---- analysis commands ----

int run_analyze(const std::string& path, const std::vector<int>& ks, bool ultra) {
  const ColoredSpace s = read_space(path);
  for (int k : ks)
    if (k < 1) throw UsageError("--k values must be positive");
  Json j = space_summary(s);
  j["isosceles_free"] = is_isosceles_free(s);
  const Json report = to_json(analyze_homogeneity(s, ks, ultra));
  for (auto it = report.begin(); it != report.end(); ++it) j[it.key()] = it.value();
  emit(j);
  return 0;
}

int run_decompose(const std::string& path, const std::string& kind, bool quotient) {
  const ColoredSpace s = read_space(path);
  const Decomposition d =
      kind == "isofree" ? isosceles_free_components(s) : isosceles_generated_components(s);
  const PermGroup aut = automorphisms(s);
  Json j = to_json(d);
  j["aut_order"] = aut.order();
  j["aut_star_order"] = aut_star(s, aut, d).order();
  if (quotient) j["quotient"] = to_json(quotient_space(s, d));
  emit(j);
  return 0;
}

int run_classify(const std::string& path) {
  emit(to_json(classify(read_space(path))));
  return 0;
}

int run_factor(const std::string& path) {
  const auto f = rainbow_factorization(read_space(path));
  Json j;
  j["factorization"] = f ? to_json(*f) : Json(nullptr);
  emit(j);
  return 0;
}

int run_aut(const std::string& path) {
  emit(to_json(automorphisms(read_space(path))));
  return 0;
}

int run_norm(const std::string& path) {
  const NormTable t = to_norm_table(read_space(path));
  Json j;
  j["table"] = to_json(t);
  j["properties"] = t.m <= kMaxBasisSearch ? to_json(norm_properties(t)) : Json(nullptr);
  emit(j);
  return 0;
}

int run_wap(const std::string& path, int p0, int p1) {
  emit(to_json(wap_gadget(path.empty() ? two_point_base() : read_space(path), p0, p1)));
  return 0;
}

// ---- amalgam ----

TriangleScheme read_scheme(const std::string& path) {
  return scheme_from_json(Json::parse(read_file(path)));
}

int run_amalgam(const std::string& action, const std::string& path, const std::string& out) {
  if (action == "example") {
    emit(to_json(z3z3_counterexample()));
    return 0;
  }
  if (path.empty()) throw UsageError("amalgam " + action + " requires an input file");
  if (action == "validate") {
    emit(to_json(validate_scheme(read_scheme(path))));
  } else if (action == "coherence") {
    const TriangleScheme s = read_scheme(path);
    const auto all = coherence_witnesses(s);
    Json j;
    j["coherent"] = all.empty();
    j["witness"] = all.empty() ? Json(nullptr) : Json(all.front());
    j["witness_count"] = all.size();
    emit(j);
  } else if (action == "limit") {
    const ColoredSpace x = limit_space(read_scheme(path));
    if (out.empty()) {
      emit(to_json(x));
    } else {
      write_space(out, x);
      Json j = space_summary(x);
      j["written"] = out;
      emit(j);
    }
  } else if (action == "from-space") {
    emit(to_json(scheme_from_space(read_space(path))));
  } else {
    throw UsageError("unknown amalgam action " + action);
  }
  return 0;
}

// ---- extremal ----

Method parse_method(const std::string& m, int n, int k) {
  if (m == "regular") return Method::RegularOnly;
  if (m == "full") return Method::FullTransitive;
  if (m == "oracle") return Method::PartitionOracle;
  if (m == "formula") return Method::Formula;
  if (n <= kMaxTransitiveDegree) return Method::FullTransitive;
  return k == 1 ? Method::RegularOnly : Method::Formula;
}

int run_delta(int n, int k, const std::string& method) {
  const Method m = parse_method(method, n, k);
  const SearchReport r = k == 1 ? delta1(n, m, g_opts.jobs) : delta2(n, m, g_opts.jobs);
  if (g_opts.pretty)
    std::cout << search_text(r);
  else
    emit(to_json(r));
  return 0;
}

int run_verify_table(int n_max) {
  const TableReport r = verify_table(n_max, g_opts.jobs);
  if (g_opts.pretty)
    std::cout << table_text(r);
  else
    emit(to_json(r));
  return r.all_match ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"homlab: finite homogeneous metric spaces"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_flag("--pretty", g_opts.pretty, "Indented JSON, text tables for delta/verify-table");
  app.add_option("--jobs", g_opts.jobs, "Worker threads (0 = all)")->check(CLI::NonNegativeNumber);
  app.add_option("--seed", g_opts.seed, "Seed for randomized constructions");

  std::function<int()> action;
  std::string file, out, kind, amalgam_action;

  ConstructArgs ca;
  auto* construct = app.add_subcommand("construct", "Build a space from the construction catalog");
  construct->add_option("kind", ca.kind)
      ->required()
      ->check(CLI::IsMember({"cycle", "binary", "b", "d", "e", "db", "hexagon", "tetra", "wap",
                             "boolean", "random"}));
  construct->add_option("--n", ca.n, "Points (cycle, d, random) or exponent (db)");
  construct->add_option("--m", ca.m, "Binary exponent");
  construct->add_option("--k", ca.k, "Odd-part index, size 2^m (2k+1)");
  construct->add_option("--d", ca.d, "Hexagon distances d1..d5")->delimiter(',');
  construct->add_option("--a", ca.a, "Tetrahedron side a");
  construct->add_option("--b", ca.b, "Tetrahedron side b");
  construct->add_option("--c", ca.c, "Tetrahedron side c");
  construct->add_option("--side", ca.side, "WAP extension to write")->check(CLI::IsMember({"x", "y"}));
  construct->add_option("--base", ca.base, "WAP base space")->check(CLI::ExistingFile);
  construct->add_option("--table", ca.table, "Norm table JSON")->check(CLI::ExistingFile);
  construct->add_option("-o,--output", ca.out, "Output path (.txt for text format)");
  construct->callback([&] { action = [&] { return run_construct(ca); }; });

  std::vector<int> ks{1, 2};
  bool ultra = false;
  auto* analyze = app.add_subcommand("analyze", "Homogeneity report");
  analyze->add_option("space", file)->required()->check(CLI::ExistingFile);
  analyze->add_option("--k", ks, "Degrees to check")->delimiter(',');
  analyze->add_flag("--ultra", ultra, "Also decide ultrahomogeneity");
  analyze->callback([&] { action = [&] { return run_analyze(file, ks, ultra); }; });

  std::string decomposition = "isogen";
  bool quotient = false;
  auto* decompose = app.add_subcommand("decompose", "Invariant decomposition");
  decompose->add_option("space", file)->required()->check(CLI::ExistingFile);
  decompose->add_option("--kind", decomposition)->check(CLI::IsMember({"isofree", "isogen"}));
  decompose->add_flag("--quotient", quotient, "Include the quotient space");
  decompose->callback([&] { action = [&] { return run_decompose(file, decomposition, quotient); }; });

  auto* classify_cmd = app.add_subcommand("classify", "Structure classification");
  classify_cmd->add_option("space", file)->required()->check(CLI::ExistingFile);
  classify_cmd->callback([&] { action = [&] { return run_classify(file); }; });

  auto* factor = app.add_subcommand("factor", "Rainbow-duplicate factorization");
  factor->add_option("space", file)->required()->check(CLI::ExistingFile);
  factor->callback([&] { action = [&] { return run_factor(file); }; });

  auto* aut = app.add_subcommand("aut", "Automorphism group");
  aut->add_option("space", file)->required()->check(CLI::ExistingFile);
  aut->callback([&] { action = [&] { return run_aut(file); }; });

  auto* norm = app.add_subcommand("norm", "Z2-norm table of a homogeneous isosceles-free space");
  norm->add_option("space", file)->required()->check(CLI::ExistingFile);
  norm->callback([&] { action = [&] { return run_norm(file); }; });

  auto* amalgam = app.add_subcommand("amalgam", "Triangle schemes");
  amalgam->add_option("action", amalgam_action)
      ->required()
      ->check(CLI::IsMember({"validate", "coherence", "limit", "from-space", "example"}));
  amalgam->add_option("input", file)->check(CLI::ExistingFile);
  amalgam->add_option("-o,--output", out, "Output path for limit");
  amalgam->callback([&] { action = [&] { return run_amalgam(amalgam_action, file, out); }; });

  int n = 0, k = 1;
  std::string method = "auto";
  auto* delta_cmd = app.add_subcommand("delta", "Maximal number of distances");
  delta_cmd->add_option("--n", n)->required()->check(CLI::PositiveNumber);
  delta_cmd->add_option("--k", k)->check(CLI::IsMember({1, 2}));
  delta_cmd->add_option("--method", method)
      ->check(CLI::IsMember({"auto", "regular", "full", "oracle", "formula"}));
  delta_cmd->callback([&] { action = [&] { return run_delta(n, k, method); }; });

  int n_max = kMaxTableDegree;
  auto* table = app.add_subcommand("verify-table", "Reproduce the extremal table");
  table->add_option("--max", n_max)->check(CLI::Range(1, kMaxTableDegree));
  table->callback([&] { action = [&] { return run_verify_table(n_max); }; });

  int p0 = 0, p1 = 1;
  auto* wap = app.add_subcommand("wap", "Weak amalgamation obstruction gadget");
  wap->add_option("base", file)->check(CLI::ExistingFile);
  wap->add_option("--p0", p0);
  wap->add_option("--p1", p1);
  wap->callback([&] { action = [&] { return run_wap(file, p0, p1); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    return action();
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    Json j;
    j["error"] = std::string(to_string(e.kind()));
    j["detail"] = e.detail();
    std::cerr << j.dump() << '\n';
    return 1;
  } catch (const Json::exception& e) {
    Json j;
    j["error"] = "ParseError";
    j["detail"] = e.what();
    std::cerr << j.dump() << '\n';
    return 1;
  }
}
