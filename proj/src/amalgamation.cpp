#include "homlab/amalgamation.hpp"

#include <algorithm>
#include <string>

#include "homlab/error.hpp"
#include "homlab/homogeneity.hpp"
#include "homlab/structure.hpp"

namespace homlab {

int TriangleScheme::zero() const {
  for (int i = 0; i < size(); ++i)
    if (r[i] == 0) return i;
  return -1;
}

namespace {

void require_structure(const TriangleScheme& s) {
  const int k = s.size();
  if (k == 0) fail(ErrorKind::SchemeInvalid, "R is empty");
  if (s.zero() < 0) fail(ErrorKind::SchemeInvalid, "R does not contain 0");
  for (int i = 0; i < k; ++i) {
    if (!(s.r[i] >= 0)) fail(ErrorKind::SchemeInvalid, "R has a negative value");
    for (int j = i + 1; j < k; ++j)
      if (s.r[i] == s.r[j]) fail(ErrorKind::SchemeInvalid, "R has a repeated value");
  }
  if (static_cast<int>(s.t.size()) != k) fail(ErrorKind::SchemeInvalid, "t must be |R| x |R|");
  for (const auto& row : s.t) {
    if (static_cast<int>(row.size()) != k) fail(ErrorKind::SchemeInvalid, "t must be |R| x |R|");
    for (int v : row)
      if (v < 0 || v >= k) fail(ErrorKind::SchemeInvalid, "t entry out of range");
  }
}

}  // namespace

SchemeReport validate_scheme(const TriangleScheme& s) {
  require_structure(s);
  const int k = s.size();
  const int z = s.zero();
  SchemeReport rep;
  rep.symmetric_and_bounded = true;
  rep.involutive = true;
  for (int p = 0; p < k; ++p)
    for (int q = 0; q < k; ++q) {
      const int t = s.t[p][q];
      const double bound = s.r[p] + s.r[q];
      if (rep.symmetric_and_bounded &&
          (t != s.t[q][p] || s.r[t] > bound + 1e-12 * std::max(1.0, bound))) {
        rep.symmetric_and_bounded = false;
        rep.bound_witness = std::array<int, 2>{p, q};
      }
      if (rep.involutive && (s.t[t][q] != p || s.t[p][z] != p)) {
        rep.involutive = false;
        rep.involution_witness = std::array<int, 2>{p, q};
      }
    }
  return rep;
}

std::vector<CoherenceWitness> coherence_witnesses(const TriangleScheme& s) {
  if (!validate_scheme(s).valid()) fail(ErrorKind::SchemeInvalid, "scheme fails validation");
  const int k = s.size();
  std::vector<CoherenceWitness> out;
  for (int p = 0; p < k; ++p)
    for (int q = 0; q < k; ++q)
      for (int p2 = 0; p2 < k; ++p2)
        for (int q2 = 0; q2 < k; ++q2)
          if (s.t[p][q] == s.t[p2][q2] && s.t[p][p2] != s.t[q][q2])
            out.push_back({p, q, p2, q2});
  return out;
}

std::optional<CoherenceWitness> coherence_check(const TriangleScheme& s) {
  if (!validate_scheme(s).valid()) fail(ErrorKind::SchemeInvalid, "scheme fails validation");
  const int k = s.size();
  for (int p = 0; p < k; ++p)
    for (int q = 0; q < k; ++q)
      for (int p2 = 0; p2 < k; ++p2)
        for (int q2 = 0; q2 < k; ++q2)
          if (s.t[p][q] == s.t[p2][q2] && s.t[p][p2] != s.t[q][q2])
            return CoherenceWitness{p, q, p2, q2};
  return std::nullopt;
}

ColoredSpace limit_space(const TriangleScheme& s) {
  if (auto w = coherence_check(s))
    fail(ErrorKind::NotCoherent, "t(" + std::to_string((*w)[0]) + "," + std::to_string((*w)[1]) +
                                     ") = t(" + std::to_string((*w)[2]) + "," +
                                     std::to_string((*w)[3]) + ")");
  const int k = s.size();
  RealMatrix d(k, std::vector<double>(k));
  for (int p = 0; p < k; ++p)
    for (int q = 0; q < k; ++q) d[p][q] = s.r[s.t[p][q]];
  ColoredSpace x = from_exact_distances(d);
  if (x.num_colors() != k || !is_isosceles_free(x) || !is_one_homogeneous(x))
    fail(ErrorKind::InternalInvariantViolation, "limit space is not homogeneous isosceles-free");
  if ((k & (k - 1)) != 0)
    fail(ErrorKind::InternalInvariantViolation, "coherent scheme of non power-of-two size");
  return x;
}

TriangleScheme scheme_from_space(const ColoredSpace& input) {
  if (input.empty() || !is_isosceles_free(input) || !is_one_homogeneous(input))
    fail(ErrorKind::PreconditionFailed, "space is not nonempty homogeneous isosceles-free");
  const ColoredSpace space = with_palette(input);
  const int n = space.size();
  // Rows are injective, so color c names the unique point at color c from 0.
  std::vector<int> at(n);
  for (int x = 0; x < n; ++x) at[space.color(0, x)] = x;
  TriangleScheme s;
  s.r = *space.palette();
  s.t.assign(n, std::vector<int>(n));
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q) s.t[p][q] = space.color(at[p], at[q]);

  if (!validate_scheme(s).valid())
    fail(ErrorKind::InternalInvariantViolation, "scheme of a homogeneous space is invalid");
  if (!find_isometry(limit_space(s), space))
    fail(ErrorKind::InternalInvariantViolation, "limit of the extracted scheme differs");
  return s;
}

TriangleScheme z3z3_counterexample() {
  TriangleScheme s;
  s.r.push_back(0.0);
  for (int k = 0; k < 9; ++k) s.r.push_back(1.0 + k / 8.0);
  s.t.assign(10, std::vector<int>(10, 0));
  for (int p = 0; p < 10; ++p) {
    s.t[p][0] = s.t[0][p] = p;
  }
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int c = 0; c < 3; ++c)
        for (int d = 0; d < 3; ++d) {
          const int p = z3z3_index(a, b), q = z3z3_index(c, d);
          // The third point of the line through two distinct points is -(p + q).
          s.t[p][q] = p == q ? 0 : z3z3_index((6 - a - c) % 3, (6 - b - d) % 3);
        }
  return s;
}

}  // namespace homlab
