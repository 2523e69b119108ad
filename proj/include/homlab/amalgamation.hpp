#pragma once

#include <array>
#include <optional>
#include <vector>

#include "homlab/space.hpp"

namespace homlab {

// Distances R (distinct, nonnegative, containing 0) and a completion table
// t over indices into R.
struct TriangleScheme {
  std::vector<double> r;
  std::vector<std::vector<int>> t;

  int zero() const;  // index of the distance 0
  int size() const { return static_cast<int>(r.size()); }
};

struct SchemeReport {
  bool symmetric_and_bounded = false;  // t(p,q) = t(q,p) <= p + q
  bool involutive = false;             // t(t(p,q),q) = p and t(p,0) = p
  std::optional<std::array<int, 2>> bound_witness;
  std::optional<std::array<int, 2>> involution_witness;

  bool valid() const { return symmetric_and_bounded && involutive; }
};

// Throws SchemeInvalid when the structure itself is malformed (shape,
// indices, R not distinct nonnegative with a 0).
SchemeReport validate_scheme(const TriangleScheme& s);

// A quadruple (p, q, p', q') with t(p,q) = t(p',q') but t(p,p') != t(q,q').
using CoherenceWitness = std::array<int, 4>;

// First witness in lexicographic order, or nullopt when coherent. Throws
// SchemeInvalid unless validate_scheme passes.
std::optional<CoherenceWitness> coherence_check(const TriangleScheme& s);
std::vector<CoherenceWitness> coherence_witnesses(const TriangleScheme& s);

// Points are the indices of R with d(p, q) = R[t(p, q)]. Throws SchemeInvalid
// or NotCoherent.
ColoredSpace limit_space(const TriangleScheme& s);

// R is the palette (realized in {0} ∪ [1, 2] when absent) and t is read off
// the triangles at point 0. Throws PreconditionFailed.
TriangleScheme scheme_from_space(const ColoredSpace& space);

// R = {0} ∪ {1 + k/8}; index 1 + 3a + b is (a, b) in Z3 x Z3, lines of the
// affine plane as triangles.
TriangleScheme z3z3_counterexample();

inline int z3z3_index(int a, int b) { return 1 + 3 * a + b; }

}  // namespace homlab
