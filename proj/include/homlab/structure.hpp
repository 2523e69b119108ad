#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "homlab/permgroup.hpp"
#include "homlab/space.hpp"

namespace homlab {

bool is_isosceles_free(const ColoredSpace& space);

// Colors s such that every point has exactly one point at color s; always
// contains 0. Throws NotHomogeneous unless the space is 1-homogeneous.
std::vector<int> singleton_distances(const ColoredSpace& space);

enum class DecompositionKind { IsoscelesFree, IsoscelesGenerated };

struct Decomposition {
  std::vector<std::vector<int>> blocks;  // each sorted, ordered by smallest point
  DecompositionKind kind = DecompositionKind::IsoscelesFree;

  std::vector<int> block_of(int n) const;
};

// Blocks of d(x, y) in S_X. Throws NotHomogeneous unless 2-homogeneous.
Decomposition isosceles_free_components(const ColoredSpace& space);

// Blocks of the closure of "x ~ y if d(x, y) = d(x, z) for some z != y".
// Throws NotHomogeneous unless 1-homogeneous.
Decomposition isosceles_generated_components(const ColoredSpace& space);

// Automorphisms fixing every block setwise (a normal subgroup of Aut).
PermGroup aut_star(const ColoredSpace& space, const Decomposition& d);
PermGroup aut_star(const ColoredSpace& space, const PermGroup& aut, const Decomposition& d);

// The space of isosceles-generated components, distance classes realized in
// {0} ∪ [a, 2a]. Verifies it is homogeneous isosceles-free and that
// |Aut(X)| = |Aut_*(X)| * |Aut(X/~)|.
ColoredSpace quotient_space(const ColoredSpace& space, const Decomposition& d, double a = 1.0);

// Nonempty, 1-homogeneous, Boolean automorphism group.
bool is_boolean_space(const ColoredSpace& space);

// A Z2-norm on subsets of an m-element basis, indexed by bitmask.
struct NormTable {
  int m = 0;
  std::vector<double> norm;
};

// Throws PreconditionFailed unless the space is homogeneous isosceles-free,
// NotPowerOfTwo unless n = 2^m. Round-trip verified.
NormTable to_norm_table(const ColoredSpace& space, int base = 0);

struct NormProperties {
  bool additive = false;
  bool monotone = false;
  std::vector<int> additive_basis;  // bitmask images of e_0..e_{m-1} when additive
  std::vector<int> monotone_basis;
  std::vector<double> weights;      // r_i of the additive witness
  std::int64_t bases_checked = 0;
};

// Searches every invertible Z2-linear change of basis. Throws
// BasisSearchTooLarge for m > 4.
NormProperties norm_properties(const NormTable& t);

inline constexpr int kMaxBasisSearch = 4;

}  // namespace homlab
