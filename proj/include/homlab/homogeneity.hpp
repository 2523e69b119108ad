#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "homlab/permgroup.hpp"
#include "homlab/space.hpp"

namespace homlab {

// Pairs (source, target), injective in both coordinates.
struct PartialIsometry {
  std::vector<std::pair<int, int>> pairs;
};

bool is_partial_isometry(const ColoredSpace& space, const PartialIsometry& f);

// Color-preserving permutations, enumerated by backtracking. Throws
// OrderCapExceeded when there are more than cap of them.
PermGroup automorphisms(const ColoredSpace& space, std::int64_t cap = default_group_cap());

// Some automorphism extending f, or nullopt. Throws NotPartialIsometry.
std::optional<Permutation> extend_partial(const ColoredSpace& space, const PartialIsometry& f);

// Number of automorphisms extending f, stopping at limit.
std::int64_t count_extensions(const ColoredSpace& space, const PartialIsometry& f,
                              std::int64_t limit);

// An isometry a -> b as point images. Colors are matched through palette
// values when both spaces carry one, and by index otherwise.
std::optional<std::vector<int>> find_isometry(const ColoredSpace& a, const ColoredSpace& b);

// An isometry between the subspaces on points a and b of one space, as the
// image of a[i] for each i.
std::optional<std::vector<int>> find_subset_isometry(const ColoredSpace& space,
                                                     const std::vector<int>& a,
                                                     const std::vector<int>& b);

// Point-transitivity by one extension search per point; never enumerates Aut.
bool is_one_homogeneous(const ColoredSpace& space);

bool is_k_homogeneous(const ColoredSpace& space, int k, std::int64_t cap = default_group_cap());
bool is_k_homogeneous(const ColoredSpace& space, const PermGroup& aut, int k);
bool is_uniquely_k_homogeneous(const ColoredSpace& space, int k,
                               std::int64_t cap = default_group_cap());
bool is_uniquely_k_homogeneous(const ColoredSpace& space, const PermGroup& aut, int k);

// Uses the shortcut "1-homogeneous and isosceles-free" before the full check.
bool is_ultrahomogeneous(const ColoredSpace& space, std::int64_t cap = default_group_cap());
// Always runs the tuple-orbit check for k = n.
bool is_ultrahomogeneous_full(const ColoredSpace& space, const PermGroup& aut);

struct HomogeneityReport {
  std::map<int, bool> is_k_homogeneous;
  std::map<int, bool> unique;
  std::optional<bool> ultra;
  std::int64_t aut_order = 0;
};

HomogeneityReport analyze_homogeneity(const ColoredSpace& space, const std::vector<int>& ks,
                                      bool ultra, std::int64_t cap = default_group_cap());

// D_a: x -> d(a, x) into Dist(X); E_a: f -> f(a) from Aut(X).
struct EvaluationFlags {
  bool d_injective = false;
  bool d_surjective = false;
  bool e_injective = false;
  bool e_surjective = false;
};

EvaluationFlags evaluation_bijectivity(const ColoredSpace& space, const PermGroup& aut, int a);
EvaluationFlags evaluation_bijectivity(const ColoredSpace& space, int a);

// The map Aut(X) -> Aut(Y) induced by an embedding e: X -> Y (e[x] is the
// image of x), e_*(f) = the automorphism of Y sending e(a) to e(f(a)).
struct ExtensionOperator {
  std::vector<Permutation> domain;  // Aut(X)
  std::vector<Permutation> image;   // e_* of each domain element

  const Permutation& apply(const Permutation& f) const;
};

// Throws PreconditionFailed naming the failed premise.
ExtensionOperator extension_operator(const ColoredSpace& x, const ColoredSpace& y,
                                     const std::vector<int>& e);

}  // namespace homlab
