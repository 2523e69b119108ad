#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <span>
#include <unordered_set>
#include <utility>
#include <vector>

namespace homlab {

// A permutation of {0..n-1} stored by images. Composition is right to left:
// (p * q)(x) = p(q(x)).
class Permutation {
 public:
  using Point = std::uint16_t;

  Permutation() = default;
  explicit Permutation(std::vector<Point> images) : images_(std::move(images)) {}

  static Permutation identity(int n);
  // Throws PreconditionFailed unless images is a bijection of {0..n-1}.
  static Permutation from_images(std::span<const int> images);

  int degree() const { return static_cast<int>(images_.size()); }
  int operator()(int x) const { return images_[x]; }
  std::span<const Point> images() const { return images_; }
  std::vector<int> to_vector() const { return {images_.begin(), images_.end()}; }

  Permutation inverse() const;
  bool is_identity() const;
  int order() const;

  friend Permutation operator*(const Permutation& p, const Permutation& q);
  auto operator<=>(const Permutation&) const = default;

 private:
  std::vector<Point> images_;
};

struct PermutationHash {
  std::size_t operator()(const Permutation& p) const;
};

inline constexpr std::int64_t kDefaultGroupCap = 1000000;

// kDefaultGroupCap, or the value of HOMLAB_AUT_CAP when set.
std::int64_t default_group_cap();

// A fully enumerated permutation group. The identity is always elements()[0].
class PermGroup {
 public:
  PermGroup() = default;

  int degree() const { return n_; }
  const std::vector<Permutation>& generators() const { return generators_; }
  const std::vector<Permutation>& elements() const { return elements_; }
  std::int64_t order() const { return static_cast<std::int64_t>(elements_.size()); }
  bool contains(const Permutation& p) const { return index_.count(p) > 0; }

 private:
  friend PermGroup close(int, const std::vector<Permutation>&, std::int64_t);
  friend PermGroup group_from_elements(int, std::vector<Permutation>,
                                       std::vector<Permutation>);

  int n_ = 0;
  std::vector<Permutation> generators_;
  std::vector<Permutation> elements_;
  std::unordered_set<Permutation, PermutationHash> index_;
};

// Breadth-first closure. Throws DegreeMismatch or OrderCapExceeded.
PermGroup close(int degree, const std::vector<Permutation>& generators,
                std::int64_t cap = default_group_cap());

// Wraps an element list the caller knows is a group (e.g. all automorphisms
// found by exhaustive search). Empty generators are replaced by a small
// generating set.
PermGroup group_from_elements(int degree, std::vector<Permutation> elements,
                              std::vector<Permutation> generators = {});

PermGroup trivial_group(int n);
PermGroup symmetric_group(int n);

// Elements of g satisfying pred, which must select a subgroup.
PermGroup filter_subgroup(const PermGroup& g, const std::function<bool(const Permutation&)>& pred);

// Greedy generating set: scans elements in order, keeping those not yet generated.
std::vector<Permutation> small_generating_set(int degree, std::span<const Permutation> elements);

// Orbits on points, each sorted, ordered by smallest member.
std::vector<std::vector<int>> point_orbits(const PermGroup& g);

// Orbits on unordered pairs {i < j}, each sorted, ordered by smallest pair.
std::vector<std::vector<std::pair<int, int>>> pair_orbitals(const PermGroup& g);

bool is_transitive(const PermGroup& g);
bool is_regular(const PermGroup& g);
bool is_abelian(const PermGroup& g);
bool is_boolean(const PermGroup& g);
bool is_normal_subgroup(const PermGroup& n, const PermGroup& g);
int count_involutions(const PermGroup& g);

// Sorted cycle lengths, including fixed points.
std::vector<int> cycle_type(const Permutation& p);

// Some x with x * h * x^-1 in g for every h in h_group, or empty.
std::vector<int> conjugating_element(const PermGroup& h, const PermGroup& g);
bool are_conjugate(const PermGroup& a, const PermGroup& b);

inline constexpr int kMaxRegularDegree = 16;
inline constexpr int kMaxRegularDegreeExtended = 20;
inline constexpr int kMaxTransitiveDegree = 8;

// Regular permutation groups of degree n up to conjugacy (one per abstract
// group of order n). limit > 0 truncates the list. Throws DegreeTooLarge for
// n > 16.
std::vector<PermGroup> enumerate_regular_groups(int n, int limit = 0);

// Same enumeration without the public degree cap, for n <= 20.
std::vector<PermGroup> enumerate_regular_groups_extended(int n);

// Transitive subgroups of S_n up to conjugacy, n <= 8. Throws DegreeTooLarge,
// or OrderCapExceeded if some transitive group is larger than order_cap.
std::vector<PermGroup> enumerate_transitive_groups(int n, std::int64_t order_cap = default_group_cap());

// All subgroups of S_n up to conjugacy (n <= 8), the lattice the transitive
// enumeration walks.
std::vector<PermGroup> enumerate_subgroup_classes(int n);

// The members of a transitive list with no proper transitive subgroup in it
// up to conjugacy.
std::vector<PermGroup> minimal_transitive_groups(const std::vector<PermGroup>& transitive);

}  // namespace homlab
