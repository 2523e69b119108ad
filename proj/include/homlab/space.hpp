#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace homlab {

using ColorMatrix = std::vector<std::vector<int>>;
using RealMatrix = std::vector<std::vector<double>>;

// A finite metric space viewed as an edge-colored complete graph. Color 0 is
// the diagonal; the optional palette gives the real distance of each color and
// is strictly increasing. Instances are immutable once constructed and always
// satisfy the validation rules of new_space().
class ColoredSpace {
 public:
  ColoredSpace() = default;

  int size() const { return n_; }
  int num_colors() const { return num_colors_; }
  bool empty() const { return n_ == 0; }

  int color(int i, int j) const { return colors_[static_cast<size_t>(i) * n_ + j]; }
  std::span<const int> row(int i) const {
    return {colors_.data() + static_cast<size_t>(i) * n_, static_cast<size_t>(n_)};
  }

  bool has_palette() const { return palette_.has_value(); }
  const std::optional<std::vector<double>>& palette() const { return palette_; }
  // Requires a palette.
  double distance(int i, int j) const { return (*palette_)[color(i, j)]; }

  ColorMatrix matrix() const;

  bool operator==(const ColoredSpace& other) const = default;

 private:
  friend ColoredSpace new_space(const ColorMatrix&, std::optional<std::vector<double>>);
  friend ColoredSpace make_space_unchecked(int, std::vector<int>, int,
                                           std::optional<std::vector<double>>);

  int n_ = 0;
  int num_colors_ = 0;
  std::vector<int> colors_;  // row-major n*n
  std::optional<std::vector<double>> palette_;
};

// Validates and compacts colors to {0..c-1}, keeping palette order. Throws
// AsymmetricMatrix, DiagonalNotZero, OffDiagonalZero, TriangleViolation,
// PaletteNotStrictlyIncreasing or InvalidPalette.
ColoredSpace new_space(const ColorMatrix& matrix,
                       std::optional<std::vector<double>> palette = std::nullopt);

// Internal fast path for already-compact, already-valid data (used by kernels
// that generate many colorings). Only checked in debug builds.
ColoredSpace make_space_unchecked(int n, std::vector<int> colors, int num_colors,
                                  std::optional<std::vector<double>> palette);

inline constexpr double kDefaultMergeTolerance = 1e-9;

// Builds a space from real distances, merging values closer than tol into one
// color (union-find over sorted values). A merged class wider than tol is
// order-dependent and rejected with ToleranceMergeAmbiguous.
ColoredSpace from_metric(const RealMatrix& distances, double tol = kDefaultMergeTolerance);

// Exact variant: every distinct double is its own color.
ColoredSpace from_exact_distances(const RealMatrix& distances);

// Same colors, palette {0} ∪ {a(1 + k/(c-1)) : k = 0..c-2}.
ColoredSpace realize_metric(const ColoredSpace& space, double a);

// Returns the space itself if it has a palette, realize_metric(space, 1) otherwise.
ColoredSpace with_palette(const ColoredSpace& space);

int delta(const ColoredSpace& space);

// Relabeling-invariant byte string: equal iff the spaces differ by a point
// relabeling composed with a color relabeling fixing color 0.
std::string canonical_form(const ColoredSpace& space);

// Point relabeling: result.color(perm[i], perm[j]) == space.color(i, j).
ColoredSpace relabel_points(const ColoredSpace& space, std::span<const int> perm);

// Renames colors through perm (perm[0] must be 0). Drops the palette.
ColoredSpace relabel_colors(const ColoredSpace& space, std::span<const int> perm);

// Induced subspace on the listed points (in the given order); palette kept.
ColoredSpace subspace(const ColoredSpace& space, std::span<const int> points);

ColoredSpace discrete_space(int n);

// Every triple checked with a relative slack of 1e-12.
bool satisfies_triangle_inequality(int n, const std::vector<double>& dist_row_major);

}  // namespace homlab
