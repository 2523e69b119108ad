#include "homlab/space.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>

#include "homlab/error.hpp"

namespace homlab {

namespace {

std::string pair_str(int i, int j) {
  std::ostringstream os;
  os << "(" << i << "," << j << ")";
  return os.str();
}

constexpr double kTriangleSlack = 1e-12;

}  // namespace

ColorMatrix ColoredSpace::matrix() const {
  ColorMatrix m(n_, std::vector<int>(n_));
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) m[i][j] = color(i, j);
  return m;
}

bool satisfies_triangle_inequality(int n, const std::vector<double>& d) {
  for (int i = 0; i < n; ++i)
    for (int k = i + 1; k < n; ++k) {
      const double dik = d[static_cast<size_t>(i) * n + k];
      for (int j = 0; j < n; ++j) {
        if (j == i || j == k) continue;
        const double via = d[static_cast<size_t>(i) * n + j] + d[static_cast<size_t>(j) * n + k];
        if (dik > via + kTriangleSlack * std::max(1.0, via)) return false;
      }
    }
  return true;
}

ColoredSpace make_space_unchecked(int n, std::vector<int> colors, int num_colors,
                                  std::optional<std::vector<double>> palette) {
  assert(colors.size() == static_cast<size_t>(n) * n);
  ColoredSpace s;
  s.n_ = n;
  s.colors_ = std::move(colors);
  s.num_colors_ = num_colors;
  s.palette_ = std::move(palette);
  return s;
}

ColoredSpace new_space(const ColorMatrix& matrix, std::optional<std::vector<double>> palette) {
  const int n = static_cast<int>(matrix.size());
  for (const auto& row : matrix)
    if (static_cast<int>(row.size()) != n)
      fail(ErrorKind::AsymmetricMatrix, "matrix is not square");

  for (int i = 0; i < n; ++i) {
    if (matrix[i][i] != 0) fail(ErrorKind::DiagonalNotZero, "at " + pair_str(i, i));
    for (int j = 0; j < n; ++j) {
      if (matrix[i][j] != matrix[j][i]) fail(ErrorKind::AsymmetricMatrix, "at " + pair_str(i, j));
      if (i != j && matrix[i][j] == 0) fail(ErrorKind::OffDiagonalZero, "at " + pair_str(i, j));
      if (matrix[i][j] < 0) fail(ErrorKind::InvalidPalette, "negative color at " + pair_str(i, j));
      if (palette && matrix[i][j] >= static_cast<int>(palette->size()))
        fail(ErrorKind::InvalidPalette, "color index beyond palette at " + pair_str(i, j));
    }
  }
  if (palette) {
    const auto& p = *palette;
    if (p.empty() || p[0] != 0.0) fail(ErrorKind::InvalidPalette, "palette[0] must be 0");
    for (size_t c = 1; c < p.size(); ++c)
      if (!(p[c] > p[c - 1]))
        fail(ErrorKind::PaletteNotStrictlyIncreasing, "at palette index " + std::to_string(c));
  }

  // Compact used colors in increasing index order (which is palette order).
  int max_color = 0;
  for (const auto& row : matrix)
    for (int c : row) max_color = std::max(max_color, c);
  std::vector<int> used(max_color + 1, 0);
  used[0] = 1;
  for (const auto& row : matrix)
    for (int c : row) used[c] = 1;
  std::vector<int> remap(max_color + 1, -1);
  int next = 0;
  for (int c = 0; c <= max_color; ++c)
    if (used[c]) remap[c] = next++;

  std::vector<int> colors(static_cast<size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) colors[static_cast<size_t>(i) * n + j] = remap[matrix[i][j]];

  std::optional<std::vector<double>> compact;
  if (palette) {
    compact.emplace();
    for (int c = 0; c <= max_color; ++c)
      if (used[c]) compact->push_back((*palette)[c]);
    std::vector<double> d(colors.size());
    for (size_t k = 0; k < colors.size(); ++k) d[k] = (*compact)[colors[k]];
    if (!satisfies_triangle_inequality(n, d))
      fail(ErrorKind::TriangleViolation, "palette distances violate the triangle inequality");
  }
  return make_space_unchecked(n, std::move(colors), next, std::move(compact));
}

ColoredSpace from_metric(const RealMatrix& distances, double tol) {
  const int n = static_cast<int>(distances.size());
  for (const auto& row : distances)
    if (static_cast<int>(row.size()) != n)
      fail(ErrorKind::AsymmetricMatrix, "matrix is not square");
  for (int i = 0; i < n; ++i) {
    if (std::abs(distances[i][i]) > tol) fail(ErrorKind::DiagonalNotZero, "at " + pair_str(i, i));
    for (int j = i + 1; j < n; ++j) {
      if (std::abs(distances[i][j] - distances[j][i]) > tol)
        fail(ErrorKind::AsymmetricMatrix, "at " + pair_str(i, j));
      if (distances[i][j] < 0) fail(ErrorKind::InvalidPalette, "negative distance at " + pair_str(i, j));
    }
  }

  // Values are the upper triangle plus an explicit 0 for the diagonal class.
  std::vector<double> values{0.0};
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) values.push_back(distances[i][j]);
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());

  // Neighbors in sorted order within tol are unioned; chains are contiguous runs.
  std::vector<int> cls(values.size());
  int num_classes = 0;
  std::vector<std::pair<double, double>> spans;
  for (size_t k = 0; k < values.size(); ++k) {
    if (k == 0 || values[k] - values[k - 1] > tol) {
      spans.push_back({values[k], values[k]});
      ++num_classes;
    } else {
      spans.back().second = values[k];
    }
    cls[k] = num_classes - 1;
  }
  for (const auto& [lo, hi] : spans)
    if (hi - lo > tol) {
      std::ostringstream os;
      os << "values " << lo << " .. " << hi << " chain together but span more than " << tol;
      fail(ErrorKind::ToleranceMergeAmbiguous, os.str());
    }

  auto class_of = [&](double v) {
    auto it = std::lower_bound(values.begin(), values.end(), v);
    return cls[it - values.begin()];
  };
  ColorMatrix m(n, std::vector<int>(n, 0));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const int c = class_of(distances[i][j]);
      if (c == 0) fail(ErrorKind::OffDiagonalZero, "at " + pair_str(i, j));
      m[i][j] = m[j][i] = c;
    }
  std::vector<double> palette;
  palette.reserve(spans.size());
  for (const auto& s : spans) palette.push_back(s.first);
  palette[0] = 0.0;
  return new_space(m, palette);
}

ColoredSpace from_exact_distances(const RealMatrix& distances) {
  return from_metric(distances, 0.0);
}

ColoredSpace realize_metric(const ColoredSpace& space, double a) {
  const int c = space.num_colors();
  std::vector<double> palette{0.0};
  for (int k = 0; k + 1 < c; ++k) palette.push_back(a * (1.0 + static_cast<double>(k) / (c - 1)));
  return new_space(space.matrix(), palette);
}

ColoredSpace with_palette(const ColoredSpace& space) {
  return space.has_palette() ? space : realize_metric(space, 1.0);
}

int delta(const ColoredSpace& space) { return space.num_colors(); }

ColoredSpace relabel_points(const ColoredSpace& space, std::span<const int> perm) {
  const int n = space.size();
  ColorMatrix m(n, std::vector<int>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m[perm[i]][perm[j]] = space.color(i, j);
  return new_space(m, space.palette());
}

ColoredSpace relabel_colors(const ColoredSpace& space, std::span<const int> perm) {
  const int n = space.size();
  ColorMatrix m(n, std::vector<int>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m[i][j] = perm[space.color(i, j)];
  return new_space(m);
}

ColoredSpace subspace(const ColoredSpace& space, std::span<const int> points) {
  const int k = static_cast<int>(points.size());
  ColorMatrix m(k, std::vector<int>(k));
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) m[i][j] = space.color(points[i], points[j]);
  return new_space(m, space.palette());
}

ColoredSpace discrete_space(int n) {
  ColorMatrix m(n, std::vector<int>(n, 1));
  for (int i = 0; i < n; ++i) m[i][i] = 0;
  return new_space(m, std::vector<double>{0.0, 1.0});
}

}  // namespace homlab
