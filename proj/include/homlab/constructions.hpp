#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "homlab/permgroup.hpp"
#include "homlab/space.hpp"
#include "homlab/structure.hpp"

namespace homlab {

inline constexpr int kMaxConstructionPoints = 64;
inline constexpr int kMaxBinaryExponent = 10;
inline constexpr int kMaxDiscreteDuplicateExponent = 4;

// C_n with the graph metric, palette {0..floor(n/2)}.
ColoredSpace cycle(int n);

// Multiplies the palette. Throws NoPalette, PreconditionFailed for factor <= 0.
ColoredSpace scale(const ColoredSpace& space, double factor);

// l1-product; point (i, j) is i * |Y| + j. Throws SumNotInjective.
ColoredSpace l1_product(const ColoredSpace& x, const ColoredSpace& y);

// 2^m points, d(x, y) = x xor y.
ColoredSpace binary_space(int m);

// d(x, y) = norm[x xor y]. Throws NormNotInjective or TriangleViolation.
ColoredSpace boolean_space(const NormTable& t);

// scale(cycle(2k+1), 2^m) x_1 binary_space(m).
ColoredSpace b_space(int m, int k);

// H in a fixed element order, r[i] the cross distance of h[i].
struct RainbowParams {
  std::vector<Permutation> h;
  Permutation g;
  std::vector<double> r;
};

// Points x and n + x are the two copies of x. Throws NotHomogeneous,
// NoPalette, PreconditionFailed (H or g not automorphisms, H not a group) or
// the Rainbow* error naming the violated requirement.
ColoredSpace rainbow_duplicate(const ColoredSpace& x, const RainbowParams& params);

// |r(h) - r(h')| <= min positive distance and r(h) >= max distance.
bool rainbow_triangle_condition(const ColoredSpace& x, const std::vector<double>& r);

// r(h_i) = Dmax + 1 + i / |H|.
std::vector<double> default_r(const ColoredSpace& x, std::size_t h_size);

RainbowParams d_params(int n);
ColoredSpace d_space(int n);
RainbowParams e_params(int m, int k);
ColoredSpace e_space(int m, int k);
RainbowParams discrete_boolean_params(int n);
ColoredSpace discrete_boolean_duplicate(int n);

struct RainbowFactorization {
  ColoredSpace base;             // the component X, points relabeled 0..|X|-1
  std::vector<int> base_points;  // points of the input forming X
  std::vector<int> partner;      // input point identified with copy-1 point |X| + i
  RainbowParams params;
};

// Factorization along the two isosceles-generated components, or, for an
// isosceles-free Y with regular Boolean Aut, along the first index-2 split
// that reproduces Y. nullopt otherwise. Throws NotHomogeneous.
std::optional<RainbowFactorization> rainbow_factorization(const ColoredSpace& y);

// Fig 3 table on points 0..5; distances must be distinct and in [1, 2].
ColoredSpace hexagon(const std::array<double, 5>& d);

// d(0,1) = d(2,3) = a, d(0,2) = d(1,3) = b, d(0,3) = d(1,2) = c.
ColoredSpace tetrahedron(double a, double b, double c);
// True when one side equals the sum of the other two.
bool tetrahedron_is_degenerate(double a, double b, double c);

struct WapGadget {
  ColoredSpace x;  // B plus point |B| (x)
  ColoredSpace y;  // B plus point |B| (y)
  double r0 = 0;
  double eps = 0;
  double r1 = 0;
  bool obstruction = false;
  std::string detail;
};

// One-point extensions of B witnessing the failure of weak amalgamation at
// the marked points p0, p1. Throws PreconditionFailed.
WapGadget wap_gadget(const ColoredSpace& b, int p0 = 0, int p1 = 1);

}  // namespace homlab
