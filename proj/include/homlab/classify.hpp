#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "homlab/constructions.hpp"
#include "homlab/space.hpp"

namespace homlab {

enum class Label { IsoscelesGenerated, RainbowDuplicate, Boolean, IsoscelesFree };

std::string_view to_string(Label label);

struct Classification {
  std::vector<Label> labels;  // subset of IsoscelesGenerated, RainbowDuplicate, Boolean
  std::optional<RainbowFactorization> factorization;
  // Set for 2-homogeneous input: IsoscelesGenerated or IsoscelesFree.
  std::optional<Label> two_homogeneous_case;
  int components = 0;  // isosceles-generated components

  bool has(Label l) const;
};

// Throws NotHomogeneous unless 1-homogeneous; InternalInvariantViolation if no
// case applies.
Classification classify(const ColoredSpace& space);

}  // namespace homlab
