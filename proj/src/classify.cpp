#include "homlab/classify.hpp"

#include <algorithm>

#include "homlab/error.hpp"
#include "homlab/homogeneity.hpp"
#include "homlab/structure.hpp"

namespace homlab {

std::string_view to_string(Label label) {
  switch (label) {
    case Label::IsoscelesGenerated: return "IsoscelesGenerated";
    case Label::RainbowDuplicate: return "RainbowDuplicate";
    case Label::Boolean: return "Boolean";
    case Label::IsoscelesFree: return "IsoscelesFree";
  }
  return "?";
}

bool Classification::has(Label l) const {
  return std::find(labels.begin(), labels.end(), l) != labels.end();
}

Classification classify(const ColoredSpace& space) {
  if (!is_one_homogeneous(space)) fail(ErrorKind::NotHomogeneous, "space is not 1-homogeneous");
  Classification c;
  const Decomposition comps = isosceles_generated_components(space);
  c.components = static_cast<int>(comps.blocks.size());

  if (c.components <= 1) c.labels.push_back(Label::IsoscelesGenerated);
  if (c.components == 2) {
    c.factorization = rainbow_factorization(space);
    if (c.factorization) c.labels.push_back(Label::RainbowDuplicate);
  }
  const bool boolean = is_boolean_space(space);
  if (boolean) c.labels.push_back(Label::Boolean);
  if (c.labels.empty())
    fail(ErrorKind::InternalInvariantViolation, "no case of the trichotomy applies");

  if (c.components >= 2) {
    const PermGroup aut = automorphisms(space);
    if (!is_uniquely_k_homogeneous(space, aut, 1))
      fail(ErrorKind::InternalInvariantViolation, "two or more components but not unique");
    if (!is_abelian(aut_star(space, aut, comps)))
      fail(ErrorKind::InternalInvariantViolation, "Aut_* is not abelian");
  }
  if (c.components >= 3 && !boolean)
    fail(ErrorKind::InternalInvariantViolation, "three or more components but not Boolean");

  if (is_k_homogeneous(space, 2)) {
    if (c.components <= 1)
      c.two_homogeneous_case = Label::IsoscelesGenerated;
    else if (is_isosceles_free(space))
      c.two_homogeneous_case = Label::IsoscelesFree;
    else
      fail(ErrorKind::InternalInvariantViolation,
           "2-homogeneous space neither isosceles-generated nor isosceles-free");
  }
  return c;
}

}  // namespace homlab
