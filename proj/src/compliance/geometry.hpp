#pragma once

#include "model/types.hpp"

namespace hrc {

double distance(const Point& a, const Point& b) noexcept;

/// Area of the intersection of two discs. Zero when they are disjoint or
/// tangent, the smaller disc's area when one contains the other.
double overlap_area(const Point& center_a, double radius_a, const Point& center_b, double radius_b);

}  // namespace hrc
