#include "compliance/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace hrc {

double distance(const Point& a, const Point& b) noexcept { return std::hypot(a.x - b.x, a.y - b.y); }

double overlap_area(const Point& center_a, double radius_a, const Point& center_b, double radius_b) {
  if (!(radius_a > 0) || !(radius_b > 0)) {
    throw Error(ErrorCode::kValidation, "overlap_area needs positive radii");
  }
  const double d = distance(center_a, center_b);
  if (d >= radius_a + radius_b) return 0.0;
  const double r_min = std::min(radius_a, radius_b);
  if (d <= std::fabs(radius_a - radius_b)) return std::numbers::pi * r_min * r_min;

  const double ra2 = radius_a * radius_a;
  const double rb2 = radius_b * radius_b;
  const double alpha = std::acos(std::clamp((d * d + ra2 - rb2) / (2.0 * d * radius_a), -1.0, 1.0));
  const double beta = std::acos(std::clamp((d * d + rb2 - ra2) / (2.0 * d * radius_b), -1.0, 1.0));
  // Two circular segments: r^2 (theta - sin(theta)) / 2 with theta = 2 * half-angle.
  return ra2 * (alpha - 0.5 * std::sin(2.0 * alpha)) + rb2 * (beta - 0.5 * std::sin(2.0 * beta));
}

}  // namespace hrc
