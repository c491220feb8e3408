#include "des/variability.hpp"

#include <cmath>

namespace hrc {

Millis sample_duration(Millis ct_ms, Millis pt_ms, VariabilityKind kind, Rng& rng) {
  if (kind == VariabilityKind::kDeterministic || ct_ms >= pt_ms) return pt_ms;

  const double low = static_cast<double>(ct_ms);
  const double mode = static_cast<double>(pt_ms);
  const double high = 2.0 * mode - low;
  const double width = high - low;
  const double u = rng.uniform();
  // Inverse CDF; the mode sits at the median because the support is symmetric.
  const double x = u < 0.5 ? low + std::sqrt(u * width * (mode - low))
                           : high - std::sqrt((1.0 - u) * width * (high - mode));
  return static_cast<Millis>(std::llround(x));
}

}  // namespace hrc
