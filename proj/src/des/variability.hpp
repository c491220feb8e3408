#pragma once

#include "des/rng.hpp"
#include "model/types.hpp"

namespace hrc {

/// Duration of one stage execution. Deterministic returns PT; triangular
/// draws from triangular(CT, PT, 2PT - CT), whose mean is PT. The sample is
/// rounded to whole milliseconds.
Millis sample_duration(Millis ct_ms, Millis pt_ms, VariabilityKind kind, Rng& rng);

inline Millis sample_duration(const ResourceTiming& timing, VariabilityKind kind, Rng& rng) {
  return sample_duration(timing.ct_ms, timing.pt_ms, kind, rng);
}

}  // namespace hrc
