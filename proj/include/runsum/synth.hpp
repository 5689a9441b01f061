#pragma once

#include <cstdint>
#include <string_view>

#include "runsum/image.hpp"

namespace runsum {

enum class SynthKind {
  one_over_f,     // random phase, radial amplitude spectrum 1/|u|, rescaled to [0, 1]
  uniform_noise,  // i.i.d. uniform in [0, 1)
  impulse,        // 1 at (width/2, height/2), 0 elsewhere
  constant,       // 0.5 everywhere
};

SynthKind parse_synth_kind(std::string_view tag);  // one-over-f | uniform-noise | impulse | constant
std::string_view to_string(SynthKind kind);

// Deterministic for a given seed.
Image synthesize(SynthKind kind, std::size_t width, std::size_t height, std::uint64_t seed);

}  // namespace runsum
