#ifndef HDAD_SYNTH_HPP
#define HDAD_SYNTH_HPP

#include <cstdint>

#include "hdad/labeling.hpp"

namespace hdad {

// Generator for desk-scale degraded-drawing fixtures: dark strokes on
// yellowed paper with speckle noise and faint fold streaks. The clean
// stroke mask is returned as ground truth.
struct SynthOptions {
    int width = 224;
    int height = 224;
    int strokes = 16;         // line/rectangle primitives
    double speckle_density = 0.008; // fraction of pixels hit by dark speckles
    int fold_streaks = 2;     // light diagonal fold artifacts
    bool yellowing = true;
};

HdadPair synth_pair(std::uint64_t seed, const SynthOptions& opt = {});

} // namespace hdad

#endif
