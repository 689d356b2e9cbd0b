#ifndef HDAD_IHEGT_HPP
#define HDAD_IHEGT_HPP

#include "hdad/image.hpp"

namespace hdad {

struct IhegtOptions {
    int max_iterations = 100;
    // Mean of the working map per iteration; when true, saturated
    // background pixels are excluded from the mean.
    bool exclude_background_from_mean = false;
};

// Iterative histogram-equalization global binarization. Each iteration
// shifts intensities by 255 - mean (clipping to 255 marks permanent
// background), then stretches the survivors so the darkest maps to 0.
// Stops when the mean is stable between consecutive iterations
// (|delta| < 1e-9) or at the iteration cap. Pixels never marked
// background end up foreground; an input that saturates entirely
// returns an all-background map.
BinaryMap ihegt_binarize(const GrayImage& img, const IhegtOptions& opt = {});

} // namespace hdad

#endif
