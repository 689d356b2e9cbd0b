#ifndef HDAD_GRADIENT_HPP
#define HDAD_GRADIENT_HPP

#include <vector>

#include "hdad/image.hpp"

namespace hdad {

// Per-pixel nonnegative gradient magnitude, same dimensions as the source.
struct GradientField {
    int width = 0;
    int height = 0;
    std::vector<double> values; // row-major

    double at(int x, int y) const {
        return values[static_cast<std::size_t>(y) * width + x];
    }
};

// 3x3 Sobel magnitude sqrt(Gx^2 + Gy^2); borders use edge replication.
GradientField gradient_magnitude(const GrayImage& img);

// Sliding-window maximum of the field for a w x w window centered at each
// pixel (truncated at borders). Separable two-pass implementation.
std::vector<double> window_max(const GradientField& g, int w);

} // namespace hdad

#endif
