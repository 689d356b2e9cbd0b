#include "hdad/image.hpp"

#include <cmath>

namespace hdad {

GrayImage to_grayscale(const ColorImage& img) {
    GrayImage out(img.width(), img.height());
    const std::uint8_t* src = img.data().data();
    std::uint8_t* dst = out.data().data();
    const std::size_t n = out.data().size();
    for (std::size_t i = 0; i < n; ++i) {
        double luma = 0.299 * src[3 * i] + 0.587 * src[3 * i + 1] + 0.114 * src[3 * i + 2];
        long v = std::lround(luma);
        if (v < 0) v = 0;
        if (v > 255) v = 255;
        dst[i] = static_cast<std::uint8_t>(v);
    }
    return out;
}

} // namespace hdad
