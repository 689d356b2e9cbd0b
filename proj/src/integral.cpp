#include "hdad/integral.hpp"

#include <cmath>

namespace hdad {

IntegralImage::IntegralImage(const GrayImage& img)
    : width_(img.width()), height_(img.height()),
      s1_(static_cast<std::size_t>(img.width() + 1) * (img.height() + 1), 0),
      s2_(static_cast<std::size_t>(img.width() + 1) * (img.height() + 1), 0) {
    const std::size_t stride = width_ + 1;
    for (int y = 0; y < height_; ++y) {
        std::int64_t row1 = 0, row2 = 0;
        const std::size_t above = static_cast<std::size_t>(y) * stride;
        const std::size_t cur = above + stride;
        for (int x = 0; x < width_; ++x) {
            const std::int64_t v = img.at(x, y);
            row1 += v;
            row2 += v * v;
            s1_[cur + x + 1] = s1_[above + x + 1] + row1;
            s2_[cur + x + 1] = s2_[above + x + 1] + row2;
        }
    }
}

std::pair<double, double> IntegralImage::local_mean_std(int x, int y, int w) const {
    auto [x0, x1] = window_range(x, w, width_);
    auto [y0, y1] = window_range(y, w, height_);
    const double n = static_cast<double>(x1 - x0) * (y1 - y0);
    const double mean = static_cast<double>(sum(x0, y0, x1, y1)) / n;
    const double mean_sq = static_cast<double>(sum_sq(x0, y0, x1, y1)) / n;
    const double var = mean_sq - mean * mean;
    return {mean, std::sqrt(var > 0.0 ? var : 0.0)};
}

IntegralField::IntegralField(const std::vector<double>& values, int width, int height)
    : width_(width), height_(height),
      s_(static_cast<std::size_t>(width + 1) * (height + 1), 0.0) {
    const std::size_t stride = width_ + 1;
    for (int y = 0; y < height_; ++y) {
        double row = 0.0;
        const std::size_t above = static_cast<std::size_t>(y) * stride;
        const std::size_t cur = above + stride;
        for (int x = 0; x < width_; ++x) {
            row += values[static_cast<std::size_t>(y) * width_ + x];
            s_[cur + x + 1] = s_[above + x + 1] + row;
        }
    }
}

} // namespace hdad
