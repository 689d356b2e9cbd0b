#ifndef HDAD_INTEGRAL_HPP
#define HDAD_INTEGRAL_HPP

#include <cstdint>
#include <utility>

#include "hdad/image.hpp"

namespace hdad {

// Prefix-sum grids over intensities and squared intensities.
// S1[y][x] holds the sum over the rectangle [0,x) x [0,y), so the
// first row and column are zero and any rectangle sum is four lookups.
class IntegralImage {
public:
    explicit IntegralImage(const GrayImage& img);

    int width() const { return width_; }
    int height() const { return height_; }

    // Sum of intensities over [x0,x1) x [y0,y1).
    std::int64_t sum(int x0, int y0, int x1, int y1) const {
        return fetch(s1_, x0, y0, x1, y1);
    }
    // Sum of squared intensities over the same half-open rectangle.
    std::int64_t sum_sq(int x0, int y0, int x1, int y1) const {
        return fetch(s2_, x0, y0, x1, y1);
    }

    // Mean and population standard deviation of the w x w window centered
    // at (x,y), truncated to the image. Window sides may be even; an even
    // side w covers offsets [-(w-1)/2, w/2].
    std::pair<double, double> local_mean_std(int x, int y, int w) const;

private:
    std::int64_t fetch(const std::vector<std::int64_t>& s, int x0, int y0,
                       int x1, int y1) const {
        const std::size_t stride = width_ + 1;
        return s[static_cast<std::size_t>(y1) * stride + x1] -
               s[static_cast<std::size_t>(y0) * stride + x1] -
               s[static_cast<std::size_t>(y1) * stride + x0] +
               s[static_cast<std::size_t>(y0) * stride + x0];
    }

    int width_ = 0;
    int height_ = 0;
    std::vector<std::int64_t> s1_;
    std::vector<std::int64_t> s2_;
};

// Prefix sums over a real-valued field (used for mean gradients).
class IntegralField {
public:
    IntegralField(const std::vector<double>& values, int width, int height);

    double sum(int x0, int y0, int x1, int y1) const {
        const std::size_t stride = width_ + 1;
        return s_[static_cast<std::size_t>(y1) * stride + x1] -
               s_[static_cast<std::size_t>(y0) * stride + x1] -
               s_[static_cast<std::size_t>(y1) * stride + x0] +
               s_[static_cast<std::size_t>(y0) * stride + x0];
    }

private:
    int width_ = 0;
    int height_ = 0;
    std::vector<double> s_;
};

// Clamp the w-window centered at (x,y) to [0,n); returns [lo, hi).
inline std::pair<int, int> window_range(int center, int w, int n) {
    int lo = center - (w - 1) / 2;
    int hi = center + w / 2 + 1;
    if (lo < 0) lo = 0;
    if (hi > n) hi = n;
    return {lo, hi};
}

} // namespace hdad

#endif
