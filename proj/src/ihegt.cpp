#include "hdad/ihegt.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace hdad {

BinaryMap ihegt_binarize(const GrayImage& img, const IhegtOptions& opt) {
    if (opt.max_iterations < 1)
        throw std::invalid_argument("ihegt: max_iterations must be >= 1");

    const std::size_t n = img.data().size();
    std::vector<double> working(n);
    for (std::size_t i = 0; i < n; ++i) working[i] = img.data()[i];
    std::vector<bool> background(n, false);

    double prev_mean = std::numeric_limits<double>::quiet_NaN();
    for (int iter = 0; iter < opt.max_iterations; ++iter) {
        // Step 1: mean over the working map
        double sum = 0.0;
        std::size_t count = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (opt.exclude_background_from_mean && background[i]) continue;
            sum += working[i];
            ++count;
        }
        if (count == 0) break; // everything saturated
        const double mean = sum / static_cast<double>(count);
        if (!std::isnan(prev_mean) && std::fabs(mean - prev_mean) < 1e-9) break;
        prev_mean = mean;

        // Step 2: shift toward white; saturation marks permanent background
        for (std::size_t i = 0; i < n; ++i) {
            if (background[i]) continue;
            double v = 255.0 + working[i] - mean;
            if (v >= 255.0) {
                working[i] = 255.0;
                background[i] = true;
            } else {
                working[i] = v;
            }
        }

        // Step 3: stretch survivors so the darkest maps to 0
        double min_v = 255.0;
        bool any = false;
        for (std::size_t i = 0; i < n; ++i) {
            if (!background[i]) {
                min_v = any ? std::min(min_v, working[i]) : working[i];
                any = true;
            }
        }
        if (!any) break;
        const double denom = 255.0 - min_v; // > 0: survivors are < 255
        for (std::size_t i = 0; i < n; ++i) {
            if (background[i]) continue;
            working[i] = 255.0 - 255.0 * (255.0 - working[i]) / denom;
        }
    }

    BinaryMap out(img.width(), img.height());
    for (std::size_t i = 0; i < n; ++i)
        out.labels()[i] = background[i] ? Label::background : Label::foreground;
    return out;
}

} // namespace hdad
