#include "hdad/threshold.hpp"

#include <cmath>
#include <stdexcept>

#include "hdad/gradient.hpp"
#include "hdad/integral.hpp"

namespace hdad {

namespace {

void check_params(const ThresholdParams& p) {
    if (p.w < 3 || p.w % 2 == 0)
        throw std::invalid_argument("ThresholdParams: window must be odd and >= 3");
    if (p.r <= 0.0)
        throw std::invalid_argument("ThresholdParams: R must be positive");
}

BinaryMap threshold_map(const GrayImage& img, const std::vector<double>& t) {
    BinaryMap out(img.width(), img.height());
    for (std::size_t i = 0; i < t.size(); ++i)
        out.labels()[i] = img.data()[i] < t[i] ? Label::foreground : Label::background;
    return out;
}

} // namespace

int otsu_threshold(const std::vector<std::size_t>& histogram) {
    std::size_t total = 0;
    int distinct = 0;
    for (int v = 0; v < 256; ++v) {
        total += histogram[v];
        if (histogram[v] > 0) ++distinct;
    }
    if (distinct < 2) return -1; // no two classes exist

    // within-class variance = w0*var0 + w1*var1, empty class contributes 0
    double best = 0.0;
    int best_t = -1;
    for (int t = 0; t < 256; ++t) {
        std::size_t n0 = 0, n1 = 0;
        double s0 = 0.0, s1 = 0.0, q0 = 0.0, q1 = 0.0;
        for (int v = 0; v < 256; ++v) {
            const double c = static_cast<double>(histogram[v]);
            if (v <= t) {
                n0 += histogram[v];
                s0 += c * v;
                q0 += c * v * v;
            } else {
                n1 += histogram[v];
                s1 += c * v;
                q1 += c * v * v;
            }
        }
        double within = 0.0;
        if (n0 > 0) within += (q0 - s0 * s0 / n0);
        if (n1 > 0) within += (q1 - s1 * s1 / n1);
        within /= static_cast<double>(total);
        if (best_t < 0 || within < best) {
            best = within;
            best_t = t;
        }
    }
    return best_t;
}

BinaryMap otsu(const GrayImage& img) {
    std::vector<std::size_t> hist(256, 0);
    for (std::uint8_t v : img.data()) ++hist[v];
    const int t = otsu_threshold(hist);
    BinaryMap out(img.width(), img.height());
    if (t < 0) return out; // degenerate histogram: all background
    for (std::size_t i = 0; i < img.data().size(); ++i)
        out.labels()[i] = img.data()[i] <= t ? Label::foreground : Label::background;
    return out;
}

std::vector<double> niblack_thresholds(const GrayImage& img, const ThresholdParams& p) {
    check_params(p);
    IntegralImage ii(img);
    std::vector<double> t(img.data().size());
    for (int y = 0; y < img.height(); ++y) {
        for (int x = 0; x < img.width(); ++x) {
            auto [m, s] = ii.local_mean_std(x, y, p.w);
            t[static_cast<std::size_t>(y) * img.width() + x] = m + p.k * s;
        }
    }
    return t;
}

BinaryMap niblack(const GrayImage& img, const ThresholdParams& p) {
    return threshold_map(img, niblack_thresholds(img, p));
}

std::vector<double> sauvola_thresholds(const GrayImage& img, const ThresholdParams& p) {
    check_params(p);
    IntegralImage ii(img);
    std::vector<double> t(img.data().size());
    for (int y = 0; y < img.height(); ++y) {
        for (int x = 0; x < img.width(); ++x) {
            auto [m, s] = ii.local_mean_std(x, y, p.w);
            t[static_cast<std::size_t>(y) * img.width() + x] =
                m * (1.0 + p.k * (s / p.r - 1.0));
        }
    }
    return t;
}

BinaryMap sauvola(const GrayImage& img, const ThresholdParams& p) {
    return threshold_map(img, sauvola_thresholds(img, p));
}

std::vector<double> mlt_thresholds(const GrayImage& img, const ThresholdParams& p,
                                   int stats_window) {
    check_params(p);
    const int w = stats_window > 0 ? stats_window : p.w;
    const int width = img.width(), height = img.height();

    IntegralImage ii(img);
    GradientField grad = gradient_magnitude(img);
    IntegralField gi(grad.values, width, height);
    std::vector<double> gmax = window_max(grad, w);

    std::vector<double> t(img.data().size());
    for (int y = 0; y < height; ++y) {
        auto [y0, y1] = window_range(y, w, height);
        for (int x = 0; x < width; ++x) {
            auto [x0, x1] = window_range(x, w, width);
            const double n = static_cast<double>(x1 - x0) * (y1 - y0);
            const double mu = static_cast<double>(ii.sum(x0, y0, x1, y1)) / n;
            const double mu_grad = gi.sum(x0, y0, x1, y1) / n;
            const double max_grad = gmax[static_cast<std::size_t>(y) * width + x];
            // max_grad = 0 means a flat window; exponent taken as 0
            const double e = max_grad > 0.0 ? std::exp(-mu_grad / max_grad) : 1.0;
            t[static_cast<std::size_t>(y) * width + x] = mu * (1.0 - p.k * e);
        }
    }
    return t;
}

BinaryMap mlt(const GrayImage& img, const ThresholdParams& p, int stats_window) {
    return threshold_map(img, mlt_thresholds(img, p, stats_window));
}

} // namespace hdad
