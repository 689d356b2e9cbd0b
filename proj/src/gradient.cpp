#include "hdad/gradient.hpp"

#include <algorithm>
#include <cmath>

#include "hdad/integral.hpp"

namespace hdad {

namespace {
inline int clampi(int v, int lo, int hi) { return v < lo ? lo : (v > hi ? hi : v); }
} // namespace

GradientField gradient_magnitude(const GrayImage& img) {
    const int w = img.width(), h = img.height();
    GradientField g;
    g.width = w;
    g.height = h;
    g.values.resize(static_cast<std::size_t>(w) * h);
    for (int y = 0; y < h; ++y) {
        const int ym = clampi(y - 1, 0, h - 1);
        const int yp = clampi(y + 1, 0, h - 1);
        for (int x = 0; x < w; ++x) {
            const int xm = clampi(x - 1, 0, w - 1);
            const int xp = clampi(x + 1, 0, w - 1);
            const double tl = img.at(xm, ym), tc = img.at(x, ym), tr = img.at(xp, ym);
            const double ml = img.at(xm, y), mr = img.at(xp, y);
            const double bl = img.at(xm, yp), bc = img.at(x, yp), br = img.at(xp, yp);
            const double gx = (tr + 2.0 * mr + br) - (tl + 2.0 * ml + bl);
            const double gy = (bl + 2.0 * bc + br) - (tl + 2.0 * tc + tr);
            g.values[static_cast<std::size_t>(y) * w + x] = std::sqrt(gx * gx + gy * gy);
        }
    }
    return g;
}

std::vector<double> window_max(const GradientField& g, int w) {
    const int width = g.width, height = g.height;
    // horizontal pass
    std::vector<double> tmp(g.values.size());
    for (int y = 0; y < height; ++y) {
        for (int x = 0; x < width; ++x) {
            auto [x0, x1] = window_range(x, w, width);
            double m = g.values[static_cast<std::size_t>(y) * width + x0];
            for (int xx = x0 + 1; xx < x1; ++xx)
                m = std::max(m, g.values[static_cast<std::size_t>(y) * width + xx]);
            tmp[static_cast<std::size_t>(y) * width + x] = m;
        }
    }
    // vertical pass
    std::vector<double> out(g.values.size());
    for (int y = 0; y < height; ++y) {
        auto [y0, y1] = window_range(y, w, height);
        for (int x = 0; x < width; ++x) {
            double m = tmp[static_cast<std::size_t>(y0) * width + x];
            for (int yy = y0 + 1; yy < y1; ++yy)
                m = std::max(m, tmp[static_cast<std::size_t>(yy) * width + x]);
            out[static_cast<std::size_t>(y) * width + x] = m;
        }
    }
    return out;
}

} // namespace hdad
