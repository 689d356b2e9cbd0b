#include "hdad/synth.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace hdad {

namespace {

inline std::uint8_t clamp8(double v) {
    return static_cast<std::uint8_t>(v < 0 ? 0 : (v > 255 ? 255 : std::lround(v)));
}

// Yellowed-paper tint with luma close to the planned gray value.
void tint(ColorImage& img, int x, int y, double luma, bool stroke) {
    if (stroke) {
        img.at(x, y, 0) = clamp8(luma + 8);
        img.at(x, y, 1) = clamp8(luma);
        img.at(x, y, 2) = clamp8(luma - 12);
    } else {
        img.at(x, y, 0) = clamp8(luma + 18);
        img.at(x, y, 1) = clamp8(luma);
        img.at(x, y, 2) = clamp8(luma - 45);
    }
}

struct Plan {
    int w, h;
    std::vector<double> luma;
    std::vector<bool> stroke;

    Plan(int w_, int h_) : w(w_), h(h_),
        luma(static_cast<std::size_t>(w_) * h_, 0.0),
        stroke(static_cast<std::size_t>(w_) * h_, false) {}

    void put_stroke(int x, int y, double v) {
        if (x < 0 || x >= w || y < 0 || y >= h) return;
        const std::size_t i = static_cast<std::size_t>(y) * w + x;
        luma[i] = v;
        stroke[i] = true;
    }
    void darken(int x, int y, double amount) {
        if (x < 0 || x >= w || y < 0 || y >= h) return;
        const std::size_t i = static_cast<std::size_t>(y) * w + x;
        if (!stroke[i]) luma[i] -= amount;
    }
};

void draw_line(Plan& plan, int x0, int y0, int x1, int y1, int thickness, double v) {
    const int dx = std::abs(x1 - x0), dy = -std::abs(y1 - y0);
    const int sx = x0 < x1 ? 1 : -1, sy = y0 < y1 ? 1 : -1;
    int err = dx + dy;
    const int r = thickness / 2;
    while (true) {
        for (int oy = -r; oy <= r; ++oy)
            for (int ox = -r; ox <= r; ++ox)
                plan.put_stroke(x0 + ox, y0 + oy, v);
        if (x0 == x1 && y0 == y1) break;
        const int e2 = 2 * err;
        if (e2 >= dy) { err += dy; x0 += sx; }
        if (e2 <= dx) { err += dx; y0 += sy; }
    }
}

void fold_streak(Plan& plan, int x0, int y0, int x1, int y1, int thickness, double depth) {
    const int dx = std::abs(x1 - x0), dy = -std::abs(y1 - y0);
    const int sx = x0 < x1 ? 1 : -1, sy = y0 < y1 ? 1 : -1;
    int err = dx + dy;
    const int r = thickness / 2;
    while (true) {
        for (int oy = -r; oy <= r; ++oy)
            for (int ox = -r; ox <= r; ++ox)
                plan.darken(x0 + ox, y0 + oy, depth);
        if (x0 == x1 && y0 == y1) break;
        const int e2 = 2 * err;
        if (e2 >= dy) { err += dy; x0 += sx; }
        if (e2 <= dx) { err += dx; y0 += sy; }
    }
}

} // namespace

HdadPair synth_pair(std::uint64_t seed, const SynthOptions& opt) {
    std::mt19937_64 rng(seed);
    const int w = opt.width, h = opt.height;
    Plan plan(w, h);

    // paper background with mild yellowing gradient and grain
    std::uniform_real_distribution<double> angle_dist(0.0, 2.0 * 3.14159265358979);
    const double ga = angle_dist(rng);
    const double gdx = std::cos(ga), gdy = std::sin(ga);
    std::uniform_real_distribution<double> base_dist(228.0, 238.0);
    const double base = base_dist(rng);
    const double span = opt.yellowing ? 12.0 : 0.0;
    std::normal_distribution<double> grain(0.0, 2.5);
    const double diag = std::sqrt(static_cast<double>(w) * w + static_cast<double>(h) * h);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            const double t = (x * gdx + y * gdy) / diag; // in [-1,1]
            plan.luma[static_cast<std::size_t>(y) * w + x] =
                base - span * (t + 1.0) * 0.5 + grain(rng);
        }

    // strokes: lines and rectangle outlines
    std::uniform_int_distribution<int> px(0, w - 1), py(0, h - 1);
    std::uniform_int_distribution<int> thick(1, 3);
    std::uniform_real_distribution<double> ink(30.0, 70.0);
    std::uniform_real_distribution<double> faded_ink(150.0, 185.0);
    std::uniform_int_distribution<int> kind(0, 2);
    for (int s = 0; s < opt.strokes; ++s) {
        // roughly a third of the strokes have faded to near-paper luma
        const double v = s % 3 == 2 ? faded_ink(rng) : ink(rng);
        const int t = thick(rng);
        if (kind(rng) == 2) {
            // axis-aligned rectangle outline
            int x0 = px(rng), x1 = px(rng), y0 = py(rng), y1 = py(rng);
            if (x0 > x1) std::swap(x0, x1);
            if (y0 > y1) std::swap(y0, y1);
            draw_line(plan, x0, y0, x1, y0, t, v);
            draw_line(plan, x0, y1, x1, y1, t, v);
            draw_line(plan, x0, y0, x0, y1, t, v);
            draw_line(plan, x1, y0, x1, y1, t, v);
        } else {
            draw_line(plan, px(rng), py(rng), px(rng), py(rng), t, v);
        }
    }

    // faint fold streaks across the page
    std::uniform_real_distribution<double> fold_depth(1.0, 2.0);
    std::uniform_int_distribution<int> fold_thick(2, 4);
    for (int f = 0; f < opt.fold_streaks; ++f) {
        if (rng() % 2 == 0)
            fold_streak(plan, px(rng), 0, px(rng), h - 1, fold_thick(rng), fold_depth(rng));
        else
            fold_streak(plan, 0, py(rng), w - 1, py(rng), fold_thick(rng), fold_depth(rng));
    }

    // scattered dark speckles (not part of the truth)
    std::uniform_real_distribution<double> speck(50.0, 110.0);
    const auto speckles =
        static_cast<std::size_t>(opt.speckle_density * static_cast<double>(w) * h);
    for (std::size_t s = 0; s < speckles; ++s) {
        const int x = px(rng), y = py(rng);
        const std::size_t i = static_cast<std::size_t>(y) * w + x;
        if (!plan.stroke[i]) plan.luma[i] = speck(rng);
    }

    HdadPair pair;
    pair.id = "synth-" + std::to_string(seed);
    pair.source = ColorImage(w, h);
    pair.truth = BinaryMap(w, h);
    pair.provenance = Provenance::corrected;
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            const std::size_t i = static_cast<std::size_t>(y) * w + x;
            tint(pair.source, x, y, plan.luma[i], plan.stroke[i]);
            pair.truth.at(x, y) = plan.stroke[i] ? Label::foreground : Label::background;
        }
    return pair;
}

} // namespace hdad
