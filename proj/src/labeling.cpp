#include "hdad/labeling.hpp"

#include <stdexcept>

#include "hdad/ihegt.hpp"
#include "hdad/integral.hpp"
#include "hdad/threshold.hpp"

namespace hdad {

BinaryMap fuse(const BinaryMap& a, const BinaryMap& b) {
    if (a.width() != b.width() || a.height() != b.height())
        throw std::invalid_argument("fuse: dimension mismatch");
    BinaryMap out(a.width(), a.height());
    for (std::size_t i = 0; i < out.labels().size(); ++i)
        out.labels()[i] = (a.labels()[i] == Label::foreground ||
                           b.labels()[i] == Label::foreground)
                              ? Label::foreground
                              : Label::background;
    return out;
}

BinaryMap cwmf_denoise(const BinaryMap& m, const CwmfParams& p) {
    if (p.window < 3 || p.window % 2 == 0)
        throw std::invalid_argument("cwmf: window must be odd and >= 3");
    if (p.center_weight < 1 || p.center_weight % 2 == 0)
        throw std::invalid_argument("cwmf: center weight must be odd and >= 1");

    const int w = m.width(), h = m.height();
    // prefix sums of foreground indicators for O(1) window counts
    std::vector<std::size_t> sums(static_cast<std::size_t>(w + 1) * (h + 1), 0);
    const std::size_t stride = w + 1;
    for (int y = 0; y < h; ++y) {
        std::size_t row = 0;
        for (int x = 0; x < w; ++x) {
            row += m.is_foreground(x, y) ? 1 : 0;
            sums[(y + 1) * stride + x + 1] = sums[y * stride + x + 1] + row;
        }
    }

    BinaryMap out(w, h);
    for (int y = 0; y < h; ++y) {
        auto [y0, y1] = window_range(y, p.window, h);
        for (int x = 0; x < w; ++x) {
            auto [x0, x1] = window_range(x, p.window, w);
            const std::size_t in_window = sums[y1 * stride + x1] - sums[y0 * stride + x1] -
                                          sums[y1 * stride + x0] + sums[y0 * stride + x0];
            const std::size_t window_n = static_cast<std::size_t>(x1 - x0) * (y1 - y0);
            const bool center_fg = m.is_foreground(x, y);
            // center counted center_weight times, every other sample once
            const std::size_t size = window_n - 1 + p.center_weight;
            std::size_t fg = in_window - (center_fg ? 1 : 0) +
                             (center_fg ? p.center_weight : 0);
            const std::size_t rank = size / 2 + 1; // ceil((size+1)/2)
            out.at(x, y) = fg >= rank ? Label::foreground : Label::background;
        }
    }
    return out;
}

HdadPair label_pair(const ColorImage& src, const std::string& id) {
    GrayImage gray = to_grayscale(src);
    BinaryMap rough = fuse(mlt(gray), ihegt_binarize(gray));
    HdadPair pair;
    pair.id = id;
    pair.source = src;
    pair.truth = cwmf_denoise(rough);
    pair.provenance = Provenance::refined;
    return pair;
}

BinaryMap apply_corrections(const BinaryMap& truth, const GrayImage& corrections) {
    if (truth.width() != corrections.width() || truth.height() != corrections.height())
        throw std::invalid_argument("apply_corrections: dimension mismatch");
    BinaryMap out = truth;
    for (std::size_t i = 0; i < out.labels().size(); ++i) {
        const std::uint8_t v = corrections.data()[i];
        if (v == kCorrectionForceForeground)
            out.labels()[i] = Label::foreground;
        else if (v == kCorrectionForceBackground)
            out.labels()[i] = Label::background;
    }
    return out;
}

} // namespace hdad
