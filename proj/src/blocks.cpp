#include "hdad/blocks.hpp"

#include <stdexcept>

namespace hdad {

int mirror_index(int i, int n) {
    if (n == 1) return 0;
    const int period = 2 * n;
    int m = i % period;
    if (m < 0) m += period;
    return m < n ? m : period - 1 - m;
}

namespace {

template <typename Img, typename Get, typename Set>
std::vector<Img> partition_impl(const Img& src, TilingDesc& desc, int side,
                                Get get, Set set) {
    const int w = src.width(), h = src.height();
    desc.orig_width = w;
    desc.orig_height = h;
    desc.side = side;
    desc.cols = (w + side - 1) / side;
    desc.rows = (h + side - 1) / side;

    std::vector<Img> blocks;
    blocks.reserve(static_cast<std::size_t>(desc.cols) * desc.rows);
    for (int by = 0; by < desc.rows; ++by) {
        for (int bx = 0; bx < desc.cols; ++bx) {
            Img block(side, side);
            for (int y = 0; y < side; ++y) {
                const int sy = mirror_index(by * side + y, h);
                for (int x = 0; x < side; ++x) {
                    const int sx = mirror_index(bx * side + x, w);
                    set(block, x, y, get(src, sx, sy));
                }
            }
            blocks.push_back(std::move(block));
        }
    }
    return blocks;
}

} // namespace

std::vector<GrayImage> partition_blocks(const GrayImage& img, TilingDesc& desc, int side) {
    return partition_impl(
        img, desc, side,
        [](const GrayImage& s, int x, int y) { return s.at(x, y); },
        [](GrayImage& b, int x, int y, std::uint8_t v) { b.at(x, y) = v; });
}

std::vector<BinaryMap> partition_blocks(const BinaryMap& map, TilingDesc& desc, int side) {
    return partition_impl(
        map, desc, side,
        [](const BinaryMap& s, int x, int y) { return s.at(x, y); },
        [](BinaryMap& b, int x, int y, Label v) { b.at(x, y) = v; });
}

BinaryMap stitch_blocks(const std::vector<BinaryMap>& blocks, const TilingDesc& desc) {
    if (static_cast<int>(blocks.size()) != desc.block_count())
        throw std::invalid_argument("stitch_blocks: block count does not match descriptor");
    BinaryMap out(desc.orig_width, desc.orig_height);
    for (int by = 0; by < desc.rows; ++by) {
        for (int bx = 0; bx < desc.cols; ++bx) {
            const BinaryMap& block = blocks[static_cast<std::size_t>(by) * desc.cols + bx];
            if (block.width() != desc.side || block.height() != desc.side)
                throw std::invalid_argument("stitch_blocks: block size does not match descriptor");
            const int y_end = std::min(desc.side, desc.orig_height - by * desc.side);
            const int x_end = std::min(desc.side, desc.orig_width - bx * desc.side);
            for (int y = 0; y < y_end; ++y)
                for (int x = 0; x < x_end; ++x)
                    out.at(bx * desc.side + x, by * desc.side + y) = block.at(x, y);
        }
    }
    return out;
}

} // namespace hdad
