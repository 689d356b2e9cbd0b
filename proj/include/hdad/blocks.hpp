#ifndef HDAD_BLOCKS_HPP
#define HDAD_BLOCKS_HPP

#include <vector>

#include "hdad/image.hpp"

namespace hdad {

inline constexpr int kBlockSide = 224;

// Records how an image was padded and cut so the inverse can crop back.
struct TilingDesc {
    int orig_width = 0;
    int orig_height = 0;
    int cols = 0;
    int rows = 0;
    int side = kBlockSide;

    int block_count() const { return cols * rows; }
};

// Reflect index i into [0,n). Symmetric (edge-inclusive) reflection with
// period 2n, so arbitrarily deep padding of tiny images is well defined.
int mirror_index(int i, int n);

// Pads by reflection up to the next multiple of `side` in each dimension,
// then cuts non-overlapping side x side blocks in row-major order.
std::vector<GrayImage> partition_blocks(const GrayImage& img, TilingDesc& desc,
                                        int side = kBlockSide);
std::vector<BinaryMap> partition_blocks(const BinaryMap& map, TilingDesc& desc,
                                        int side = kBlockSide);

// Inverse of partition: reassembles and crops to the original dimensions.
// Throws std::invalid_argument on a block-count mismatch.
BinaryMap stitch_blocks(const std::vector<BinaryMap>& blocks, const TilingDesc& desc);

} // namespace hdad

#endif
