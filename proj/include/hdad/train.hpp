#ifndef HDAD_TRAIN_HPP
#define HDAD_TRAIN_HPP

#include <cstdint>
#include <vector>

#include "hdad/adam.hpp"
#include "hdad/labeling.hpp"
#include "hdad/net.hpp"

namespace hdad {

struct TrainConfig {
    int epochs = 50;
    int batch_size = 16;
    std::uint64_t seed = 1;
    AdamHyper adam;
    int threads = 1;
    int in_channels = 1;
    double target_loss = 0.0; // stop early once the epoch mean drops below; 0 disables
};

struct TrainResult {
    ModelParams model;
    std::vector<double> epoch_loss; // mean loss per epoch
};

// Blocks every pair with partition_blocks, shuffles per epoch with a
// seeded generator, and runs mini-batch Adam. Per-block gradients inside
// a batch are summed in block order so results are bit-reproducible
// across thread counts.
TrainResult train(const std::vector<HdadPair>& dataset, const TrainConfig& cfg);

// Pre-blocked variant (input tensor + target block per sample).
struct BlockPair {
    Tensor input;
    BinaryMap target;
};
TrainResult train_blocks(std::vector<BlockPair> samples, ModelParams model,
                         const TrainConfig& cfg);

// partition -> forward per block -> stitch, cropped to the input size.
BinaryMap infer(const ModelParams& m, const GrayImage& img, int threads = 1);

} // namespace hdad

#endif
